// nljcm: closed-form collapse/revival traces for two trapped ions on the k-th
// red sideband, brute-force verification, and figure presets.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nljcm/cli.hpp"

namespace {

using nljcm::cli::RunConfig;

struct PhysicalFlags {
  CLI::Option* eta = nullptr;
  CLI::Option* rabi = nullptr;
  CLI::Option* k = nullptr;
  CLI::Option* alpha_sq = nullptr;
  CLI::Option* fock = nullptr;
  CLI::Option* preset = nullptr;
  double alpha_sq_value = 0.0;
  int fock_value = 0;
  int n_max_value = 0;
  CLI::Option* n_max = nullptr;
  std::string preset_name;

  bool any_physical() const {
    return eta->count() || rabi->count() || k->count() || alpha_sq->count() || fock->count();
  }
};

void add_physical(CLI::App* cmd, RunConfig& cfg, PhysicalFlags& f) {
  f.eta = cmd->add_option("--eta", cfg.eta, "Lamb-Dicke parameter");
  f.rabi = cmd->add_option("--rabi-khz", cfg.rabi_khz, "Rabi frequency Omega/2pi in kHz");
  f.k = cmd->add_option("--k", cfg.k, "red sideband order (>= 1)");
  f.alpha_sq = cmd->add_option("--alpha-sq", f.alpha_sq_value,
                               "coherent motional state with mean phonon number |alpha|^2");
  f.fock = cmd->add_option("--fock", f.fock_value, "Fock motional state |n0>");
  f.alpha_sq->excludes(f.fock);
  f.preset = cmd->add_option("--preset", f.preset_name,
                             "use a figure preset (fig1|fig2a|fig2b|fig3a|fig3b|fig3c)");
  cmd->add_option("--t-max-us", cfg.t_max_us, "end of the time grid in microseconds");
  cmd->add_option("--t-points", cfg.t_points, "number of uniform time samples (>= 2)");
  cmd->add_option("--tail-tol", cfg.tail_tol, "allowed discarded phonon probability");
  f.n_max = cmd->add_option("--n-max", f.n_max_value, "pin the Fock truncation");
  cmd->add_option("--threads", cfg.threads, "worker threads over the time grid");
}

// Merges preset and physical flags into cfg. Returns false on a usage error.
bool resolve_physical(RunConfig& cfg, const PhysicalFlags& f, std::string& message) {
  if (f.n_max->count()) {
    cfg.n_max = f.n_max_value;
  }
  if (f.preset->count()) {
    if (f.any_physical()) {
      message = "--preset fixes the physical parameters; drop --eta/--rabi-khz/--k/--alpha-sq/--fock";
      return false;
    }
    const auto id = nljcm::cli::parse_figure_id(f.preset_name);
    if (!id) {
      message = "unknown preset '" + f.preset_name + "'";
      return false;
    }
    RunConfig p = nljcm::cli::preset_config(*id);
    cfg.eta = p.eta;
    cfg.rabi_khz = p.rabi_khz;
    cfg.k = p.k;
    cfg.initial = p.initial;
    cfg.figure = id;
    if (!(cfg.t_max_us > 0.0)) {
      RunConfig grid = cfg;
      grid.t_points = 2;
      nljcm::cli::default_figure_grid(grid);
      cfg.t_max_us = grid.t_max_us;
    }
    return true;
  }
  if (!f.alpha_sq->count() && !f.fock->count()) {
    message = "choose an initial motional state with --alpha-sq or --fock";
    return false;
  }
  cfg.initial = f.alpha_sq->count() ? nljcm::InitialMotionalState::coherent(f.alpha_sq_value)
                                    : nljcm::InitialMotionalState::fock(f.fock_value);
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-ion k-quantum nonlinear Jaynes-Cummings dynamics"};
  app.require_subcommand(1);

  RunConfig sim_cfg;
  sim_cfg.mode = nljcm::cli::Mode::Simulate;
  PhysicalFlags sim_flags;
  std::string config_path;
  auto* simulate = app.add_subcommand("simulate", "write population traces as CSV (+JSON/SVG)");
  add_physical(simulate, sim_cfg, sim_flags);
  simulate->add_option("--out", sim_cfg.out, "CSV output path");
  simulate->add_option("--json", sim_cfg.json, "metadata JSON output path");
  simulate->add_option("--svg", sim_cfg.svg, "SVG chart output path");
  auto* config_opt = simulate->add_option(
      "--config", config_path, "re-run from a metadata JSON written by --json");

  RunConfig ver_cfg;
  ver_cfg.mode = nljcm::cli::Mode::Verify;
  ver_cfg.t_points = 200;
  PhysicalFlags ver_flags;
  auto* verify = app.add_subcommand("verify", "compare the closed form with brute-force evolution");
  add_physical(verify, ver_cfg, ver_flags);
  verify->add_option("--tol", ver_cfg.tol, "maximum absolute population error");

  RunConfig fig_cfg;
  fig_cfg.mode = nljcm::cli::Mode::Figure;
  std::string figure_name;
  auto* figure = app.add_subcommand("figure", "reproduce a published parameter set");
  figure->add_option("id", figure_name, "fig1|fig2a|fig2b|fig3a|fig3b|fig3c")->required();
  figure->add_option("--out-dir", fig_cfg.out_dir, "directory for <id>.csv/.json/.svg")->required();
  figure->add_option("--t-max-us", fig_cfg.t_max_us, "override the default time range");
  figure->add_option("--t-points", fig_cfg.t_points, "override the default sample count");
  figure->add_option("--threads", fig_cfg.threads, "worker threads over the time grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : nljcm::cli::kExitUsage;
  }

  std::string message;
  RunConfig cfg;
  if (*simulate) {
    cfg = sim_cfg;
    if (config_opt->count()) {
      if (sim_flags.any_physical() || sim_flags.preset->count()) {
        std::cerr << "usage error: --config replaces the physical flags\n";
        return nljcm::cli::kExitUsage;
      }
      std::ifstream is(config_path);
      if (!is) {
        std::cerr << "usage error: cannot read " << config_path << "\n";
        return nljcm::cli::kExitUsage;
      }
      std::stringstream text;
      text << is.rdbuf();
      try {
        RunConfig from = nljcm::cli::config_from_metadata(text.str());
        from.out = sim_cfg.out;
        from.json = sim_cfg.json;
        from.svg = sim_cfg.svg;
        from.threads = sim_cfg.threads;
        cfg = from;
      } catch (const std::exception& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return nljcm::cli::kExitUsage;
      }
    } else if (!resolve_physical(cfg, sim_flags, message)) {
      std::cerr << "usage error: " << message << "\n";
      return nljcm::cli::kExitUsage;
    }
  } else if (*verify) {
    cfg = ver_cfg;
    if (!resolve_physical(cfg, ver_flags, message)) {
      std::cerr << "usage error: " << message << "\n";
      return nljcm::cli::kExitUsage;
    }
  } else {
    cfg = fig_cfg;
    cfg.figure = nljcm::cli::parse_figure_id(figure_name);
    if (!cfg.figure) {
      std::cerr << "usage error: unknown figure '" << figure_name << "'\n";
      return nljcm::cli::kExitUsage;
    }
  }
  return nljcm::cli::run(cfg, std::cout, std::cerr);
}
