#include "nljcm/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "nljcm/errors.hpp"
#include "nljcm/oracle.hpp"

namespace nljcm::cli {

using nlohmann::json;

namespace {

constexpr double kTwoPiKhz = 2.0 * std::numbers::pi * 1e3;

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 11);
  return std::string(buf, res.ptr);
}

std::string format_fixed(double v, int digits) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
  return std::string(buf, res.ptr);
}

int n_bar(const InitialMotionalState& s) {
  return s.kind == InitialMotionalState::Kind::Fock ? s.n0
                                                    : static_cast<int>(std::lround(s.alpha_sq));
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  os << text;
  if (!os) {
    throw std::runtime_error("failed writing '" + path + "'");
  }
}

const char* level_key(DickeLevel l) {
  switch (l) {
    case DickeLevel::Up: return "rho_11";
    case DickeLevel::Mid: return "rho_00";
    case DickeLevel::Down: return "rho_m1m1";
  }
  return "?";
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> table = {
      {FigureId::Fig1, "fig1", 0.1, 1, 10.0},  {FigureId::Fig2a, "fig2a", 0.2, 1, 50.0},
      {FigureId::Fig2b, "fig2b", 0.4, 1, 80.0}, {FigureId::Fig3a, "fig3a", 0.1, 2, 20.0},
      {FigureId::Fig3b, "fig3b", 0.2, 2, 50.0}, {FigureId::Fig3c, "fig3c", 0.4, 2, 80.0},
  };
  return table;
}

std::optional<FigureId> parse_figure_id(std::string_view name) {
  for (const auto& p : presets()) {
    if (p.name == name) return p.id;
  }
  return std::nullopt;
}

const Preset& preset(FigureId id) {
  for (const auto& p : presets()) {
    if (p.id == id) return p;
  }
  throw std::invalid_argument("unknown figure id");
}

void RunConfig::validate() const {
  if (mode == Mode::Figure) {
    if (!figure) throw std::invalid_argument("figure mode needs a figure id");
    if (out_dir.empty()) throw std::invalid_argument("figure mode needs --out-dir");
    return;
  }
  if (!(eta > 0.0)) throw std::invalid_argument("--eta must be > 0");
  if (!(rabi_khz > 0.0)) throw std::invalid_argument("--rabi-khz must be > 0");
  if (k < 1) throw std::invalid_argument("--k must be >= 1");
  initial.validate();
  if (!(t_max_us > 0.0) || !std::isfinite(t_max_us)) {
    throw std::invalid_argument("--t-max-us must be > 0");
  }
  if (t_points < 2) throw std::invalid_argument("--t-points must be >= 2");
  if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
    throw std::invalid_argument("--tail-tol must lie in (0, 1)");
  }
  if (n_max && *n_max < 2 * k) {
    throw std::invalid_argument("--n-max must be >= 2k");
  }
  if (mode == Mode::Simulate && out.empty()) {
    throw std::invalid_argument("simulate needs --out <csv path>");
  }
  if (mode == Mode::Verify && !(tol > 0.0)) {
    throw std::invalid_argument("--tol must be > 0");
  }
}

RunConfig preset_config(FigureId id) {
  const Preset& p = preset(id);
  RunConfig c;
  c.figure = id;
  c.eta = p.eta;
  c.k = p.k;
  c.rabi_khz = kPresetRabiKhz;
  c.initial = InitialMotionalState::coherent(p.alpha_sq);
  return c;
}

ModelParams model_params(const RunConfig& config) {
  ModelParams p;
  p.eta = config.eta;
  p.rabi = kTwoPiKhz * config.rabi_khz;
  p.k = config.k;
  p.tail_tol = config.tail_tol;
  p.n_max = config.n_max ? *config.n_max
                         : recommended_n_max(config.initial, config.tail_tol, config.k);
  p.validate();
  return p;
}

void default_figure_grid(RunConfig& config) {
  ModelParams p = model_params(config);
  const int nb = n_bar(config.initial);
  const double t_rev = first_order_revival_time(p, nb);
  const double period = rabi_period(p, nb);
  if (!(config.t_max_us > 0.0)) {
    config.t_max_us = 4.0 * t_rev * 1e6;
  }
  if (config.t_points < 2) {
    const double per_period = 40.0;
    config.t_points =
        std::max(2001, static_cast<int>(std::ceil(per_period * config.t_max_us * 1e-6 / period)) + 1);
  }
}

std::vector<double> time_grid_us(const RunConfig& config) {
  return uniform_grid(config.t_max_us, config.t_points);
}

std::string format_csv(const PopulationTrace& trace, const std::vector<double>& t_us) {
  if (t_us.size() != trace.size()) {
    throw std::invalid_argument("format_csv: time column length mismatch");
  }
  std::string out = "t_us,rho_11,rho_00,rho_m1m1,tail_bound\n";
  const std::string tail = format_number(trace.tail_bound);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out += format_number(t_us[i]);
    out += ',';
    out += format_number(trace.rho_11[i]);
    out += ',';
    out += format_number(trace.rho_00[i]);
    out += ',';
    out += format_number(trace.rho_m1m1[i]);
    out += ',';
    out += tail;
    out += '\n';
  }
  return out;
}

std::string metadata_json(const RunConfig& config, const ModelParams& params,
                          const PopulationTrace& trace,
                          const std::vector<EnvelopeReport>* envelopes) {
  json doc;
  doc["params"] = {{"eta", config.eta},          {"rabi_khz", config.rabi_khz},
                   {"k", config.k},              {"n_max", params.n_max},
                   {"tail_tol", config.tail_tol}};
  if (config.initial.kind == InitialMotionalState::Kind::Coherent) {
    doc["initial"] = {{"kind", "coherent"}, {"alpha_sq", config.initial.alpha_sq}};
  } else {
    doc["initial"] = {{"kind", "fock"}, {"n0", config.initial.n0}};
  }
  doc["grid"] = {{"t_max_us", config.t_max_us}, {"t_points", config.t_points}};
  doc["tail_bound"] = trace.tail_bound;
  if (config.figure) {
    doc["figure"] = std::string(preset(*config.figure).name);
  }
  if (envelopes) {
    json env = json::object();
    const int nb = n_bar(config.initial);
    env["n_bar"] = nb;
    env["first_order_revival_time_us"] = first_order_revival_time(params, nb) * 1e6;
    env["collapse_fraction"] = kCollapseFraction;
    env["revival_fraction"] = kRevivalFraction;
    for (const auto& r : *envelopes) {
      json level = {{"window_us", r.window * 1e6},
                    {"collapse_found", r.collapse_found},
                    {"revival_found", r.revival_found},
                    {"contrast", r.contrast()}};
      level["collapse_time_us"] = r.collapse_found ? json(r.collapse_time * 1e6) : json(nullptr);
      level["revival_time_us"] = r.revival_found ? json(r.revival_time * 1e6) : json(nullptr);
      json centers = json::array();
      for (double c : r.window_centers) centers.push_back(c * 1e6);
      level["window_centers_us"] = std::move(centers);
      level["amplitudes"] = r.amplitudes;
      env[level_key(r.level)] = std::move(level);
    }
    doc["envelope"] = std::move(env);
  }
  return doc.dump(2) + "\n";
}

RunConfig config_from_metadata(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("metadata is not valid JSON: ") + e.what());
  }
  try {
    RunConfig c;
    c.mode = Mode::Simulate;
    const auto& p = doc.at("params");
    c.eta = p.at("eta").get<double>();
    c.rabi_khz = p.at("rabi_khz").get<double>();
    c.k = p.at("k").get<int>();
    c.n_max = p.at("n_max").get<int>();
    c.tail_tol = p.at("tail_tol").get<double>();
    const auto& init = doc.at("initial");
    const auto kind = init.at("kind").get<std::string>();
    if (kind == "coherent") {
      c.initial = InitialMotionalState::coherent(init.at("alpha_sq").get<double>());
    } else if (kind == "fock") {
      c.initial = InitialMotionalState::fock(init.at("n0").get<int>());
    } else {
      throw std::invalid_argument("metadata initial.kind must be 'coherent' or 'fock'");
    }
    c.t_max_us = doc.at("grid").at("t_max_us").get<double>();
    c.t_points = doc.at("grid").at("t_points").get<int>();
    return c;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("metadata is missing fields: ") + e.what());
  }
}

std::string render_svg(const PopulationTrace& trace, const std::vector<double>& t_us,
                       std::string_view title) {
  constexpr double width = 800.0, height = 480.0;
  constexpr double left = 60.0, right = 20.0, top = 40.0, bottom = 50.0;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  const double t_lo = t_us.empty() ? 0.0 : t_us.front();
  const double t_hi = t_us.empty() ? 1.0 : std::max(t_us.back(), t_lo + 1e-300);

  const auto px = [&](double t) { return left + (t - t_lo) / (t_hi - t_lo) * plot_w; };
  const auto py = [&](double v) { return top + (1.0 - std::clamp(v, 0.0, 1.0)) * plot_h; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\""
     << " font-size=\"16\">" << title << "</text>\n";
  os << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n"
     << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w
     << "\" y2=\"" << top + plot_h << "\"/>\n"
     << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
     << top + plot_h << "\"/>\n</g>\n";

  os << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double v = i / 5.0;
    os << "<text x=\"" << left - 6 << "\" y=\"" << py(v) + 4 << "\" text-anchor=\"end\">"
       << format_fixed(v, 1) << "</text>\n";
    const double t = t_lo + (t_hi - t_lo) * i / 5.0;
    os << "<text x=\"" << px(t) << "\" y=\"" << top + plot_h + 16
       << "\" text-anchor=\"middle\">" << format_fixed(t, 1) << "</text>\n";
  }
  os << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 12
     << "\" text-anchor=\"middle\">t (us)</text>\n";
  os << "<text x=\"16\" y=\"" << top + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << top + plot_h / 2 << ")\">occupation</text>\n</g>\n";

  struct Series {
    const std::vector<double>* values;
    const char* color;
    const char* label;
  };
  const Series series[] = {{&trace.rho_11, "#d62728", "rho_11"},
                           {&trace.rho_00, "#2ca02c", "rho_00"},
                           {&trace.rho_m1m1, "#1f77b4", "rho_-1-1"}};

  // Long traces are reduced to the min and max of each half-pixel column.
  const std::size_t buckets = static_cast<std::size_t>(2 * plot_w);
  for (const auto& s : series) {
    const auto& v = *s.values;
    os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1\" points=\"";
    auto emit = [&](std::size_t i) {
      os << format_fixed(px(t_us[i]), 2) << ',' << format_fixed(py(v[i]), 2) << ' ';
    };
    if (v.size() <= 2 * buckets) {
      for (std::size_t i = 0; i < v.size(); ++i) emit(i);
    } else {
      for (std::size_t b = 0; b < buckets; ++b) {
        const std::size_t begin = b * v.size() / buckets;
        const std::size_t end = (b + 1) * v.size() / buckets;
        if (begin >= end) continue;
        const auto [lo, hi] = std::minmax_element(v.begin() + static_cast<std::ptrdiff_t>(begin),
                                                  v.begin() + static_cast<std::ptrdiff_t>(end));
        const auto i_lo = static_cast<std::size_t>(lo - v.begin());
        const auto i_hi = static_cast<std::size_t>(hi - v.begin());
        emit(std::min(i_lo, i_hi));
        emit(std::max(i_lo, i_hi));
      }
    }
    os << "\"/>\n";
  }

  os << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  double ly = top + 10;
  for (const auto& s : series) {
    os << "<line x1=\"" << left + plot_w - 110 << "\" y1=\"" << ly << "\" x2=\""
       << left + plot_w - 85 << "\" y2=\"" << ly << "\" stroke=\"" << s.color
       << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << left + plot_w - 80 << "\" y=\"" << ly + 4 << "\">" << s.label
       << "</text>\n";
    ly += 16;
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

std::vector<EnvelopeReport> figure_envelopes(const RunConfig& config, const ModelParams& params,
                                             const PopulationTrace& trace) {
  const double window = 3.0 * rabi_period(params, n_bar(config.initial));
  std::vector<EnvelopeReport> out;
  for (const auto level : {DickeLevel::Up, DickeLevel::Mid, DickeLevel::Down}) {
    out.push_back(envelope(trace, level, window));
  }
  return out;
}

namespace {

struct Simulation {
  ModelParams params;
  std::vector<double> t_us;
  PopulationTrace trace;
};

Simulation simulate(const RunConfig& config) {
  Simulation sim;
  sim.params = model_params(config);
  sim.t_us = time_grid_us(config);
  std::vector<double> t_s(sim.t_us.size());
  std::transform(sim.t_us.begin(), sim.t_us.end(), t_s.begin(), [](double t) { return t * 1e-6; });
  sim.trace = populations(sim.params, config.initial, t_s, config.threads);
  return sim;
}

int run_simulate(const RunConfig& config, std::ostream& out) {
  const Simulation sim = simulate(config);
  write_file(config.out, format_csv(sim.trace, sim.t_us));
  if (!config.json.empty()) {
    write_file(config.json, metadata_json(config, sim.params, sim.trace));
  }
  if (!config.svg.empty()) {
    write_file(config.svg, render_svg(sim.trace, sim.t_us, "Dicke-level occupations"));
  }
  out << "wrote " << sim.trace.size() << " samples to " << config.out << " (n_max "
      << sim.params.n_max << ", tail_bound " << format_number(sim.trace.tail_bound) << ")\n";
  return kExitOk;
}

int run_verify(const RunConfig& config, std::ostream& out) {
  const ModelParams params = model_params(config);
  const std::vector<double> t_us = time_grid_us(config);
  std::vector<double> t_s(t_us.size());
  std::transform(t_us.begin(), t_us.end(), t_s.begin(), [](double t) { return t * 1e-6; });
  const OracleComparison cmp = compare_to_oracle(params, config.initial, t_s);
  const bool ok = cmp.max_abs_error <= config.tol;
  out << "max_abs_error " << format_number(cmp.max_abs_error) << " tol "
      << format_number(config.tol) << " n_max " << params.n_max << " oracle_n_max "
      << cmp.oracle_n_max << " points " << t_s.size() << " seconds "
      << format_fixed(cmp.seconds, 3) << (ok ? " PASS" : " FAIL") << "\n";
  return ok ? kExitOk : kExitMismatch;
}

int run_figure(const RunConfig& config, std::ostream& out) {
  RunConfig effective = preset_config(*config.figure);
  effective.mode = Mode::Simulate;
  effective.threads = config.threads;
  effective.tail_tol = config.tail_tol;
  effective.t_max_us = config.t_max_us;
  effective.t_points = config.t_points;
  default_figure_grid(effective);

  const std::string name(preset(*config.figure).name);
  const std::filesystem::path dir(config.out_dir);
  std::filesystem::create_directories(dir);
  effective.out = (dir / (name + ".csv")).string();

  const Simulation sim = simulate(effective);
  const auto envelopes = figure_envelopes(effective, sim.params, sim.trace);
  write_file(effective.out, format_csv(sim.trace, sim.t_us));
  write_file((dir / (name + ".json")).string(),
             metadata_json(effective, sim.params, sim.trace, &envelopes));
  write_file((dir / (name + ".svg")).string(), render_svg(sim.trace, sim.t_us, name));

  out << name << ": " << sim.trace.size() << " samples over " << format_fixed(effective.t_max_us, 1)
      << " us, n_max " << sim.params.n_max << "\n";
  for (const auto& e : envelopes) {
    out << "  " << level_key(e.level) << " collapse "
        << (e.collapse_found ? format_fixed(e.collapse_time * 1e6, 1) + " us" : "none")
        << ", revival "
        << (e.revival_found ? format_fixed(e.revival_time * 1e6, 1) + " us" : "none")
        << ", contrast " << format_fixed(e.contrast(), 3) << "\n";
  }
  return kExitOk;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    switch (config.mode) {
      case Mode::Simulate: return run_simulate(config, out);
      case Mode::Verify: return run_verify(config, out);
      case Mode::Figure: return run_figure(config, out);
    }
  } catch (const TruncationError& e) {
    err << "error: " << e.what() << "\nhint: pass --n-max " << e.required_n_max()
        << " or raise --tail-tol\n";
    return kExitTruncation;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::domain_error& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const InsufficientDataError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}

}  // namespace nljcm::cli
