#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "nljcm/cli.hpp"

using namespace nljcm;
using namespace nljcm::cli;

namespace {

RunConfig fig1_simulate(const std::string& out, unsigned threads = 1) {
  RunConfig c = preset_config(FigureId::Fig1);
  c.mode = Mode::Simulate;
  c.t_max_us = 300.0;
  c.t_points = 401;
  c.threads = threads;
  c.out = out;
  return c;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "nljcm_test_cli";
  std::filesystem::create_directories(dir);
  return dir / name;
}

int run_quiet(const RunConfig& c) {
  std::ostringstream out, err;
  return run(c, out, err);
}

}  // namespace

TEST_CASE("presets carry the published parameters") {
  REQUIRE(presets().size() == 6);
  const auto& f1 = preset(FigureId::Fig1);
  CHECK(f1.eta == 0.1);
  CHECK(f1.k == 1);
  CHECK(f1.alpha_sq == 10.0);
  const auto& f3c = preset(FigureId::Fig3c);
  CHECK(f3c.eta == 0.4);
  CHECK(f3c.k == 2);
  CHECK(f3c.alpha_sq == 80.0);
  CHECK(parse_figure_id("fig2b") == FigureId::Fig2b);
  CHECK_FALSE(parse_figure_id("fig4").has_value());
  const auto c = preset_config(FigureId::Fig3a);
  CHECK(c.rabi_khz == kPresetRabiKhz);
  CHECK(c.initial.alpha_sq == 20.0);
}

TEST_CASE("format_csv: header and number format") {
  PopulationTrace tr;
  tr.times = {0.0, 1e-6};
  tr.rho_11 = {0.0, 0.125};
  tr.rho_00 = {0.0, 1.0 / 3.0};
  tr.rho_m1m1 = {1.0, 0.5416666666666666};
  tr.tail_bound = 2.5e-13;
  const std::string csv = format_csv(tr, {0.0, 1.0});
  CHECK(csv ==
        "t_us,rho_11,rho_00,rho_m1m1,tail_bound\n"
        "0.00000000000e+00,0.00000000000e+00,0.00000000000e+00,1.00000000000e+00,2.50000000000e-13\n"
        "1.00000000000e+00,1.25000000000e-01,3.33333333333e-01,5.41666666667e-01,2.50000000000e-13\n");
  CHECK_THROWS_AS(format_csv(tr, {0.0}), std::invalid_argument);
}

TEST_CASE("simulate: CSV is byte-identical across runs and thread counts") {
  const auto a = scratch("det_a.csv");
  const auto b = scratch("det_b.csv");
  const auto c = scratch("det_c.csv");
  REQUIRE(run_quiet(fig1_simulate(a.string(), 1)) == kExitOk);
  REQUIRE(run_quiet(fig1_simulate(b.string(), 1)) == kExitOk);
  REQUIRE(run_quiet(fig1_simulate(c.string(), 7)) == kExitOk);
  const std::string first = slurp(a);
  CHECK(first.size() > 1000);
  CHECK(first == slurp(b));
  CHECK(first == slurp(c));
}

TEST_CASE("simulate: metadata JSON reproduces the CSV") {
  const auto csv = scratch("rt.csv");
  const auto meta = scratch("rt.json");
  auto cfg = fig1_simulate(csv.string());
  cfg.initial = InitialMotionalState::fock(4);
  cfg.json = meta.string();
  REQUIRE(run_quiet(cfg) == kExitOk);

  auto again = config_from_metadata(slurp(meta));
  CHECK(again.initial.kind == InitialMotionalState::Kind::Fock);
  CHECK(again.initial.n0 == 4);
  const auto csv2 = scratch("rt2.csv");
  again.out = csv2.string();
  REQUIRE(run_quiet(again) == kExitOk);
  CHECK(slurp(csv) == slurp(csv2));

  CHECK_THROWS_AS(config_from_metadata("{"), std::invalid_argument);
  CHECK_THROWS_AS(config_from_metadata("{\"params\":{}}"), std::invalid_argument);
}

TEST_CASE("simulate: vacuum stays in the ground level") {
  const auto csv = scratch("vac.csv");
  auto cfg = fig1_simulate(csv.string());
  cfg.initial = InitialMotionalState::coherent(0.0);
  cfg.t_points = 11;
  REQUIRE(run_quiet(cfg) == kExitOk);
  std::istringstream is(slurp(csv));
  std::string line;
  std::getline(is, line);
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    CHECK(line.find(",0.00000000000e+00,0.00000000000e+00,1.00000000000e+00,") != std::string::npos);
  }
  CHECK(rows == 11);
}

TEST_CASE("run: exit codes") {
  auto cfg = fig1_simulate(scratch("codes.csv").string());
  auto bad = cfg;
  bad.eta = -0.1;
  CHECK(run_quiet(bad) == kExitUsage);
  bad = cfg;
  bad.out.clear();
  CHECK(run_quiet(bad) == kExitUsage);
  bad = cfg;
  bad.t_points = 1;
  CHECK(run_quiet(bad) == kExitUsage);

  auto trunc = cfg;
  trunc.n_max = 20;
  std::ostringstream out, err;
  CHECK(run(trunc, out, err) == kExitTruncation);
  CHECK(err.str().find("--n-max 49") != std::string::npos);

  RunConfig verify = preset_config(FigureId::Fig1);
  verify.mode = Mode::Verify;
  verify.t_max_us = 300.0;
  verify.t_points = 30;
  CHECK(run_quiet(verify) == kExitOk);
  verify.tol = 1e-30;
  CHECK(run_quiet(verify) == kExitMismatch);

  RunConfig fig;
  fig.mode = Mode::Figure;
  fig.figure = FigureId::Fig1;
  CHECK(run_quiet(fig) == kExitUsage);  // no out_dir
}

TEST_CASE("default_figure_grid: four revival times with dense sampling") {
  RunConfig c = preset_config(FigureId::Fig1);
  default_figure_grid(c);
  const auto p = model_params(c);
  CHECK(c.t_max_us == doctest::Approx(4e6 * first_order_revival_time(p, 10)));
  CHECK(c.t_points >= 2001);
  CHECK((c.t_points - 1) * rabi_period(p, 10) * 1e6 / c.t_max_us >= 40.0);
}

TEST_CASE("figure: writes csv, json with envelope, and svg") {
  const auto dir = scratch("fig");
  std::filesystem::remove_all(dir);
  RunConfig fig;
  fig.mode = Mode::Figure;
  fig.figure = FigureId::Fig1;
  fig.out_dir = dir.string();
  std::ostringstream out, err;
  REQUIRE(run(fig, out, err) == kExitOk);
  CHECK(std::filesystem::exists(dir / "fig1.csv"));
  const std::string meta = slurp(dir / "fig1.json");
  CHECK(meta.find("\"envelope\"") != std::string::npos);
  CHECK(meta.find("\"figure\": \"fig1\"") != std::string::npos);
  const std::string svg = slurp(dir / "fig1.svg");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("rho_00") != std::string::npos);
  CHECK(out.str().find("rho_00 collapse") != std::string::npos);
}

TEST_CASE("render_svg: one polyline per level") {
  PopulationTrace tr;
  tr.times = uniform_grid(1e-5, 5000);
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    tr.rho_11.push_back(0.0);
    tr.rho_00.push_back(0.5);
    tr.rho_m1m1.push_back(0.5);
  }
  std::vector<double> t_us;
  for (double t : tr.times) t_us.push_back(t * 1e6);
  const std::string svg = render_svg(tr, t_us, "title");
  std::size_t count = 0;
  for (auto pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1)) {
    ++count;
  }
  CHECK(count == 3);
  CHECK(svg.size() < 200000);
}
