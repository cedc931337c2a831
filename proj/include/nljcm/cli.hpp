#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nljcm/analysis.hpp"
#include "nljcm/dynamics.hpp"

namespace nljcm::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitTruncation = 3,
  kExitMismatch = 4,
  kExitNumerical = 5,
};

enum class Mode { Simulate, Verify, Figure };

enum class FigureId { Fig1, Fig2a, Fig2b, Fig3a, Fig3b, Fig3c };

/// Published parameter bundle of one figure. Omega/2pi is 500 kHz throughout.
struct Preset {
  FigureId id;
  std::string_view name;
  double eta;
  int k;
  double alpha_sq;
};

inline constexpr double kPresetRabiKhz = 500.0;

const std::vector<Preset>& presets();
std::optional<FigureId> parse_figure_id(std::string_view name);
const Preset& preset(FigureId id);

/// Everything one invocation needs, in user units (microseconds, kHz).
struct RunConfig {
  Mode mode = Mode::Simulate;
  double eta = 0.0;
  double rabi_khz = 0.0;  ///< Omega / 2pi
  int k = 1;
  InitialMotionalState initial;
  double t_max_us = 0.0;
  int t_points = 0;
  std::optional<int> n_max;  ///< automatic truncation when empty
  double tail_tol = 1e-12;
  double tol = 1e-8;  ///< verify: allowed max absolute population error
  unsigned threads = 1;
  std::optional<FigureId> figure;
  std::string out;      ///< CSV path (simulate)
  std::string json;     ///< optional metadata path (simulate)
  std::string svg;      ///< optional chart path (simulate)
  std::string out_dir;  ///< figure output directory

  /// Throws std::invalid_argument with an actionable message.
  void validate() const;
};

/// Physical fields of a figure preset; t_max_us and t_points are left at 0
/// (see default_figure_grid).
RunConfig preset_config(FigureId id);

/// Physical model in SI units with n_max resolved by the truncation rule
/// unless the config pins it.
ModelParams model_params(const RunConfig& config);

/// t_max = 4 x first-order revival time at n_bar = |alpha|^2, sampled with
/// at least 40 points per Rabi period of the n_bar chain.
void default_figure_grid(RunConfig& config);

/// Time grid in microseconds, t_i = t_max_us * i / (t_points - 1).
std::vector<double> time_grid_us(const RunConfig& config);

/// CSV with header t_us,rho_11,rho_00,rho_m1m1,tail_bound; 12 significant
/// digits in scientific notation; LF line endings.
std::string format_csv(const PopulationTrace& trace, const std::vector<double>& t_us);

/// Metadata document {params, initial, grid, tail_bound, envelope?}.
std::string metadata_json(const RunConfig& config, const ModelParams& params,
                          const PopulationTrace& trace,
                          const std::vector<EnvelopeReport>* envelopes = nullptr);

/// Simulate config equivalent to a metadata document written by metadata_json.
RunConfig config_from_metadata(std::string_view json_text);

/// Static line chart of the three occupations.
std::string render_svg(const PopulationTrace& trace, const std::vector<double>& t_us,
                       std::string_view title);

/// Envelope of every level with windows of three Rabi periods at n_bar.
std::vector<EnvelopeReport> figure_envelopes(const RunConfig& config, const ModelParams& params,
                                             const PopulationTrace& trace);

/// Executes one command; diagnostics go to `err`, summaries to `out`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace nljcm::cli
