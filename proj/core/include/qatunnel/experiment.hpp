#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qatunnel/qmc.hpp"
#include "qatunnel/scaling.hpp"
#include "qatunnel/spectral.hpp"

namespace qatunnel {

enum class Mode { GapScan, GapScaling, QmcRun, SweepCurve, Correlate };

std::string_view to_string(Mode mode);
/// Accepts the subcommand spelling (`gap-scan`, ...).
Mode parse_mode(std::string_view text);

struct Cell {
  double alpha = 0.0;
  double c = 0.0;
};

/// Every knob of an experiment. Keys in config files and command-line flags
/// share the names listed in `config_keys()`.
struct ExperimentConfig {
  Mode mode = Mode::GapScan;
  double alpha = 0.5;
  double c = 1.0;
  std::optional<int> n;
  int n_min = 8;
  int n_max = 200;
  /// gap-scaling families; empty means the standard transition sweep.
  std::vector<double> alphas;
  /// correlate grid; empty means alpha in {0.3, 0.4} x c in {1, 2, 3}.
  std::vector<Cell> cells;
  /// correlate: keep only the smallest `max_sizes` valid n per cell (0 keeps all).
  int max_sizes = 0;

  double beta = 32.0;
  /// T = trotter_mult * n. Unset selects 16 for (alpha, c) = (0.5, 2) and 4 otherwise.
  std::optional<int> trotter_mult;
  double delta_s = 0.01;
  int window = 100;
  double threshold = 0.4;
  std::uint64_t sweep_cap = 1'000'000;
  AcceptanceRule acceptance = AcceptanceRule::HeatBath;
  int replicas = 30;
  std::uint64_t seed = 1;

  GapSearchOptions gap;
  std::string out = "-";
  unsigned workers = 1;

  void validate() const;
  int trotter_multiplier(double alpha, double c) const;
  QmcParams qmc_params(int n, double alpha, double c) const;
  std::vector<double> effective_alphas() const;
  std::vector<Cell> effective_cells() const;
};

using Settings = std::map<std::string, std::string, std::less<>>;

/// Recognized setting names.
const std::vector<std::string>& config_keys();

/// Parses `key = value` lines; `#` starts a comment, blank lines are skipped.
Settings parse_settings(std::string_view text);
Settings read_settings_file(const std::string& path);

/// Applies one setting; throws InvalidArgument for unknown keys or bad values.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

/// Defaults, then file settings, then flag settings (flags win).
ExperimentConfig make_config(Mode mode, const Settings& file, const Settings& flags);

/// Independent seed for one annealing replica of instance (alpha, c, n).
std::uint64_t replica_seed(std::uint64_t master, double alpha, double c, int n, int replica);

// ---- results ----------------------------------------------------------------

struct GapScanResult {
  double alpha = 0.0;
  double c = 0.0;
  std::vector<GapScanRow> rows;
  /// Present when at least two sizes were scanned.
  std::optional<LogLogFit> fit;
};

struct ReplicaRun {
  int replica = 0;
  std::uint64_t seed = 0;
  AnnealTrace trace;
};

struct QmcRunResult {
  double alpha = 0.0;
  double c = 0.0;
  int n = 0;
  QmcParams params;
  std::vector<ReplicaRun> runs;
};

struct CurvePoint {
  double s = 0.0;
  double mean_sweeps = 0.0;
  int replicas_used = 0;
};

struct SweepCurveResult {
  QmcRunResult runs;
  std::vector<CurvePoint> curve;
  /// Replica id and stuck s of every timed-out run.
  std::vector<std::pair<int, double>> timeouts;
};

struct CorrelationRow {
  double alpha = 0.0;
  double c = 0.0;
  int n = 0;
  int trotter_slices = 0;
  double g_min = 0.0;
  double inverse_gap_sq = 0.0;
  double mean_total_report_sweeps = 0.0;
  int completed_replicas = 0;
  int replicas = 0;
  bool timed_out = false;
};

struct CorrelationResult {
  std::vector<CorrelationRow> rows;
  /// Pearson coefficient of log sweeps against log g_min^-2 over rows that
  /// did not time out; empty when fewer than two such rows exist or either
  /// variable is constant.
  std::optional<double> coefficient;
};

GapScanResult run_gap_scan(const ExperimentConfig& cfg);
std::vector<AlphaScanEntry> run_gap_scaling(const ExperimentConfig& cfg);
QmcRunResult run_qmc(const ExperimentConfig& cfg, std::ostream* energy_dump = nullptr);
SweepCurveResult run_sweep_curve(const ExperimentConfig& cfg);
CorrelationResult run_correlation(const ExperimentConfig& cfg);

std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y);

void write_gap_scan_csv(std::ostream& os, const ExperimentConfig& cfg, const GapScanResult& result);
void write_gap_scaling_csv(std::ostream& os, const ExperimentConfig& cfg, const std::vector<AlphaScanEntry>& entries);
void write_qmc_run_csv(std::ostream& os, const ExperimentConfig& cfg, const QmcRunResult& result);
void write_sweep_curve_csv(std::ostream& os, const ExperimentConfig& cfg, const SweepCurveResult& result);
void write_correlation_csv(std::ostream& os, const ExperimentConfig& cfg, const CorrelationResult& result);

/// Runs cfg.mode and writes its CSV to `os`.
void run_experiment(const ExperimentConfig& cfg, std::ostream& os, std::ostream* energy_dump = nullptr);

}  // namespace qatunnel
