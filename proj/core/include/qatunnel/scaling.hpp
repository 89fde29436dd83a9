#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qatunnel/spectral.hpp"

namespace qatunnel {

/// (n, g_min) pairs with their natural logarithms.
struct ScalingSeries {
  std::vector<int> n_values;
  std::vector<double> g_min_values;
  std::vector<double> log_n;
  std::vector<double> log_g;

  /// Throws InvalidArgument on length mismatch or non-positive entries.
  static ScalingSeries from(std::vector<int> n_values, std::vector<double> g_min_values);
  std::size_t size() const noexcept { return n_values.size(); }
};

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<double> residuals;
};

/// Ordinary least squares of log g_min on log n.
LogLogFit loglog_fit(const ScalingSeries& series);

enum class Classification { Superpolynomial, PolynomialConsistent, SubpolynomialTrend };

std::string_view to_string(Classification c);

struct CurvatureVerdict {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<double> residuals;
  /// Second derivative of the residuals with respect to log n at each
  /// interior point.
  std::vector<double> second_derivatives;
  double mean_curvature = 0.0;
  double std_error = 0.0;
  Classification classification = Classification::PolynomialConsistent;
};

/// Three-point second derivatives on the non-uniform log n grid, averaged,
/// with standard error sd/sqrt(count). Requires at least 4 points.
CurvatureVerdict residual_curvature(const ScalingSeries& series);

Classification classify(double mean_curvature, double std_error);

/// Per-n gap minima for one (alpha, c) family.
struct GapScanRow {
  int n = 0;
  double s_min = 0.0;
  double g_min = 0.0;
};

/// Runs minimize_gap for every n, dispatched over `workers` threads; rows are
/// returned in the order of `sizes`.
std::vector<GapScanRow> scan_gap_minima(double alpha, double c, std::span<const int> sizes,
                                        const GapSearchOptions& options, unsigned workers);

struct AlphaScanEntry {
  double alpha = 0.0;
  std::vector<GapScanRow> rows;
  std::optional<CurvatureVerdict> verdict;
  /// Set when the alpha had too few valid sizes to classify.
  std::string skipped_reason;
};

std::vector<AlphaScanEntry> alpha_transition_scan(std::span<const double> alphas, double c, int n_min, int n_max,
                                                  const GapSearchOptions& options, unsigned workers);

}  // namespace qatunnel
