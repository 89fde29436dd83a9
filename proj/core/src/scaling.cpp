#include "qatunnel/scaling.hpp"

#include <cmath>
#include <numeric>

#include "qatunnel/error.hpp"
#include "qatunnel/parallel.hpp"

namespace qatunnel {

ScalingSeries ScalingSeries::from(std::vector<int> n_values, std::vector<double> g_min_values) {
  if (n_values.size() != g_min_values.size()) throw InvalidArgument("scaling series length mismatch");
  ScalingSeries series;
  series.log_n.reserve(n_values.size());
  series.log_g.reserve(n_values.size());
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] <= 0) throw InvalidArgument("scaling series requires positive n");
    if (!(g_min_values[i] > 0.0)) throw InvalidArgument("scaling series requires positive gaps");
    series.log_n.push_back(std::log(static_cast<double>(n_values[i])));
    series.log_g.push_back(std::log(g_min_values[i]));
  }
  series.n_values = std::move(n_values);
  series.g_min_values = std::move(g_min_values);
  return series;
}

LogLogFit loglog_fit(const ScalingSeries& series) {
  const std::size_t m = series.size();
  if (m < 2) throw InvalidArgument("log-log fit needs at least two points");
  const double count = static_cast<double>(m);
  const double mean_x = std::accumulate(series.log_n.begin(), series.log_n.end(), 0.0) / count;
  const double mean_y = std::accumulate(series.log_g.begin(), series.log_g.end(), 0.0) / count;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double dx = series.log_n[i] - mean_x;
    sxx += dx * dx;
    sxy += dx * (series.log_g[i] - mean_y);
  }
  if (!(sxx > 0.0)) throw InvalidArgument("log-log fit needs at least two distinct n");

  LogLogFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  fit.residuals.reserve(m);
  // Centered form keeps the residual sum at rounding level.
  for (std::size_t i = 0; i < m; ++i) {
    fit.residuals.push_back((series.log_g[i] - mean_y) - fit.slope * (series.log_n[i] - mean_x));
  }
  return fit;
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::Superpolynomial:
      return "superpolynomial";
    case Classification::PolynomialConsistent:
      return "polynomial-consistent";
    case Classification::SubpolynomialTrend:
      return "subpolynomial-trend";
  }
  return "unknown";
}

Classification classify(double mean_curvature, double std_error) {
  if (mean_curvature + std_error < 0.0) return Classification::Superpolynomial;
  if (mean_curvature - std_error > 0.0) return Classification::SubpolynomialTrend;
  return Classification::PolynomialConsistent;
}

CurvatureVerdict residual_curvature(const ScalingSeries& series) {
  const std::size_t m = series.size();
  if (m < 4) throw InvalidArgument("residual curvature needs at least four points");
  for (std::size_t i = 1; i < m; ++i) {
    if (!(series.log_n[i] > series.log_n[i - 1])) {
      throw InvalidArgument("residual curvature needs strictly increasing, duplicate-free n");
    }
  }
  const LogLogFit fit = loglog_fit(series);
  CurvatureVerdict verdict;
  verdict.slope = fit.slope;
  verdict.intercept = fit.intercept;
  verdict.residuals = fit.residuals;

  const auto& x = series.log_n;
  const auto& r = fit.residuals;
  for (std::size_t i = 1; i + 1 < m; ++i) {
    const double h1 = x[i] - x[i - 1];
    const double h2 = x[i + 1] - x[i];
    verdict.second_derivatives.push_back(2.0 * (h1 * r[i + 1] - (h1 + h2) * r[i] + h2 * r[i - 1]) /
                                         (h1 * h2 * (h1 + h2)));
  }
  const auto& d2 = verdict.second_derivatives;
  const double k = static_cast<double>(d2.size());
  verdict.mean_curvature = std::accumulate(d2.begin(), d2.end(), 0.0) / k;
  double ss = 0.0;
  for (double v : d2) ss += (v - verdict.mean_curvature) * (v - verdict.mean_curvature);
  verdict.std_error = std::sqrt(ss / (k - 1.0)) / std::sqrt(k);
  verdict.classification = classify(verdict.mean_curvature, verdict.std_error);
  return verdict;
}

std::vector<GapScanRow> scan_gap_minima(double alpha, double c, std::span<const int> sizes,
                                        const GapSearchOptions& options, unsigned workers) {
  return parallel_map(sizes.size(), workers, [&](std::size_t i) {
    const ProblemInstance inst(sizes[i], alpha, c);
    const GapProfile profile = minimize_gap(inst, options);
    return GapScanRow{sizes[i], profile.s_min, profile.g_min};
  });
}

std::vector<AlphaScanEntry> alpha_transition_scan(std::span<const double> alphas, double c, int n_min, int n_max,
                                                  const GapSearchOptions& options, unsigned workers) {
  // Flatten (alpha, n) so that workers stay busy across alphas with few sizes.
  std::vector<std::vector<int>> sizes_per_alpha;
  std::vector<std::pair<std::size_t, int>> jobs;
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    sizes_per_alpha.push_back(valid_sizes(alphas[a], c, n_min, n_max));
    for (int n : sizes_per_alpha.back()) jobs.emplace_back(a, n);
  }
  const auto minima = parallel_map(jobs.size(), workers, [&](std::size_t j) {
    const auto [a, n] = jobs[j];
    const GapProfile profile = minimize_gap(ProblemInstance(n, alphas[a], c), options);
    return GapScanRow{n, profile.s_min, profile.g_min};
  });

  std::vector<AlphaScanEntry> entries;
  std::size_t j = 0;
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    AlphaScanEntry entry;
    entry.alpha = alphas[a];
    for (std::size_t k = 0; k < sizes_per_alpha[a].size(); ++k) entry.rows.push_back(minima[j++]);
    if (entry.rows.size() < 4) {
      entry.skipped_reason = "only " + std::to_string(entry.rows.size()) + " valid sizes in [" +
                             std::to_string(n_min) + ", " + std::to_string(n_max) + "]";
    } else {
      std::vector<int> ns;
      std::vector<double> gs;
      for (const auto& row : entry.rows) {
        ns.push_back(row.n);
        gs.push_back(row.g_min);
      }
      entry.verdict = residual_curvature(ScalingSeries::from(std::move(ns), std::move(gs)));
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

}  // namespace qatunnel
