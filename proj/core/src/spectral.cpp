#include "qatunnel/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "qatunnel/csv.hpp"
#include "qatunnel/error.hpp"

namespace qatunnel {

namespace {

double pivot_floor(const TridiagonalOperator& op) {
  double max_e2 = 1.0;
  for (double e : op.off_diagonal) max_e2 = std::max(max_e2, e * e);
  return std::numeric_limits<double>::min() * max_e2;
}

std::size_t sturm_count(const TridiagonalOperator& op, double lambda, double pivmin) {
  const std::size_t m = op.diagonal.size();
  std::size_t negatives = 0;
  double q = op.diagonal[0] - lambda;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++negatives;
  for (std::size_t i = 1; i < m; ++i) {
    const double e = op.off_diagonal[i - 1];
    q = op.diagonal[i] - lambda - (e * e) / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++negatives;
  }
  return negatives;
}

// Widened Gershgorin interval so that count(lo) == 0 and count(hi) == m.
std::pair<double, double> bracket(const TridiagonalOperator& op) {
  auto [lo, hi] = gershgorin_bounds(op);
  const double pad = 2.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi)) +
                     std::numeric_limits<double>::min();
  return {lo - pad, hi + pad};
}

// Absolute resolution floor; keeps bisection toward an exact zero eigenvalue
// from descending through the subnormal range.
double absolute_floor(const TridiagonalOperator& op) {
  const auto [lo, hi] = gershgorin_bounds(op);
  return 1e-3 * std::numeric_limits<double>::epsilon() * std::max({std::abs(lo), std::abs(hi), 1.0});
}

bool can_split(double lo, double hi, double abs_floor) {
  const double mid = lo + 0.5 * (hi - lo);
  return mid > lo && mid < hi && (hi - lo) > abs_floor;
}

}  // namespace

std::size_t count_eigenvalues_below(const TridiagonalOperator& op, double lambda) {
  op.validate();
  return sturm_count(op, lambda, pivot_floor(op));
}

std::pair<double, double> gershgorin_bounds(const TridiagonalOperator& op) {
  op.validate();
  const std::size_t m = op.diagonal.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(op.off_diagonal[i - 1]);
    if (i + 1 < m) radius += std::abs(op.off_diagonal[i]);
    lo = std::min(lo, op.diagonal[i] - radius);
    hi = std::max(hi, op.diagonal[i] + radius);
  }
  return {lo, hi};
}

double kth_eigenvalue(const TridiagonalOperator& op, std::size_t k) {
  op.validate();
  if (k >= op.dimension()) throw InvalidArgument("eigenvalue index exceeds operator dimension");
  const double pivmin = pivot_floor(op);
  const double resolution = absolute_floor(op);
  auto [lo, hi] = bracket(op);
  while (can_split(lo, hi, resolution)) {
    const double mid = lo + 0.5 * (hi - lo);
    if (sturm_count(op, mid, pivmin) > k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

EigenPair lowest_two_eigenvalues(const TridiagonalOperator& op) {
  op.validate();
  if (op.dimension() < 2) throw InvalidArgument("need at least two levels for a gap");
  const double pivmin = pivot_floor(op);
  const double resolution = absolute_floor(op);
  auto [lo0, hi0] = bracket(op);
  double lo1 = lo0;
  double hi1 = hi0;

  // Bisect the ground level; every count also tightens the bracket of the
  // first excited level.
  while (can_split(lo0, hi0, resolution)) {
    const double mid = lo0 + 0.5 * (hi0 - lo0);
    const std::size_t below = sturm_count(op, mid, pivmin);
    if (below >= 1) {
      hi0 = mid;
      if (below >= 2) {
        hi1 = std::min(hi1, mid);
      } else {
        lo1 = std::max(lo1, mid);
      }
    } else {
      lo0 = mid;
      lo1 = std::max(lo1, mid);
    }
  }
  while (can_split(lo1, hi1, resolution)) {
    const double mid = lo1 + 0.5 * (hi1 - lo1);
    if (sturm_count(op, mid, pivmin) >= 2) {
      hi1 = mid;
    } else {
      lo1 = mid;
    }
  }
  return {lo0 + 0.5 * (hi0 - lo0), lo1 + 0.5 * (hi1 - lo1)};
}

GapPoint gap_at(const ProblemInstance& inst, double s) {
  const TridiagonalOperator op = tridiagonal_coefficients(inst, s);
  const EigenPair pair = lowest_two_eigenvalues(op);
  const auto [lo, hi] = gershgorin_bounds(op);
  const double span = std::max(hi - lo, std::numeric_limits<double>::min());
  const double gap = pair.second - pair.lowest;
  if (!(gap >= 1e-13 * span)) {
    throw DegenerateSpectrum(inst.describe() + ": gap " + csv::format(gap) + " at s=" + csv::format(s) +
                             " is below numerical resolution");
  }
  return {pair.lowest, gap};
}

std::pair<double, double> refine_gap_minimum(const ProblemInstance& inst, double lo, double hi,
                                             const GapSearchOptions& options) {
  constexpr double kInvPhi = 0.6180339887498948482;
  const auto gap_of = [&](double s) { return gap_at(inst, s).gap; };

  double a = lo;
  double b = hi;
  double ga = gap_of(a);
  double gb = gap_of(b);
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double g1 = gap_of(x1);
  double g2 = gap_of(x2);

  for (int iter = 0; iter < 400; ++iter) {
    const double best = std::min(g1, g2);
    const bool narrow = (b - a) < options.refine_tol;
    const bool flat = std::max(ga, gb) - best <= options.value_rel_tol * best;
    if (narrow && flat) break;
    if (!can_split(a, b, 0.0) || (b - a) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(b)) break;
    if (g1 <= g2) {
      b = x2;
      gb = g2;
      x2 = x1;
      g2 = g1;
      x1 = b - kInvPhi * (b - a);
      g1 = gap_of(x1);
    } else {
      a = x1;
      ga = g1;
      x1 = x2;
      g1 = g2;
      x2 = a + kInvPhi * (b - a);
      g2 = gap_of(x2);
    }
  }
  return g1 <= g2 ? std::pair{x1, g1} : std::pair{x2, g2};
}

GapProfile minimize_gap(const ProblemInstance& inst, const GapSearchOptions& options) {
  if (!(options.coarse_step > 0.0 && options.coarse_step <= 0.01)) {
    throw InvalidArgument("coarse_step must lie in (0, 0.01]");
  }
  if (!(options.refine_tol > 0.0)) throw InvalidArgument("refine_tol must be positive");

  GapProfile profile;
  profile.n = inst.n();
  profile.alpha = inst.alpha();
  profile.c = inst.c();

  const auto intervals = static_cast<std::size_t>(std::ceil(1.0 / options.coarse_step - 1e-9));
  profile.s_values.reserve(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    profile.s_values.push_back(i == intervals ? 1.0 : static_cast<double>(i) * options.coarse_step);
  }
  for (double s : profile.s_values) {
    const GapPoint p = gap_at(inst, s);
    profile.ground_energy.push_back(p.ground);
    profile.gap.push_back(p.gap);
  }

  const auto& g = profile.gap;
  const std::size_t last = g.size() - 1;
  const std::size_t coarse_best =
      static_cast<std::size_t>(std::min_element(g.begin(), g.end()) - g.begin());
  double best_s = profile.s_values[coarse_best];
  double best_g = g[coarse_best];
  bool best_refined = false;

  for (std::size_t i = 1; i < last; ++i) {
    if (!(g[i] < g[i - 1] && g[i] <= g[i + 1])) continue;
    ++profile.refined_minima;
    const auto [s, value] = refine_gap_minimum(inst, profile.s_values[i - 1], profile.s_values[i + 1], options);
    const double candidate = std::min(value, g[i]);
    if (candidate < best_g || (candidate == best_g && !best_refined)) {
      best_g = candidate;
      best_s = value <= g[i] ? s : profile.s_values[i];
      best_refined = true;
    }
  }
  if (!best_refined) {
    throw GapSearchFailure(inst.describe() + ": smallest gap lies on the s boundary at s=" + csv::format(best_s) +
                           " and cannot be bracketed");
  }
  profile.s_min = best_s;
  profile.g_min = best_g;
  return profile;
}

void write_gap_profile_csv(std::ostream& os, const GapProfile& profile) {
  csv::write_metadata(os, {{"n", csv::format(profile.n)},
                           {"alpha", csv::format(profile.alpha)},
                           {"c", csv::format(profile.c)},
                           {"s_min", csv::format(profile.s_min)},
                           {"g_min", csv::format(profile.g_min)}});
  csv::write_header(os, {"s", "ground_energy", "gap"});
  for (std::size_t i = 0; i < profile.s_values.size(); ++i) {
    csv::row(os, profile.s_values[i], profile.ground_energy[i], profile.gap[i]);
  }
}

std::size_t schedule_steps(double delta_s) {
  if (!(delta_s > 0.0 && delta_s <= 0.1)) throw InvalidArgument("delta_s must lie in (0, 0.1]");
  const double inv = 1.0 / delta_s;
  const double rounded = std::round(inv);
  if (std::abs(inv - rounded) > 1e-9 * rounded) throw InvalidArgument("1/delta_s must be an integer");
  return static_cast<std::size_t>(rounded);
}

GapTable::GapTable(const ProblemInstance& inst, double delta_s) : delta_s_(delta_s) {
  const std::size_t steps = schedule_steps(delta_s);
  points_.reserve(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    points_.push_back(gap_at(inst, static_cast<double>(k) / static_cast<double>(steps)));
  }
}

}  // namespace qatunnel
