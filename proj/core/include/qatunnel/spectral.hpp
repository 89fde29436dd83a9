#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "qatunnel/problem.hpp"
#include "qatunnel/tridiagonal.hpp"

namespace qatunnel {

struct EigenPair {
  double lowest = 0.0;
  double second = 0.0;
};

/// Number of eigenvalues of `op` strictly below `lambda` (Sturm sequence /
/// LDL^T inertia count).
std::size_t count_eigenvalues_below(const TridiagonalOperator& op, double lambda);

/// Gershgorin interval [lo, hi] enclosing the spectrum.
std::pair<double, double> gershgorin_bounds(const TridiagonalOperator& op);

/// k-th smallest eigenvalue (k = 0 is the ground level) by bisection on the
/// eigenvalue count, iterated until the bracket stops shrinking in double
/// precision.
double kth_eigenvalue(const TridiagonalOperator& op, std::size_t k);

/// The two lowest eigenvalues. Requires dimension >= 2.
EigenPair lowest_two_eigenvalues(const TridiagonalOperator& op);

struct GapPoint {
  double ground = 0.0;
  double gap = 0.0;
};

/// Ground energy and spectral gap of the symmetric-subspace Hamiltonian at s.
/// Throws DegenerateSpectrum if the gap is below 1e-13 of the spectral span.
GapPoint gap_at(const ProblemInstance& inst, double s);

struct GapProfile {
  int n = 0;
  double alpha = 0.0;
  double c = 0.0;
  std::vector<double> s_values;
  std::vector<double> ground_energy;
  std::vector<double> gap;
  double s_min = 0.0;
  double g_min = 0.0;
  /// Number of coarse-grid local minima that were refined.
  std::size_t refined_minima = 0;
};

struct GapSearchOptions {
  double coarse_step = 1e-3;
  /// Upper bound on the final s-bracket width.
  double refine_tol = 1e-6;
  /// Golden-section refinement also continues until the two interior gap
  /// samples agree to this relative tolerance, which resolves avoided
  /// crossings far narrower than refine_tol.
  double value_rel_tol = 1e-9;
};

/// Coarse uniform scan in s followed by golden-section refinement of every
/// interior local minimum of the scan. Throws GapSearchFailure when the
/// smallest coarse gap sits at s = 0 or s = 1.
GapProfile minimize_gap(const ProblemInstance& inst, const GapSearchOptions& options = {});

/// Golden-section search for a minimum of g(s) on [lo, hi].
std::pair<double, double> refine_gap_minimum(const ProblemInstance& inst, double lo, double hi,
                                             const GapSearchOptions& options);

/// Writes `# n,alpha,c,s_min,g_min` metadata and the `s,ground_energy,gap` table.
void write_gap_profile_csv(std::ostream& os, const GapProfile& profile);

/// E_GS(s) and g(s) at every multiple of delta_s, computed once and shared by
/// annealing replicas.
class GapTable {
 public:
  GapTable(const ProblemInstance& inst, double delta_s);

  std::size_t steps() const noexcept { return points_.size() - 1; }
  double delta_s() const noexcept { return delta_s_; }
  double s_at(std::size_t k) const noexcept { return static_cast<double>(k) / static_cast<double>(steps()); }
  const GapPoint& at(std::size_t k) const { return points_.at(k); }
  std::span<const GapPoint> points() const noexcept { return points_; }

 private:
  double delta_s_;
  std::vector<GapPoint> points_;
};

/// Number of schedule steps 1/delta_s; throws unless it is a positive integer.
std::size_t schedule_steps(double delta_s);

}  // namespace qatunnel
