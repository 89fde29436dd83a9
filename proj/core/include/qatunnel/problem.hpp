#pragma once

#include <string>
#include <vector>

#include "qatunnel/tridiagonal.hpp"

namespace qatunnel {

/// Hamming-weight cost with a rectangular barrier of height n^alpha covering
/// the open weight window (n/4 - c n^alpha / 2, n/4 + c n^alpha / 2).
///
/// Any n >= 1 can be constructed so that tiny oracle systems are expressible;
/// `validity_issues()` lists the reasons an instance falls outside the
/// experimental family (n >= 8, n divisible by 4, width below n/2).
class ProblemInstance {
 public:
  ProblemInstance(int n, double alpha, double c);

  int n() const noexcept { return n_; }
  double alpha() const noexcept { return alpha_; }
  double c() const noexcept { return c_; }
  double height() const noexcept { return height_; }
  double width() const noexcept { return c_ * height_; }
  double window_lo() const noexcept { return window_lo_; }
  double window_hi() const noexcept { return window_hi_; }

  std::vector<std::string> validity_issues() const;
  bool is_valid() const { return validity_issues().empty(); }
  /// Throws InvalidInstance carrying every issue.
  void require_valid() const;

  std::string describe() const;

 private:
  int n_;
  double alpha_;
  double c_;
  double height_;
  double window_lo_;
  double window_hi_;
};

/// f(h) for h = 0..n.
using CostTable = std::vector<double>;

double barrier(int z, const ProblemInstance& inst);
double cost(int h, const ProblemInstance& inst);
CostTable cost_table(const ProblemInstance& inst);

/// Sizes in [n_min, n_max] at which the integer barrier width has just grown:
/// n % 4 == 0, floor(1 + c n^a) > floor(1 + c (n-4)^a), c n^a < n/2.
/// Sizes below 8 are never returned.
std::vector<int> valid_sizes(double alpha, double c, int n_min, int n_max);

/// Symmetric-subspace Hamiltonian (1-s) H0 + s H1 in the Hamming-weight basis.
TridiagonalOperator tridiagonal_coefficients(const ProblemInstance& inst, double s);

}  // namespace qatunnel
