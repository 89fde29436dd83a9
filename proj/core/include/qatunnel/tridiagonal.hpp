#pragma once

#include <cstddef>
#include <vector>

namespace qatunnel {

/// Real symmetric tridiagonal matrix. The single off-diagonal band is shared
/// by the upper and lower triangles.
struct TridiagonalOperator {
  std::vector<double> diagonal;      // size m
  std::vector<double> off_diagonal;  // size m - 1

  std::size_t dimension() const noexcept { return diagonal.size(); }

  /// Throws InvalidArgument unless the band lengths differ by exactly one.
  void validate() const;
};

}  // namespace qatunnel
