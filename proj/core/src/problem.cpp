#include "qatunnel/problem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qatunnel/error.hpp"

namespace qatunnel {

void TridiagonalOperator::validate() const {
  if (diagonal.empty()) throw InvalidArgument("tridiagonal operator has no diagonal");
  if (off_diagonal.size() + 1 != diagonal.size()) {
    throw InvalidArgument("tridiagonal bands must differ in length by exactly one");
  }
}

ProblemInstance::ProblemInstance(int n, double alpha, double c) : n_(n), alpha_(alpha), c_(c) {
  if (n < 1) throw InvalidArgument("qubit count must be positive, got " + std::to_string(n));
  if (!std::isfinite(alpha)) throw InvalidArgument("alpha must be finite");
  if (!std::isfinite(c) || c < 0.0) throw InvalidArgument("width coefficient c must be finite and >= 0");
  height_ = std::pow(static_cast<double>(n), alpha);
  const double quarter = static_cast<double>(n) / 4.0;
  window_lo_ = quarter - 0.5 * c * height_;
  window_hi_ = quarter + 0.5 * c * height_;
}

std::vector<std::string> ProblemInstance::validity_issues() const {
  std::vector<std::string> issues;
  if (n_ < 8) issues.push_back("n must be at least 8");
  if (n_ % 4 != 0) issues.push_back("n must be divisible by 4");
  if (!(c_ > 0.0)) issues.push_back("c must be positive");
  if (!(width() < static_cast<double>(n_) / 2.0)) {
    issues.push_back("barrier width c*n^alpha must be below n/2");
  }
  const double quarter = static_cast<double>(n_) / 4.0;
  if (!(window_lo_ < quarter && quarter < window_hi_)) {
    issues.push_back("barrier window must straddle n/4");
  }
  if (!(height_ > 0.0)) issues.push_back("barrier height must be positive");
  return issues;
}

void ProblemInstance::require_valid() const {
  const auto issues = validity_issues();
  if (issues.empty()) return;
  std::string msg = describe() + " is invalid:";
  for (const auto& issue : issues) msg += " " + issue + ";";
  msg.pop_back();
  throw InvalidInstance(msg);
}

std::string ProblemInstance::describe() const {
  std::ostringstream os;
  os << "instance(n=" << n_ << ", alpha=" << alpha_ << ", c=" << c_ << ")";
  return os.str();
}

namespace {

void check_weight(int z, const ProblemInstance& inst) {
  if (z < 0 || z > inst.n()) {
    throw InvalidArgument("Hamming weight " + std::to_string(z) + " outside [0, " +
                          std::to_string(inst.n()) + "]");
  }
}

}  // namespace

double barrier(int z, const ProblemInstance& inst) {
  check_weight(z, inst);
  const double x = static_cast<double>(z);
  return (inst.window_lo() < x && x < inst.window_hi()) ? inst.height() : 0.0;
}

double cost(int h, const ProblemInstance& inst) {
  return static_cast<double>(h) + barrier(h, inst);
}

CostTable cost_table(const ProblemInstance& inst) {
  CostTable values(static_cast<std::size_t>(inst.n()) + 1);
  for (int h = 0; h <= inst.n(); ++h) values[static_cast<std::size_t>(h)] = cost(h, inst);
  return values;
}

std::vector<int> valid_sizes(double alpha, double c, int n_min, int n_max) {
  if (n_min > n_max) throw InvalidArgument("valid_sizes requires n_min <= n_max");
  std::vector<int> sizes;
  int first = std::max(n_min, 8);
  first += (4 - first % 4) % 4;
  for (int n = first; n <= n_max; n += 4) {
    const double w = c * std::pow(static_cast<double>(n), alpha);
    const double w_prev = c * std::pow(static_cast<double>(n - 4), alpha);
    if (std::floor(1.0 + w) > std::floor(1.0 + w_prev) && w < static_cast<double>(n) / 2.0) {
      sizes.push_back(n);
    }
  }
  return sizes;
}

TridiagonalOperator tridiagonal_coefficients(const ProblemInstance& inst, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw InvalidArgument("interpolation parameter s must lie in [0, 1]");
  const int n = inst.n();
  const double nd = static_cast<double>(n);
  TridiagonalOperator op;
  op.diagonal.resize(static_cast<std::size_t>(n) + 1);
  op.off_diagonal.resize(static_cast<std::size_t>(n));
  const CostTable f = cost_table(inst);
  for (int h = 0; h <= n; ++h) {
    op.diagonal[static_cast<std::size_t>(h)] = (1.0 - s) * nd / 2.0 + s * f[static_cast<std::size_t>(h)];
  }
  for (int h = 0; h < n; ++h) {
    const double hop = std::sqrt(static_cast<double>(h + 1) * static_cast<double>(n - h));
    op.off_diagonal[static_cast<std::size_t>(h)] = -(1.0 - s) / 2.0 * hop;
  }
  return op;
}

}  // namespace qatunnel
