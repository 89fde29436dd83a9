#include "qatunnel/oracle.hpp"

#include <lapacke.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

#include "qatunnel/error.hpp"

namespace qatunnel::oracle {

namespace {

void check_s(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw InvalidArgument("interpolation parameter s must lie in [0, 1]");
}

// (1-s) n/2 + s f(|x|), evaluated straight from the barrier definition.
double diagonal_energy(const ProblemInstance& inst, double s, std::uint64_t x) {
  const int weight = std::popcount(x);
  const double n = static_cast<double>(inst.n());
  const double height = std::pow(n, inst.alpha());
  const double lo = n / 4.0 - 0.5 * inst.c() * height;
  const double hi = n / 4.0 + 0.5 * inst.c() * height;
  const double h = static_cast<double>(weight);
  const double f = h + ((lo < h && h < hi) ? height : 0.0);
  return (1.0 - s) * n / 2.0 + s * f;
}

// Pairwise summation with a fixed tree shape.
double pairwise_sum(const double* values, std::size_t count) {
  if (count <= 8) {
    double total = 0.0;
    for (std::size_t i = 0; i < count; ++i) total += values[i];
    return total;
  }
  const std::size_t half = count / 2;
  return pairwise_sum(values, half) + pairwise_sum(values + half, count - half);
}

}  // namespace

std::size_t DenseSpectrum::multiplicity(double value, double tol) const {
  return static_cast<std::size_t>(std::count_if(eigenvalues.begin(), eigenvalues.end(),
                                                [&](double e) { return std::abs(e - value) <= tol; }));
}

double DenseSpectrum::thermal_trace(double beta) const {
  std::vector<double> terms;
  terms.reserve(eigenvalues.size());
  for (double e : eigenvalues) terms.push_back(std::exp(-beta * e));
  return pairwise_sum(terms.data(), terms.size());
}

std::vector<double> dense_hamiltonian(const ProblemInstance& inst, double s) {
  check_s(s);
  if (inst.n() > kDenseMaxQubits) throw InvalidArgument("dense oracle is limited to n <= 12");
  const std::size_t dim = std::size_t{1} << inst.n();
  std::vector<double> h(dim * dim, 0.0);
  const double hop = -(1.0 - s) / 2.0;
  for (std::size_t x = 0; x < dim; ++x) {
    h[x * dim + x] = diagonal_energy(inst, s, x);
    for (int b = 0; b < inst.n(); ++b) h[x * dim + (x ^ (std::size_t{1} << b))] = hop;
  }
  return h;
}

DenseSpectrum dense_spectrum(const ProblemInstance& inst, double s) {
  std::vector<double> h = dense_hamiltonian(inst, s);
  const std::size_t dim = std::size_t{1} << inst.n();
  DenseSpectrum spectrum;
  spectrum.eigenvalues.resize(dim);
  if (s == 1.0) {
    // Purely diagonal; the spectrum is the sorted diagonal.
    for (std::size_t x = 0; x < dim; ++x) spectrum.eigenvalues[x] = h[x * dim + x];
    std::sort(spectrum.eigenvalues.begin(), spectrum.eigenvalues.end());
    return spectrum;
  }
  const auto order = static_cast<lapack_int>(dim);
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_ROW_MAJOR, 'N', 'U', order, h.data(), order, spectrum.eigenvalues.data());
  if (info != 0) throw Error("lapack_failure", "dsyevd failed with info=" + std::to_string(info));
  return spectrum;
}

TrotterEnumeration exact_trotter_partition(const ProblemInstance& inst, double s, const QmcParams& params) {
  check_s(s);
  params.validate();
  const int n = inst.n();
  const int t = params.trotter_slices;
  if (n * t > kEnumerationMaxBits) throw InvalidArgument("enumeration oracle is limited to n*T <= 18");

  const double eps = params.beta / static_cast<double>(t);
  const double a = eps * (1.0 - s) / 2.0;
  const double ep = std::exp(a);
  const double em = std::exp(-a);
  const std::uint64_t slice_mask = (std::uint64_t{1} << n) - 1;
  const std::size_t count = std::size_t{1} << (n * t);

  TrotterEnumeration result;
  std::vector<double> log_weights(count, -std::numeric_limits<double>::infinity());
  result.energies.assign(count, 0.0);

  for (std::uint64_t code = 0; code < count; ++code) {
    double lw = 0.0;
    double e_diag = 0.0;
    double e_off = 0.0;
    bool zero = false;
    for (int tau = 0; tau < t && !zero; ++tau) {
      const std::uint64_t x = (code >> (tau * n)) & slice_mask;
      const std::uint64_t y = (code >> (((tau + 1) % t) * n)) & slice_mask;
      const double hd = diagonal_energy(inst, s, x);
      lw -= eps * hd;
      e_diag += hd;
      double link_sum = 0.0;
      for (int d = 0; d < n; ++d) {
        const double sign = (((x ^ y) >> d) & 1U) ? -1.0 : 1.0;
        const double factor = ep + sign * em;
        if (factor <= 0.0) {
          zero = true;
          break;
        }
        lw += std::log(factor);
        link_sum += (ep - sign * em) / factor;
      }
      e_off += -(1.0 - s) / 2.0 * link_sum;
    }
    if (zero) continue;
    log_weights[code] = lw;
    result.energies[code] = (e_diag + e_off) / static_cast<double>(t);
  }

  const double top = *std::max_element(log_weights.begin(), log_weights.end());
  std::vector<double> scaled(count);
  for (std::size_t i = 0; i < count; ++i) scaled[i] = std::exp(log_weights[i] - top);
  const double total = pairwise_sum(scaled.data(), scaled.size());

  result.log_weight_sum = top + std::log(total);
  result.log_z = result.log_weight_sum - static_cast<double>(n) * static_cast<double>(t) * std::log(2.0);
  result.z = std::exp(result.log_z);
  result.probabilities.resize(count);
  for (std::size_t i = 0; i < count; ++i) result.probabilities[i] = scaled[i] / total;

  // Estimator means reuse the same per-configuration pieces, split back out.
  std::vector<double> diag_terms(count, 0.0);
  std::vector<double> off_terms(count, 0.0);
  for (std::uint64_t code = 0; code < count; ++code) {
    const double p = result.probabilities[code];
    if (p == 0.0) continue;
    double e_diag = 0.0;
    for (int tau = 0; tau < t; ++tau) e_diag += diagonal_energy(inst, s, (code >> (tau * n)) & slice_mask);
    e_diag /= static_cast<double>(t);
    diag_terms[code] = p * e_diag;
    off_terms[code] = p * (result.energies[code] - e_diag);
  }
  result.mean_diag_energy = pairwise_sum(diag_terms.data(), count);
  result.mean_offdiag_energy = pairwise_sum(off_terms.data(), count);
  return result;
}

double transfer_matrix_partition(const ProblemInstance& inst, double s, const QmcParams& params) {
  check_s(s);
  params.validate();
  const int n = inst.n();
  if (n > kTransferMaxQubits) throw InvalidArgument("transfer-matrix oracle is limited to n <= 6");
  const int t = params.trotter_slices;
  const std::size_t dim = std::size_t{1} << n;
  const double eps = params.beta / static_cast<double>(t);
  const double a = eps * (1.0 - s) / 2.0;

  // M[x][y] = e^{-eps H_d(x)} prod_d (cosh a | sinh a).
  std::vector<double> m(dim * dim);
  for (std::size_t x = 0; x < dim; ++x) {
    const double diag = std::exp(-eps * diagonal_energy(inst, s, x));
    for (std::size_t y = 0; y < dim; ++y) {
      double link = 1.0;
      for (int d = 0; d < n; ++d) link *= (((x ^ y) >> d) & 1U) ? std::sinh(a) : std::cosh(a);
      m[x * dim + y] = diag * link;
    }
  }

  std::vector<double> acc(dim * dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) acc[i * dim + i] = 1.0;
  std::vector<double> next(dim * dim);
  double log_scale = 0.0;
  for (int step = 0; step < t; ++step) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t k = 0; k < dim; ++k)
        for (std::size_t j = 0; j < dim; ++j) next[i * dim + j] += acc[i * dim + k] * m[k * dim + j];
    const double norm = *std::max_element(next.begin(), next.end());
    for (double& v : next) v /= norm;
    log_scale += std::log(norm);
    acc.swap(next);
  }
  double trace = 0.0;
  for (std::size_t i = 0; i < dim; ++i) trace += acc[i * dim + i];
  return std::exp(log_scale) * trace;
}

}  // namespace qatunnel::oracle
