#pragma once

#include <cstddef>
#include <vector>

#include "qatunnel/problem.hpp"
#include "qatunnel/qmc.hpp"

// Brute-force reference computations. Nothing here shares code with the
// tridiagonal solver or the Monte Carlo kernel; they exist to check those.
namespace qatunnel::oracle {

inline constexpr int kDenseMaxQubits = 12;
inline constexpr int kEnumerationMaxBits = 18;
inline constexpr int kTransferMaxQubits = 6;

struct DenseSpectrum {
  /// All 2^n eigenvalues, ascending.
  std::vector<double> eigenvalues;

  /// Number of eigenvalues within `tol` of `value`.
  std::size_t multiplicity(double value, double tol) const;
  /// Sum of exp(-beta * lambda).
  double thermal_trace(double beta) const;
};

/// Full 2^n x 2^n matrix (1-s) H0 + s H1 in the computational basis,
/// row-major.
std::vector<double> dense_hamiltonian(const ProblemInstance& inst, double s);

/// Every eigenvalue of the dense Hamiltonian (LAPACK dsyevd). n <= 12.
DenseSpectrum dense_spectrum(const ProblemInstance& inst, double s);

struct TrotterEnumeration {
  /// Physical Trotter partition function, i.e. the sum of the configuration
  /// weights with each link factor normalized by 1/2 (so that Z -> Tr e^{-beta H}).
  double z = 0.0;
  double log_z = 0.0;
  /// log of the sum of the unnormalized weights (link factors e^a +/- e^-a);
  /// equals log_z + n T log 2.
  double log_weight_sum = 0.0;
  double mean_diag_energy = 0.0;
  double mean_offdiag_energy = 0.0;
  /// Normalized probability of every configuration, indexed by Lattice::encode().
  std::vector<double> probabilities;
  /// Estimator E_d + E_o of each configuration (0 for zero-weight configurations).
  std::vector<double> energies;
};

/// Sums every 2^(nT) lattice configuration. Requires n * T <= 18.
TrotterEnumeration exact_trotter_partition(const ProblemInstance& inst, double s, const QmcParams& params);

/// The same physical partition function as Tr(M^T) with the 2^n x 2^n
/// slice transfer matrix; reaches large T for n <= 6.
double transfer_matrix_partition(const ProblemInstance& inst, double s, const QmcParams& params);

}  // namespace qatunnel::oracle
