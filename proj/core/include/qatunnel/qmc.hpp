#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "qatunnel/problem.hpp"
#include "qatunnel/rng.hpp"
#include "qatunnel/spectral.hpp"

namespace qatunnel {

/// Single-flip acceptance probability for a Boltzmann ratio r.
///   HeatBath:   r / (1 + r)
///   Metropolis: min(1, r); with raster ordering it never mixes at s = 0,
///               where every wall move has r = 1 and is forced.
enum class AcceptanceRule { HeatBath, Metropolis };

struct QmcParams {
  double beta = 32.0;
  int trotter_slices = 0;
  double delta_s = 0.01;
  /// Trailing sweeps averaged before the schedule may advance.
  int window = 100;
  /// Advance when |<E>_window - E_GS| < threshold * g.
  double threshold = 0.4;
  std::uint64_t seed = 1;
  double s_report_lo = 0.3;
  double s_report_hi = 0.5;
  std::uint64_t sweep_cap = 1'000'000;
  AcceptanceRule acceptance = AcceptanceRule::HeatBath;

  /// Defaults with T = trotter_mult * n.
  static QmcParams for_size(int n, int trotter_mult = 4);
  void validate() const;
};

class SliceModel;

/// n x T classical bit lattice, periodic in the slice index. Slice Hamming
/// weights and the number of unequal (slice, slice+1) links are cached and
/// kept coherent by every mutation.
class Lattice {
 public:
  Lattice(int qubits, int slices);

  static Lattice random(int qubits, int slices, Rng& rng);

  int qubits() const noexcept { return n_; }
  int slices() const noexcept { return t_; }

  bool bit(int slice, int qubit) const { return bits_[index(slice, qubit)] != 0; }
  void set(int slice, int qubit, bool value);
  void flip(int slice, int qubit);

  int slice_weight(int slice) const { return weights_[static_cast<std::size_t>(slice)]; }
  std::span<const int> slice_weights() const noexcept { return weights_; }
  /// Count over the T periodic links and n dimensions where adjacent slices differ.
  std::size_t unequal_links() const noexcept { return unequal_; }

  /// Recomputes every cache from the raw bits.
  bool caches_consistent() const;
  std::size_t count_unequal_links() const;

  std::span<const std::uint8_t> row(int slice) const {
    return {bits_.data() + index(slice, 0), static_cast<std::size_t>(n_)};
  }

  /// Bit (slice * n + qubit) of the result is the lattice bit; needs n*T <= 64.
  std::uint64_t encode() const;
  static Lattice decode(int qubits, int slices, std::uint64_t code);

  int prev_slice(int slice) const noexcept { return slice == 0 ? t_ - 1 : slice - 1; }
  int next_slice(int slice) const noexcept { return slice + 1 == t_ ? 0 : slice + 1; }

 private:
  friend std::size_t metropolis_sweep(Lattice&, const SliceModel&, Rng&);

  std::size_t index(int slice, int qubit) const {
    return static_cast<std::size_t>(slice) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(qubit);
  }

  int n_;
  int t_;
  std::vector<std::uint8_t> bits_;
  std::vector<int> weights_;
  std::size_t unequal_ = 0;
};

/// Trotterized Boltzmann weight at one value of s, with the per-dimension
/// link factor e^a +/- e^-a, a = beta (1 - s) / (2T).
class SliceModel {
 public:
  SliceModel(const ProblemInstance& inst, const QmcParams& params, double s);

  double s() const noexcept { return s_; }
  int qubits() const noexcept { return n_; }
  int slices() const noexcept { return t_; }
  double link_parameter() const noexcept { return a_; }

  /// (1 - s) n / 2 + s f(w).
  double slice_energy(int weight) const { return diag_[static_cast<std::size_t>(weight)]; }
  double link_factor(bool equal) const;

  /// log of the full configuration weight; -infinity for zero-weight states.
  double log_weight(const Lattice& lattice) const;
  /// log weight(flipped) - log weight(current), from O(1) local state.
  double flip_log_ratio(const Lattice& lattice, int slice, int qubit) const;

  double diag_energy(const Lattice& lattice) const;
  /// Throws ZeroWeight at s = 1 when any link is unequal.
  double offdiag_energy(const Lattice& lattice) const;
  /// Off-diagonal estimate from a cached unequal-link count; at s = 1 this is
  /// the s -> 1 limit -U / beta instead of an error.
  double offdiag_energy_from_count(std::size_t unequal_links) const;

  /// Acceptance probability of exp(ratio) under the configured rule for a flip of `bit` in a slice of weight `weight` with
  /// `equal_links` (0, 1 or 2) of its two time links currently equal.
  double acceptance(int weight, bool bit, int equal_links) const {
    return accept_[(static_cast<std::size_t>(weight) * 2 + (bit ? 1 : 0)) * 3 + static_cast<std::size_t>(equal_links)];
  }

 private:
  void check_shape(const Lattice& lattice) const;

  int n_;
  int t_;
  double s_;
  double beta_;
  AcceptanceRule rule_;
  double a_;
  double log_tanh_;
  CostTable cost_;
  std::vector<double> diag_;
  std::vector<double> accept_;
};

double acceptance_probability(double log_ratio, AcceptanceRule rule);
double link_parameter(double s, const QmcParams& params);
double link_factor(bool equal, double s, const QmcParams& params);
double log_weight(const Lattice& lattice, const ProblemInstance& inst, double s, const QmcParams& params);
double flip_log_ratio(const Lattice& lattice, int slice, int qubit, const ProblemInstance& inst, double s,
                      const QmcParams& params);
double estimate_diag_energy(const Lattice& lattice, const ProblemInstance& inst, double s, const QmcParams& params);
double estimate_offdiag_energy(const Lattice& lattice, const ProblemInstance& inst, double s,
                               const QmcParams& params);

/// One raster pass (slice-major) of n*T single-bit Metropolis proposals.
/// Returns the number of accepted flips.
std::size_t metropolis_sweep(Lattice& lattice, const SliceModel& model, Rng& rng);

struct ScheduleRecord {
  double s = 0.0;
  /// Sweeps charged to this s (back-extrapolated when `extrapolated`).
  std::uint64_t sweeps = 0;
  std::uint64_t executed_sweeps = 0;
  /// Trailing-window mean energy when the schedule advanced.
  double energy = 0.0;
  double acceptance_fraction = 0.0;
  bool extrapolated = false;
};

struct AnnealTrace {
  std::vector<ScheduleRecord> records;
  std::uint64_t total_report_sweeps = 0;
  /// s value whose sweep cap was exhausted, if the run timed out.
  std::optional<double> timeout_s;

  bool completed() const noexcept { return !timeout_s.has_value(); }
};

struct AnnealOptions {
  /// When set, every sweep appends `s,sweep,energy` to this stream.
  std::ostream* energy_dump = nullptr;
};

/// Anneals s = 0, delta_s, ..., 1 holding each s until the trailing mean
/// energy is within threshold * g(s) of E_GS(s). Bits start uniformly random.
AnnealTrace anneal(const ProblemInstance& inst, const QmcParams& params, const GapTable& gaps, Rng& rng,
                   const AnnealOptions& options = {});
/// Same, with the engine seeded from params.seed.
AnnealTrace anneal(const ProblemInstance& inst, const QmcParams& params, const GapTable& gaps,
                   const AnnealOptions& options = {});

void write_anneal_trace_csv(std::ostream& os, const AnnealTrace& trace, const ProblemInstance& inst,
                            const QmcParams& params);

}  // namespace qatunnel
