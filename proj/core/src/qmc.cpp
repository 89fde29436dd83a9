#include "qatunnel/qmc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "qatunnel/csv.hpp"
#include "qatunnel/error.hpp"

namespace qatunnel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double acceptance_probability(double log_ratio, AcceptanceRule rule) {
  if (rule == AcceptanceRule::Metropolis) return log_ratio >= 0.0 ? 1.0 : std::exp(log_ratio);
  // r / (1 + r) written to stay finite for |log r| large.
  if (log_ratio == kInf) return 1.0;
  return log_ratio >= 0.0 ? 1.0 / (1.0 + std::exp(-log_ratio)) : std::exp(log_ratio) / (1.0 + std::exp(log_ratio));
}

QmcParams QmcParams::for_size(int n, int trotter_mult) {
  if (n < 1 || trotter_mult < 1) throw InvalidArgument("for_size needs positive n and Trotter multiplier");
  QmcParams params;
  params.trotter_slices = trotter_mult * n;
  return params;
}

void QmcParams::validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw InvalidArgument("beta must be positive");
  if (trotter_slices < 2) throw InvalidArgument("need at least two Trotter slices");
  schedule_steps(delta_s);
  if (window < 1) throw InvalidArgument("energy window must hold at least one sweep");
  if (!(threshold > 0.0)) throw InvalidArgument("threshold must be positive");
  if (!(s_report_lo <= s_report_hi)) throw InvalidArgument("report range must satisfy lo <= hi");
  if (sweep_cap < static_cast<std::uint64_t>(window)) throw InvalidArgument("sweep cap must be >= window");
}

// ---------------------------------------------------------------------------
// Lattice

Lattice::Lattice(int qubits, int slices) : n_(qubits), t_(slices) {
  if (qubits < 1) throw InvalidArgument("lattice needs at least one qubit");
  if (slices < 2) throw InvalidArgument("lattice needs at least two slices");
  bits_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(t_), 0);
  weights_.assign(static_cast<std::size_t>(t_), 0);
}

Lattice Lattice::random(int qubits, int slices, Rng& rng) {
  Lattice lattice(qubits, slices);
  for (auto& b : lattice.bits_) b = static_cast<std::uint8_t>(rng() >> 63);
  for (int tau = 0; tau < slices; ++tau) {
    int w = 0;
    for (auto b : lattice.row(tau)) w += b;
    lattice.weights_[static_cast<std::size_t>(tau)] = w;
  }
  lattice.unequal_ = lattice.count_unequal_links();
  return lattice;
}

void Lattice::set(int slice, int qubit, bool value) {
  if (bit(slice, qubit) != value) flip(slice, qubit);
}

void Lattice::flip(int slice, int qubit) {
  if (slice < 0 || slice >= t_ || qubit < 0 || qubit >= n_) throw InvalidArgument("lattice index out of range");
  auto& b = bits_[index(slice, qubit)];
  const std::uint8_t prev = bits_[index(prev_slice(slice), qubit)];
  const std::uint8_t next = bits_[index(next_slice(slice), qubit)];
  const int equal = (prev == b) + (next == b);
  unequal_ = unequal_ + static_cast<std::size_t>(equal) - static_cast<std::size_t>(2 - equal);
  weights_[static_cast<std::size_t>(slice)] += b ? -1 : 1;
  b ^= 1;
}

std::size_t Lattice::count_unequal_links() const {
  std::size_t unequal = 0;
  for (int tau = 0; tau < t_; ++tau) {
    const auto cur = row(tau);
    const auto nxt = row(next_slice(tau));
    for (int d = 0; d < n_; ++d) unequal += cur[static_cast<std::size_t>(d)] != nxt[static_cast<std::size_t>(d)];
  }
  return unequal;
}

bool Lattice::caches_consistent() const {
  for (int tau = 0; tau < t_; ++tau) {
    int w = 0;
    for (auto b : row(tau)) w += b;
    if (w != weights_[static_cast<std::size_t>(tau)] || w < 0 || w > n_) return false;
  }
  return count_unequal_links() == unequal_;
}

std::uint64_t Lattice::encode() const {
  if (bits_.size() > 64) throw InvalidArgument("lattice too large to encode in 64 bits");
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i) code |= static_cast<std::uint64_t>(bits_[i]) << i;
  return code;
}

Lattice Lattice::decode(int qubits, int slices, std::uint64_t code) {
  Lattice lattice(qubits, slices);
  if (lattice.bits_.size() > 64) throw InvalidArgument("lattice too large to decode from 64 bits");
  for (int tau = 0; tau < slices; ++tau) {
    for (int d = 0; d < qubits; ++d) {
      if ((code >> lattice.index(tau, d)) & 1U) lattice.flip(tau, d);
    }
  }
  return lattice;
}

// ---------------------------------------------------------------------------
// SliceModel

SliceModel::SliceModel(const ProblemInstance& inst, const QmcParams& params, double s)
    : n_(inst.n()), t_(params.trotter_slices), s_(s), beta_(params.beta), rule_(params.acceptance) {
  params.validate();
  if (!(s >= 0.0 && s <= 1.0)) throw InvalidArgument("interpolation parameter s must lie in [0, 1]");
  a_ = qatunnel::link_parameter(s, params);
  log_tanh_ = a_ > 0.0 ? std::log(std::tanh(a_)) : -kInf;

  cost_ = cost_table(inst);
  const CostTable& f = cost_;
  const double nd = static_cast<double>(n_);
  diag_.resize(f.size());
  for (std::size_t w = 0; w < f.size(); ++w) diag_[w] = (1.0 - s) * nd / 2.0 + s * f[w];

  const double step = beta_ / static_cast<double>(t_);
  accept_.assign(f.size() * 2 * 3, 0.0);
  for (int w = 0; w <= n_; ++w) {
    for (int bit = 0; bit < 2; ++bit) {
      const int w_new = bit ? w - 1 : w + 1;
      if (w_new < 0 || w_new > n_) continue;
      const double diag_delta = -step * s * (f[static_cast<std::size_t>(w_new)] - f[static_cast<std::size_t>(w)]);
      for (int equal = 0; equal <= 2; ++equal) {
        double log_ratio = diag_delta;
        if (equal != 1) log_ratio += (equal == 2 ? 2.0 : -2.0) * log_tanh_;
        accept_[(static_cast<std::size_t>(w) * 2 + static_cast<std::size_t>(bit)) * 3 + static_cast<std::size_t>(equal)] =
            acceptance_probability(log_ratio, rule_);
      }
    }
  }
}

void SliceModel::check_shape(const Lattice& lattice) const {
  if (lattice.qubits() != n_ || lattice.slices() != t_) {
    throw InvalidArgument("lattice shape does not match the model (n, T)");
  }
}

double SliceModel::link_factor(bool equal) const {
  return equal ? 2.0 * std::cosh(a_) : 2.0 * std::sinh(a_);
}

double SliceModel::log_weight(const Lattice& lattice) const {
  check_shape(lattice);
  const std::size_t unequal = lattice.count_unequal_links();
  if (unequal > 0 && !(a_ > 0.0)) return -kInf;
  const double step = beta_ / static_cast<double>(t_);
  double diagonal = 0.0;
  for (int tau = 0; tau < t_; ++tau) {
    int w = 0;
    for (auto b : lattice.row(tau)) w += b;
    diagonal -= step * slice_energy(w);
  }
  const double links = static_cast<double>(n_) * static_cast<double>(t_);
  const double equal = links - static_cast<double>(unequal);
  double link_part = equal * std::log(2.0 * std::cosh(a_));
  if (unequal > 0) link_part += static_cast<double>(unequal) * std::log(2.0 * std::sinh(a_));
  return diagonal + link_part;
}

double SliceModel::flip_log_ratio(const Lattice& lattice, int slice, int qubit) const {
  check_shape(lattice);
  const bool b = lattice.bit(slice, qubit);
  const int w = lattice.slice_weight(slice);
  const int w_new = b ? w - 1 : w + 1;
  const double step = beta_ / static_cast<double>(t_);
  const double diag_delta =
      -step * s_ * (cost_[static_cast<std::size_t>(w_new)] - cost_[static_cast<std::size_t>(w)]);
  const int equal = (lattice.bit(lattice.prev_slice(slice), qubit) == b) +
                    (lattice.bit(lattice.next_slice(slice), qubit) == b);
  if (equal == 1) return diag_delta;
  if (!(a_ > 0.0)) return equal == 2 ? -kInf : kInf;
  return diag_delta + (equal == 2 ? 2.0 : -2.0) * log_tanh_;
}

double SliceModel::diag_energy(const Lattice& lattice) const {
  check_shape(lattice);
  double total = 0.0;
  for (int w : lattice.slice_weights()) total += slice_energy(w);
  return total / static_cast<double>(t_);
}

double SliceModel::offdiag_energy(const Lattice& lattice) const {
  check_shape(lattice);
  const std::size_t unequal = lattice.count_unequal_links();
  if (!(a_ > 0.0)) {
    if (unequal > 0) throw ZeroWeight("off-diagonal energy is undefined for unequal links at s = 1");
    return 0.0;
  }
  return offdiag_energy_from_count(unequal);
}

double SliceModel::offdiag_energy_from_count(std::size_t unequal_links) const {
  const double u = static_cast<double>(unequal_links);
  if (!(a_ > 0.0)) return -u / beta_;
  const double links = static_cast<double>(n_) * static_cast<double>(t_);
  const double t = std::tanh(a_);
  const double sum = (links - u) * t + u / t;
  return -(1.0 - s_) / 2.0 * sum / static_cast<double>(t_);
}

// ---------------------------------------------------------------------------
// Free-function surface

double link_parameter(double s, const QmcParams& params) {
  return params.beta * (1.0 - s) / (2.0 * static_cast<double>(params.trotter_slices));
}

double link_factor(bool equal, double s, const QmcParams& params) {
  if (!(s >= 0.0 && s <= 1.0)) throw InvalidArgument("interpolation parameter s must lie in [0, 1]");
  const double a = link_parameter(s, params);
  return equal ? 2.0 * std::cosh(a) : 2.0 * std::sinh(a);
}

double log_weight(const Lattice& lattice, const ProblemInstance& inst, double s, const QmcParams& params) {
  return SliceModel(inst, params, s).log_weight(lattice);
}

double flip_log_ratio(const Lattice& lattice, int slice, int qubit, const ProblemInstance& inst, double s,
                      const QmcParams& params) {
  return SliceModel(inst, params, s).flip_log_ratio(lattice, slice, qubit);
}

double estimate_diag_energy(const Lattice& lattice, const ProblemInstance& inst, double s, const QmcParams& params) {
  return SliceModel(inst, params, s).diag_energy(lattice);
}

double estimate_offdiag_energy(const Lattice& lattice, const ProblemInstance& inst, double s,
                               const QmcParams& params) {
  return SliceModel(inst, params, s).offdiag_energy(lattice);
}

std::size_t metropolis_sweep(Lattice& lattice, const SliceModel& model, Rng& rng) {
  if (lattice.qubits() != model.qubits() || lattice.slices() != model.slices()) {
    throw InvalidArgument("lattice shape does not match the model (n, T)");
  }
  const int n = lattice.n_;
  const int t = lattice.t_;
  std::uint8_t* bits = lattice.bits_.data();
  std::size_t accepted = 0;
  long long unequal_delta = 0;
  for (int tau = 0; tau < t; ++tau) {
    const std::uint8_t* prev = bits + static_cast<std::size_t>(lattice.prev_slice(tau)) * static_cast<std::size_t>(n);
    const std::uint8_t* next = bits + static_cast<std::size_t>(lattice.next_slice(tau)) * static_cast<std::size_t>(n);
    std::uint8_t* cur = bits + static_cast<std::size_t>(tau) * static_cast<std::size_t>(n);
    int& w = lattice.weights_[static_cast<std::size_t>(tau)];
    for (int d = 0; d < n; ++d) {
      const std::uint8_t b = cur[d];
      const int equal = (prev[d] == b) + (next[d] == b);
      const double p = model.acceptance(w, b != 0, equal);
      if (p >= 1.0 || (p > 0.0 && uniform01(rng) < p)) {
        cur[d] = b ^ 1U;
        w += b ? -1 : 1;
        unequal_delta += 2 * equal - 2;
        ++accepted;
      }
    }
  }
  lattice.unequal_ = static_cast<std::size_t>(static_cast<long long>(lattice.unequal_) + unequal_delta);
  return accepted;
}

// ---------------------------------------------------------------------------
// Annealing schedule

AnnealTrace anneal(const ProblemInstance& inst, const QmcParams& params, const GapTable& gaps, Rng& rng,
                   const AnnealOptions& options) {
  params.validate();
  const std::size_t steps = schedule_steps(params.delta_s);
  if (gaps.steps() != steps) throw InvalidArgument("gap table schedule does not match delta_s");

  const int n = inst.n();
  const int t = params.trotter_slices;
  Lattice lattice = Lattice::random(n, t, rng);

  const double steps_d = static_cast<double>(steps);
  const auto report_lo = static_cast<std::size_t>(std::max(0.0, std::ceil(params.s_report_lo * steps_d - 1e-9)));
  const auto report_hi = static_cast<std::size_t>(std::max(0.0, std::floor(params.s_report_hi * steps_d + 1e-9)));
  const auto window = static_cast<std::size_t>(params.window);
  const double flips_per_sweep = static_cast<double>(n) * static_cast<double>(t);

  AnnealTrace trace;
  std::vector<double> energies;
  std::vector<long double> prefix;

  for (std::size_t k = 0; k <= steps; ++k) {
    const double s = gaps.s_at(k);
    const GapPoint& exact = gaps.at(k);
    const SliceModel model(inst, params, s);
    const auto converged = [&](double mean) {
      return std::abs(mean - exact.ground) < params.threshold * exact.gap;
    };

    energies.clear();
    prefix.assign(1, 0.0L);
    std::size_t accepted = 0;
    ScheduleRecord record;
    record.s = s;
    bool advanced = false;

    while (energies.size() < params.sweep_cap) {
      accepted += metropolis_sweep(lattice, model, rng);
      const double energy = model.diag_energy(lattice) + model.offdiag_energy_from_count(lattice.unequal_links());
      energies.push_back(energy);
      prefix.push_back(prefix.back() + energy);
      if (options.energy_dump) {
        *options.energy_dump << csv::format(s) << ',' << energies.size() << ',' << csv::format(energy) << '\n';
      }
      const std::size_t done = energies.size();
      if (done < window) continue;
      const double mean = static_cast<double>((prefix[done] - prefix[done - window]) / static_cast<long double>(window));
      if (!converged(mean)) continue;

      record.energy = mean;
      record.sweeps = done;
      if (done == window) {
        // Charge the earliest sweep at which the running mean already met the criterion.
        for (std::size_t j = 1; j <= window; ++j) {
          if (converged(static_cast<double>(prefix[j] / static_cast<long double>(j)))) {
            record.sweeps = j;
            record.extrapolated = j < window;
            break;
          }
        }
      }
      advanced = true;
      break;
    }

    record.executed_sweeps = energies.size();
    record.acceptance_fraction =
        static_cast<double>(accepted) / (static_cast<double>(record.executed_sweeps) * flips_per_sweep);
    if (!advanced) {
      record.sweeps = record.executed_sweeps;
      const std::size_t tail = std::min(window, energies.size());
      record.energy = static_cast<double>((prefix.back() - prefix[energies.size() - tail]) / static_cast<long double>(tail));
    }
    if (k >= report_lo && k <= report_hi) trace.total_report_sweeps += record.sweeps;
    trace.records.push_back(record);
    if (!advanced) {
      trace.timeout_s = s;
      break;
    }
  }
  return trace;
}

AnnealTrace anneal(const ProblemInstance& inst, const QmcParams& params, const GapTable& gaps,
                   const AnnealOptions& options) {
  Rng rng = make_rng(params.seed);
  return anneal(inst, params, gaps, rng, options);
}

void write_anneal_trace_csv(std::ostream& os, const AnnealTrace& trace, const ProblemInstance& inst,
                            const QmcParams& params) {
  csv::write_metadata(os, {{"n", csv::format(inst.n())},
                           {"alpha", csv::format(inst.alpha())},
                           {"c", csv::format(inst.c())},
                           {"beta", csv::format(params.beta)},
                           {"T", csv::format(params.trotter_slices)},
                           {"seed", csv::format(static_cast<unsigned long long>(params.seed))},
                           {"total_report_sweeps", csv::format(static_cast<unsigned long long>(trace.total_report_sweeps))},
                           {"delta_s", csv::format(params.delta_s)},
                           {"window", csv::format(params.window)},
                           {"threshold", csv::format(params.threshold)},
                           {"s_report", csv::format(params.s_report_lo) + ".." + csv::format(params.s_report_hi)},
                           {"sweep_cap", csv::format(static_cast<unsigned long long>(params.sweep_cap))},
                           {"acceptance", params.acceptance == AcceptanceRule::HeatBath ? "heat-bath" : "metropolis"},
                           {"status", trace.completed() ? std::string("completed")
                                                        : "timeout@s=" + csv::format(*trace.timeout_s)},
                           {"trailing_mean", "reset-per-s"},
                           {"extrapolation", "earliest-running-mean"}});
  csv::write_header(os, {"s", "sweeps", "energy", "acceptance_fraction", "executed_sweeps", "extrapolated"});
  for (const auto& r : trace.records) {
    csv::row(os, r.s, static_cast<unsigned long long>(r.sweeps), r.energy, r.acceptance_fraction,
             static_cast<unsigned long long>(r.executed_sweeps), r.extrapolated ? 1 : 0);
  }
}

}  // namespace qatunnel
