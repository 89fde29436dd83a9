#include "qatunnel/experiment.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "qatunnel/csv.hpp"
#include "qatunnel/error.hpp"
#include "qatunnel/parallel.hpp"
#include "qatunnel/problem.hpp"
#include "qatunnel/rng.hpp"

namespace qatunnel {

namespace {

constexpr double kTransitionAlphas[] = {0.25, 0.30, 0.33, 0.34, 0.40, 0.50};

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  T value{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size() || text.empty())
    throw InvalidArgument("bad value '" + std::string(text) + "' for " + std::string(key));
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  while (true) {
    const auto pos = text.find(sep);
    parts.push_back(trim(text.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return parts;
}

using U64 = unsigned long long;

csv::Metadata qmc_metadata(const ExperimentConfig& cfg) {
  return {{"mode", std::string(to_string(cfg.mode))},
          {"beta", csv::format(cfg.beta)},
          {"trotter_mult", cfg.trotter_mult ? csv::format(*cfg.trotter_mult) : std::string("auto")},
          {"delta_s", csv::format(cfg.delta_s)},
          {"window", csv::format(cfg.window)},
          {"threshold", csv::format(cfg.threshold)},
          {"sweep_cap", csv::format(static_cast<U64>(cfg.sweep_cap))},
          {"acceptance", cfg.acceptance == AcceptanceRule::HeatBath ? "heat-bath" : "metropolis"},
          {"replicas", csv::format(cfg.replicas)},
          {"seed", csv::format(static_cast<U64>(cfg.seed))}};
}

std::vector<int> sizes_for(const ExperimentConfig& cfg, double alpha, double c) {
  if (cfg.n) {
    ProblemInstance(*cfg.n, alpha, c).require_valid();
    return {*cfg.n};
  }
  auto sizes = valid_sizes(alpha, c, cfg.n_min, cfg.n_max);
  if (sizes.empty()) {
    std::ostringstream msg;
    msg << "no valid sizes for alpha=" << csv::format(alpha) << " c=" << csv::format(c) << " in n=["
        << cfg.n_min << ", " << cfg.n_max << "]";
    throw Error("empty_size_set", msg.str());
  }
  return sizes;
}

std::vector<ReplicaRun> run_replicas(const ExperimentConfig& cfg, const ProblemInstance& inst,
                                     const QmcParams& base, const GapTable& gaps, std::ostream* energy_dump) {
  const auto count = static_cast<std::size_t>(cfg.replicas);
  const unsigned workers = energy_dump ? 1U : cfg.workers;
  return parallel_map(count, workers, [&](std::size_t r) {
    ReplicaRun run;
    run.replica = static_cast<int>(r);
    run.seed = replica_seed(cfg.seed, inst.alpha(), inst.c(), inst.n(), run.replica);
    QmcParams params = base;
    params.seed = run.seed;
    AnnealOptions options;
    if (r == 0) options.energy_dump = energy_dump;
    run.trace = anneal(inst, params, gaps, options);
    return run;
  });
}

}  // namespace

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::GapScan: return "gap-scan";
    case Mode::GapScaling: return "gap-scaling";
    case Mode::QmcRun: return "qmc-run";
    case Mode::SweepCurve: return "sweep-curve";
    case Mode::Correlate: return "correlate";
  }
  return "unknown";
}

Mode parse_mode(std::string_view text) {
  for (Mode m : {Mode::GapScan, Mode::GapScaling, Mode::QmcRun, Mode::SweepCurve, Mode::Correlate})
    if (to_string(m) == text) return m;
  throw InvalidArgument("unknown mode '" + std::string(text) + "'");
}

void ExperimentConfig::validate() const {
  if (!std::isfinite(alpha) || !std::isfinite(c) || c <= 0.0) throw InvalidArgument("alpha and c must be finite, c > 0");
  if (n && *n < 1) throw InvalidArgument("n must be positive");
  if (n_min > n_max) throw InvalidArgument("n-min exceeds n-max");
  if (replicas < 1) throw InvalidArgument("replicas must be >= 1");
  if (max_sizes < 0) throw InvalidArgument("max-sizes must be >= 0");
  if (trotter_mult && *trotter_mult < 1) throw InvalidArgument("trotter-mult must be >= 1");
  if (!(gap.coarse_step > 0.0 && gap.coarse_step <= 0.5)) throw InvalidArgument("coarse-step must lie in (0, 0.5]");
  if (!(gap.refine_tol > 0.0)) throw InvalidArgument("refine-tol must be positive");
  if (workers < 1) throw InvalidArgument("workers must be >= 1");
  for (const Cell& cell : cells)
    if (!(cell.c > 0.0) || !std::isfinite(cell.alpha)) throw InvalidArgument("bad cell in cells");
  qmc_params(8, alpha, c).validate();
}

int ExperimentConfig::trotter_multiplier(double a, double cc) const {
  if (trotter_mult) return *trotter_mult;
  return (a == 0.5 && cc == 2.0) ? 16 : 4;
}

QmcParams ExperimentConfig::qmc_params(int size, double a, double cc) const {
  QmcParams p = QmcParams::for_size(size, trotter_multiplier(a, cc));
  p.beta = beta;
  p.delta_s = delta_s;
  p.window = window;
  p.threshold = threshold;
  p.sweep_cap = sweep_cap;
  p.acceptance = acceptance;
  p.seed = seed;
  return p;
}

std::vector<double> ExperimentConfig::effective_alphas() const {
  if (!alphas.empty()) return alphas;
  return {std::begin(kTransitionAlphas), std::end(kTransitionAlphas)};
}

std::vector<Cell> ExperimentConfig::effective_cells() const {
  if (!cells.empty()) return cells;
  std::vector<Cell> grid;
  for (double a : {0.3, 0.4})
    for (double cc : {1.0, 2.0, 3.0}) grid.push_back({a, cc});
  return grid;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "alpha", "c", "n", "n-min", "n-max", "alphas", "cells", "max-sizes", "beta", "trotter-mult",
      "delta-s", "window", "threshold", "sweep-cap", "acceptance", "replicas", "seed", "coarse-step", "refine-tol",
      "out", "workers"};
  return keys;
}

Settings parse_settings(std::string_view text) {
  Settings settings;
  int line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw InvalidArgument("config line " + std::to_string(line_no) + ": expected key=value");
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw InvalidArgument("config line " + std::to_string(line_no) + ": empty key");
    settings[key] = std::string(trim(line.substr(eq + 1)));
  }
  return settings;
}

Settings read_settings_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_settings(buf.str());
}

void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  if (key == "alpha") cfg.alpha = parse_number<double>(key, value);
  else if (key == "c") cfg.c = parse_number<double>(key, value);
  else if (key == "n") cfg.n = parse_number<int>(key, value);
  else if (key == "n-min") cfg.n_min = parse_number<int>(key, value);
  else if (key == "n-max") cfg.n_max = parse_number<int>(key, value);
  else if (key == "alphas") {
    cfg.alphas.clear();
    for (auto part : split(value, ',')) cfg.alphas.push_back(parse_number<double>(key, part));
  } else if (key == "cells") {
    cfg.cells.clear();
    for (auto part : split(value, ',')) {
      const auto colon = part.find(':');
      if (colon == std::string_view::npos) throw InvalidArgument("cells entries take the form alpha:c");
      cfg.cells.push_back({parse_number<double>(key, part.substr(0, colon)),
                           parse_number<double>(key, part.substr(colon + 1))});
    }
  } else if (key == "max-sizes") cfg.max_sizes = parse_number<int>(key, value);
  else if (key == "beta") cfg.beta = parse_number<double>(key, value);
  else if (key == "trotter-mult") {
    if (trim(value) == "auto") cfg.trotter_mult.reset();
    else cfg.trotter_mult = parse_number<int>(key, value);
  } else if (key == "delta-s") cfg.delta_s = parse_number<double>(key, value);
  else if (key == "window") cfg.window = parse_number<int>(key, value);
  else if (key == "threshold") cfg.threshold = parse_number<double>(key, value);
  else if (key == "sweep-cap") cfg.sweep_cap = parse_number<std::uint64_t>(key, value);
  else if (key == "acceptance") {
    const auto v = trim(value);
    if (v == "heat-bath") cfg.acceptance = AcceptanceRule::HeatBath;
    else if (v == "metropolis") cfg.acceptance = AcceptanceRule::Metropolis;
    else throw InvalidArgument("acceptance must be heat-bath or metropolis");
  } else if (key == "replicas") cfg.replicas = parse_number<int>(key, value);
  else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "coarse-step") cfg.gap.coarse_step = parse_number<double>(key, value);
  else if (key == "refine-tol") cfg.gap.refine_tol = parse_number<double>(key, value);
  else if (key == "out") cfg.out = std::string(trim(value));
  else if (key == "workers") cfg.workers = parse_number<unsigned>(key, value);
  else throw InvalidArgument("unknown setting '" + std::string(key) + "'");
}

ExperimentConfig make_config(Mode mode, const Settings& file, const Settings& flags) {
  ExperimentConfig cfg;
  cfg.mode = mode;
  cfg.workers = default_worker_count();
  for (const auto& [k, v] : file) apply_setting(cfg, k, v);
  for (const auto& [k, v] : flags) apply_setting(cfg, k, v);
  cfg.validate();
  return cfg;
}

std::uint64_t replica_seed(std::uint64_t master, double alpha, double c, int n, int replica) {
  return derive_seed(master, {std::bit_cast<std::uint64_t>(alpha), std::bit_cast<std::uint64_t>(c),
                              static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(replica)});
}

std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw InvalidArgument("pearson: length mismatch");
  const std::size_t k = x.size();
  if (k < 2) return std::nullopt;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(k);
  my /= static_cast<double>(k);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

GapScanResult run_gap_scan(const ExperimentConfig& cfg) {
  GapScanResult result;
  result.alpha = cfg.alpha;
  result.c = cfg.c;
  const auto sizes = sizes_for(cfg, cfg.alpha, cfg.c);
  result.rows = scan_gap_minima(cfg.alpha, cfg.c, sizes, cfg.gap, cfg.workers);
  if (result.rows.size() >= 2) {
    std::vector<int> ns;
    std::vector<double> gs;
    for (const auto& r : result.rows) {
      ns.push_back(r.n);
      gs.push_back(r.g_min);
    }
    result.fit = loglog_fit(ScalingSeries::from(ns, gs));
  }
  return result;
}

std::vector<AlphaScanEntry> run_gap_scaling(const ExperimentConfig& cfg) {
  const auto alphas = cfg.effective_alphas();
  return alpha_transition_scan(alphas, cfg.c, cfg.n_min, cfg.n_max, cfg.gap, cfg.workers);
}

QmcRunResult run_qmc(const ExperimentConfig& cfg, std::ostream* energy_dump) {
  if (!cfg.n) throw InvalidArgument("qmc runs need a single size (n)");
  const ProblemInstance inst(*cfg.n, cfg.alpha, cfg.c);
  inst.require_valid();
  QmcRunResult result;
  result.alpha = cfg.alpha;
  result.c = cfg.c;
  result.n = *cfg.n;
  result.params = cfg.qmc_params(*cfg.n, cfg.alpha, cfg.c);
  const GapTable gaps(inst, result.params.delta_s);
  result.runs = run_replicas(cfg, inst, result.params, gaps, energy_dump);
  return result;
}

SweepCurveResult run_sweep_curve(const ExperimentConfig& cfg) {
  SweepCurveResult result;
  result.runs = run_qmc(cfg);
  std::vector<const AnnealTrace*> done;
  for (const auto& run : result.runs.runs) {
    if (run.trace.completed()) done.push_back(&run.trace);
    else result.timeouts.emplace_back(run.replica, *run.trace.timeout_s);
  }
  if (done.empty()) throw Error("all_replicas_timed_out", "every replica exhausted the sweep cap");
  const std::size_t points = done.front()->records.size();
  for (std::size_t k = 0; k < points; ++k) {
    double total = 0.0;
    for (const AnnealTrace* t : done) total += static_cast<double>(t->records[k].sweeps);
    result.curve.push_back({done.front()->records[k].s, total / static_cast<double>(done.size()),
                            static_cast<int>(done.size())});
  }
  return result;
}

CorrelationResult run_correlation(const ExperimentConfig& cfg) {
  struct Instance {
    Cell cell;
    int n;
    QmcParams params;
  };
  std::vector<Instance> instances;
  for (const Cell& cell : cfg.effective_cells()) {
    auto sizes = valid_sizes(cell.alpha, cell.c, cfg.n_min, cfg.n_max);
    if (cfg.max_sizes > 0 && sizes.size() > static_cast<std::size_t>(cfg.max_sizes))
      sizes.resize(static_cast<std::size_t>(cfg.max_sizes));
    for (int size : sizes) instances.push_back({cell, size, cfg.qmc_params(size, cell.alpha, cell.c)});
  }
  if (instances.empty()) throw Error("empty_size_set", "no valid sizes in any correlation cell");

  struct Prepared {
    double g_min = 0.0;
    std::optional<GapTable> gaps;
  };
  auto prepared = parallel_map(instances.size(), cfg.workers, [&](std::size_t i) {
    const ProblemInstance inst(instances[i].n, instances[i].cell.alpha, instances[i].cell.c);
    Prepared p;
    p.g_min = minimize_gap(inst, cfg.gap).g_min;
    p.gaps.emplace(inst, cfg.delta_s);
    return p;
  });

  const auto reps = static_cast<std::size_t>(cfg.replicas);
  auto traces = parallel_map(instances.size() * reps, cfg.workers, [&](std::size_t job) {
    const Instance& item = instances[job / reps];
    const ProblemInstance inst(item.n, item.cell.alpha, item.cell.c);
    QmcParams params = item.params;
    params.seed = replica_seed(cfg.seed, item.cell.alpha, item.cell.c, item.n, static_cast<int>(job % reps));
    return anneal(inst, params, *prepared[job / reps].gaps);
  });

  CorrelationResult result;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    CorrelationRow row;
    row.alpha = instances[i].cell.alpha;
    row.c = instances[i].cell.c;
    row.n = instances[i].n;
    row.trotter_slices = instances[i].params.trotter_slices;
    row.g_min = prepared[i].g_min;
    row.inverse_gap_sq = 1.0 / (row.g_min * row.g_min);
    row.replicas = cfg.replicas;
    double total = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
      const AnnealTrace& t = traces[i * reps + r];
      if (!t.completed()) {
        row.timed_out = true;
        continue;
      }
      total += static_cast<double>(t.total_report_sweeps);
      ++row.completed_replicas;
    }
    row.mean_total_report_sweeps =
        row.completed_replicas > 0 ? total / row.completed_replicas : std::numeric_limits<double>::quiet_NaN();
    if (!row.timed_out) {
      xs.push_back(std::log(row.inverse_gap_sq));
      ys.push_back(std::log(row.mean_total_report_sweeps));
    }
    result.rows.push_back(row);
  }
  result.coefficient = pearson(xs, ys);
  return result;
}

void write_gap_scan_csv(std::ostream& os, const ExperimentConfig& cfg, const GapScanResult& result) {
  csv::Metadata meta = {{"mode", "gap-scan"},
                        {"alpha", csv::format(result.alpha)},
                        {"c", csv::format(result.c)},
                        {"n_min", csv::format(cfg.n ? *cfg.n : cfg.n_min)},
                        {"n_max", csv::format(cfg.n ? *cfg.n : cfg.n_max)},
                        {"sizes", csv::format(static_cast<U64>(result.rows.size()))}};
  if (result.fit) {
    meta.emplace_back("slope", csv::format(result.fit->slope));
    meta.emplace_back("intercept", csv::format(result.fit->intercept));
  }
  csv::write_metadata(os, meta);
  csv::write_header(os, {"alpha", "c", "n", "s_min", "g_min", "log_n", "log_g_min", "fitted_log_g_min", "residual",
                         "coarse_step", "refine_tol"});
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const auto& r = result.rows[i];
    const double log_n = std::log(static_cast<double>(r.n));
    const double log_g = std::log(r.g_min);
    std::string fitted, residual;
    if (result.fit) {
      fitted = csv::format(result.fit->intercept + result.fit->slope * log_n);
      residual = csv::format(result.fit->residuals[i]);
    }
    csv::row(os, result.alpha, result.c, r.n, r.s_min, r.g_min, log_n, log_g, fitted, residual, cfg.gap.coarse_step,
             cfg.gap.refine_tol);
  }
}

void write_gap_scaling_csv(std::ostream& os, const ExperimentConfig& cfg, const std::vector<AlphaScanEntry>& entries) {
  csv::write_metadata(os, {{"mode", "gap-scaling"},
                           {"c", csv::format(cfg.c)},
                           {"n_min", csv::format(cfg.n_min)},
                           {"n_max", csv::format(cfg.n_max)},
                           {"coarse_step", csv::format(cfg.gap.coarse_step)},
                           {"refine_tol", csv::format(cfg.gap.refine_tol)}});
  csv::write_header(os, {"alpha", "c", "n", "s_min", "g_min", "residual", "second_derivative", "slope",
                         "mean_curvature", "std_error", "classification"});
  for (const auto& e : entries) {
    if (e.rows.empty()) {
      csv::row(os, e.alpha, cfg.c, "", "", "", "", "", "", "", "", "insufficient-sizes");
      continue;
    }
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
      const auto& r = e.rows[i];
      if (!e.verdict) {
        csv::row(os, e.alpha, cfg.c, r.n, r.s_min, r.g_min, "", "", "", "", "", "insufficient-sizes");
        continue;
      }
      const auto& v = *e.verdict;
      std::string d2;
      if (i > 0 && i + 1 < e.rows.size()) d2 = csv::format(v.second_derivatives[i - 1]);
      csv::row(os, e.alpha, cfg.c, r.n, r.s_min, r.g_min, v.residuals[i], d2, v.slope, v.mean_curvature, v.std_error,
               to_string(v.classification));
    }
  }
}

void write_qmc_run_csv(std::ostream& os, const ExperimentConfig& cfg, const QmcRunResult& result) {
  auto meta = qmc_metadata(cfg);
  meta.emplace_back("alpha", csv::format(result.alpha));
  meta.emplace_back("c", csv::format(result.c));
  meta.emplace_back("n", csv::format(result.n));
  meta.emplace_back("T", csv::format(result.params.trotter_slices));
  csv::write_metadata(os, meta);
  csv::write_header(os, {"alpha", "c", "n", "beta", "T", "replica", "replica_seed", "status", "total_report_sweeps",
                         "s", "sweeps", "energy", "acceptance_fraction", "executed_sweeps", "extrapolated"});
  for (const auto& run : result.runs) {
    const std::string status =
        run.trace.completed() ? std::string("completed") : "timeout@s=" + csv::format(*run.trace.timeout_s);
    for (const auto& r : run.trace.records) {
      csv::row(os, result.alpha, result.c, result.n, result.params.beta, result.params.trotter_slices, run.replica,
               static_cast<U64>(run.seed), status, static_cast<U64>(run.trace.total_report_sweeps), r.s,
               static_cast<U64>(r.sweeps), r.energy, r.acceptance_fraction, static_cast<U64>(r.executed_sweeps),
               r.extrapolated ? 1 : 0);
    }
  }
}

void write_sweep_curve_csv(std::ostream& os, const ExperimentConfig& cfg, const SweepCurveResult& result) {
  const auto& runs = result.runs;
  auto meta = qmc_metadata(cfg);
  meta.emplace_back("alpha", csv::format(runs.alpha));
  meta.emplace_back("c", csv::format(runs.c));
  meta.emplace_back("n", csv::format(runs.n));
  meta.emplace_back("T", csv::format(runs.params.trotter_slices));
  std::string timeouts;
  for (const auto& [replica, s] : result.timeouts) {
    if (!timeouts.empty()) timeouts += ';';
    timeouts += std::to_string(replica) + "@s=" + csv::format(s);
  }
  meta.emplace_back("timed_out_replicas", timeouts.empty() ? std::string("none") : timeouts);
  csv::write_metadata(os, meta);
  csv::write_header(os, {"alpha", "c", "n", "beta", "T", "seed", "replicas", "s", "mean_sweeps", "replicas_used"});
  for (const auto& p : result.curve) {
    csv::row(os, runs.alpha, runs.c, runs.n, runs.params.beta, runs.params.trotter_slices, static_cast<U64>(cfg.seed),
             cfg.replicas, p.s, p.mean_sweeps, p.replicas_used);
  }
}

void write_correlation_csv(std::ostream& os, const ExperimentConfig& cfg, const CorrelationResult& result) {
  auto meta = qmc_metadata(cfg);
  meta.emplace_back("n_min", csv::format(cfg.n_min));
  meta.emplace_back("n_max", csv::format(cfg.n_max));
  meta.emplace_back("max_sizes", csv::format(cfg.max_sizes));
  meta.emplace_back("correlation", result.coefficient ? csv::format(*result.coefficient) : std::string("undefined"));
  csv::write_metadata(os, meta);
  csv::write_header(os, {"alpha", "c", "n", "beta", "T", "seed", "g_min", "inverse_gap_sq",
                         "mean_total_report_sweeps", "completed_replicas", "replicas", "status"});
  for (const auto& r : result.rows) {
    csv::row(os, r.alpha, r.c, r.n, cfg.beta, r.trotter_slices, static_cast<U64>(cfg.seed), r.g_min, r.inverse_gap_sq,
             r.mean_total_report_sweeps, r.completed_replicas, r.replicas, r.timed_out ? "timeout" : "ok");
  }
}

void run_experiment(const ExperimentConfig& cfg, std::ostream& os, std::ostream* energy_dump) {
  switch (cfg.mode) {
    case Mode::GapScan: write_gap_scan_csv(os, cfg, run_gap_scan(cfg)); return;
    case Mode::GapScaling: write_gap_scaling_csv(os, cfg, run_gap_scaling(cfg)); return;
    case Mode::QmcRun: write_qmc_run_csv(os, cfg, run_qmc(cfg, energy_dump)); return;
    case Mode::SweepCurve: write_sweep_curve_csv(os, cfg, run_sweep_curve(cfg)); return;
    case Mode::Correlate: write_correlation_csv(os, cfg, run_correlation(cfg)); return;
  }
}

}  // namespace qatunnel
