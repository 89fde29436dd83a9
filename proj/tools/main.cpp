#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "qatunnel/error.hpp"
#include "qatunnel/experiment.hpp"

namespace {

void report_error(std::string_view code, std::string_view message) {
  nlohmann::json line = {{"error", code}, {"message", message}};
  std::cerr << line.dump() << '\n';
}

struct Subcommand {
  qatunnel::Mode mode;
  CLI::App* app = nullptr;
  std::map<std::string, std::optional<std::string>> values;
  std::string config;
  std::string dump;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral-gap and path-integral Monte Carlo experiments on Hamming-weight barrier problems"};
  app.require_subcommand(1);

  const std::pair<qatunnel::Mode, const char*> modes[] = {
      {qatunnel::Mode::GapScan, "Minimum gap per size with a log-log fit"},
      {qatunnel::Mode::GapScaling, "Residual-curvature classification across alpha values"},
      {qatunnel::Mode::QmcRun, "Annealing traces for one instance"},
      {qatunnel::Mode::SweepCurve, "Replica-averaged sweeps per schedule step"},
      {qatunnel::Mode::Correlate, "Total sweeps against inverse squared gap over a grid"},
  };

  std::vector<Subcommand> subs;
  subs.reserve(std::size(modes));
  for (const auto& [mode, help] : modes) {
    Subcommand& sub = subs.emplace_back();
    sub.mode = mode;
    sub.app = app.add_subcommand(std::string(qatunnel::to_string(mode)), help);
    sub.app->add_option("--config", sub.config, "key=value settings file; flags override it");
    for (const auto& key : qatunnel::config_keys()) sub.app->add_option("--" + key, sub.values[key]);
    if (mode == qatunnel::Mode::QmcRun)
      sub.app->add_option("--dump-energies", sub.dump, "Write per-sweep energies of replica 0 to this file");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("usage", e.what());
    return 2;
  }

  try {
    for (auto& sub : subs) {
      if (!sub.app->parsed()) continue;
      qatunnel::Settings file;
      if (!sub.config.empty()) file = qatunnel::read_settings_file(sub.config);
      qatunnel::Settings flags;
      for (const auto& [key, value] : sub.values)
        if (value) flags[key] = *value;
      const auto cfg = qatunnel::make_config(sub.mode, file, flags);

      std::ofstream dump_file;
      if (!sub.dump.empty()) {
        dump_file.open(sub.dump);
        if (!dump_file) throw qatunnel::InvalidArgument("cannot open " + sub.dump);
      }
      std::ostringstream buffer;
      qatunnel::run_experiment(cfg, buffer, dump_file.is_open() ? &dump_file : nullptr);
      if (cfg.out == "-") {
        std::cout << buffer.str();
      } else {
        std::ofstream out(cfg.out, std::ios::binary);
        if (!out) throw qatunnel::InvalidArgument("cannot open output " + cfg.out);
        out << buffer.str();
        if (!out) throw qatunnel::Error("io_error", "failed writing " + cfg.out);
      }
    }
  } catch (const qatunnel::Error& e) {
    report_error(e.code(), e.what());
    return 1;
  } catch (const std::exception& e) {
    report_error("internal", e.what());
    return 1;
  }
  return 0;
}
