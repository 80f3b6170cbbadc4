// relwave: run scenario configs, list the builtin catalog, verify acceptance.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "relwave/acceptance.hpp"
#include "relwave/errors.hpp"
#include "relwave/scenario.hpp"

namespace sc = relwave::scenario;

namespace {

enum Exit { kOk = 0, kConfig = 1, kNumeric = 2, kInternal = 3 };

int cmd_run(const std::string& config, const std::string& name, const std::string& out_dir,
            int threads) {
  std::vector<sc::Scenario> scenarios;
  if (config.empty()) {
    if (name.empty()) throw relwave::ConfigError("run needs --config or --scenario");
    scenarios = sc::builtin(name);
  } else {
    scenarios = sc::load_config(config);
    if (!name.empty()) {
      std::vector<sc::Scenario> picked;
      for (auto& s : scenarios)
        if (s.name == name) picked.push_back(s);
      if (picked.empty()) {
        std::string names;
        for (auto& s : scenarios) names += " " + s.name;
        throw relwave::ConfigError("scenario '" + name + "' not found in " + config +
                                   "; defined:" + names);
      }
      scenarios = picked;
    }
  }
  sc::RunOptions opt;
  opt.out_dir = out_dir;
  opt.threads = threads;
  int status = kOk;
  for (const auto& s : scenarios) {
    const auto m = sc::run(s, opt);
    fmt::print("{}: {} files, {} flags, {:.2f}s -> {}\n", s.name, m.outputs.size(),
               m.flags.size(), m.wall_seconds, m.manifest_path.string());
    for (const auto& e : m.errors) fmt::print(stderr, "{}: error: {}\n", s.name, e);
    if (!m.ok()) status = kNumeric;
  }
  return status;
}

int cmd_list() {
  for (const auto& e : sc::catalog()) {
    fmt::print("{:<6} {:<24} {}\n", e.name, e.figure, e.summary);
    if (e.scenarios.size() > 1 || e.scenarios.front() != e.name) {
      std::string panels;
      for (const auto& s : e.scenarios) panels += " " + s;
      fmt::print("{:<6} {:<24} scenarios:{}\n", "", "", panels);
    }
  }
  return kOk;
}

int cmd_verify(int threads, const std::vector<int>& only) {
  relwave::acceptance::Options opt;
  opt.threads = threads;
  bool all = true;
  auto report = [&](const relwave::acceptance::CriterionResult& r) {
    fmt::print("{}\n", relwave::acceptance::format(r));
    std::fflush(stdout);
    all = all && r.pass;
  };
  if (only.empty()) {
    relwave::acceptance::run_all(opt, report);
  } else {
    for (int id : only) report(relwave::acceptance::evaluate(id, opt));
  }
  return all ? kOk : kNumeric;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relativistic scalar wavepackets: scenario runner and acceptance checks"};
  app.require_subcommand(1);

  std::string config, scenario, out_dir = ".";
  int threads = 1;
  auto* run = app.add_subcommand("run", "run scenarios from a config file or the catalog");
  run->add_option("--config", config, "INI scenario file");
  run->add_option("--scenario", scenario, "scenario or catalog entry name");
  run->add_option("--out-dir", out_dir, "output directory")->capture_default_str();
  run->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  app.add_subcommand("list", "list the builtin scenarios");

  std::vector<int> only;
  int vthreads = 1;
  auto* verify = app.add_subcommand("verify", "run the acceptance checks");
  verify->add_option("--criterion", only, "run only these criteria")->check(CLI::Range(1, 12));
  verify->add_option("--threads", vthreads, "worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*run) return cmd_run(config, scenario, out_dir, threads);
    if (*verify) return cmd_verify(vthreads, only);
    return cmd_list();
  } catch (const relwave::ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kConfig;
  } catch (const relwave::AccuracyError& e) {
    fmt::print(stderr, "numeric error: {}\n", e.what());
    return kNumeric;
  } catch (const std::exception& e) {
    fmt::print(stderr, "internal error: {}\n", e.what());
    return kInternal;
  }
}
