// Copyright 2026 The intentsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// intentsim: batch trials, suites, trace metrics and the session service.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "intent/errors.hpp"
#include "intent/metrics.hpp"
#include "intent/suite.hpp"
#include "intent/trial.hpp"
#ifdef INTENT_WITH_SERVICE
#include "intent/service/server.hpp"
#endif

namespace {

int cmd_run(const std::string& suite_path, const std::string& out,
            int jobs, const std::string& backend, std::int64_t seed_offset) {
  intent::SuiteConfig suite = intent::load_suite(suite_path, seed_offset);
  intent::SuiteOptions opts;
  opts.jobs = jobs;
  opts.out_dir = out;
  if (!backend.empty()) opts.backend = intent::parse_backend(backend);
  const intent::SuiteReport report = intent::run_suite(suite, opts);
  intent::write_report(report, out);
  std::size_t failed = 0;
  for (const auto& o : report.outcomes) {
    if (!o.error.empty()) {
      ++failed;
      std::cerr << "trial " << o.index << " (" << o.arm << "): " << o.error
                << "\n";
    }
  }
  std::cout << report.name << ": " << report.outcomes.size() << " runs, "
            << failed << " failed, report in " << out << "\n";
  return report.all_configs_ok ? 0 : 2;
}

int cmd_trial(const std::string& config, const std::string& out) {
  const intent::TrialConfig cfg = intent::load_trial_config(config);
  intent::TrialOptions opts;
  opts.trace_path = std::filesystem::path(out) / "trace.jsonl";
  const intent::TrialResult r = intent::run_trial(cfg, opts);
  const auto j = intent::to_json(r.metrics);
  std::ofstream(std::filesystem::path(out) / "metrics.json") << j.dump(2) << "\n";
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_metrics(const std::string& trace_path) {
  std::ifstream in(trace_path);
  if (!in) throw intent::ConfigError("cannot open trace " + trace_path);
  intent::TrialMetrics m = intent::compute_metrics(intent::read_trace(in));
  m.trace_path = trace_path;
  std::cout << intent::to_json(m).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intent inference simulator with semantic priors"};
  app.require_subcommand(1);

  std::string suite, out, backend, config, trace;
  int jobs = 1;
  std::int64_t seed_offset = 0;

  auto* run = app.add_subcommand("run", "Run a suite under both arms");
  run->add_option("--suite", suite, "Suite file")->required();
  run->add_option("--out", out, "Output directory")->required();
  run->add_option("--jobs", jobs, "Parallel trials")->check(CLI::PositiveNumber);
  run->add_option("--backend", backend, "Semantic arm backend")
      ->check(CLI::IsMember({"mock", "external", "disabled"}));
  run->add_option("--seed-offset", seed_offset, "Added to every trial seed");

  auto* trial = app.add_subcommand("trial", "Run one trial");
  trial->add_option("--config", config, "Trial config")->required();
  trial->add_option("--out", out, "Output directory")->required();

  auto* metrics = app.add_subcommand("metrics", "Recompute metrics from a trace");
  metrics->add_option("--trace", trace, "Trace file")->required();

#ifdef INTENT_WITH_SERVICE
  intent::service::ServerOptions sopts;
  sopts.scenario_dir = INTENT_DEFAULT_SCENARIOS;
  auto* serve = app.add_subcommand("serve", "Run the session service");
  serve->add_option("--port", sopts.port, "TCP port")->envname("INTENT_PORT");
  serve->add_option("--bind", sopts.bind, "Bind address")->envname("INTENT_BIND");
  serve->add_option("--scenarios", sopts.scenario_dir, "Scenario directory")
      ->envname("INTENT_SCENARIOS");
#endif

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return cmd_run(suite, out, jobs, backend, seed_offset);
    if (*trial) return cmd_trial(config, out);
    if (*metrics) return cmd_metrics(trace);
#ifdef INTENT_WITH_SERVICE
    if (*serve) return intent::service::serve(sopts);
#endif
  } catch (const intent::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
