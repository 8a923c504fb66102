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

#include "intent/trial.hpp"

#include <fstream>

#include "intent/errors.hpp"
#include "intent/ontology.hpp"

namespace intent {

TrialResult run_trial(const TrialConfig& cfg,
                      std::shared_ptr<const Scenario> scenario,
                      std::shared_ptr<const Ontology> ontology,
                      const TrialOptions& options) {
  if (!cfg.op) throw ConfigError("trial: missing 'operator'");
  auto backend = options.backend ? options.backend : make_backend(cfg);
  Simulation sim(cfg, scenario, ontology, backend);
  Rng op_rng = Rng::stream(cfg.seed, "operator");

  std::vector<TickRecord> records;
  records.reserve(static_cast<std::size_t>(cfg.max_ticks));
  while (!sim.done()) {
    const OperatorEvent ev =
        operator_tick(*cfg.op, sim.pose(), *scenario, sim.tick(),
                      sim.operator_view(), cfg.limits, op_rng);
    records.push_back(sim.step({ev.cmd, ev.prompt, ev.decision}));
  }

  TraceHeader header{scenario->name,       options.arm,
                     cfg.prompt,           cfg.true_target,
                     cfg.seed,             cfg.commitment.theta,
                     kTickSeconds};
  TrialResult result;
  result.timed_out = sim.assist().phase != Phase::Reached;
  result.trace = make_trace(header, records);
  result.metrics = compute_metrics(result.trace);
  if (!options.trace_path.empty()) {
    if (options.trace_path.has_parent_path()) {
      std::filesystem::create_directories(options.trace_path.parent_path());
    }
    std::ofstream out(options.trace_path, std::ios::binary);
    if (!out) throw Error("cannot write trace " + options.trace_path.string());
    write_trace(out, header, records);
    result.metrics.trace_path = options.trace_path.string();
  }
  if (options.keep_records) result.records = std::move(records);
  return result;
}

TrialResult run_trial(const TrialConfig& cfg, const TrialOptions& options) {
  auto scenario = std::make_shared<const Scenario>(load_scenario(cfg.scenario_path));
  auto ontology =
      std::make_shared<const Ontology>(Ontology::load(scenario->ontology_file()));
  check_scenario_vocabulary(*scenario, *ontology);
  return run_trial(cfg, scenario, ontology, options);
}

}  // namespace intent
