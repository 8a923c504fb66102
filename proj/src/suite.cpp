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

#include "intent/suite.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include <fmt/format.h>
#include <omp.h>

#include "intent/errors.hpp"
#include "intent/ontology.hpp"
#include "intent/rng.hpp"
#include "intent/trial.hpp"

namespace intent {

using nlohmann::json;

namespace {

struct World {
  std::shared_ptr<const Scenario> scenario;
  std::shared_ptr<const Ontology> ontology;
  std::string error;
};

using WorldCache = std::map<std::filesystem::path, World>;

const World& load_world(WorldCache& cache, const std::filesystem::path& path) {
  auto it = cache.find(path);
  if (it != cache.end()) return it->second;
  World w;
  try {
    auto scenario = std::make_shared<const Scenario>(load_scenario(path));
    auto ontology = std::make_shared<const Ontology>(
        Ontology::load(scenario->ontology_file()));
    check_scenario_vocabulary(*scenario, *ontology);
    w.scenario = std::move(scenario);
    w.ontology = std::move(ontology);
  } catch (const Error& e) {
    w.error = e.what();
  }
  return cache.emplace(path, std::move(w)).first->second;
}

struct Job {
  const SuiteEntry* entry;
  const char* arm;
};

std::vector<Job> make_jobs(const SuiteConfig& suite) {
  std::vector<Job> jobs;
  for (const auto& e : suite.entries) {
    jobs.push_back({&e, kSemanticArm});
    jobs.push_back({&e, kBaselineArm});
  }
  return jobs;
}

std::filesystem::path trace_name(const char* arm, int index) {
  return std::filesystem::path("traces") / fmt::format("{}_{:04}.jsonl", arm, index);
}

TrialOutcome run_job(const Job& job, const SuiteOptions& options,
                     const WorldCache& worlds) {
  const SuiteEntry& e = *job.entry;
  TrialOutcome out;
  out.index = e.index;
  out.arm = job.arm;
  out.prompt_kind = e.prompt_kind;
  out.category = e.category;
  if (!e.cfg) {
    out.config_error = true;
    out.error = e.config_error;
    return out;
  }
  TrialConfig cfg = *e.cfg;
  out.seed = cfg.seed;
  out.true_target = cfg.true_target;
  if (job.arm == std::string_view(kBaselineArm)) {
    cfg.backend = BackendKind::disabled;
  } else if (options.backend) {
    cfg.backend = *options.backend;
  }
  const World& w = worlds.at(cfg.scenario_path);
  TrialOptions topts;
  topts.arm = job.arm;
  if (!options.out_dir.empty()) {
    out.trace_path = trace_name(job.arm, e.index);
    topts.trace_path = options.out_dir / out.trace_path;
  }
  try {
    TrialResult r = run_trial(cfg, w.scenario, w.ontology, topts);
    out.metrics = r.metrics;
    out.timed_out = r.timed_out;
  } catch (const ConfigError& ex) {
    out.config_error = true;
    out.error = ex.what();
  } catch (const std::exception& ex) {
    out.error = ex.what();
  }
  return out;
}

WorldCache preload(const SuiteConfig& suite) {
  WorldCache cache;
  for (const auto& e : suite.entries) {
    if (e.cfg) load_world(cache, e.cfg->scenario_path);
  }
  return cache;
}

SuiteReport assemble(const SuiteConfig& suite, std::vector<TrialOutcome> outs) {
  SuiteReport report;
  report.name = suite.name;
  report.outcomes = std::move(outs);
  for (const auto& o : report.outcomes) {
    if (o.config_error) report.all_configs_ok = false;
  }
  report.rows = summarize(report.outcomes);
  return report;
}

std::string prompt_kind_of(const TrialConfig& cfg, const World& w) {
  if (cfg.prompt.empty()) return "none";
  try {
    return to_string(parse_prompt(cfg.prompt, *w.ontology, w.scenario->areas).kind);
  } catch (const UnparsablePrompt&) {
    return "unparsable";
  }
}

}  // namespace

SuiteConfig parse_suite(const json& j, const std::filesystem::path& base_dir,
                        std::int64_t seed_offset) {
  check_keys<ConfigError>(j, {"name", "base", "trials"}, "suite");
  SuiteConfig suite;
  WorldCache cache;
  try {
    suite.name = j.value("name", std::string("suite"));
    const json base = j.value("base", json::object());
    if (!j.contains("trials") || !j["trials"].is_array()) {
      throw ConfigError("suite.trials: expected an array");
    }
    int index = 0;
    for (std::size_t i = 0; i < j["trials"].size(); ++i) {
      json patch = j["trials"][i];
      const std::string path = fmt::format("suite.trials[{}]", i);
      if (!patch.is_object()) throw ConfigError(path + ": expected an object");
      const int repeat = patch.value("repeat", 1);
      if (repeat < 1) throw ConfigError(path + ".repeat: must be >= 1");
      const std::string category = patch.value("category", std::string());
      patch.erase("repeat");
      patch.erase("category");
      json merged = base;
      merged.merge_patch(patch);
      const std::int64_t seed0 = merged.value("seed", std::int64_t{0});
      for (int k = 0; k < repeat; ++k) {
        SuiteEntry e;
        e.index = index++;
        e.category = category;
        merged["seed"] = seed0 + k + seed_offset;
        try {
          TrialConfig cfg = parse_trial_config(merged, base_dir);
          const World& w = load_world(cache, cfg.scenario_path);
          if (!w.error.empty()) throw ConfigError(w.error);
          validate(cfg, *w.scenario);
          e.prompt_kind = prompt_kind_of(cfg, w);
          if (e.category.empty()) {
            const WorldObject* obj = w.scenario->find_object(cfg.true_target);
            if (obj) e.category = obj->category;
          }
          e.cfg = std::move(cfg);
        } catch (const Error& ex) {
          e.config_error = path + ": " + ex.what();
        }
        suite.entries.push_back(std::move(e));
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("suite: ") + e.what());
  }
  return suite;
}

SuiteConfig load_suite(const std::filesystem::path& path,
                       std::int64_t seed_offset) {
  json doc;
  try {
    doc = read_json_file(path);
  } catch (const ParseError& e) {
    throw ConfigError(e.what());
  }
  return parse_suite(doc, path.parent_path(), seed_offset);
}

SuiteReport run_suite(const SuiteConfig& suite, const SuiteOptions& options) {
  const WorldCache worlds = preload(suite);
  const std::vector<Job> jobs = make_jobs(suite);
  std::vector<TrialOutcome> outs(jobs.size());
  const int threads = std::max(1, options.jobs);
  const auto n = static_cast<std::int64_t>(jobs.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::int64_t i = 0; i < n; ++i) {
    outs[static_cast<std::size_t>(i)] =
        run_job(jobs[static_cast<std::size_t>(i)], options, worlds);
  }
  return assemble(suite, std::move(outs));
}

SuiteReport run_suite_serial(const SuiteConfig& suite,
                             const SuiteOptions& options) {
  const WorldCache worlds = preload(suite);
  std::vector<TrialOutcome> outs;
  for (const auto& job : make_jobs(suite)) {
    outs.push_back(run_job(job, options, worlds));
  }
  return assemble(suite, std::move(outs));
}

double median_of(std::vector<double> xs) {
  if (xs.empty()) throw std::invalid_argument("median of an empty sample");
  std::sort(xs.begin(), xs.end());
  const std::size_t m = xs.size() / 2;
  return xs.size() % 2 ? xs[m] : 0.5 * (xs[m - 1] + xs[m]);
}

Interval bootstrap_mean_ci(const std::vector<double>& xs, std::uint64_t seed,
                           int resamples) {
  if (xs.empty()) throw std::invalid_argument("bootstrap of an empty sample");
  if (resamples < 1) throw std::invalid_argument("resamples must be >= 1");
  Rng rng(seed);
  std::vector<double> means(static_cast<std::size_t>(resamples));
  for (auto& m : means) {
    double s = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) s += xs[rng.index(xs.size())];
    m = s / static_cast<double>(xs.size());
  }
  std::sort(means.begin(), means.end());
  const auto r = static_cast<double>(resamples);
  const auto lo = static_cast<std::size_t>(std::floor(0.025 * r));
  const auto hi = static_cast<std::size_t>(
      std::max(0.0, std::ceil(0.975 * r) - 1.0));
  return {means[lo], means[std::min(hi, means.size() - 1)]};
}

std::vector<SummaryRow> summarize(const std::vector<TrialOutcome>& outcomes) {
  static const char* const kMetrics[] = {"ttcp_s", "completion_s", "stability",
                                         "intent_correct", "committed"};
  auto value = [](const TrialMetrics& m,
                  std::string_view metric) -> std::optional<double> {
    if (metric == "ttcp_s") return m.ttcp_s;
    if (metric == "completion_s") return m.completion_s;
    if (metric == "stability") return m.stability;
    if (metric == "intent_correct") return m.intent_correct ? 1.0 : 0.0;
    return m.committed ? 1.0 : 0.0;
  };

  std::vector<SummaryRow> rows;
  for (const char* arm : {kSemanticArm, kBaselineArm}) {
    for (const char* kind : {"all", "prompt_kind", "category"}) {
      std::map<std::string, std::vector<const TrialMetrics*>> groups;
      for (const auto& o : outcomes) {
        if (o.arm != arm || !o.metrics) continue;
        const std::string g = std::string_view(kind) == "all"   ? "all"
                              : std::string_view(kind) == "prompt_kind"
                                  ? o.prompt_kind
                                  : o.category;
        groups[g].push_back(&*o.metrics);
      }
      for (const auto& [group, members] : groups) {
        for (const char* metric : kMetrics) {
          std::vector<double> xs;
          for (const auto* m : members) {
            if (auto v = value(*m, metric)) xs.push_back(*v);
          }
          if (xs.empty()) continue;
          SummaryRow row{arm, kind, group, metric, xs.size()};
          double s = 0.0;
          for (double x : xs) s += x;
          row.mean = s / static_cast<double>(xs.size());
          row.median = median_of(xs);
          const Interval ci = bootstrap_mean_ci(
              xs, fnv1a(fmt::format("{}|{}|{}|{}", arm, kind, group, metric)));
          row.ci_low = ci.low;
          row.ci_high = ci.high;
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

std::string report_csv(const SuiteReport& report) {
  std::string out = "arm,group_kind,group,metric,n,mean,median,ci_low,ci_high\n";
  for (const auto& r : report.rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", r.arm, r.group_kind,
                       r.group, r.metric, r.n, format_number(r.mean),
                       format_number(r.median), format_number(r.ci_low),
                       format_number(r.ci_high));
  }
  return out;
}

json report_json(const SuiteReport& report) {
  json j;
  j["name"] = report.name;
  j["all_configs_ok"] = report.all_configs_ok;
  json summary = json::array();
  for (const auto& r : report.rows) {
    summary.push_back({{"arm", r.arm},
                       {"group_kind", r.group_kind},
                       {"group", r.group},
                       {"metric", r.metric},
                       {"n", r.n},
                       {"mean", r.mean},
                       {"median", r.median},
                       {"ci_low", r.ci_low},
                       {"ci_high", r.ci_high}});
  }
  j["summary"] = std::move(summary);

  json trials = json::array();
  std::size_t n_stab = 0;
  std::size_t n_stable = 0;
  for (const auto& o : report.outcomes) {
    json t = {{"index", o.index},
              {"arm", o.arm},
              {"seed", o.seed},
              {"prompt_kind", o.prompt_kind},
              {"category", o.category},
              {"true_target", o.true_target},
              {"config_error", o.config_error},
              {"timed_out", o.timed_out},
              {"error", o.error},
              {"trace", o.trace_path.generic_string()}};
    if (o.metrics) {
      json m = to_json(*o.metrics);
      m.erase("trace_path");
      t["metrics"] = std::move(m);
      if (o.arm == kSemanticArm && o.metrics->stability) {
        ++n_stab;
        n_stable += *o.metrics->stability >= 0.93;
      }
    } else {
      t["metrics"] = nullptr;
    }
    trials.push_back(std::move(t));
  }
  j["trials"] = std::move(trials);

  // Soft reference: stability >= 0.93 in at least 95% of semantic trials.
  const double frac =
      n_stab ? static_cast<double>(n_stable) / static_cast<double>(n_stab) : 0.0;
  j["stability_reference"] = {{"threshold", 0.93},
                              {"required_fraction", 0.95},
                              {"fraction", frac},
                              {"trials", n_stab},
                              {"status", frac >= 0.95 ? "met" : "review"}};
  return j;
}

void write_report(const SuiteReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream csv(dir / "report.csv", std::ios::binary);
  std::ofstream js(dir / "report.json", std::ios::binary);
  if (!csv || !js) throw Error("cannot write report in " + dir.string());
  csv << report_csv(report);
  js << report_json(report).dump(2) << '\n';
}

}  // namespace intent
