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

#ifndef INTENT_SUITE_HPP_
#define INTENT_SUITE_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "intent/config.hpp"
#include "intent/metrics.hpp"
#include "intent/prompt.hpp"

namespace intent {

// One expanded trial of a suite. A trial whose config failed to parse keeps
// its error and is reported, not run.
struct SuiteEntry {
  int index = 0;
  std::optional<TrialConfig> cfg;
  std::string config_error;
  std::string prompt_kind = "none";
  std::string category;
};

struct SuiteConfig {
  std::string name;
  std::vector<SuiteEntry> entries;
};

// Suite file: {"name", "base": {trial fields}, "trials": [{overrides...,
// "repeat": N}]}. Each entry is merge-patched onto base; "repeat" expands an
// entry into N trials with consecutive seeds.
SuiteConfig parse_suite(const nlohmann::json& j,
                        const std::filesystem::path& base_dir,
                        std::int64_t seed_offset = 0);
SuiteConfig load_suite(const std::filesystem::path& path,
                       std::int64_t seed_offset = 0);

struct SuiteOptions {
  int jobs = 1;
  std::optional<BackendKind> backend;  // semantic arm override
  std::filesystem::path out_dir;       // traces written when non-empty
};

struct TrialOutcome {
  int index = 0;
  std::string arm;
  std::uint64_t seed = 0;
  std::string prompt_kind;
  std::string category;
  std::string true_target;
  std::optional<TrialMetrics> metrics;
  std::string error;
  bool config_error = false;
  bool timed_out = false;
  std::filesystem::path trace_path;
};

struct SummaryRow {
  std::string arm;
  std::string group_kind;  // all | prompt_kind | category
  std::string group;
  std::string metric;
  std::size_t n = 0;
  double mean = 0.0;
  double median = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

struct SuiteReport {
  std::string name;
  std::vector<TrialOutcome> outcomes;  // ordered by (index, arm)
  std::vector<SummaryRow> rows;
  bool all_configs_ok = true;
};

inline constexpr const char* kSemanticArm = "semantic";
inline constexpr const char* kBaselineArm = "baseline";

// Runs every entry under the semantic arm and the baseline arm (backend
// disabled) with identical seeds. jobs > 1 distributes trials over OpenMP
// threads; the report is assembled in index order, so bytes do not depend
// on jobs.
SuiteReport run_suite(const SuiteConfig& suite, const SuiteOptions& options);

// Serial reference path, kept for equivalence tests and benchmarks.
SuiteReport run_suite_serial(const SuiteConfig& suite,
                             const SuiteOptions& options);

std::vector<SummaryRow> summarize(const std::vector<TrialOutcome>& outcomes);

struct Interval {
  double low = 0.0;
  double high = 0.0;
};
// Percentile bootstrap of the mean, 1000 resamples, seeded.
Interval bootstrap_mean_ci(const std::vector<double>& xs, std::uint64_t seed,
                           int resamples = 1000);
double median_of(std::vector<double> xs);

std::string report_csv(const SuiteReport& report);
nlohmann::json report_json(const SuiteReport& report);
void write_report(const SuiteReport& report, const std::filesystem::path& dir);

}  // namespace intent

#endif  // INTENT_SUITE_HPP_
