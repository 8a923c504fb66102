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

#ifndef INTENT_CONFIG_HPP_
#define INTENT_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

#include "intent/assistance.hpp"
#include "intent/belief.hpp"
#include "intent/external_scorer.hpp"
#include "intent/json_util.hpp"
#include "intent/operator.hpp"
#include "intent/perception.hpp"
#include "intent/semantic.hpp"

namespace intent {

enum class BackendKind { mock, external, disabled };

const char* to_string(BackendKind b);
BackendKind parse_backend(std::string_view s);

struct TrialConfig {
  std::filesystem::path scenario_path;
  std::optional<OperatorProfile> op;  // absent for interactive sessions
  BeliefParams belief;
  CommitmentConfig commitment;
  NoiseModel noise;
  FovParams fov;
  SemanticParams semantic;
  BackendKind backend = BackendKind::mock;
  EndpointConfig endpoint;
  CommandLimits limits;
  ControllerParams controller;
  std::string prompt;
  std::string true_target;
  std::uint64_t seed = 0;
  int max_ticks = 600;
  bool randomize_start = true;
};

// Strict parse of the trial JSON (unknown keys rejected). Relative scenario
// paths resolve against base_dir. Throws ConfigError.
TrialConfig parse_trial_config(const nlohmann::json& j,
                               const std::filesystem::path& base_dir,
                               bool require_operator = true);
TrialConfig load_trial_config(const std::filesystem::path& path);
nlohmann::json to_json(const TrialConfig& cfg);

// Checks the parameter blocks and the cross-references into the scenario.
void validate(const TrialConfig& cfg, const Scenario& scenario);

}  // namespace intent

#endif  // INTENT_CONFIG_HPP_
