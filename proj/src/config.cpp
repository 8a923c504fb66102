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

#include "intent/config.hpp"

#include "intent/errors.hpp"

namespace intent {

using nlohmann::json;

namespace {

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j[key].get<T>();
}

BeliefParams parse_belief(const json& j) {
  check_keys<ConfigError>(j,
                          {"kappa_nav", "sigma_nav", "kappa_man", "sigma_d",
                           "lambda", "gamma", "u_min"},
                          "belief");
  BeliefParams p;
  read(j, "kappa_nav", p.kappa_nav);
  read(j, "sigma_nav", p.sigma_nav);
  read(j, "kappa_man", p.kappa_man);
  read(j, "sigma_d", p.sigma_d);
  read(j, "lambda", p.lambda);
  read(j, "gamma", p.gamma);
  read(j, "u_min", p.u_min);
  return p;
}

CommitmentConfig parse_commitment(const json& j) {
  check_keys<ConfigError>(j,
                          {"theta", "tau", "policy", "mode", "blend_gain",
                           "cooldown_ticks", "override_threshold",
                           "grasp_proxy_ticks"},
                          "commitment");
  CommitmentConfig c;
  read(j, "theta", c.theta);
  read(j, "tau", c.tau);
  if (j.contains("policy")) c.policy = parse_policy(j["policy"].get<std::string>());
  if (j.contains("mode")) c.mode = parse_mode(j["mode"].get<std::string>());
  read(j, "blend_gain", c.blend_gain);
  read(j, "cooldown_ticks", c.cooldown_ticks);
  read(j, "override_threshold", c.override_threshold);
  read(j, "grasp_proxy_ticks", c.grasp_proxy_ticks);
  return c;
}

NoiseModel parse_noise(const json& j) {
  check_keys<ConfigError>(j,
                          {"miss_prob", "label_flip_prob", "position_sigma",
                           "confidence_base"},
                          "noise");
  NoiseModel n;
  read(j, "miss_prob", n.miss_prob);
  read(j, "label_flip_prob", n.label_flip_prob);
  read(j, "position_sigma", n.position_sigma);
  read(j, "confidence_base", n.confidence_base);
  return n;
}

FovParams parse_fov(const json& j) {
  check_keys<ConfigError>(j, {"fov_radius", "fov_halfangle", "omega_scan"},
                          "perception");
  FovParams f;
  read(j, "fov_radius", f.fov_radius);
  read(j, "fov_halfangle", f.fov_halfangle);
  read(j, "omega_scan", f.omega_scan);
  return f;
}

void parse_semantic(const json& j, TrialConfig& cfg) {
  check_keys<ConfigError>(j,
                          {"backend", "alpha", "beta", "epsilon", "rho",
                           "near_radius", "endpoint"},
                          "semantic");
  if (j.contains("backend")) {
    cfg.backend = parse_backend(j["backend"].get<std::string>());
  }
  read(j, "alpha", cfg.semantic.alpha);
  read(j, "beta", cfg.semantic.beta);
  read(j, "epsilon", cfg.semantic.epsilon);
  read(j, "rho", cfg.semantic.rho);
  read(j, "near_radius", cfg.semantic.near_radius);
  if (j.contains("endpoint")) {
    const auto& e = j["endpoint"];
    check_keys<ConfigError>(e, {"url", "timeout_s"}, "semantic.endpoint");
    read(e, "url", cfg.endpoint.url);
    read(e, "timeout_s", cfg.endpoint.timeout_s);
  }
}

template <typename Fn>
void guarded(const char* what, Fn&& fn) {
  try {
    fn();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

const char* to_string(BackendKind b) {
  switch (b) {
    case BackendKind::mock: return "mock";
    case BackendKind::external: return "external";
    case BackendKind::disabled: return "disabled";
  }
  return "mock";
}

BackendKind parse_backend(std::string_view s) {
  if (s == "mock") return BackendKind::mock;
  if (s == "external") return BackendKind::external;
  if (s == "disabled") return BackendKind::disabled;
  throw ConfigError("unknown semantic backend '" + std::string(s) + "'");
}

TrialConfig parse_trial_config(const json& j,
                               const std::filesystem::path& base_dir,
                               bool require_operator) {
  check_keys<ConfigError>(j,
                          {"scenario", "operator", "belief", "commitment",
                           "noise", "perception", "semantic", "limits",
                           "controller", "prompt", "true_target", "seed",
                           "max_ticks", "randomize_start"},
                          "trial");
  TrialConfig cfg;
  try {
    if (!j.contains("scenario")) throw ConfigError("trial: missing 'scenario'");
    std::filesystem::path sp(j["scenario"].get<std::string>());
    cfg.scenario_path = sp.is_absolute() ? sp : base_dir / sp;
    read(j, "prompt", cfg.prompt);
    read(j, "true_target", cfg.true_target);
    if (j.contains("seed")) {
      const auto& s = j["seed"];
      if (!s.is_number_integer() || s.get<std::int64_t>() < 0) {
        throw ConfigError("trial.seed: expected a non-negative integer");
      }
      cfg.seed = s.get<std::uint64_t>();
    }
    read(j, "max_ticks", cfg.max_ticks);
    read(j, "randomize_start", cfg.randomize_start);
    if (j.contains("belief")) cfg.belief = parse_belief(j["belief"]);
    if (j.contains("commitment")) cfg.commitment = parse_commitment(j["commitment"]);
    if (j.contains("noise")) cfg.noise = parse_noise(j["noise"]);
    if (j.contains("perception")) cfg.fov = parse_fov(j["perception"]);
    if (j.contains("semantic")) parse_semantic(j["semantic"], cfg);
    if (j.contains("limits")) {
      check_keys<ConfigError>(j["limits"], {"v_max", "omega_max"}, "limits");
      read(j["limits"], "v_max", cfg.limits.v_max);
      read(j["limits"], "omega_max", cfg.limits.omega_max);
    }
    if (j.contains("controller")) {
      const auto& c = j["controller"];
      check_keys<ConfigError>(c, {"k_v", "k_omega", "align_tolerance"},
                              "controller");
      read(c, "k_v", cfg.controller.k_v);
      read(c, "k_omega", cfg.controller.k_omega);
      read(c, "align_tolerance", cfg.controller.align_tolerance);
    }
    if (j.contains("operator")) {
      cfg.op = parse_operator_profile(j["operator"], cfg.true_target);
    } else if (require_operator) {
      throw ConfigError("trial: missing 'operator'");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("trial: ") + e.what());
  }
  return cfg;
}

TrialConfig load_trial_config(const std::filesystem::path& path) {
  json doc;
  try {
    doc = read_json_file(path);
  } catch (const ParseError& e) {
    throw ConfigError(e.what());
  }
  return parse_trial_config(doc, path.parent_path());
}

json to_json(const TrialConfig& c) {
  json j;
  j["scenario"] = c.scenario_path.string();
  if (c.op) j["operator"] = to_json(*c.op);
  j["belief"] = {{"kappa_nav", c.belief.kappa_nav}, {"sigma_nav", c.belief.sigma_nav},
                 {"kappa_man", c.belief.kappa_man}, {"sigma_d", c.belief.sigma_d},
                 {"lambda", c.belief.lambda},       {"gamma", c.belief.gamma},
                 {"u_min", c.belief.u_min}};
  j["commitment"] = {{"theta", c.commitment.theta},
                     {"tau", c.commitment.tau},
                     {"policy", to_string(c.commitment.policy)},
                     {"mode", to_string(c.commitment.mode)},
                     {"blend_gain", c.commitment.blend_gain},
                     {"cooldown_ticks", c.commitment.cooldown()},
                     {"override_threshold", c.commitment.override_threshold},
                     {"grasp_proxy_ticks", c.commitment.grasp_proxy_ticks}};
  j["noise"] = {{"miss_prob", c.noise.miss_prob},
                {"label_flip_prob", c.noise.label_flip_prob},
                {"position_sigma", c.noise.position_sigma},
                {"confidence_base", c.noise.confidence_base}};
  j["perception"] = {{"fov_radius", c.fov.fov_radius},
                     {"fov_halfangle", c.fov.fov_halfangle},
                     {"omega_scan", c.fov.omega_scan}};
  j["semantic"] = {{"backend", to_string(c.backend)},
                   {"alpha", c.semantic.alpha},
                   {"beta", c.semantic.beta},
                   {"epsilon", c.semantic.epsilon},
                   {"rho", c.semantic.rho},
                   {"near_radius", c.semantic.near_radius},
                   {"endpoint",
                    {{"url", c.endpoint.url}, {"timeout_s", c.endpoint.timeout_s}}}};
  j["limits"] = {{"v_max", c.limits.v_max}, {"omega_max", c.limits.omega_max}};
  j["controller"] = {{"k_v", c.controller.k_v},
                     {"k_omega", c.controller.k_omega},
                     {"align_tolerance", c.controller.align_tolerance}};
  j["prompt"] = c.prompt;
  j["true_target"] = c.true_target;
  j["seed"] = c.seed;
  j["max_ticks"] = c.max_ticks;
  j["randomize_start"] = c.randomize_start;
  return j;
}

void validate(const TrialConfig& cfg, const Scenario& scenario) {
  guarded("belief", [&] { cfg.belief.validate(); });
  guarded("commitment", [&] { cfg.commitment.validate(); });
  guarded("noise", [&] { cfg.noise.validate(); });
  guarded("perception", [&] { cfg.fov.validate(); });
  guarded("semantic", [&] { cfg.semantic.validate(); });
  guarded("limits", [&] { cfg.limits.validate(); });
  guarded("controller", [&] { cfg.controller.validate(); });
  if (cfg.backend == BackendKind::external) {
    guarded("semantic.endpoint", [&] { cfg.endpoint.validate(); });
  }
  if (cfg.max_ticks <= 0) throw ConfigError("trial.max_ticks must be > 0");
  if (!cfg.true_target.empty() && !scenario.find_object(cfg.true_target)) {
    throw ConfigError("trial.true_target: unknown object '" + cfg.true_target +
                      "'");
  }
  if (cfg.op) {
    if (cfg.true_target.empty()) throw ConfigError("trial: missing 'true_target'");
    cfg.op->validate(scenario);
  }
}

}  // namespace intent
