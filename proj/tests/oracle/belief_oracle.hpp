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

// Closed-form reference for the recursive belief filter. Unrolling
//   b_t(x) ~ b_{t-1}(x)^lambda * L_t(x) * s_t(x)^gamma
// from b_0 gives
//   log b_T(x) = lambda^T log b_0(x)
//              + sum_t lambda^(T-t) (log L_t(x) + gamma log s_t(x)) + const,
// evaluated here in the log domain with no intermediate normalisation.

#ifndef INTENT_TESTS_ORACLE_BELIEF_ORACLE_HPP_
#define INTENT_TESTS_ORACLE_BELIEF_ORACLE_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace oracle {

using Dist = std::map<std::string, double>;

struct Step {
  Dist likelihood;
  Dist semantic;  // empty: no semantic factor this tick
};

inline Dist normalise_log(const std::map<std::string, long double>& logs) {
  long double hi = -std::numeric_limits<long double>::infinity();
  for (const auto& [k, v] : logs) hi = std::max(hi, v);
  long double z = 0.0L;
  for (const auto& [k, v] : logs) z += std::exp(v - hi);
  Dist out;
  for (const auto& [k, v] : logs) {
    out[k] = static_cast<double>(std::exp(v - hi) / z);
  }
  return out;
}

// b_0 over `keys`, then the given steps.
inline Dist unrolled(const Dist& b0, const std::vector<Step>& steps,
                     double lambda, double gamma) {
  const auto T = static_cast<int>(steps.size());
  std::map<std::string, long double> logs;
  for (const auto& [k, p] : b0) {
    long double acc = std::pow(static_cast<long double>(lambda), T) *
                      std::log(static_cast<long double>(p));
    for (int t = 1; t <= T; ++t) {
      const auto& s = steps[static_cast<std::size_t>(t - 1)];
      long double term = std::log(static_cast<long double>(s.likelihood.at(k)));
      if (!s.semantic.empty()) {
        term += gamma * std::log(static_cast<long double>(s.semantic.at(k)));
      }
      acc += std::pow(static_cast<long double>(lambda), T - t) * term;
    }
    logs[k] = acc;
  }
  return normalise_log(logs);
}

// posterior_j ~ nav(area_j) * man_j; tracks without an area use factor 1.
inline Dist posterior(const Dist& nav, const Dist& man,
                      const std::map<std::string, std::optional<std::string>>& area) {
  std::map<std::string, long double> logs;
  for (const auto& [j, m] : man) {
    const auto& a = area.at(j);
    const long double f = a ? static_cast<long double>(nav.at(*a)) : 1.0L;
    logs[j] = std::log(f) + std::log(static_cast<long double>(m));
  }
  return normalise_log(logs);
}

// Argmax with the lowest id winning ties.
inline std::string argmax(const Dist& d) {
  std::string best;
  double bp = -1.0;
  for (const auto& [k, v] : d) {
    if (v > bp) {
      bp = v;
      best = k;
    }
  }
  return best;
}

inline double max_relative_error(const Dist& a, const Dist& b) {
  double worst = 0.0;
  for (const auto& [k, v] : a) {
    const double w = b.count(k) ? b.at(k) : 0.0;
    worst = std::max(worst, std::abs(v - w) / std::max(std::abs(w), 1e-300));
  }
  return a.size() == b.size() ? worst : std::numeric_limits<double>::infinity();
}

}  // namespace oracle

#endif  // INTENT_TESTS_ORACLE_BELIEF_ORACLE_HPP_
