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

#ifndef INTENT_TRACE_HPP_
#define INTENT_TRACE_HPP_

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "intent/assistance.hpp"
#include "intent/simulation.hpp"

namespace intent {

struct TraceHeader {
  std::string scenario;
  std::string arm;
  std::string prompt;
  std::string true_target;
  std::uint64_t seed = 0;
  double theta = 0.85;
  double dt = kTickSeconds;
};

struct TraceTick {
  int tick = 0;
  std::string top_id;
  double top_p = 0.0;
  Phase phase = Phase::Scan;
  std::optional<std::string> target;
};

// What the metrics need from a trial: the top candidate and phase per tick,
// the phase transitions, and the reach events.
struct Trace {
  TraceHeader header;
  std::vector<TraceTick> ticks;
  std::vector<Transition> transitions;
  std::vector<int> reach_ticks;
};

Trace make_trace(const TraceHeader& header,
                 const std::vector<TickRecord>& records);

// JSON lines: one header line, one "tick" line per tick ({tick, nav, man,
// posterior, top, pruned} plus phase and pose), a "transition" line per
// phase change ({tick, phase, target, reason}) and a "reach" line per reach
// event. Numbers use fixed-width formatting.
void write_trace(std::ostream& out, const TraceHeader& header,
                 const std::vector<TickRecord>& records);
Trace read_trace(std::istream& in);

// Full per-tick content of a trace file, for offline checks.
struct TraceTickDetail {
  int tick = 0;
  Distribution nav;
  Distribution man;
  Distribution posterior;
  std::set<std::string> pruned;
  std::string top_id;
  double top_p = 0.0;
  Phase phase = Phase::Scan;
  std::optional<std::string> target;
  int prompt_version = 0;
};
std::vector<TraceTickDetail> read_trace_details(std::istream& in);

// Fixed-width number formatting shared by every text output.
std::string format_number(double x);

}  // namespace intent

#endif  // INTENT_TRACE_HPP_
