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

#ifndef INTENT_RNG_HPP_
#define INTENT_RNG_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace intent {

// Seeded random stream with platform-independent output. std::mt19937_64 is
// specified bit-exactly by the standard; the distributions on top of it are
// not, so uniform/normal are derived here from the raw 64-bit words.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent named sub-stream, e.g. stream(seed, "perception").
  static Rng stream(std::uint64_t seed, std::string_view name);

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, 1).
  double uniform();
  // Standard normal (Box-Muller, one draw per call).
  double normal();
  // Uniform integer in [0, n). n must be positive.
  std::size_t index(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a(std::string_view s);

}  // namespace intent

#endif  // INTENT_RNG_HPP_
