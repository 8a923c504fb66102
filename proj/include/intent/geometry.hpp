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

#ifndef INTENT_GEOMETRY_HPP_
#define INTENT_GEOMETRY_HPP_

#include <cmath>
#include <numbers>

namespace intent {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// One simulation clock for every loop: 10 Hz.
inline constexpr double kTickSeconds = 0.1;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2, Vec2) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

// Wraps an angle into (-pi, pi].
inline double normalize_angle(double a) {
  double r = std::remainder(a, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

struct Pose {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;

  Vec2 position() const { return {x, y}; }
  friend bool operator==(const Pose&, const Pose&) = default;
};

struct VelocityCommand {
  double v = 0.0;      // m/s, forward
  double omega = 0.0;  // rad/s, yaw rate

  friend bool operator==(const VelocityCommand&,
                         const VelocityCommand&) = default;
};

struct CommandLimits {
  double v_max = 1.0;
  double omega_max = 1.5;

  void validate() const;
  VelocityCommand clamp(VelocityCommand cmd) const;
};

struct Segment {
  Vec2 a;
  Vec2 b;
};

double point_segment_distance(Vec2 p, const Segment& s);
bool segments_intersect(const Segment& s, const Segment& t);

}  // namespace intent

#endif  // INTENT_GEOMETRY_HPP_
