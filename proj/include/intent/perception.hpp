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

#ifndef INTENT_PERCEPTION_HPP_
#define INTENT_PERCEPTION_HPP_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "intent/geometry.hpp"
#include "intent/ontology.hpp"
#include "intent/rng.hpp"
#include "intent/world.hpp"

namespace intent {

// Structured stand-in for an image crop: what the detector "saw".
struct ObjectDescriptor {
  std::string label;
  std::string category;
  AttributeMap attributes;
  std::vector<Relation> relations;
  double graspability = 1.0;

  friend bool operator==(const ObjectDescriptor&,
                         const ObjectDescriptor&) = default;
};

struct Detection {
  std::string object_id;
  std::string observed_label;
  double confidence = 0.0;
  Vec2 position_estimate;
  ObjectDescriptor descriptor;
};

struct NoiseModel {
  double miss_prob = 0.0;
  double label_flip_prob = 0.0;
  double position_sigma = 0.0;
  double confidence_base = 1.0;

  void validate() const;
};

struct FovParams {
  double fov_radius = 6.0;
  double fov_halfangle = kPi / 3.0;
  double omega_scan = kPi / 2.0;

  void validate() const;
};

struct Track {
  ObjectDescriptor descriptor;
  int last_seen_tick = 0;
  double smoothed_confidence = 0.0;
  Vec2 position_estimate;

  friend bool operator==(const Track&, const Track&) = default;
};

// Persistent object memory for one trial; keyed by object id. Tracks are
// never deleted.
struct TrackMemory {
  std::map<std::string, Track> tracks;

  bool empty() const { return tracks.empty(); }
  std::size_t size() const { return tracks.size(); }
  const Track* find(std::string_view id) const;
  friend bool operator==(const TrackMemory&, const TrackMemory&) = default;
};

ObjectDescriptor describe(const WorldObject& obj);

// Candidate set: distance <= fov_radius and |bearing| <= fov_halfangle.
// An object exactly at the robot position counts as dead ahead.
bool in_fov(const Pose& robot, Vec2 p, const FovParams& fov);

// Simulated detector. Random draws per candidate, in object order: miss,
// flip, flip choice (only when flipping), jitter x, jitter y.
std::vector<Detection> sense(const Scenario& scenario, const Ontology& ontology,
                             const Pose& robot, const FovParams& fov,
                             const NoiseModel& noise, Rng& rng);

TrackMemory integrate(TrackMemory memory, std::span<const Detection> detections,
                      int tick);

// 360 degree in-place rotation at omega_scan.
class ScanPolicy {
 public:
  ScanPolicy(double omega_scan, double dt = kTickSeconds);

  // Rotation command for this tick, or nullopt once the cumulative rotation
  // reached a full turn (scan complete).
  std::optional<VelocityCommand> command(int tick) const;
  int ticks_required() const { return ticks_required_; }

 private:
  double omega_;
  int ticks_required_;
};

}  // namespace intent

#endif  // INTENT_PERCEPTION_HPP_
