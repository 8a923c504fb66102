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

#include "intent/perception.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace intent {

void NoiseModel::validate() const {
  if (!(miss_prob >= 0.0 && miss_prob < 1.0) ||
      !(label_flip_prob >= 0.0 && label_flip_prob < 1.0) ||
      !(position_sigma >= 0.0) ||
      !(confidence_base > 0.0 && confidence_base <= 1.0)) {
    throw std::invalid_argument("noise model parameters out of range");
  }
}

void FovParams::validate() const {
  if (!(fov_radius > 0.0)) throw std::invalid_argument("fov_radius must be > 0");
  if (!(fov_halfangle > 0.0 && fov_halfangle <= kPi)) {
    throw std::invalid_argument("fov_halfangle must be in (0, pi]");
  }
  if (!(omega_scan != 0.0) || !std::isfinite(omega_scan)) {
    throw std::invalid_argument("omega_scan must be non-zero");
  }
}

const Track* TrackMemory::find(std::string_view id) const {
  auto it = tracks.find(std::string(id));
  return it == tracks.end() ? nullptr : &it->second;
}

ObjectDescriptor describe(const WorldObject& obj) {
  return {obj.label, obj.category, obj.attributes, obj.relations,
          obj.graspability};
}

bool in_fov(const Pose& robot, Vec2 p, const FovParams& fov) {
  const double d = distance(robot.position(), p);
  if (d > fov.fov_radius) return false;
  if (d == 0.0) return true;
  return std::abs(bearing_to(robot, p)) <= fov.fov_halfangle;
}

std::vector<Detection> sense(const Scenario& scenario, const Ontology& ontology,
                             const Pose& robot, const FovParams& fov,
                             const NoiseModel& noise, Rng& rng) {
  std::vector<Detection> out;
  for (const auto& obj : scenario.objects) {
    if (!in_fov(robot, obj.position, fov)) continue;
    if (rng.uniform() < noise.miss_prob) continue;

    Detection det;
    det.object_id = obj.id;
    det.descriptor = describe(obj);
    if (rng.uniform() < noise.label_flip_prob) {
      const auto sibs = ontology.siblings(obj.label);
      if (!sibs.empty()) det.descriptor.label = sibs[rng.index(sibs.size())];
    }
    det.observed_label = det.descriptor.label;
    const double jx = rng.normal();
    const double jy = rng.normal();
    det.position_estimate = {obj.position.x + noise.position_sigma * jx,
                             obj.position.y + noise.position_sigma * jy};
    const double d = distance(robot.position(), obj.position);
    det.confidence = std::clamp(
        noise.confidence_base * (1.0 - d / fov.fov_radius), 0.05, 1.0);
    out.push_back(std::move(det));
  }
  return out;
}

TrackMemory integrate(TrackMemory memory, std::span<const Detection> detections,
                      int tick) {
  for (const auto& det : detections) {
    auto it = memory.tracks.find(det.object_id);
    if (it == memory.tracks.end()) {
      memory.tracks.emplace(det.object_id,
                            Track{det.descriptor, tick, det.confidence,
                                  det.position_estimate});
      continue;
    }
    Track& t = it->second;
    t.smoothed_confidence = 0.5 * t.smoothed_confidence + 0.5 * det.confidence;
    t.descriptor = det.descriptor;
    t.position_estimate = det.position_estimate;
    t.last_seen_tick = tick;
  }
  return memory;
}

ScanPolicy::ScanPolicy(double omega_scan, double dt) : omega_(omega_scan) {
  if (!(omega_scan != 0.0) || !(dt > 0.0)) {
    throw std::invalid_argument("scan needs non-zero omega and positive dt");
  }
  // Integer tick count so a full turn is not lost to summation error.
  ticks_required_ = static_cast<int>(
      std::ceil(kTwoPi / (std::abs(omega_scan) * dt) - 1e-9));
}

std::optional<VelocityCommand> ScanPolicy::command(int tick) const {
  if (tick >= ticks_required_) return std::nullopt;
  return VelocityCommand{0.0, omega_};
}

}  // namespace intent
