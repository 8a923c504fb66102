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

#include "intent/world.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "intent/errors.hpp"
#include "intent/json_util.hpp"

namespace intent {

using nlohmann::json;

namespace {

constexpr double kBoundaryTolerance = 1e-12;

struct ParseKeyError : ParseError {
  explicit ParseKeyError(const std::string& what) : ParseError(what) {}
};

const json& require(const json& j, const char* key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path + ": missing key '" + key + "'");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path + ": expected a number");
  return j.get<double>();
}

std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path + ": expected a string");
  return j.get<std::string>();
}

Vec2 point(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) {
    throw ParseError(path + ": expected [x, y]");
  }
  return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
}

std::vector<Vec2> polygon(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path + ": expected a list of points");
  std::vector<Vec2> pts;
  for (std::size_t i = 0; i < j.size(); ++i) {
    pts.push_back(point(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return pts;
}

json point_json(Vec2 p) { return json::array({p.x, p.y}); }

json polygon_json(const std::vector<Vec2>& poly) {
  json out = json::array();
  for (const auto& p : poly) out.push_back(point_json(p));
  return out;
}

double signed_area(std::span<const Vec2> poly) {
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    a += cross(poly[i], poly[(i + 1) % poly.size()]);
  }
  return 0.5 * a;
}

void validate_polygon(const std::vector<Vec2>& poly, const std::string& path) {
  if (poly.size() < 3) {
    throw ValidationError(path, "polygon needs at least 3 vertices");
  }
  if (!is_simple_polygon(poly) || signed_area(poly) == 0.0) {
    throw ValidationError(path, "polygon is not simple");
  }
}

Area parse_area(const json& j, const std::string& path) {
  check_keys<ParseKeyError>(j, {"id", "name", "polygon"}, path);
  Area a;
  a.id = text(require(j, "id", path), path + ".id");
  a.name = j.contains("name") ? text(j["name"], path + ".name") : a.id;
  a.polygon = polygon(require(j, "polygon", path), path + ".polygon");
  validate_polygon(a.polygon, path + ".polygon");
  a.centroid = vertex_average(a.polygon);
  return a;
}

WorldObject parse_object(const json& j, const std::string& path) {
  check_keys<ParseKeyError>(j,
                            {"id", "label", "category", "attributes",
                             "relations", "position", "graspability"},
                            path);
  WorldObject o;
  o.id = text(require(j, "id", path), path + ".id");
  o.label = text(require(j, "label", path), path + ".label");
  o.category = text(require(j, "category", path), path + ".category");
  if (j.contains("attributes")) {
    const auto& attrs = j["attributes"];
    if (!attrs.is_object()) {
      throw ParseError(path + ".attributes: expected an object");
    }
    for (const auto& [k, v] : attrs.items()) {
      o.attributes[k] = text(v, path + ".attributes." + k);
    }
  }
  if (j.contains("relations")) {
    const auto& rels = j["relations"];
    if (!rels.is_array()) {
      throw ParseError(path + ".relations: expected a list");
    }
    for (std::size_t i = 0; i < rels.size(); ++i) {
      const std::string rp = path + ".relations[" + std::to_string(i) + "]";
      check_keys<ParseKeyError>(rels[i], {"predicate", "target"}, rp);
      const std::string pred = text(require(rels[i], "predicate", rp),
                                    rp + ".predicate");
      if (pred != "on" && pred != "near") {
        throw ValidationError(rp + ".predicate", "must be 'on' or 'near'");
      }
      o.relations.push_back(
          {parse_predicate(pred), text(require(rels[i], "target", rp),
                                       rp + ".target")});
    }
  }
  o.position = point(require(j, "position", path), path + ".position");
  o.graspability = j.contains("graspability")
                       ? number(j["graspability"], path + ".graspability")
                       : 1.0;
  if (o.label.empty()) throw ValidationError(path + ".label", "empty label");
  if (!(o.graspability > 0.0 && o.graspability <= 1.0)) {
    throw ValidationError(path + ".graspability", "must be in (0, 1]");
  }
  return o;
}

}  // namespace

const char* to_string(Predicate p) {
  return p == Predicate::on ? "on" : "near";
}

Predicate parse_predicate(std::string_view s) {
  if (s == "on") return Predicate::on;
  if (s == "near") return Predicate::near;
  throw ParseError("unknown predicate '" + std::string(s) + "'");
}

const WorldObject* Scenario::find_object(std::string_view id) const {
  for (const auto& o : objects) {
    if (o.id == id) return &o;
  }
  return nullptr;
}

const Area* Scenario::find_area(std::string_view id) const {
  for (const auto& a : areas) {
    if (a.id == id) return &a;
  }
  return nullptr;
}

std::filesystem::path Scenario::ontology_file() const {
  std::filesystem::path p(ontology);
  return p.is_absolute() ? p : base_dir / p;
}

bool equivalent(const Scenario& a, const Scenario& b) {
  return a.name == b.name && a.areas == b.areas && a.objects == b.objects &&
         a.robot_start == b.robot_start && a.start_region == b.start_region &&
         a.ontology == b.ontology && a.reach_radius == b.reach_radius;
}

Scenario parse_scenario(const json& doc, const std::filesystem::path& base_dir) {
  check_keys<ParseKeyError>(doc,
                            {"name", "areas", "objects", "robot_start",
                             "reach_radius", "ontology"},
                            "$");
  Scenario s;
  s.base_dir = base_dir;
  s.name = text(require(doc, "name", "$"), "name");
  s.ontology = text(require(doc, "ontology", "$"), "ontology");
  s.reach_radius = number(require(doc, "reach_radius", "$"), "reach_radius");
  if (!(s.reach_radius > 0.0)) {
    throw ValidationError("reach_radius", "must be positive");
  }

  const auto& start = require(doc, "robot_start", "$");
  check_keys<ParseKeyError>(start, {"x", "y", "heading", "region"},
                            "robot_start");
  s.robot_start.x = number(require(start, "x", "robot_start"), "robot_start.x");
  s.robot_start.y = number(require(start, "y", "robot_start"), "robot_start.y");
  s.robot_start.heading = normalize_angle(
      start.contains("heading") ? number(start["heading"], "robot_start.heading")
                                : 0.0);
  if (start.contains("region")) {
    s.start_region = polygon(start["region"], "robot_start.region");
    validate_polygon(s.start_region, "robot_start.region");
  }

  const auto& areas = require(doc, "areas", "$");
  if (!areas.is_array()) throw ParseError("areas: expected a list");
  std::set<std::string> area_ids;
  for (std::size_t i = 0; i < areas.size(); ++i) {
    const std::string path = "areas[" + std::to_string(i) + "]";
    Area a = parse_area(areas[i], path);
    if (!area_ids.insert(a.id).second) {
      throw ValidationError(path + ".id", "duplicate area id '" + a.id + "'");
    }
    s.areas.push_back(std::move(a));
  }

  const auto& objects = require(doc, "objects", "$");
  if (!objects.is_array()) throw ParseError("objects: expected a list");
  std::set<std::string> object_ids;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const std::string path = "objects[" + std::to_string(i) + "]";
    WorldObject o = parse_object(objects[i], path);
    if (!object_ids.insert(o.id).second) {
      throw ValidationError(path + ".id", "duplicate object id '" + o.id + "'");
    }
    int containing = 0;
    for (const auto& a : s.areas) {
      containing += point_in_polygon(o.position, a.polygon) ? 1 : 0;
    }
    if (containing != 1) {
      throw ValidationError(
          path + ".position",
          "object '" + o.id + "' must lie inside exactly one area (found " +
              std::to_string(containing) + ")");
    }
    s.objects.push_back(std::move(o));
  }

  for (std::size_t i = 0; i < s.objects.size(); ++i) {
    const auto& rels = s.objects[i].relations;
    for (std::size_t r = 0; r < rels.size(); ++r) {
      const auto& t = rels[r].target;
      if (!object_ids.count(t) && !area_ids.count(t)) {
        throw ValidationError("objects[" + std::to_string(i) + "].relations[" +
                                  std::to_string(r) + "].target",
                              "unknown relation target '" + t + "'");
      }
    }
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_json_file(path), path.parent_path());
}

json to_json(const Scenario& s) {
  json doc;
  doc["name"] = s.name;
  doc["ontology"] = s.ontology;
  doc["reach_radius"] = s.reach_radius;
  json start = {{"x", s.robot_start.x},
                {"y", s.robot_start.y},
                {"heading", s.robot_start.heading}};
  if (!s.start_region.empty()) start["region"] = polygon_json(s.start_region);
  doc["robot_start"] = start;
  doc["areas"] = json::array();
  for (const auto& a : s.areas) {
    doc["areas"].push_back(
        {{"id", a.id}, {"name", a.name}, {"polygon", polygon_json(a.polygon)}});
  }
  doc["objects"] = json::array();
  for (const auto& o : s.objects) {
    json rels = json::array();
    for (const auto& r : o.relations) {
      rels.push_back({{"predicate", to_string(r.predicate)}, {"target", r.target}});
    }
    doc["objects"].push_back({{"id", o.id},
                              {"label", o.label},
                              {"category", o.category},
                              {"attributes", o.attributes},
                              {"relations", rels},
                              {"position", point_json(o.position)},
                              {"graspability", o.graspability}});
  }
  return doc;
}

Pose step_kinematics(const Pose& pose, VelocityCommand cmd, double dt,
                     const CommandLimits& limits) {
  const VelocityCommand c = limits.clamp(cmd);
  return {pose.x + c.v * std::cos(pose.heading) * dt,
          pose.y + c.v * std::sin(pose.heading) * dt,
          normalize_angle(pose.heading + c.omega * dt)};
}

bool point_in_polygon(Vec2 p, std::span<const Vec2> poly) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (point_segment_distance(p, {poly[i], poly[(i + 1) % n]}) <=
        kBoundaryTolerance) {
      return true;
    }
  }
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[j];
    if ((a.y > p.y) != (b.y > p.y) &&
        p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) {
      inside = !inside;
    }
  }
  return inside;
}

bool is_simple_polygon(std::span<const Vec2> poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Segment e{poly[i], poly[(i + 1) % n]};
    if (e.a == e.b) return false;
    for (std::size_t k = i + 1; k < n; ++k) {
      const bool adjacent = k == i + 1 || (i == 0 && k == n - 1);
      if (adjacent) continue;
      if (segments_intersect(e, {poly[k], poly[(k + 1) % n]})) return false;
    }
  }
  return true;
}

Vec2 vertex_average(std::span<const Vec2> poly) {
  Vec2 sum;
  for (const auto& p : poly) sum = sum + p;
  return (1.0 / static_cast<double>(poly.size())) * sum;
}

std::optional<std::string> area_of(Vec2 point, std::span<const Area> areas) {
  std::optional<std::string> best;
  for (const auto& a : areas) {
    if (point_in_polygon(point, a.polygon) && (!best || a.id < *best)) {
      best = a.id;
    }
  }
  return best;
}

double bearing_to(const Pose& from, Vec2 target) {
  const Vec2 d = target - from.position();
  if (d.x == 0.0 && d.y == 0.0) throw DegenerateTarget();
  return normalize_angle(std::atan2(d.y, d.x) - from.heading);
}

}  // namespace intent
