// Copyright 2026 The WPA Authors.
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

#include "wpa/navmesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <queue>
#include <tuple>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace wpa {

using json = nlohmann::json;

double NavArea::surface_z(double x, double y) const {
  const double wx = max_x > min_x ? (x - min_x) / (max_x - min_x) : 0.0;
  const double wy = max_y > min_y ? (y - min_y) / (max_y - min_y) : 0.0;
  const double south = corner_z[0] + (corner_z[1] - corner_z[0]) * wx;
  const double north = corner_z[3] + (corner_z[2] - corner_z[3]) * wx;
  return south + (north - south) * wy;
}

bool NavArea::has_tag(std::string_view tag) const {
  return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

const NavArea* NavMesh::find(AreaId id) const {
  for (const auto& a : areas) {
    if (a.id == id) return &a;
  }
  return nullptr;
}

const NavArea* NavMesh::find_by_name(std::string_view name) const {
  for (const auto& a : areas) {
    if (!a.name.empty() && a.name == name) return &a;
  }
  return nullptr;
}

std::string_view site_tag(BombSite site) {
  switch (site) {
    case BombSite::kA: return kBombsiteATag;
    case BombSite::kB: return kBombsiteBTag;
    case BombSite::kNone: break;
  }
  throw NavError("bombsite must be A or B");
}

std::optional<Weighting> parse_weighting(std::string_view s) {
  if (s == "unit") return Weighting::kUnit;
  if (s == "euclidean") return Weighting::kEuclidean;
  return std::nullopt;
}

NavGraph NavGraph::build(const NavMesh& mesh, Weighting weighting) {
  NavGraph g;
  g.weighting_ = weighting;
  g.area_ids_.reserve(mesh.areas.size());
  g.centroids_.reserve(mesh.areas.size());
  for (const auto& area : mesh.areas) {
    if (!g.index_.emplace(area.id, g.area_ids_.size()).second) {
      throw NavError("duplicate area id " + std::to_string(area.id));
    }
    g.area_ids_.push_back(area.id);
    g.centroids_.push_back(area.centroid);
  }

  const std::size_t n = g.area_ids_.size();
  std::vector<std::vector<Edge>> adjacency(n);
  for (const auto& c : mesh.connections) {
    auto from = g.index_.find(c.from);
    auto to = g.index_.find(c.to);
    if (from == g.index_.end()) {
      throw NavError("connection references missing area " + std::to_string(c.from));
    }
    if (to == g.index_.end()) {
      throw NavError("connection references missing area " + std::to_string(c.to));
    }
    const double w = weighting == Weighting::kUnit
                         ? 1.0
                         : distance(g.centroids_[from->second], g.centroids_[to->second]);
    adjacency[from->second].push_back({to->second, w});
  }

  g.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    g.offsets_[i + 1] = g.offsets_[i] + adjacency[i].size();
  }
  g.edges_.reserve(g.offsets_[n]);
  for (auto& list : adjacency) {
    g.edges_.insert(g.edges_.end(), list.begin(), list.end());
  }
  return g;
}

std::optional<std::size_t> NavGraph::index_of(AreaId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double NavGraph::heuristic(std::size_t from, std::size_t to) const {
  if (weighting_ == Weighting::kUnit) return 0.0;
  return distance(centroids_[from], centroids_[to]);
}

namespace {

std::size_t require_index(const NavGraph& graph, AreaId id) {
  auto idx = graph.index_of(id);
  if (!idx) throw NavError("unknown area id " + std::to_string(id));
  return *idx;
}

}  // namespace

PathResult graph_distance(const NavGraph& graph, AreaId from, AreaId to) {
  const std::size_t source = require_index(graph, from);
  const std::size_t target = require_index(graph, to);

  const std::size_t n = graph.node_count();
  std::vector<double> best(n, kDistanceUnreachable);
  std::vector<std::size_t> parent(n, n);

  // (f, g, node); ties resolve on smaller g then smaller node index.
  using Entry = std::tuple<double, double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  best[source] = 0.0;
  open.emplace(graph.heuristic(source, target), 0.0, source);

  while (!open.empty()) {
    auto [f, g, node] = open.top();
    open.pop();
    if (g > best[node]) continue;  // stale
    if (node == target) break;
    for (const auto& e : graph.out_edges(node)) {
      const double candidate = g + e.weight;
      if (candidate < best[e.target]) {
        best[e.target] = candidate;
        parent[e.target] = node;
        open.emplace(candidate + graph.heuristic(e.target, target), candidate, e.target);
      }
    }
  }

  PathResult result;
  if (best[target] == kDistanceUnreachable) return result;
  result.distance = best[target];
  for (std::size_t v = target; v != n; v = parent[v]) {
    result.path.push_back(graph.area_at(v));
    if (v == source) break;
  }
  std::reverse(result.path.begin(), result.path.end());
  return result;
}

std::optional<AreaId> locate_area(const NavMesh& mesh, const Vec3& position) {
  std::optional<AreaId> found;
  double best_gap = 0.0;
  for (const auto& area : mesh.areas) {
    if (!area.contains_xy(position.x, position.y)) continue;
    const double gap = std::abs(position.z - area.surface_z(position.x, position.y));
    if (!found || gap < best_gap) {
      found = area.id;
      best_gap = gap;
    }
  }
  return found;
}

double distance_to_site(const NavGraph& graph, const NavMesh& mesh, AreaId from,
                        BombSite site) {
  const auto tag = site_tag(site);
  double best = kDistanceUnreachable;
  bool tagged = false;
  for (const auto& area : mesh.areas) {
    if (!area.has_tag(tag)) continue;
    tagged = true;
    best = std::min(best, graph_distance(graph, from, area.id).distance);
  }
  if (!tagged) throw NavError("no area tagged " + std::string(tag));
  return best;
}

namespace {

// Distances from every node to the nearest seed, following edges backwards.
std::vector<double> reverse_multi_source(const NavGraph& graph,
                                         const std::vector<std::size_t>& seeds) {
  const std::size_t n = graph.node_count();
  std::vector<std::vector<NavGraph::Edge>> reverse(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (const auto& e : graph.out_edges(u)) reverse[e.target].push_back({u, e.weight});
  }
  std::vector<double> dist(n, kDistanceUnreachable);
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  for (auto s : seeds) {
    dist[s] = 0.0;
    queue.emplace(0.0, s);
  }
  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[u]) continue;
    for (const auto& e : reverse[u]) {
      if (d + e.weight < dist[e.target]) {
        dist[e.target] = d + e.weight;
        queue.emplace(dist[e.target], e.target);
      }
    }
  }
  return dist;
}

}  // namespace

SiteDistanceTable::SiteDistanceTable(const NavGraph& graph, const NavMesh& mesh) {
  std::vector<std::size_t> seeds_a;
  std::vector<std::size_t> seeds_b;
  for (std::size_t i = 0; i < graph.node_count(); ++i) {
    index_.emplace(graph.area_at(i), i);
    const NavArea* area = mesh.find(graph.area_at(i));
    if (area->has_tag(kBombsiteATag)) seeds_a.push_back(i);
    if (area->has_tag(kBombsiteBTag)) seeds_b.push_back(i);
  }
  has_a_ = !seeds_a.empty();
  has_b_ = !seeds_b.empty();
  to_a_ = reverse_multi_source(graph, seeds_a);
  to_b_ = reverse_multi_source(graph, seeds_b);
}

double SiteDistanceTable::to_site(AreaId from, BombSite site) const {
  if (!has_site(site)) throw NavError("no area tagged " + std::string(site_tag(site)));
  auto it = index_.find(from);
  if (it == index_.end()) throw NavError("unknown area id " + std::to_string(from));
  return site == BombSite::kA ? to_a_[it->second] : to_b_[it->second];
}

bool SiteDistanceTable::has_site(BombSite site) const {
  switch (site) {
    case BombSite::kA: return has_a_;
    case BombSite::kB: return has_b_;
    case BombSite::kNone: break;
  }
  return false;
}

MapNavigation::MapNavigation(NavMesh mesh, Weighting weighting)
    : mesh_(std::move(mesh)),
      graph_(NavGraph::build(mesh_, weighting)),
      sites_(graph_, mesh_) {}

// --- JSON -------------------------------------------------------------------

namespace {

Vec3 vec3_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw NavError(where + ": expected [x, y, z]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

std::pair<double, double> vec2_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw NavError(where + ": expected [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

NavMesh parse_navmesh(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw NavError(std::string("malformed mesh JSON: ") + e.what());
  }
  NavMesh mesh;
  try {
    mesh.map_name = doc.value("map_name", "");
    const auto& areas = doc.at("areas");
    for (std::size_t i = 0; i < areas.size(); ++i) {
      const auto& a = areas[i];
      const std::string where = "areas[" + std::to_string(i) + "]";
      NavArea area;
      area.id = a.at("id").get<AreaId>();
      area.name = a.value("name", "");
      area.centroid = vec3_from(a.at("centroid"), where + ".centroid");
      std::tie(area.min_x, area.min_y) = vec2_from(a.at("min"), where + ".min");
      std::tie(area.max_x, area.max_y) = vec2_from(a.at("max"), where + ".max");
      if (area.min_x > area.max_x || area.min_y > area.max_y) {
        throw NavError(where + ": footprint min exceeds max");
      }
      if (a.contains("corner_z")) {
        const auto& cz = a.at("corner_z");
        if (!cz.is_array() || cz.size() != 4) throw NavError(where + ".corner_z: expected 4 heights");
        for (std::size_t k = 0; k < 4; ++k) area.corner_z[k] = cz[k].get<double>();
      } else {
        area.corner_z.fill(area.centroid.z);
      }
      if (a.contains("tags")) area.tags = a.at("tags").get<std::vector<std::string>>();
      mesh.areas.push_back(std::move(area));
    }
    const auto& conns = doc.at("connections");
    for (std::size_t i = 0; i < conns.size(); ++i) {
      const auto& c = conns[i];
      if (!c.is_array() || c.size() != 2) {
        throw NavError("connections[" + std::to_string(i) + "]: expected [from, to]");
      }
      mesh.connections.push_back({c[0].get<AreaId>(), c[1].get<AreaId>()});
    }
  } catch (const json::exception& e) {
    throw NavError(std::string("invalid mesh document: ") + e.what());
  }
  return mesh;
}

std::string serialize_navmesh(const NavMesh& mesh) {
  json doc;
  doc["map_name"] = mesh.map_name;
  json areas = json::array();
  for (const auto& a : mesh.areas) {
    json j;
    j["id"] = a.id;
    if (!a.name.empty()) j["name"] = a.name;
    j["centroid"] = {a.centroid.x, a.centroid.y, a.centroid.z};
    j["min"] = {a.min_x, a.min_y};
    j["max"] = {a.max_x, a.max_y};
    j["corner_z"] = a.corner_z;
    j["tags"] = a.tags;
    areas.push_back(std::move(j));
  }
  doc["areas"] = std::move(areas);
  json conns = json::array();
  for (const auto& c : mesh.connections) conns.push_back({c.from, c.to});
  doc["connections"] = std::move(conns);
  return doc.dump(2);
}

NavMesh load_navmesh(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open mesh file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_navmesh(buf.str());
}

}  // namespace wpa
