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

#ifndef WPA_NAVMESH_HPP_
#define WPA_NAVMESH_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wpa/core.hpp"

namespace wpa {

inline constexpr std::string_view kBombsiteATag = "bombsite_A";
inline constexpr std::string_view kBombsiteBTag = "bombsite_B";

class NavError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One traversable surface. The footprint is axis-aligned in (x, y); the
// surface height is bilinear between the four corner heights, ordered
// (min_x,min_y), (max_x,min_y), (max_x,max_y), (min_x,max_y).
struct NavArea {
  AreaId id = 0;
  std::string name;
  Vec3 centroid;
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;
  std::array<double, 4> corner_z{};
  std::vector<std::string> tags;

  bool contains_xy(double x, double y) const {
    return x >= min_x && x <= max_x && y >= min_y && y <= max_y;
  }
  double surface_z(double x, double y) const;
  bool has_tag(std::string_view tag) const;

  friend bool operator==(const NavArea&, const NavArea&) = default;
};

struct NavConnection {
  AreaId from = 0;
  AreaId to = 0;

  friend bool operator==(const NavConnection&, const NavConnection&) = default;
};

struct NavMesh {
  std::string map_name;
  std::vector<NavArea> areas;
  std::vector<NavConnection> connections;

  const NavArea* find(AreaId id) const;
  const NavArea* find_by_name(std::string_view name) const;

  friend bool operator==(const NavMesh&, const NavMesh&) = default;
};

std::string_view site_tag(BombSite site);

enum class Weighting { kUnit, kEuclidean };

std::optional<Weighting> parse_weighting(std::string_view s);

// Directed adjacency over mesh areas in compressed sparse row form.
// Edge (a, b) says nothing about (b, a).
class NavGraph {
 public:
  struct Edge {
    std::size_t target;
    double weight;
  };

  // Throws NavError on duplicate area ids or dangling connections.
  static NavGraph build(const NavMesh& mesh, Weighting weighting = Weighting::kUnit);

  std::size_t node_count() const { return area_ids_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  Weighting weighting() const { return weighting_; }

  std::optional<std::size_t> index_of(AreaId id) const;
  AreaId area_at(std::size_t index) const { return area_ids_[index]; }
  const Vec3& centroid(std::size_t index) const { return centroids_[index]; }
  std::span<const Edge> out_edges(std::size_t index) const {
    return {edges_.data() + offsets_[index], offsets_[index + 1] - offsets_[index]};
  }

  // Admissible lower bound on the remaining cost from `from` to `to`:
  // straight-line centroid distance for euclidean weights, 0 for unit.
  double heuristic(std::size_t from, std::size_t to) const;

 private:
  Weighting weighting_ = Weighting::kUnit;
  std::vector<AreaId> area_ids_;
  std::vector<Vec3> centroids_;
  std::vector<std::size_t> offsets_;
  std::vector<Edge> edges_;
  std::unordered_map<AreaId, std::size_t> index_;
};

struct PathResult {
  double distance = kDistanceUnreachable;
  std::vector<AreaId> path;  // empty when unreachable

  bool reachable() const { return distance != kDistanceUnreachable; }
};

// Shortest directed path by A*. Throws NavError for unknown area ids.
PathResult graph_distance(const NavGraph& graph, AreaId from, AreaId to);

// Area whose footprint contains (x, y) with the closest surface height.
std::optional<AreaId> locate_area(const NavMesh& mesh, const Vec3& position);

// Minimum graph distance from `from` to any area tagged with the site.
// Throws NavError when no area carries the site tag.
double distance_to_site(const NavGraph& graph, const NavMesh& mesh, AreaId from,
                        BombSite site);

// Per-area distance to each bombsite, precomputed with one reverse
// multi-source Dijkstra per site. Used when replaying whole rounds.
class SiteDistanceTable {
 public:
  SiteDistanceTable() = default;
  SiteDistanceTable(const NavGraph& graph, const NavMesh& mesh);

  double to_site(AreaId from, BombSite site) const;
  bool has_site(BombSite site) const;

 private:
  std::unordered_map<AreaId, std::size_t> index_;
  std::vector<double> to_a_;
  std::vector<double> to_b_;
  bool has_a_ = false;
  bool has_b_ = false;
};

// Mesh, graph and site table bundled for replay.
class MapNavigation {
 public:
  explicit MapNavigation(NavMesh mesh, Weighting weighting = Weighting::kUnit);

  const NavMesh& mesh() const { return mesh_; }
  const NavGraph& graph() const { return graph_; }
  const SiteDistanceTable& sites() const { return sites_; }

 private:
  NavMesh mesh_;
  NavGraph graph_;
  SiteDistanceTable sites_;
};

NavMesh parse_navmesh(std::string_view json_text);
std::string serialize_navmesh(const NavMesh& mesh);
NavMesh load_navmesh(const std::string& path);

}  // namespace wpa

#endif  // WPA_NAVMESH_HPP_
