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

#include "wpa/core.hpp"

#include <cmath>

namespace wpa {

std::string_view to_string(Side s) { return s == Side::kCT ? "CT" : "T"; }

std::string_view to_string(BombSite s) {
  switch (s) {
    case BombSite::kA: return "A";
    case BombSite::kB: return "B";
    case BombSite::kNone: break;
  }
  return "none";
}

std::string_view to_string(WinReason r) {
  switch (r) {
    case WinReason::kElimination: return "elimination";
    case WinReason::kBombExploded: return "bomb_exploded";
    case WinReason::kBombDefused: return "bomb_defused";
    case WinReason::kTimeExpired: return "time_expired";
  }
  return "elimination";
}

std::optional<Side> parse_side(std::string_view s) {
  if (s == "CT") return Side::kCT;
  if (s == "T") return Side::kT;
  return std::nullopt;
}

std::optional<BombSite> parse_bomb_site(std::string_view s) {
  if (s == "A") return BombSite::kA;
  if (s == "B") return BombSite::kB;
  if (s == "none") return BombSite::kNone;
  return std::nullopt;
}

std::optional<WinReason> parse_win_reason(std::string_view s) {
  if (s == "elimination") return WinReason::kElimination;
  if (s == "bomb_exploded") return WinReason::kBombExploded;
  if (s == "bomb_defused") return WinReason::kBombDefused;
  if (s == "time_expired") return WinReason::kTimeExpired;
  return std::nullopt;
}

double distance(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

std::string_view event_type_name(const GameEvent& e) {
  struct Namer {
    std::string_view operator()(const FootstepEvent&) const { return "footstep"; }
    std::string_view operator()(const DamageEvent&) const { return "damage"; }
    std::string_view operator()(const BombPlantEvent&) const { return "bomb_plant"; }
    std::string_view operator()(const BombDefuseEvent&) const { return "bomb_defuse"; }
  };
  return std::visit(Namer{}, e.payload);
}

std::optional<Side> RoundRecord::side_of(std::string_view player) const {
  for (const auto& p : ct_players) {
    if (p == player) return Side::kCT;
  }
  for (const auto& p : t_players) {
    if (p == player) return Side::kT;
  }
  return std::nullopt;
}

}  // namespace wpa
