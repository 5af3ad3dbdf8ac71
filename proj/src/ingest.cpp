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

#include "wpa/ingest.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"
#include "rapidjson/document.h"
#include "rapidjson/error/en.h"

namespace wpa {

using json = nlohmann::json;

ParseError::ParseError(std::string path, const std::string& reason,
                       std::vector<Violation> violations, const std::string& detail)
    : std::runtime_error((path.empty() ? reason : reason + " at " + path) +
                         (detail.empty() ? "" : " (" + detail + ")")),
      path_(std::move(path)),
      violations_(std::move(violations)) {}

namespace {

const std::set<std::string, std::less<>> kTopLevelKeys = {"match_id", "map_name", "tick_rate",
                                                          "date", "rounds"};

// Typed field access over a RapidJSON DOM. The JSON path is only spelled
// out when an error is reported.
class Node {
 public:
  explicit Node(const rapidjson::Value& v) : v_(v) {}

  std::string path() const {
    if (parent_ == nullptr) return "";
    std::string p = parent_->path();
    if (!key_.empty()) return p.empty() ? std::string(key_) : p + "." + std::string(key_);
    return p + "[" + std::to_string(index_) + "]";
  }

  Node at(std::string_view key) const {
    if (!v_.IsObject()) fail("expected object");
    auto it = v_.FindMember(rapidjson::Value(rapidjson::StringRef(key.data(), key.size())));
    if (it == v_.MemberEnd()) {
      const std::string p = path();
      throw ParseError(p.empty() ? std::string(key) : p + "." + std::string(key), "missing field");
    }
    return Node(it->value, this, key, 0);
  }
  bool has(std::string_view key) const {
    if (!v_.IsObject()) return false;
    auto it = v_.FindMember(rapidjson::Value(rapidjson::StringRef(key.data(), key.size())));
    return it != v_.MemberEnd() && !it->value.IsNull();
  }
  Node operator[](std::size_t i) const {
    return Node(v_[static_cast<rapidjson::SizeType>(i)], this, {}, i);
  }
  std::size_t size() const {
    if (!v_.IsArray()) fail("expected array");
    return v_.Size();
  }

  std::string str() const {
    if (!v_.IsString()) fail("expected string");
    return std::string(v_.GetString(), v_.GetStringLength());
  }
  std::int64_t integer() const {
    if (!v_.IsInt64()) fail("expected integer");
    return v_.GetInt64();
  }
  int int32() const {
    const auto v = integer();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
      fail("integer out of range");
    }
    return static_cast<int>(v);
  }
  double number() const {
    if (!v_.IsNumber()) fail("expected number");
    return v_.GetDouble();
  }
  bool boolean() const {
    if (!v_.IsBool()) fail("expected boolean");
    return v_.GetBool();
  }
  Vec3 vec3() const {
    if (!v_.IsArray() || v_.Size() != 3) fail("expected [x, y, z]");
    return {(*this)[0].number(), (*this)[1].number(), (*this)[2].number()};
  }
  Side side() const {
    auto s = parse_side(str());
    if (!s) fail("expected \"CT\" or \"T\"");
    return *s;
  }

  [[noreturn]] void fail(const std::string& reason) const { throw ParseError(path(), reason); }

 private:
  Node(const rapidjson::Value& v, const Node* parent, std::string_view key, std::size_t index)
      : v_(v), parent_(parent), key_(key), index_(index) {}

  const rapidjson::Value& v_;
  const Node* parent_ = nullptr;
  std::string_view key_;
  std::size_t index_ = 0;
};

GameEvent parse_event(const Node& n) {
  GameEvent e;
  e.tick = n.at("tick").integer();
  const std::string type = n.at("type").str();
  if (type == "footstep") {
    FootstepEvent f;
    f.player_id = n.at("player_id").str();
    f.side = n.at("side").side();
    f.position = n.at("position").vec3();
    if (n.has("area_id")) f.area_id = n.at("area_id").int32();
    e.payload = std::move(f);
  } else if (type == "damage") {
    DamageEvent d;
    d.attacker_id = n.at("attacker_id").str();
    d.attacker_side = n.at("attacker_side").side();
    d.victim_id = n.at("victim_id").str();
    d.victim_side = n.at("victim_side").side();
    d.hp_damage = n.at("hp_damage").int32();
    d.is_kill = n.at("is_kill").boolean();
    if (n.has("assister_id")) d.assister_id = n.at("assister_id").str();
    d.attacker_position = n.at("attacker_position").vec3();
    d.victim_position = n.at("victim_position").vec3();
    e.payload = std::move(d);
  } else if (type == "bomb_plant") {
    BombPlantEvent b;
    b.player_id = n.at("player_id").str();
    const auto site = n.at("site");
    auto parsed = parse_bomb_site(site.str());
    if (!parsed || *parsed == BombSite::kNone) site.fail("expected \"A\" or \"B\"");
    b.site = *parsed;
    e.payload = std::move(b);
  } else if (type == "bomb_defuse") {
    e.payload = BombDefuseEvent{n.at("player_id").str()};
  } else {
    throw ParseError(n.path(), "unknown event type", {}, "\"" + type + "\"");
  }
  return e;
}

void parse_roster(const Node& n, std::array<PlayerId, GameConstants::kPlayersPerSide>& out) {
  if (n.size() != out.size()) n.fail("expected 5 player ids");
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = n[i].str();
}

RoundRecord parse_round(const Node& n) {
  RoundRecord r;
  r.round_num = n.at("round_num").int32();
  r.start_tick = n.at("start_tick").integer();
  r.end_tick = n.at("end_tick").integer();
  r.ct_team = n.at("ct_team").str();
  r.t_team = n.at("t_team").str();
  r.ct_equip_value = n.at("ct_equip_value").int32();
  r.t_equip_value = n.at("t_equip_value").int32();
  r.winner_side = n.at("winner_side").side();
  const auto reason = n.at("win_reason");
  auto parsed = parse_win_reason(reason.str());
  if (!parsed) reason.fail("unknown win_reason");
  r.win_reason = *parsed;
  parse_roster(n.at("ct_players"), r.ct_players);
  parse_roster(n.at("t_players"), r.t_players);
  const auto events = n.at("events");
  const std::size_t count = events.size();
  r.events.reserve(count);
  for (std::size_t i = 0; i < count; ++i) r.events.push_back(parse_event(events[i]));
  return r;
}

json vec3_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

json event_json(const GameEvent& e) {
  json j;
  j["type"] = event_type_name(e);
  j["tick"] = e.tick;
  if (const auto* f = std::get_if<FootstepEvent>(&e.payload)) {
    j["player_id"] = f->player_id;
    j["side"] = to_string(f->side);
    j["position"] = vec3_json(f->position);
    if (f->area_id) j["area_id"] = *f->area_id;
  } else if (const auto* d = std::get_if<DamageEvent>(&e.payload)) {
    j["attacker_id"] = d->attacker_id;
    j["attacker_side"] = to_string(d->attacker_side);
    j["victim_id"] = d->victim_id;
    j["victim_side"] = to_string(d->victim_side);
    j["hp_damage"] = d->hp_damage;
    j["is_kill"] = d->is_kill;
    if (d->assister_id) j["assister_id"] = *d->assister_id;
    j["attacker_position"] = vec3_json(d->attacker_position);
    j["victim_position"] = vec3_json(d->victim_position);
  } else if (const auto* p = std::get_if<BombPlantEvent>(&e.payload)) {
    j["player_id"] = p->player_id;
    j["site"] = to_string(p->site);
  } else if (const auto* df = std::get_if<BombDefuseEvent>(&e.payload)) {
    j["player_id"] = df->player_id;
  }
  return j;
}

}  // namespace

MatchRecord parse_match(std::string_view json_text, const ParseOptions& options) {
  rapidjson::Document doc;
  doc.Parse<rapidjson::kParseFullPrecisionFlag>(json_text.data(), json_text.size());
  if (doc.HasParseError()) {
    throw ParseError("byte " + std::to_string(doc.GetErrorOffset()),
                     std::string("malformed JSON: ") + rapidjson::GetParseError_En(doc.GetParseError()));
  }
  if (!doc.IsObject()) throw ParseError("$", "expected object");
  const Node root(doc);

  for (auto it = doc.MemberBegin(); it != doc.MemberEnd(); ++it) {
    const std::string key(it->name.GetString(), it->name.GetStringLength());
    if (!kTopLevelKeys.contains(key) && options.warnings != nullptr) {
      options.warnings->push_back("ignoring unknown top-level key \"" + key + "\"");
    }
  }

  MatchRecord m;
  m.match_id = root.at("match_id").str();
  m.map_name = root.at("map_name").str();
  m.tick_rate = root.has("tick_rate") ? root.at("tick_rate").int32()
                                      : GameConstants::kDefaultTickRate;
  m.date = root.at("date").str();
  const auto rounds = root.at("rounds");
  for (std::size_t i = 0; i < rounds.size(); ++i) m.rounds.push_back(parse_round(rounds[i]));

  auto violations = validate_match(m, options.map_pool);
  if (!violations.empty()) {
    const auto& v = violations.front();
    throw ParseError("", "match '" + m.match_id + "' round " + std::to_string(v.round_num) +
                             " tick " + std::to_string(v.tick) + ": " + v.rule + ": " + v.message,
                     std::move(violations));
  }
  return m;
}

MatchRecord load_match(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_match(buf.str(), options);
}

std::string serialize_match(const MatchRecord& match, int indent) {
  json doc;
  doc["match_id"] = match.match_id;
  doc["map_name"] = match.map_name;
  doc["tick_rate"] = match.tick_rate;
  doc["date"] = match.date;
  json rounds = json::array();
  for (const auto& r : match.rounds) {
    json jr;
    jr["round_num"] = r.round_num;
    jr["start_tick"] = r.start_tick;
    jr["end_tick"] = r.end_tick;
    jr["ct_team"] = r.ct_team;
    jr["t_team"] = r.t_team;
    jr["ct_equip_value"] = r.ct_equip_value;
    jr["t_equip_value"] = r.t_equip_value;
    jr["winner_side"] = to_string(r.winner_side);
    jr["win_reason"] = to_string(r.win_reason);
    jr["ct_players"] = r.ct_players;
    jr["t_players"] = r.t_players;
    json events = json::array();
    for (const auto& e : r.events) events.push_back(event_json(e));
    jr["events"] = std::move(events);
    rounds.push_back(std::move(jr));
  }
  doc["rounds"] = std::move(rounds);
  return doc.dump(indent);
}

void save_match(const MatchRecord& match, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << serialize_match(match, 1) << '\n';
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace wpa
