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

#ifndef WPA_INGEST_HPP_
#define WPA_INGEST_HPP_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wpa/core.hpp"
#include "wpa/replay.hpp"

namespace wpa {

// Match document could not be turned into a valid MatchRecord. `path` is a
// JSON path such as "rounds[0].events[3]"; it is empty for semantic
// violations, which are listed in `violations`.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string path, const std::string& reason,
             std::vector<Violation> violations = {}, const std::string& detail = {});

  const std::string& path() const { return path_; }
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::string path_;
  std::vector<Violation> violations_;
};

struct ParseOptions {
  std::vector<std::string> map_pool = default_map_pool();
  // Receives one message per ignored unknown top-level key.
  std::vector<std::string>* warnings = nullptr;
};

MatchRecord parse_match(std::string_view json_text, const ParseOptions& options = {});
MatchRecord load_match(const std::string& path, const ParseOptions& options = {});

// Canonical serialization; parse_match(serialize_match(m)) == m.
std::string serialize_match(const MatchRecord& match, int indent = -1);
void save_match(const MatchRecord& match, const std::string& path);

}  // namespace wpa

#endif  // WPA_INGEST_HPP_
