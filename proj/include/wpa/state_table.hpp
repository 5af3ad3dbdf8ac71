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

#ifndef WPA_STATE_TABLE_HPP_
#define WPA_STATE_TABLE_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wpa/binary_io.hpp"
#include "wpa/core.hpp"

namespace wpa {

// On-disk GameState table:
//
//   "WPAS" u16 version u16 column_count
//   column_count x { u8 type, u32 name_length, name }
//   u32 string_count, string_count x { u32 length, bytes }
//   u64 row_count
//   blocks of { u32 rows, then each column's `rows` values contiguously }
//   "SAPW"
//
// Types: 0 = i64, 1 = f64, 2 = u32 index into the string dictionary.
inline constexpr std::uint16_t kStateTableVersion = 1;
inline constexpr std::size_t kStateTableBlockRows = 1 << 16;

const std::vector<std::string>& state_table_columns();

std::string encode_states(std::span<const GameState> states);
std::vector<GameState> decode_states(std::string_view bytes);

void write_states(std::span<const GameState> states, const std::string& path);
std::vector<GameState> read_states(const std::string& path);

}  // namespace wpa

#endif  // WPA_STATE_TABLE_HPP_
