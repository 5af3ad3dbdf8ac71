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

#include <zlib.h>

#include "json.hpp"
#include "wpa/binary_io.hpp"
#include "wpa/winprob.hpp"

namespace wpa {

namespace {

constexpr std::string_view kMagic = "WPMD";

std::uint32_t checksum(std::string_view bytes) {
  return static_cast<std::uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(bytes.size())));
}

void put_doubles(ByteWriter& w, const std::vector<double>& v) {
  w.put(static_cast<std::uint32_t>(v.size()));
  for (double d : v) w.put(d);
}

std::vector<double> get_doubles(ByteReader& r) {
  const auto n = r.get<std::uint32_t>();
  if (n > r.remaining() / sizeof(double)) throw FormatError(FormatError::Kind::kCorrupt, "bad array length");
  std::vector<double> v(n);
  for (auto& d : v) d = r.get<double>();
  return v;
}

std::string encode_params(const WinProbModel& m) {
  ByteWriter w;
  switch (m.kind) {
    case ModelKind::kMapAverage:
      put_doubles(w, m.map_rates);
      w.put(m.global_rate);
      break;
    case ModelKind::kLogistic:
      put_doubles(w, m.coefficients);
      w.put(m.intercept);
      put_doubles(w, m.loss_history);
      break;
    case ModelKind::kGbt:
      w.put(m.base_score);
      put_doubles(w, m.loss_history);
      w.put(static_cast<std::uint32_t>(m.trees.size()));
      for (const auto& t : m.trees) {
        w.put(static_cast<std::uint32_t>(t.nodes.size()));
        for (const auto& n : t.nodes) {
          w.put(n.feature);
          w.put(static_cast<std::uint8_t>(n.categorical ? 1 : 0));
          w.put(n.threshold);
          w.put(static_cast<std::uint32_t>(n.left_categories.size()));
          for (auto c : n.left_categories) w.put(c);
          w.put(n.left);
          w.put(n.right);
          w.put(n.value);
          w.put(n.gain);
        }
      }
      break;
  }
  return w.take();
}

void decode_params(WinProbModel& m, std::string_view bytes) {
  ByteReader r(bytes);
  switch (m.kind) {
    case ModelKind::kMapAverage:
      m.map_rates = get_doubles(r);
      m.global_rate = r.get<double>();
      break;
    case ModelKind::kLogistic:
      m.coefficients = get_doubles(r);
      m.intercept = r.get<double>();
      m.loss_history = get_doubles(r);
      break;
    case ModelKind::kGbt: {
      m.base_score = r.get<double>();
      m.loss_history = get_doubles(r);
      const auto ntrees = r.get<std::uint32_t>();
      for (std::uint32_t t = 0; t < ntrees; ++t) {
        Tree tree;
        const auto nnodes = r.get<std::uint32_t>();
        for (std::uint32_t k = 0; k < nnodes; ++k) {
          TreeNode n;
          n.feature = r.get<std::int32_t>();
          n.categorical = r.get<std::uint8_t>() != 0;
          n.threshold = r.get<double>();
          const auto ncat = r.get<std::uint32_t>();
          for (std::uint32_t c = 0; c < ncat; ++c) n.left_categories.push_back(r.get<std::uint8_t>());
          n.left = r.get<std::int32_t>();
          n.right = r.get<std::int32_t>();
          n.value = r.get<double>();
          n.gain = r.get<double>();
          tree.nodes.push_back(std::move(n));
        }
        for (const auto& n : tree.nodes) {
          if (n.is_leaf()) continue;
          if (n.left < 0 || n.right < 0 || static_cast<std::uint32_t>(n.left) >= nnodes ||
              static_cast<std::uint32_t>(n.right) >= nnodes) {
            throw FormatError(FormatError::Kind::kCorrupt, "tree child index out of range");
          }
        }
        if (tree.nodes.empty()) throw FormatError(FormatError::Kind::kCorrupt, "empty tree");
        m.trees.push_back(std::move(tree));
      }
      break;
    }
  }
  if (r.remaining() != 0) throw FormatError(FormatError::Kind::kCorrupt, "trailing parameter bytes");
}

}  // namespace

std::string encode_model(const WinProbModel& model) {
  ByteWriter schema;
  model.schema.write(schema);
  nlohmann::json meta = nlohmann::json::object();
  for (const auto& [k, v] : model.metadata) meta[k] = v;

  ByteWriter w;
  w.put_bytes(kMagic);
  w.put(kModelFileVersion);
  w.put(static_cast<std::uint8_t>(model.kind));
  w.put_string(schema.bytes());
  w.put_string(meta.dump());
  w.put_string(encode_params(model));
  const std::uint32_t crc = checksum(w.bytes());
  w.put(crc);
  return w.take();
}

WinProbModel decode_model(std::string_view bytes) {
  if (bytes.size() < kMagic.size() || bytes.substr(0, kMagic.size()) != kMagic) {
    throw FormatError(FormatError::Kind::kBadMagic, "not a model file (bad magic)");
  }
  if (bytes.size() < kMagic.size() + sizeof(std::uint16_t) + sizeof(std::uint32_t)) {
    throw FormatError(FormatError::Kind::kCorrupt, "model file checksum mismatch (file truncated)");
  }
  ByteReader head(bytes.substr(kMagic.size()));
  const auto version = head.get<std::uint16_t>();
  if (version != kModelFileVersion) {
    throw FormatError(FormatError::Kind::kVersionMismatch,
                      "model file version " + std::to_string(version) + ", expected " +
                          std::to_string(kModelFileVersion));
  }
  const std::size_t body = bytes.size() - sizeof(std::uint32_t);
  ByteReader tail(bytes.substr(body));
  if (tail.get<std::uint32_t>() != checksum(bytes.substr(0, body))) {
    throw FormatError(FormatError::Kind::kCorrupt,
                      "model file checksum mismatch (truncated or corrupt)");
  }

  ByteReader r(bytes.substr(kMagic.size() + sizeof(std::uint16_t), body - kMagic.size() - 2));
  WinProbModel m;
  const auto kind = r.get<std::uint8_t>();
  if (kind > static_cast<std::uint8_t>(ModelKind::kGbt)) {
    throw FormatError(FormatError::Kind::kCorrupt, "unknown model kind " + std::to_string(kind));
  }
  m.kind = static_cast<ModelKind>(kind);
  const std::string schema_blob = r.get_string();
  ByteReader sr(schema_blob);
  m.schema = FeatureSchema::read(sr);
  const std::string meta_text = r.get_string();
  try {
    const auto meta = nlohmann::json::parse(meta_text);
    for (const auto& [k, v] : meta.items()) m.metadata[k] = v.get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(FormatError::Kind::kCorrupt, std::string("model metadata: ") + e.what());
  }
  decode_params(m, r.get_string());
  if (r.remaining() != 0) throw FormatError(FormatError::Kind::kCorrupt, "trailing model bytes");
  return m;
}

void save_model(const WinProbModel& model, const std::string& path) {
  write_file(path, encode_model(model));
}

WinProbModel load_model(const std::string& path) { return decode_model(read_file(path)); }

}  // namespace wpa
