// Copyright 2026 The FactGraph Authors
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

// Verifier checkpoints.
//
//   FACTGRAPH-CKPT v1
//   {"dim": .., "hidden": .., "layers": .., "seed": .., "tensors": [...]}
//   crc32 <8 hex digits of the JSON line>
//
// Matrices are stored row-major. Doubles are printed shortest-round-trip, so
// save(load(x)) reproduces x byte for byte.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "factgraph/corpus.hpp"
#include "factgraph/error.hpp"
#include "factgraph/io.hpp"
#include "factgraph/verifier.hpp"

namespace factgraph {

inline constexpr std::string_view kCheckpointHeader = "FACTGRAPH-CKPT v1";

inline std::string checkpoint_to_string(const VerifierParams& p) {
  p.validate();
  json tensors = json::array();
  p.for_each_tensor([&](const std::string& name, const Matrix& m) {
    std::vector<double> data;
    data.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(m(i, j));
    }
    tensors.push_back({{"name", name}, {"rows", m.rows()}, {"cols", m.cols()}, {"data", data}});
  });
  const json body{{"dim", p.shape.dim},
                  {"hidden", p.shape.hidden},
                  {"layers", p.shape.layers},
                  {"seed", p.seed},
                  {"shared_gcn", p.shape.shared_gcn},
                  {"attention", p.shape.direction == AttentionDirection::kClaimToEvidence ? "claim_to_evidence"
                                                                                          : "evidence_to_claim"},
                  {"tensors", tensors}};
  const std::string line = body.dump();
  return std::string(kCheckpointHeader) + "\n" + line + "\ncrc32 " + hex32(crc32_of(line)) + "\n";
}

inline VerifierParams checkpoint_from_string(std::string_view text) {
  auto next_line = [&text]() {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    return line;
  };
  if (next_line() != kCheckpointHeader) throw ConfigError("checkpoint: missing FACTGRAPH-CKPT v1 header");
  const std::string_view body = next_line();
  const std::string_view sum = next_line();
  if (sum != "crc32 " + hex32(crc32_of(body))) throw ConfigError("checkpoint: checksum mismatch");

  VerifierParams p;
  try {
    const json j = json::parse(body);
    p.shape.dim = j.at("dim").get<int>();
    p.shape.hidden = j.at("hidden").get<int>();
    p.shape.layers = j.at("layers").get<int>();
    p.shape.shared_gcn = j.at("shared_gcn").get<bool>();
    const auto dir = j.at("attention").get<std::string>();
    if (dir == "claim_to_evidence") {
      p.shape.direction = AttentionDirection::kClaimToEvidence;
    } else if (dir == "evidence_to_claim") {
      p.shape.direction = AttentionDirection::kEvidenceToClaim;
    } else {
      throw ConfigError("checkpoint: unknown attention direction " + dir);
    }
    p.seed = j.at("seed").get<std::uint64_t>();
    if (p.shape.layers < 1 || p.shape.dim < 1 || p.shape.hidden < 1) throw ConfigError("checkpoint: bad dims");
    p.gcn_claim.resize(static_cast<std::size_t>(p.shape.layers));
    if (!p.shape.shared_gcn) p.gcn_evidence.resize(static_cast<std::size_t>(p.shape.layers));

    const json& tensors = j.at("tensors");
    std::size_t k = 0;
    p.for_each_tensor([&](const std::string& name, Matrix& m) {
      if (k >= tensors.size()) throw ConfigError("checkpoint: missing tensor " + name);
      const json& t = tensors[k++];
      if (t.at("name").get<std::string>() != name) throw ConfigError("checkpoint: expected tensor " + name);
      const auto rows = t.at("rows").get<Eigen::Index>();
      const auto cols = t.at("cols").get<Eigen::Index>();
      const auto data = t.at("data").get<std::vector<double>>();
      if (rows < 0 || cols < 0 || static_cast<std::size_t>(rows * cols) != data.size()) {
        throw ConfigError("checkpoint: tensor " + name + " has inconsistent size");
      }
      m.resize(rows, cols);
      for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = data[static_cast<std::size_t>(i * cols + c)];
      }
    });
    if (k != tensors.size()) throw ConfigError("checkpoint: unexpected extra tensors");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("checkpoint: ") + e.what());
  }
  p.validate();
  return p;
}

inline void save_checkpoint(const VerifierParams& p, const fs::path& path) {
  write_file_atomic(path, checkpoint_to_string(p));
}

inline VerifierParams load_checkpoint(const fs::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const IngestError& e) {
    throw ConfigError(e.what());
  }
  return checkpoint_from_string(text);
}

}  // namespace factgraph
