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

// Marked claim/evidence sequences and the token embedding providers.
//
// A sequence is laid out as
//
//   [CLS] claim tokens [SEP] evidence_1 tokens [SEP] ... evidence_n tokens [SEP]
//
// and keeps, for every non-marker token, the byte span of the word it came
// from in its source sentence, so graph nodes can find their rows.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <condition_variable>
#include <cstdint>
#include <mutex>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "factgraph/error.hpp"
#include "factgraph/http.hpp"
#include "factgraph/text.hpp"

namespace factgraph {

inline constexpr std::string_view kClsToken = "[CLS]";
inline constexpr std::string_view kSepToken = "[SEP]";

enum class SegmentKind { kClaim, kEvidence };

struct SequenceSegment {
  SegmentKind kind = SegmentKind::kClaim;
  std::string source;      // the sentence text
  std::size_t first = 0;   // first token position of the segment body
  std::size_t sep = 0;     // position of the terminating SEP
};

struct MarkedSequence {
  std::vector<std::string> tokens;
  std::vector<SegmentKind> tags;
  // Segment index of each token; markers carry -1.
  std::vector<int> segment_of;
  // Byte span in the segment source; (0, 0) for markers.
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  std::vector<SequenceSegment> segments;

  std::size_t size() const { return tokens.size(); }
  bool is_marker(std::size_t i) const { return segment_of[i] < 0; }
};

namespace detail {

inline void append_marker(MarkedSequence& seq, std::string_view marker, SegmentKind tag) {
  seq.tokens.emplace_back(marker);
  seq.tags.push_back(tag);
  seq.segment_of.push_back(-1);
  seq.spans.emplace_back(0, 0);
}

inline void append_segment(MarkedSequence& seq, SegmentKind kind, std::string_view text) {
  SequenceSegment seg{kind, std::string(text), seq.tokens.size(), 0};
  const int idx = static_cast<int>(seq.segments.size());
  for (const auto& w : split_words(text)) {
    for (auto& tok : tokenize(w.text)) {
      seq.tokens.push_back(std::move(tok));
      seq.tags.push_back(kind);
      seq.segment_of.push_back(idx);
      seq.spans.emplace_back(w.begin, w.end);
    }
  }
  seg.sep = seq.tokens.size();
  append_marker(seq, kSepToken, kind);
  seq.segments.push_back(std::move(seg));
}

}  // namespace detail

inline MarkedSequence build_marked_sequence(std::string_view claim_text,
                                            const std::vector<std::string>& evidence_sentences) {
  if (claim_text.empty()) throw PreconditionError("build_marked_sequence: empty claim");
  MarkedSequence seq;
  detail::append_marker(seq, kClsToken, SegmentKind::kClaim);
  detail::append_segment(seq, SegmentKind::kClaim, claim_text);
  for (const auto& ev : evidence_sentences) detail::append_segment(seq, SegmentKind::kEvidence, ev);
  return seq;
}

// Rows of segment `segment` whose word span overlaps [begin, end).
inline std::vector<std::size_t> aligned_rows(const MarkedSequence& seq, int segment, std::size_t begin,
                                             std::size_t end) {
  std::vector<std::size_t> rows;
  if (segment < 0 || static_cast<std::size_t>(segment) >= seq.segments.size()) return rows;
  const auto& seg = seq.segments[static_cast<std::size_t>(segment)];
  for (std::size_t i = seg.first; i < seg.sep; ++i) {
    const auto [b, e] = seq.spans[i];
    if (b < end && begin < e) rows.push_back(i);
  }
  return rows;
}

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Row i embeds token i of the sequence it came from.
struct TokenEmbeddings {
  Matrix rows;

  Eigen::Index size() const { return rows.rows(); }
  Eigen::Index dim() const { return rows.cols(); }
};

inline Vector classification_vector(const TokenEmbeddings& emb) {
  if (emb.rows.rows() == 0) throw PreconditionError("classification_vector: empty embedding matrix");
  return emb.rows.row(0).transpose();
}

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual int dim() const = 0;
  virtual TokenEmbeddings encode(const MarkedSequence& seq) const = 0;
};

namespace detail {

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform in [-1, 1) from the top 53 bits; portable across standard libraries.
inline double unit_interval_signed(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-52 - 1.0;
}

}  // namespace detail

// Non-contextual desk-scale encoder: every token maps to a fixed unit vector
// drawn from a generator seeded by (token, global seed). Markers use seeds
// outside the token hash domain.
class DeterministicProvider final : public EmbeddingProvider {
 public:
  DeterministicProvider(int dim, std::uint64_t seed) : dim_(dim), seed_(seed) {
    if (dim <= 0) throw ConfigError("encoder dimension must be positive");
  }

  int dim() const override { return dim_; }
  std::uint64_t seed() const { return seed_; }

  Vector token_vector(std::string_view token) const {
    std::uint64_t key;
    if (token == kClsToken) {
      key = 0x00C15C15C15C15C1ULL;
    } else if (token == kSepToken) {
      key = 0x005E95E95E95E95EULL;
    } else {
      key = detail::fnv1a64(token);
    }
    std::mt19937_64 gen(detail::splitmix64(key ^ detail::splitmix64(seed_)));
    Vector v(dim_);
    double norm2 = 0.0;
    do {
      for (int i = 0; i < dim_; ++i) v[i] = detail::unit_interval_signed(gen());
      norm2 = v.squaredNorm();
    } while (norm2 < 1e-12);
    return v / std::sqrt(norm2);
  }

  TokenEmbeddings encode(const MarkedSequence& seq) const override {
    TokenEmbeddings emb{Matrix(static_cast<Eigen::Index>(seq.size()), dim_)};
    for (std::size_t i = 0; i < seq.size(); ++i) {
      emb.rows.row(static_cast<Eigen::Index>(i)) = token_vector(seq.tokens[i]).transpose();
    }
    return emb;
  }

 private:
  int dim_;
  std::uint64_t seed_;
};

inline constexpr std::string_view kEncoderSchema = "FACTGRAPH-ENC v1";

// Client for a contextual encoder service.
//
// Request:  {"schema": "FACTGRAPH-ENC v1", "sequences": [[tok, ...], ...]}
// Response: {"schema": "FACTGRAPH-ENC v1", "dim": d,
//            "embeddings": [[[row], ...], ...]}   one matrix per sequence
class ExternalProvider final : public EmbeddingProvider {
 public:
  ExternalProvider(std::string url, int expected_dim = 0, int max_in_flight = 4)
      : url_(std::move(url)), dim_(expected_dim), max_in_flight_(max_in_flight < 1 ? 1 : max_in_flight) {}

  int dim() const override { return dim_; }

  TokenEmbeddings encode(const MarkedSequence& seq) const override { return encode_batch({&seq}).front(); }

  std::vector<TokenEmbeddings> encode_batch(const std::vector<const MarkedSequence*>& batch) const {
    InFlightSlot slot(*this);
    json seqs = json::array();
    for (const auto* s : batch) seqs.push_back(s->tokens);
    const json resp = http::post_json(url_, json{{"schema", kEncoderSchema}, {"sequences", seqs}});
    if (resp.value("schema", "") != kEncoderSchema) throw TransportError("encoder service: schema mismatch");
    const int d = resp.at("dim").get<int>();
    {
      std::lock_guard lock(mu_);
      if (dim_ == 0) dim_ = d;
      if (d != dim_) {
        throw ConfigError("encoder service dimension " + std::to_string(d) + " != expected " + std::to_string(dim_));
      }
    }
    const json& mats = resp.at("embeddings");
    if (!mats.is_array() || mats.size() != batch.size()) throw TransportError("encoder service: batch size mismatch");
    std::vector<TokenEmbeddings> out;
    for (std::size_t b = 0; b < batch.size(); ++b) {
      const json& m = mats[b];
      if (!m.is_array() || m.size() != batch[b]->size()) throw TransportError("encoder service: row count mismatch");
      TokenEmbeddings emb{Matrix(static_cast<Eigen::Index>(m.size()), d)};
      for (std::size_t r = 0; r < m.size(); ++r) {
        if (!m[r].is_array() || m[r].size() != static_cast<std::size_t>(d)) {
          throw TransportError("encoder service: ragged row");
        }
        for (int c = 0; c < d; ++c) {
          const double v = m[r][static_cast<std::size_t>(c)].get<double>();
          if (!std::isfinite(v)) throw TransportError("encoder service: non-finite value");
          emb.rows(static_cast<Eigen::Index>(r), c) = v;
        }
      }
      out.push_back(std::move(emb));
    }
    return out;
  }

 private:
  class InFlightSlot {
   public:
    explicit InFlightSlot(const ExternalProvider& p) : p_(p) {
      std::unique_lock lock(p_.mu_);
      p_.cv_.wait(lock, [&] { return p_.in_flight_ < p_.max_in_flight_; });
      ++p_.in_flight_;
    }
    ~InFlightSlot() {
      {
        std::lock_guard lock(p_.mu_);
        --p_.in_flight_;
      }
      p_.cv_.notify_one();
    }
    InFlightSlot(const InFlightSlot&) = delete;
    InFlightSlot& operator=(const InFlightSlot&) = delete;

   private:
    const ExternalProvider& p_;
  };

  std::string url_;
  mutable int dim_;
  int max_in_flight_;
  mutable int in_flight_ = 0;
  mutable std::mutex mu_;
  mutable std::condition_variable cv_;
};

inline TokenEmbeddings encode(const MarkedSequence& seq, const EmbeddingProvider& provider) {
  return provider.encode(seq);
}

// Standalone encoding of `text`, mean-pooled over its non-marker rows (all
// rows when the text has no tokens).
inline Vector encode_standalone_mean(std::string_view text, const EmbeddingProvider& provider) {
  const MarkedSequence seq = build_marked_sequence(text.empty() ? std::string_view(" ") : text, {});
  const TokenEmbeddings emb = provider.encode(seq);
  Vector sum = Vector::Zero(emb.dim());
  int n = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq.is_marker(i)) continue;
    sum += emb.rows.row(static_cast<Eigen::Index>(i)).transpose();
    ++n;
  }
  if (n == 0) return emb.rows.colwise().mean().transpose();
  return sum / n;
}

}  // namespace factgraph
