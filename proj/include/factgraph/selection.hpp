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

// Claim/sentence relevance scoring and thresholded top-k evidence selection.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "factgraph/corpus.hpp"
#include "factgraph/encoder.hpp"
#include "factgraph/error.hpp"
#include "factgraph/retrieval.hpp"
#include "factgraph/text.hpp"

namespace factgraph {

enum class ScorerKind { kOverlap, kEncoder };

struct ScoredSentence {
  std::string page_title;
  int sentence_index = 0;
  std::string text;
  double score = 0.0;

  EvidenceRef ref() const { return {page_title, sentence_index}; }
  bool operator==(const ScoredSentence&) const = default;
};

struct SelectionConfig {
  double threshold = 0.0;
  std::size_t top_docs = 10;
  std::size_t top_sents = 5;
  ScorerKind scorer = ScorerKind::kOverlap;

  void validate() const {
    if (!(threshold >= 0.0 && threshold <= 1.0)) throw ConfigError("selection threshold must lie in [0, 1]");
    if (top_sents < 1) throw ConfigError("top_sents must be >= 1");
    if (top_docs < 1) throw ConfigError("top_docs must be >= 1");
  }
};

// Fraction of the claim's content tokens present in the sentence.
inline double overlap_score(std::string_view claim_text, std::string_view sentence_text) {
  const TokenSet claim = content_tokens(claim_text);
  if (claim.empty()) return 0.0;
  return static_cast<double>(intersection_size(claim, content_tokens(sentence_text))) /
         static_cast<double>(claim.size());
}

// Logistic head over the [CLS] vector of "[CLS] claim [SEP] sentence [SEP]".
struct RelevanceHead {
  Vector weights;
  double bias = 0.0;

  double operator()(const Vector& cls) const {
    if (cls.size() != weights.size()) {
      throw ConfigError("relevance head dimension " + std::to_string(weights.size()) + " != encoder dimension " +
                        std::to_string(cls.size()));
    }
    return 1.0 / (1.0 + std::exp(-(weights.dot(cls) + bias)));
  }
};

inline constexpr std::string_view kHeadSchema = "FACTGRAPH-HEAD v1";

inline std::string relevance_head_to_string(const RelevanceHead& head) {
  std::vector<double> w(head.weights.data(), head.weights.data() + head.weights.size());
  return json{{"schema", kHeadSchema}, {"dim", head.weights.size()}, {"weights", w}, {"bias", head.bias}}.dump() +
         "\n";
}

inline RelevanceHead relevance_head_from_string(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("relevance head: ") + e.what());
  }
  if (j.value("schema", "") != kHeadSchema) throw ConfigError("relevance head: schema mismatch");
  const auto w = j.at("weights").get<std::vector<double>>();
  if (static_cast<std::size_t>(j.at("dim").get<int>()) != w.size()) throw ConfigError("relevance head: dim mismatch");
  RelevanceHead head;
  head.weights = Eigen::Map<const Vector>(w.data(), static_cast<Eigen::Index>(w.size()));
  head.bias = j.at("bias").get<double>();
  return head;
}

class PairScorer {
 public:
  virtual ~PairScorer() = default;
  virtual double score(std::string_view claim_text, std::string_view sentence_text) const = 0;
};

class OverlapScorer final : public PairScorer {
 public:
  double score(std::string_view claim_text, std::string_view sentence_text) const override {
    return overlap_score(claim_text, sentence_text);
  }
};

class EncoderScorer final : public PairScorer {
 public:
  EncoderScorer(const EmbeddingProvider& provider, std::optional<RelevanceHead> head)
      : provider_(provider), head_(std::move(head)) {
    if (!head_) throw ConfigError("encoder scorer requires a trained relevance head");
  }

  double score(std::string_view claim_text, std::string_view sentence_text) const override {
    const MarkedSequence seq = build_marked_sequence(claim_text, {std::string(sentence_text)});
    return (*head_)(classification_vector(provider_.encode(seq)));
  }

 private:
  const EmbeddingProvider& provider_;
  std::optional<RelevanceHead> head_;
};

inline double score_pair(std::string_view claim_text, std::string_view sentence_text, const PairScorer& scorer) {
  if (claim_text.empty() || sentence_text.empty()) throw PreconditionError("score_pair: empty text");
  const double s = scorer.score(claim_text, sentence_text);
  return std::clamp(std::isfinite(s) ? s : 0.0, 0.0, 1.0);
}

inline bool scored_sentence_before(const ScoredSentence& a, const ScoredSentence& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.page_title != b.page_title) return a.page_title < b.page_title;
  return a.sentence_index < b.sentence_index;
}

// Every non-empty sentence of every candidate document with its score, in
// canonical order. Independent of the threshold, so a sweep can score once.
inline std::vector<ScoredSentence> score_candidates(const Claim& claim, const std::vector<RankedDocument>& docs,
                                                    const DocumentStore& store, const PairScorer& scorer) {
  std::vector<ScoredSentence> all;
  for (const auto& d : docs) {
    const Document* doc = store.find(d.title);
    if (doc == nullptr) throw LookupError("ranked document missing from store: " + d.title);
    for (const auto& s : doc->sentences) {
      if (s.text.empty()) continue;
      all.push_back({doc->title, s.index, s.text, score_pair(claim.text, s.text, scorer)});
    }
  }
  std::sort(all.begin(), all.end(), scored_sentence_before);
  return all;
}

// Keeps score >= threshold (inclusive), then the top `top_sents`.
inline std::vector<ScoredSentence> filter_top(const std::vector<ScoredSentence>& sorted, const SelectionConfig& cfg) {
  std::vector<ScoredSentence> out;
  for (const auto& s : sorted) {
    if (out.size() >= cfg.top_sents) break;
    if (s.score >= cfg.threshold) out.push_back(s);
  }
  return out;
}

inline std::vector<ScoredSentence> select_evidence(const Claim& claim, const std::vector<RankedDocument>& docs,
                                                   const DocumentStore& store, const SelectionConfig& cfg,
                                                   const PairScorer& scorer) {
  cfg.validate();
  return filter_top(score_candidates(claim, docs, store, scorer), cfg);
}

inline std::vector<ScoredSentence> select_evidence(const Claim& claim, const std::vector<RankedDocument>& docs,
                                                   const DocumentStore& store, const SelectionConfig& cfg) {
  return select_evidence(claim, docs, store, cfg, OverlapScorer{});
}

// {"claim_id": 7, "evidence": [["Hawaii", 0, 1.0], ...]}
inline json evidence_to_json(std::int64_t claim_id, const std::vector<ScoredSentence>& ev) {
  json items = json::array();
  for (const auto& s : ev) items.push_back(json::array({s.page_title, s.sentence_index, s.score}));
  return json{{"claim_id", claim_id}, {"evidence", items}};
}

// Inverse of evidence_to_json; sentence texts are resolved from the store.
inline std::pair<std::int64_t, std::vector<ScoredSentence>> evidence_from_json(const json& j,
                                                                               const DocumentStore& store) {
  std::vector<ScoredSentence> ev;
  for (const auto& item : j.at("evidence")) {
    ScoredSentence s;
    s.page_title = item.at(0).get<std::string>();
    s.sentence_index = item.at(1).get<int>();
    s.score = item.at(2).get<double>();
    s.text = get_sentence(store, s.page_title, s.sentence_index);
    ev.push_back(std::move(s));
  }
  return {j.at("claim_id").get<std::int64_t>(), std::move(ev)};
}

// Fits a relevance head by full-batch logistic regression on (claim,
// sentence, relevant) triples. Deterministic: zero init, fixed step count.
struct RelevanceExample {
  std::string claim;
  std::string sentence;
  bool relevant = false;
};

inline RelevanceHead fit_relevance_head(const std::vector<RelevanceExample>& data, const EmbeddingProvider& provider,
                                        int steps = 300, double lr = 0.5) {
  if (data.empty()) throw PreconditionError("fit_relevance_head: empty dataset");
  std::vector<Vector> feats;
  feats.reserve(data.size());
  for (const auto& ex : data) {
    feats.push_back(classification_vector(provider.encode(build_marked_sequence(ex.claim, {ex.sentence}))));
  }
  RelevanceHead head{Vector::Zero(provider.dim()), 0.0};
  const double n = static_cast<double>(data.size());
  for (int step = 0; step < steps; ++step) {
    Vector gw = Vector::Zero(head.weights.size());
    double gb = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      const double err = head(feats[i]) - (data[i].relevant ? 1.0 : 0.0);
      gw += err * feats[i];
      gb += err;
    }
    head.weights -= lr * gw / n;
    head.bias -= lr * gb / n;
  }
  return head;
}

}  // namespace factgraph
