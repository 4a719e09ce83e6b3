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

// Candidate entity extraction and keyword document ranking.

#pragma once

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "factgraph/corpus.hpp"
#include "factgraph/error.hpp"
#include "factgraph/http.hpp"
#include "factgraph/text.hpp"

namespace factgraph {

struct EntityMention {
  std::string text;
  std::size_t begin = 0;  // byte span into the claim text
  std::size_t end = 0;

  bool operator==(const EntityMention&) const = default;
};

struct RankedDocument {
  std::string title;
  double score = 0.0;
  bool ambiguous = false;

  bool operator==(const RankedDocument&) const = default;
};

namespace detail {

inline bool starts_uppercase(std::string_view word) {
  if (word.empty()) return false;
  UChar32 c;
  int32_t i = 0;
  U8_NEXT(reinterpret_cast<const uint8_t*>(word.data()), i, static_cast<int32_t>(word.size()), c);
  return c >= 0 && u_isupper(c);
}

inline bool is_edge_punct(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u > 0 && u < 0x80 && std::ispunct(u);
}

// Word with surrounding ASCII punctuation trimmed; span shrinks with it.
inline RawWord trim_word(const RawWord& w) {
  std::size_t b = 0;
  std::size_t e = w.text.size();
  while (b < e && is_edge_punct(w.text[b])) ++b;
  while (e > b && is_edge_punct(w.text[e - 1])) --e;
  return {w.text.substr(b, e - b), w.begin + b, w.begin + e};
}

inline bool ends_clause(const RawWord& w) {
  if (w.text.empty()) return false;
  const char last = w.text.back();
  return last == ',' || last == ';' || last == ':' || last == '.' || last == '!' || last == '?';
}

}  // namespace detail

// Maximal runs of capitalized words, except a capitalized stopword opening the
// claim; then the whole claim as a fallback mention. Deduplicated by text in
// order of first appearance.
inline std::vector<EntityMention> extract_entities(std::string_view claim_text) {
  if (claim_text.empty()) throw PreconditionError("extract_entities: empty claim text");
  std::vector<EntityMention> out;
  std::set<std::string> seen;
  auto emit = [&](std::size_t b, std::size_t e) {
    std::string text(claim_text.substr(b, e - b));
    if (text.empty() || !seen.insert(text).second) return;
    out.push_back({std::move(text), b, e});
  };

  const auto words = split_words(claim_text);
  std::size_t run_begin = 0;
  std::size_t run_end = 0;
  bool in_run = false;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const RawWord core = detail::trim_word(words[i]);
    bool capital = detail::starts_uppercase(core.text);
    if (i == 0 && capital && is_stopword(normalize(core.text))) capital = false;
    if (capital) {
      if (!in_run) run_begin = core.begin;
      run_end = core.end;
      in_run = true;
      if (detail::ends_clause(words[i])) {
        emit(run_begin, run_end);
        in_run = false;
      }
    } else if (in_run) {
      emit(run_begin, run_end);
      in_run = false;
    }
  }
  if (in_run) emit(run_begin, run_end);
  emit(0, claim_text.size());
  return out;
}

// Title carries a trailing parenthetical disambiguator, e.g. "Hawaii (film)".
inline bool is_ambiguous_title(std::string_view title) {
  const std::string display = display_title(title);
  if (display.size() < 4 || display.back() != ')') return false;
  const std::size_t open = display.rfind(" (");
  return open != std::string::npos && open > 0 && open + 2 < display.size() - 1;
}

// Title with any trailing parenthetical removed.
inline std::string title_main_part(std::string_view title) {
  std::string display = display_title(title);
  if (is_ambiguous_title(title)) display.erase(display.rfind(" ("));
  return display;
}

inline constexpr double kAmbiguityPenalty = 0.5;

struct RankConfig {
  std::size_t k = 10;
  // Optional extension point: rescales a keyword score for (mentions, title).
  std::function<double(const std::vector<EntityMention>&, const std::string& title, double keyword_score)> rescore;
};

// Jaccard overlap of normalized content tokens between a mention and the
// main part of a title; an exact normalized match scores 1.0 even when the
// title consists of stopwords only.
inline double mention_title_overlap(const EntityMention& m, std::string_view title) {
  const std::string main = title_main_part(title);
  if (normalize(m.text) == normalize(main)) return 1.0;
  const TokenSet mt = content_tokens(m.text);
  const TokenSet tt = content_tokens(main);
  if (mt.empty() || tt.empty()) return 0.0;
  const std::size_t inter = intersection_size(mt, tt);
  const std::size_t uni = mt.size() + tt.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

inline std::vector<RankedDocument> rank_documents(const std::vector<EntityMention>& mentions,
                                                  const DocumentStore& store, const RankConfig& cfg = {}) {
  if (cfg.k < 1) throw PreconditionError("rank_documents: k must be >= 1");
  std::set<std::string> candidates;
  for (const auto& m : mentions) {
    for (const auto& tok : content_tokens(m.text)) {
      if (const auto* titles = store.lookup_token(tok)) candidates.insert(titles->begin(), titles->end());
    }
    if (const auto* titles = store.lookup_exact(normalize(m.text))) candidates.insert(titles->begin(), titles->end());
  }
  std::vector<RankedDocument> ranked;
  for (const auto& title : candidates) {
    double base = 0.0;
    for (const auto& m : mentions) base = std::max(base, mention_title_overlap(m, title));
    if (cfg.rescore) base = cfg.rescore(mentions, title, base);
    if (!(base > 0.0) || !std::isfinite(base)) continue;
    const bool ambiguous = is_ambiguous_title(title);
    ranked.push_back({title, ambiguous ? base * kAmbiguityPenalty : base, ambiguous});
  }
  std::sort(ranked.begin(), ranked.end(), [](const RankedDocument& a, const RankedDocument& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.title < b.title;
  });
  if (ranked.size() > cfg.k) ranked.resize(cfg.k);
  return ranked;
}

// Every document in the store, for the retrieval-ablation path.
inline std::vector<RankedDocument> all_documents(const DocumentStore& store) {
  std::vector<RankedDocument> out;
  out.reserve(store.size());
  for (const auto& [title, doc] : store.documents()) out.push_back({title, 0.0, is_ambiguous_title(title)});
  return out;
}

// Source of candidate mentions. The rule-based heuristic is the default; an
// external constituency-parser service can stand in for it.
class EntityExtractor {
 public:
  virtual ~EntityExtractor() = default;
  virtual std::vector<EntityMention> extract(std::string_view claim_text) const = 0;
};

class RuleEntityExtractor final : public EntityExtractor {
 public:
  std::vector<EntityMention> extract(std::string_view claim_text) const override {
    return extract_entities(claim_text);
  }
};

// POST {"text": claim} -> {"mentions": [{"begin": b, "end": e}, ...]}.
// The full claim is appended as fallback, matching the rule extractor.
class ExternalEntityExtractor final : public EntityExtractor {
 public:
  explicit ExternalEntityExtractor(std::string url) : url_(std::move(url)) {}

  std::vector<EntityMention> extract(std::string_view claim_text) const override {
    if (claim_text.empty()) throw PreconditionError("extract_entities: empty claim text");
    const json resp = http::post_json(url_, json{{"text", claim_text}});
    std::vector<EntityMention> out;
    std::set<std::string> seen;
    auto emit = [&](std::size_t b, std::size_t e) {
      std::string text(claim_text.substr(b, e - b));
      if (seen.insert(text).second) out.push_back({std::move(text), b, e});
    };
    if (!resp.contains("mentions") || !resp["mentions"].is_array()) {
      throw TransportError("entity service: response lacks mentions");
    }
    for (const auto& m : resp["mentions"]) {
      const auto b = m.at("begin").get<std::size_t>();
      const auto e = m.at("end").get<std::size_t>();
      if (b >= e || e > claim_text.size()) throw TransportError("entity service: span out of bounds");
      emit(b, e);
    }
    emit(0, claim_text.size());
    return out;
  }

 private:
  std::string url_;
};

}  // namespace factgraph
