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

// Predicate/argument tuples.
//
// The rule labeler works on whitespace words:
//
//   verb      aux+ [not|never] participle  |  [not|never] lexicon-verb
//   subject   words before the verb; for a later verb, the words after the
//             last conjunction or comma, else the first verb's subject
//   objects   words after the verb, cut into chunks at prepositions
//   TMP       a chunk that is a bare year, or in/on/during + month|year
//   LOC       in/at/on/near + capitalized word
//   ARG       any other chunk

#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "factgraph/error.hpp"
#include "factgraph/http.hpp"
#include "factgraph/retrieval.hpp"
#include "factgraph/text.hpp"

namespace factgraph {

enum class Role { kArg, kLoc, kTmp };

inline std::string_view role_name(Role r) {
  switch (r) {
    case Role::kArg: return "ARG";
    case Role::kLoc: return "LOC";
    case Role::kTmp: return "TMP";
  }
  return "?";
}

inline std::optional<Role> parse_role(std::string_view s) {
  if (s == "ARG") return Role::kArg;
  if (s == "LOC") return Role::kLoc;
  if (s == "TMP") return Role::kTmp;
  return std::nullopt;
}

// A claim, or sentence `index` of page `page`.
struct SentenceRef {
  bool claim = false;
  std::string page;
  int index = 0;

  static SentenceRef for_claim() { return {true, "", 0}; }
  static SentenceRef for_page(std::string page, int index) { return {false, std::move(page), index}; }

  auto operator<=>(const SentenceRef&) const = default;
};

struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  auto operator<=>(const Span&) const = default;
};

struct SrlArgument {
  Role role = Role::kArg;
  std::string text;
  Span span;

  bool operator==(const SrlArgument&) const = default;
};

struct SrlTuple {
  std::string verb;
  Span verb_span;
  std::vector<SrlArgument> arguments;
  SentenceRef sentence;

  bool operator==(const SrlTuple&) const = default;
};

namespace detail {

using WordSet = std::unordered_set<std::string_view>;

inline const WordSet& auxiliaries() {
  static const WordSet s = {"am", "is", "are", "was", "were", "be", "been", "being", "has", "have", "had"};
  return s;
}

inline const WordSet& negations() {
  static const WordSet s = {"not", "never"};
  return s;
}

inline const WordSet& irregular_participles() {
  static const WordSet s = {
      "born",   "made",   "known",   "built",  "written", "given",   "taken",  "held",    "won",    "sold",
      "found",  "shown",  "seen",    "done",   "gone",    "begun",   "chosen", "drawn",   "driven", "eaten",
      "fallen", "frozen", "grown",   "hidden", "led",     "left",    "lost",   "meant",   "paid",   "put",
      "run",    "said",   "sent",    "set",    "shot",    "sung",    "spent",  "stood",   "struck", "sworn",
      "taught", "told",   "worn",    "bought", "brought", "caught",  "fought", "become",  "come",   "kept",
      "heard",  "met",    "beaten",  "broken", "spoken",  "stolen",  "thrown", "torn",    "won",    "sunk",
  };
  return s;
}

// Finite verb forms recognised without an auxiliary.
inline const WordSet& lexicon_verbs() {
  static const WordSet s = {
      "is",       "are",       "was",      "were",      "has",      "have",      "had",       "founded",
      "joined",   "wrote",     "writes",   "directed",  "directs",  "starred",   "stars",     "released",
      "won",      "wins",      "played",   "plays",     "lived",    "lives",     "worked",    "works",
      "married",  "became",    "becomes",  "moved",     "moves",    "remains",   "remained",  "died",
      "created",  "creates",   "produced", "produces",  "formed",   "owns",      "owned",     "led",
      "leads",    "published", "received", "served",   "serves",   "appeared",  "appears",   "sang",
      "sings",    "signed",    "contains", "contained", "includes", "included",  "features",  "featured",
      "built",    "designed",  "invented", "discovered", "composed", "painted",  "taught",    "studied",
      "attended", "hosted",    "opened",   "closed",    "announced", "launched", "started",   "ended",
      "began",    "begins",    "developed", "owned",    "ruled",    "governed",  "represented",
  };
  return s;
}

inline const WordSet& prepositions() {
  static const WordSet s = {"in",    "at",     "on",      "near",    "during", "of",    "for",    "with",
                            "by",    "from",   "to",      "since",   "after",  "before", "about", "into",
                            "under", "over",   "between", "through", "against", "as",   "until",  "onto",
                            "across", "around", "behind",  "beside",  "within", "without", "toward", "towards"};
  return s;
}

inline const WordSet& conjunctions() {
  static const WordSet s = {"and", "or", "but"};
  return s;
}

inline const WordSet& months() {
  static const WordSet s = {"january", "february", "march",     "april",   "may",      "june",
                            "july",    "august",   "september", "october", "november", "december"};
  return s;
}

inline bool is_year(std::string_view w) {
  return w.size() == 4 && std::all_of(w.begin(), w.end(), [](char c) { return c >= '0' && c <= '9'; }) &&
         (w[0] == '1' || w[0] == '2');
}

inline bool is_participle(std::string_view lower) {
  if (irregular_participles().contains(lower)) return true;
  return lower.size() >= 4 && lower.ends_with("ed") &&
         std::all_of(lower.begin(), lower.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

struct LabeledWord {
  std::string core;   // punctuation-trimmed surface text
  std::string lower;  // normalized core
  Span span;
  bool breaks_after = false;  // ends with , ; :
  bool capital = false;
};

inline std::vector<LabeledWord> label_words(std::string_view sentence) {
  std::vector<LabeledWord> out;
  for (const auto& w : split_words(sentence)) {
    const RawWord core = trim_word(w);
    if (core.text.empty()) continue;
    LabeledWord lw;
    lw.core = core.text;
    lw.lower = normalize(core.text);
    lw.span = {core.begin, core.end};
    const char last = w.text.back();
    lw.breaks_after = last == ',' || last == ';' || last == ':';
    lw.capital = starts_uppercase(core.text);
    out.push_back(std::move(lw));
  }
  return out;
}

struct VerbMatch {
  std::size_t first = 0;
  std::size_t last = 0;  // inclusive
};

inline std::vector<VerbMatch> find_verbs(const std::vector<LabeledWord>& words) {
  std::vector<VerbMatch> verbs;
  const std::size_t n = words.size();
  auto lower_at = [&](std::size_t i) -> std::string_view { return i < n ? std::string_view(words[i].lower) : ""; };
  for (std::size_t i = 0; i < n; ++i) {
    if (words[i].capital && i > 0) continue;
    const std::string_view w = lower_at(i);
    if (auxiliaries().contains(w)) {
      std::size_t j = i + 1;
      while (auxiliaries().contains(lower_at(j))) ++j;
      if (negations().contains(lower_at(j))) ++j;
      if (j < n && !words[j].capital && is_participle(lower_at(j))) {
        verbs.push_back({i, j});
        i = j;
        continue;
      }
      if (lexicon_verbs().contains(w)) {
        const std::size_t last = negations().contains(lower_at(i + 1)) ? i + 1 : i;
        verbs.push_back({i, last});
        i = last;
        continue;
      }
    }
    if (negations().contains(w) && i + 1 < n && lexicon_verbs().contains(lower_at(i + 1)) &&
        !auxiliaries().contains(lower_at(i + 1))) {
      verbs.push_back({i, i + 1});
      ++i;
      continue;
    }
    if (lexicon_verbs().contains(w)) verbs.push_back({i, i});
  }
  return verbs;
}

inline std::string slice(std::string_view sentence, Span s) {
  return std::string(sentence.substr(s.begin, s.end - s.begin));
}

inline std::optional<SrlArgument> make_argument(std::string_view sentence, const std::vector<LabeledWord>& words,
                                                std::size_t first, std::size_t last_excl) {
  if (first >= last_excl) return std::nullopt;
  std::string_view prep;
  std::size_t body = first;
  if (prepositions().contains(words[first].lower)) {
    prep = words[first].lower;
    ++body;
  }
  if (body >= last_excl) return std::nullopt;
  const LabeledWord& head = words[body];
  Role role = Role::kArg;
  const bool bare_year = (last_excl - body == 1) && is_year(head.lower);
  if (bare_year || ((prep == "in" || prep == "on" || prep == "during") &&
                    (is_year(head.lower) || months().contains(head.lower)))) {
    role = Role::kTmp;
  } else if ((prep == "in" || prep == "at" || prep == "on" || prep == "near") && head.capital) {
    role = Role::kLoc;
  }
  const Span span{head.span.begin, words[last_excl - 1].span.end};
  return SrlArgument{role, slice(sentence, span), span};
}

// Chunks words [first, last_excl) at prepositions, conjunctions and commas.
inline std::vector<SrlArgument> chunk_arguments(std::string_view sentence, const std::vector<LabeledWord>& words,
                                                std::size_t first, std::size_t last_excl) {
  std::vector<SrlArgument> args;
  std::size_t start = first;
  auto close = [&](std::size_t end) {
    if (auto a = make_argument(sentence, words, start, end)) args.push_back(std::move(*a));
  };
  for (std::size_t i = first; i < last_excl; ++i) {
    if (conjunctions().contains(words[i].lower)) {
      close(i);
      start = i + 1;
      continue;
    }
    if (i > start && prepositions().contains(words[i].lower)) {
      close(i);
      start = i;
    }
    if (words[i].breaks_after) {
      close(i + 1);
      start = i + 1;
    }
  }
  close(last_excl);
  return args;
}

// Index of the first word after the last conjunction or comma break in
// [first, last_excl), or `first` if there is none.
inline std::size_t after_last_boundary(const std::vector<LabeledWord>& words, std::size_t first,
                                       std::size_t last_excl, bool& found) {
  found = false;
  std::size_t pos = first;
  for (std::size_t i = first; i < last_excl; ++i) {
    if (conjunctions().contains(words[i].lower)) {
      pos = i + 1;
      found = true;
    } else if (words[i].breaks_after) {
      pos = i + 1;
      found = true;
    }
  }
  return pos;
}

}  // namespace detail

inline std::vector<SrlTuple> rule_extract_tuples(std::string_view sentence, const SentenceRef& ref) {
  using namespace detail;
  const auto words = label_words(sentence);
  const auto verbs = find_verbs(words);
  std::vector<SrlTuple> tuples;
  std::optional<SrlArgument> first_subject;
  for (std::size_t k = 0; k < verbs.size(); ++k) {
    const VerbMatch& v = verbs[k];
    SrlTuple t;
    t.verb_span = {words[v.first].span.begin, words[v.last].span.end};
    t.verb = slice(sentence, t.verb_span);
    t.sentence = ref;

    // Subject.
    const std::size_t region_begin = k == 0 ? 0 : verbs[k - 1].last + 1;
    bool boundary = false;
    const std::size_t subj_begin = k == 0 ? 0 : after_last_boundary(words, region_begin, v.first, boundary);
    std::optional<SrlArgument> subject;
    if (k == 0 || boundary) {
      auto chunks = chunk_arguments(sentence, words, subj_begin, v.first);
      if (!chunks.empty()) {
        subject = chunks.back();
        subject->role = Role::kArg;
      }
    }
    if (!subject && k > 0) subject = first_subject;
    if (subject) {
      t.arguments.push_back(*subject);
      if (k == 0) first_subject = subject;
    }

    // Objects up to the next verb's subject region.
    std::size_t obj_end = words.size();
    if (k + 1 < verbs.size()) {
      bool next_boundary = false;
      const std::size_t cut = after_last_boundary(words, v.last + 1, verbs[k + 1].first, next_boundary);
      obj_end = next_boundary ? cut : verbs[k + 1].first;
    }
    for (auto& a : chunk_arguments(sentence, words, v.last + 1, obj_end)) t.arguments.push_back(std::move(a));
    tuples.push_back(std::move(t));
  }
  return tuples;
}

class Labeler {
 public:
  virtual ~Labeler() = default;
  virtual std::vector<SrlTuple> label(std::string_view sentence, const SentenceRef& ref) const = 0;
};

class RuleLabeler final : public Labeler {
 public:
  std::vector<SrlTuple> label(std::string_view sentence, const SentenceRef& ref) const override {
    return rule_extract_tuples(sentence, ref);
  }
};

inline constexpr std::string_view kLabelerSchema = "FACTGRAPH-LABEL v1";

// Client for an external SRL service.
//
// Request:  {"schema": "FACTGRAPH-LABEL v1", "sentence": "..."}
// Response: {"tuples": [{"verb": {"begin": b, "end": e},
//                        "arguments": [{"role": "LOC", "begin": b, "end": e}]}]}
class ExternalLabeler final : public Labeler {
 public:
  explicit ExternalLabeler(std::string url) : url_(std::move(url)) {}

  std::vector<SrlTuple> label(std::string_view sentence, const SentenceRef& ref) const override {
    const json resp = http::post_json(url_, json{{"schema", kLabelerSchema}, {"sentence", sentence}});
    if (!resp.contains("tuples") || !resp["tuples"].is_array()) throw TransportError("labeler: response lacks tuples");
    auto span_of = [&](const json& j) {
      const Span s{j.at("begin").get<std::size_t>(), j.at("end").get<std::size_t>()};
      if (s.begin >= s.end || s.end > sentence.size()) throw TransportError("labeler: span out of bounds");
      return s;
    };
    std::vector<SrlTuple> out;
    for (const auto& jt : resp["tuples"]) {
      SrlTuple t;
      t.verb_span = span_of(jt.at("verb"));
      t.verb = detail::slice(sentence, t.verb_span);
      t.sentence = ref;
      for (const auto& ja : jt.value("arguments", json::array())) {
        const auto role = parse_role(ja.at("role").get<std::string>());
        if (!role) throw TransportError("labeler: unknown role " + ja.at("role").get<std::string>());
        const Span s = span_of(ja);
        t.arguments.push_back({*role, detail::slice(sentence, s), s});
      }
      out.push_back(std::move(t));
    }
    return out;
  }

 private:
  std::string url_;
};

inline std::vector<SrlTuple> extract_tuples(std::string_view sentence, const SentenceRef& ref, const Labeler& labeler) {
  if (sentence.empty()) throw PreconditionError("extract_tuples: empty sentence");
  return labeler.label(sentence, ref);
}

}  // namespace factgraph
