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

// Token normalization shared by every stage: the inverted index, document
// ranking, overlap scoring, graph merging and the encoder all see the same
// tokens for the same text.

#pragma once

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "factgraph/error.hpp"

namespace factgraph {

using TokenSet = std::set<std::string>;

namespace detail {

inline constexpr std::string_view kStopwords[] = {
    "a",       "about",   "above",   "after",   "again",   "against", "all",
    "am",      "an",      "and",     "any",     "are",     "as",      "at",
    "be",      "because", "been",    "before",  "being",   "below",   "between",
    "both",    "but",     "by",      "can",     "could",   "did",     "do",
    "does",    "doing",   "down",    "during",  "each",    "either",  "else",
    "ever",    "every",   "few",     "for",     "from",    "further", "had",
    "has",     "have",    "having",  "he",      "her",     "here",    "hers",
    "herself", "him",     "himself", "his",     "how",     "however", "i",
    "if",      "in",      "into",    "is",      "it",      "its",     "itself",
    "just",    "may",     "me",      "might",   "more",    "most",    "much",
    "must",    "my",      "myself",  "neither", "never",   "no",      "nor",
    "not",     "now",     "of",      "off",     "on",      "once",    "one",
    "only",    "or",      "other",   "ought",   "our",     "ours",    "ourselves",
    "out",     "over",    "own",     "same",    "shall",   "she",     "should",
    "since",   "so",      "some",    "such",    "than",    "that",    "the",
    "their",   "theirs",  "them",    "themselves", "then", "there",   "these",
    "they",    "this",    "those",   "though",  "through", "thus",    "to",
    "too",     "under",   "until",   "up",      "upon",    "us",      "very",
    "was",     "we",      "were",    "what",    "when",    "where",   "whether",
    "which",   "while",   "who",     "whom",    "whose",   "why",     "will",
    "with",    "within",  "without", "would",   "yet",     "you",     "your",
    "yours",   "yourself", "yourselves", "also",  "although", "among",
};

inline const std::unordered_set<std::string_view>& stopword_set() {
  static const std::unordered_set<std::string_view> set(std::begin(kStopwords), std::end(kStopwords));
  return set;
}

inline bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

}  // namespace detail

inline bool is_stopword(std::string_view token) { return detail::stopword_set().contains(token); }

// Lowercase, Unicode NFC, punctuation removed, whitespace runs collapsed to a
// single ASCII space, no leading or trailing space.
inline std::string normalize(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");

  icu::UnicodeString ustr = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  icu::UnicodeString composed = nfc->normalize(ustr, status);
  if (U_FAILURE(status)) throw Error("NFC normalization failed");
  composed.toLower(icu::Locale::getRoot());
  // Lowercasing can decompose (e.g. dotted capital I); recompose.
  composed = nfc->normalize(composed, status);
  if (U_FAILURE(status)) throw Error("NFC normalization failed");

  icu::UnicodeString out;
  bool pending_space = false;
  for (int32_t i = 0; i < composed.length();) {
    UChar32 c = composed.char32At(i);
    i += U16_LENGTH(c);
    if (u_isUWhiteSpace(c)) {
      pending_space = !out.isEmpty();
      continue;
    }
    if (u_ispunct(c)) continue;
    if (pending_space) {
      out.append(static_cast<UChar>(' '));
      pending_space = false;
    }
    out.append(c);
  }
  std::string result;
  out.toUTF8String(result);
  return result;
}

// Normalized tokens in order, duplicates kept.
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  const std::string norm = normalize(text);
  std::size_t start = 0;
  while (start < norm.size()) {
    std::size_t end = norm.find(' ', start);
    if (end == std::string::npos) end = norm.size();
    if (end > start) tokens.emplace_back(norm.substr(start, end - start));
    start = end + 1;
  }
  return tokens;
}

// Normalized tokens minus stopwords, as a set.
inline TokenSet content_tokens(std::string_view text) {
  TokenSet set;
  for (auto& t : tokenize(text)) {
    if (!is_stopword(t)) set.insert(std::move(t));
  }
  return set;
}

inline bool intersects(const TokenSet& a, const TokenSet& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      return true;
    }
  }
  return false;
}

inline std::size_t intersection_size(const TokenSet& a, const TokenSet& b) {
  std::size_t n = 0;
  for (const auto& t : a) n += b.contains(t) ? 1 : 0;
  return n;
}

// A whitespace-delimited word of the raw text with its byte span.
struct RawWord {
  std::string text;
  std::size_t begin = 0;
  std::size_t end = 0;
};

inline std::vector<RawWord> split_words(std::string_view text) {
  std::vector<RawWord> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && detail::is_ascii_space(text[i])) ++i;
    std::size_t begin = i;
    while (i < text.size() && !detail::is_ascii_space(text[i])) ++i;
    if (i > begin) words.push_back({std::string(text.substr(begin, i - begin)), begin, i});
  }
  return words;
}

// FEVER page ids encode brackets and colons ("Hawaii_-LRB-film-RRB-").
inline std::string display_title(std::string_view id) {
  static constexpr std::array<std::pair<std::string_view, std::string_view>, 6> kCodes = {{
      {"-LRB-", "("}, {"-RRB-", ")"}, {"-LSB-", "["}, {"-RSB-", "]"}, {"-COLON-", ":"},
      {"_", " "},
  }};
  std::string out;
  out.reserve(id.size());
  for (std::size_t i = 0; i < id.size();) {
    bool replaced = false;
    for (const auto& [code, repl] : kCodes) {
      if (id.substr(i, code.size()) == code) {
        out.append(repl);
        i += code.size();
        replaced = true;
        break;
      }
    }
    if (!replaced) out.push_back(id[i++]);
  }
  return out;
}

}  // namespace factgraph
