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

// Document collection and claim datasets in the FEVER JSONL formats.
//
// wiki-pages records:  {"id": title, "text": ..., "lines": "0\tSent\n1\tSent"}
// claim records:       {"id": 7, "claim": ..., "label": "SUPPORTS",
//                       "evidence": [[[ann, ev, page, sent], ...], ...]}

#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "factgraph/error.hpp"
#include "factgraph/io.hpp"
#include "factgraph/text.hpp"

namespace factgraph {

using json = nlohmann::json;

enum class Label { kSupports = 0, kRefutes = 1, kNei = 2 };

inline constexpr Label kLabelOrder[] = {Label::kSupports, Label::kRefutes, Label::kNei};

inline std::string_view label_name(Label label) {
  switch (label) {
    case Label::kSupports: return "SUPPORTS";
    case Label::kRefutes: return "REFUTES";
    case Label::kNei: return "NOT ENOUGH INFO";
  }
  return "?";
}

inline std::optional<Label> parse_label(std::string_view s) {
  if (s == "SUPPORTS" || s == "SUPPORTED" || s == "ACCEPTED") return Label::kSupports;
  if (s == "REFUTES" || s == "REFUTED") return Label::kRefutes;
  if (s == "NOT ENOUGH INFO" || s == "NEI") return Label::kNei;
  return std::nullopt;
}

struct EvidenceRef {
  std::string page;
  int index = 0;

  auto operator<=>(const EvidenceRef&) const = default;
};

using EvidenceGroup = std::set<EvidenceRef>;

struct Claim {
  std::int64_t id = 0;
  std::string text;
  std::optional<Label> gold_label;
  std::vector<EvidenceGroup> gold_evidence;

  // Union of all gold groups.
  EvidenceGroup gold_union() const {
    EvidenceGroup all;
    for (const auto& g : gold_evidence) all.insert(g.begin(), g.end());
    return all;
  }
};

struct Sentence {
  int index = 0;
  std::string text;

  bool operator==(const Sentence&) const = default;
};

struct Document {
  std::string title;
  std::vector<Sentence> sentences;

  bool operator==(const Document&) const = default;
};

// Title-keyed document map plus an inverted index from normalized title
// tokens to titles. Immutable once constructed.
class DocumentStore {
 public:
  using Index = std::map<std::string, std::set<std::string>>;

  DocumentStore() = default;

  // Throws IngestError on a duplicate title.
  explicit DocumentStore(std::vector<Document> docs) {
    for (auto& d : docs) {
      std::string title = d.title;
      auto [it, inserted] = docs_.emplace(title, std::move(d));
      if (!inserted) throw IngestError("duplicate title: " + title);
    }
    for (const auto& [title, doc] : docs_) {
      const std::string display = display_title(title);
      for (const auto& tok : content_tokens(display)) index_[tok].insert(title);
      exact_[normalize(display)].insert(title);
    }
  }

  const Document* find(std::string_view title) const {
    auto it = docs_.find(std::string(title));
    return it == docs_.end() ? nullptr : &it->second;
  }

  const std::map<std::string, Document>& documents() const { return docs_; }
  const Index& index() const { return index_; }
  std::size_t size() const { return docs_.size(); }
  bool empty() const { return docs_.empty(); }

  // Titles whose normalized token set contains `token`.
  const std::set<std::string>* lookup_token(const std::string& token) const {
    auto it = index_.find(token);
    return it == index_.end() ? nullptr : &it->second;
  }

  // Titles whose whole normalized display title equals `normalized`.
  const std::set<std::string>* lookup_exact(const std::string& normalized) const {
    auto it = exact_.find(normalized);
    return it == exact_.end() ? nullptr : &it->second;
  }

  bool operator==(const DocumentStore& o) const { return docs_ == o.docs_ && index_ == o.index_; }

 private:
  std::map<std::string, Document> docs_;
  Index index_;
  Index exact_;
};

inline const std::string& get_sentence(const DocumentStore& store, std::string_view title, int index) {
  const Document* doc = store.find(title);
  if (doc == nullptr) throw LookupError("no such page: " + std::string(title));
  if (index < 0 || static_cast<std::size_t>(index) >= doc->sentences.size()) {
    throw LookupError("sentence index out of range: " + std::string(title) + "#" + std::to_string(index));
  }
  return doc->sentences[static_cast<std::size_t>(index)].text;
}

struct LoadResult {
  DocumentStore store;
  std::size_t warnings = 0;
};

namespace detail {

// Parses a FEVER "lines" field. Each line is "<index>\t<text>[\t<link>...]".
// Lines whose index is missing, unparsable or out of sequence are skipped;
// sentences with empty text keep their slot so indices stay aligned with
// FEVER evidence references.
inline std::vector<Sentence> parse_lines_field(std::string_view lines, std::size_t& warnings) {
  std::vector<Sentence> out;
  if (lines.empty()) {
    ++warnings;
    return out;
  }
  std::size_t pos = 0;
  while (pos < lines.size()) {
    std::size_t nl = lines.find('\n', pos);
    if (nl == std::string_view::npos) nl = lines.size();
    std::string_view line = lines.substr(pos, nl - pos);
    pos = nl + 1;

    std::size_t tab = line.find('\t');
    std::string_view idx_part = line.substr(0, tab);
    int idx = -1;
    auto [ptr, ec] = std::from_chars(idx_part.data(), idx_part.data() + idx_part.size(), idx);
    if (ec != std::errc() || ptr != idx_part.data() + idx_part.size() || tab == std::string_view::npos ||
        idx != static_cast<int>(out.size())) {
      ++warnings;
      continue;
    }
    std::string_view rest = line.substr(tab + 1);
    std::string_view text = rest.substr(0, rest.find('\t'));
    out.push_back({idx, std::string(text)});
  }
  return out;
}

template <typename Fn>
void for_each_jsonl(std::string_view contents, const std::string& source, Fn&& fn) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < contents.size()) {
    std::size_t nl = contents.find('\n', pos);
    if (nl == std::string_view::npos) nl = contents.size();
    std::string_view line = contents.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw IngestError(source + ":" + std::to_string(line_no) + ": invalid JSON: " + e.what());
    }
    try {
      fn(record, line_no);
    } catch (const json::exception& e) {
      throw IngestError(source + ":" + std::to_string(line_no) + ": malformed record: " + e.what());
    }
  }
}

}  // namespace detail

inline LoadResult parse_wiki_pages(std::string_view contents, const std::string& source = "<memory>") {
  std::vector<Document> docs;
  std::size_t warnings = 0;
  detail::for_each_jsonl(contents, source, [&](const json& rec, std::size_t line_no) {
    if (!rec.is_object() || !rec.contains("id") || !rec["id"].is_string()) {
      throw IngestError(source + ":" + std::to_string(line_no) + ": record lacks a string id");
    }
    Document doc;
    doc.title = rec["id"].get<std::string>();
    std::string lines;
    if (rec.contains("lines") && rec["lines"].is_string()) lines = rec["lines"].get<std::string>();
    doc.sentences = detail::parse_lines_field(lines, warnings);
    docs.push_back(std::move(doc));
  });
  return {DocumentStore(std::move(docs)), warnings};
}

inline LoadResult load_wiki_pages(const fs::path& path) {
  return parse_wiki_pages(read_file(path), path.string());
}

inline Claim parse_claim_record(const json& rec, const std::string& where) {
  if (!rec.is_object() || !rec.contains("id") || !rec["id"].is_number_integer() || !rec.contains("claim") ||
      !rec["claim"].is_string()) {
    throw IngestError(where + ": claim record needs integer id and string claim");
  }
  Claim c;
  c.id = rec["id"].get<std::int64_t>();
  c.text = rec["claim"].get<std::string>();
  const std::string id_str = "claim " + std::to_string(c.id);
  if (rec.contains("label") && !rec["label"].is_null()) {
    if (!rec["label"].is_string()) throw IngestError(where + ": " + id_str + ": label must be a string");
    auto label = parse_label(rec["label"].get<std::string>());
    if (!label) throw IngestError(where + ": " + id_str + ": unknown label '" + rec["label"].get<std::string>() + "'");
    c.gold_label = *label;
  }
  if (rec.contains("evidence") && rec["evidence"].is_array() && c.gold_label && *c.gold_label != Label::kNei) {
    for (const auto& group : rec["evidence"]) {
      if (!group.is_array()) throw IngestError(where + ": " + id_str + ": malformed evidence group");
      EvidenceGroup g;
      for (const auto& item : group) {
        if (!item.is_array() || item.size() < 4) throw IngestError(where + ": " + id_str + ": malformed evidence item");
        // FEVER marks "no evidence" with null page and sentence.
        if (item[2].is_null() || item[3].is_null()) continue;
        if (!item[2].is_string() || !item[3].is_number_integer() || item[3].get<int>() < 0) {
          throw IngestError(where + ": " + id_str + ": malformed evidence item");
        }
        g.insert({item[2].get<std::string>(), item[3].get<int>()});
      }
      if (!g.empty()) c.gold_evidence.push_back(std::move(g));
    }
  }
  if (c.gold_label && *c.gold_label != Label::kNei && c.gold_evidence.empty()) {
    throw IngestError(where + ": " + id_str + ": verifiable claim without evidence");
  }
  return c;
}

inline std::vector<Claim> parse_claims(std::string_view contents, const std::string& source = "<memory>") {
  std::vector<Claim> claims;
  detail::for_each_jsonl(contents, source, [&](const json& rec, std::size_t line_no) {
    claims.push_back(parse_claim_record(rec, source + ":" + std::to_string(line_no)));
  });
  return claims;
}

inline std::vector<Claim> load_claims(const fs::path& path) { return parse_claims(read_file(path), path.string()); }

inline json claim_to_json(const Claim& c) {
  json rec = {{"id", c.id}, {"claim", c.text}};
  if (c.gold_label) rec["label"] = label_name(*c.gold_label);
  json ev = json::array();
  for (const auto& g : c.gold_evidence) {
    json group = json::array();
    for (const auto& r : g) group.push_back(json::array({nullptr, nullptr, r.page, r.index}));
    ev.push_back(std::move(group));
  }
  rec["evidence"] = std::move(ev);
  return rec;
}

inline constexpr std::string_view kStoreHeader = "FACTGRAPH-STORE v1";

// Persists the store as <dir>/documents.jsonl and <dir>/index.jsonl, each
// starting with the version header line.
inline void save_store(const DocumentStore& store, const fs::path& dir) {
  std::string docs(kStoreHeader);
  docs += '\n';
  for (const auto& [title, doc] : store.documents()) {
    json sents = json::array();
    for (const auto& s : doc.sentences) sents.push_back(s.text);
    docs += json{{"id", title}, {"sentences", sents}}.dump();
    docs += '\n';
  }
  std::string index(kStoreHeader);
  index += '\n';
  for (const auto& [token, titles] : store.index()) {
    index += json{{"token", token}, {"titles", titles}}.dump();
    index += '\n';
  }
  write_file_atomic(dir / "documents.jsonl", docs);
  write_file_atomic(dir / "index.jsonl", index);
}

inline DocumentStore load_store(const fs::path& dir) {
  auto strip_header = [](const std::string& contents, const fs::path& p) -> std::string_view {
    std::string_view v = contents;
    std::size_t nl = v.find('\n');
    if (v.substr(0, nl) != kStoreHeader) throw IngestError(p.string() + ": missing header " + std::string(kStoreHeader));
    return nl == std::string_view::npos ? std::string_view{} : v.substr(nl + 1);
  };
  const fs::path docs_path = dir / "documents.jsonl";
  const fs::path index_path = dir / "index.jsonl";
  const std::string docs_raw = read_file(docs_path);
  const std::string index_raw = read_file(index_path);

  std::vector<Document> docs;
  detail::for_each_jsonl(strip_header(docs_raw, docs_path), docs_path.string(), [&](const json& rec, std::size_t) {
    Document d;
    d.title = rec.at("id").get<std::string>();
    int i = 0;
    for (const auto& s : rec.at("sentences")) d.sentences.push_back({i++, s.get<std::string>()});
    docs.push_back(std::move(d));
  });
  DocumentStore store(std::move(docs));

  DocumentStore::Index stored;
  detail::for_each_jsonl(strip_header(index_raw, index_path), index_path.string(), [&](const json& rec, std::size_t) {
    stored[rec.at("token").get<std::string>()] = rec.at("titles").get<std::set<std::string>>();
  });
  if (stored != store.index()) throw IngestError(index_path.string() + ": index does not match documents");
  return store;
}

}  // namespace factgraph
