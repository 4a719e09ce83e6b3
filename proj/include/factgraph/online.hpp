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

// MediaWiki page fetcher with an on-disk cache.

#pragma once

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "factgraph/corpus.hpp"
#include "factgraph/error.hpp"
#include "factgraph/http.hpp"
#include "factgraph/io.hpp"

namespace factgraph {

inline constexpr std::string_view kDefaultWikiUrl = "https://en.wikipedia.org/w/api.php";

struct OnlineConfig {
  bool enabled = false;
  std::string api_url;  // empty: FACTGRAPH_WIKI_URL, then kDefaultWikiUrl
  fs::path cache_dir = "wiki-cache";
  http::Timeouts timeouts;

  std::string resolved_url() const {
    if (!api_url.empty()) return api_url;
    if (const char* env = std::getenv("FACTGRAPH_WIKI_URL"); env != nullptr && *env != '\0') return env;
    return std::string(kDefaultWikiUrl);
  }
};

// Splits a plaintext extract into sentences: paragraphs on newlines, then a
// break after ".", "!" or "?" when whitespace and an uppercase letter or
// digit follow. Section headings ("== History ==") are dropped.
inline std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  auto flush = [&](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return;
    s = s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
    if (s.starts_with("==")) return;
    out.push_back(std::move(s));
  };
  std::string cur;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') {
      flush(std::move(cur));
      cur.clear();
      continue;
    }
    cur.push_back(c);
    if ((c == '.' || c == '!' || c == '?') && i + 2 < text.size() && (text[i + 1] == ' ')) {
      const unsigned char next = static_cast<unsigned char>(text[i + 2]);
      if (std::isupper(next) || std::isdigit(next)) {
        flush(std::move(cur));
        cur.clear();
        ++i;
      }
    }
  }
  flush(std::move(cur));
  return out;
}

class MediaWikiClient {
 public:
  explicit MediaWikiClient(OnlineConfig cfg) : cfg_(std::move(cfg)) {}

  Document fetch(const std::string& title) const {
    if (!cfg_.enabled) throw DisabledFeatureError("online retrieval is disabled (enable with --online)");
    const fs::path cached = cache_path(title);
    if (fs::exists(cached)) {
      auto loaded = parse_wiki_pages(read_file(cached), cached.string());
      if (const Document* d = loaded.store.find(title)) return *d;
    }

    const json resp = http::get_json(cfg_.resolved_url(),
                                     {{"action", "query"},
                                      {"prop", "extracts"},
                                      {"explaintext", "1"},
                                      {"redirects", "1"},
                                      {"format", "json"},
                                      {"formatversion", "2"},
                                      {"titles", title}},
                                     cfg_.timeouts);
    const std::string extract = extract_text(resp, title);
    Document doc{title, {}};
    int i = 0;
    for (auto& s : split_sentences(extract)) doc.sentences.push_back({i++, std::move(s)});
    if (doc.sentences.empty()) throw NotFoundError("page has no text: " + title);

    std::string lines;
    for (const auto& s : doc.sentences) {
      if (!lines.empty()) lines += '\n';
      lines += std::to_string(s.index) + "\t" + s.text;
    }
    {
      std::lock_guard lock(cache_mu_);
      write_file_atomic(cached, json{{"id", title}, {"text", extract}, {"lines", lines}}.dump() + "\n");
    }
    return doc;
  }

  fs::path cache_path(const std::string& title) const {
    std::string name;
    for (unsigned char c : title) {
      if (std::isalnum(c) || c == '-' || c == '_' || c == '.') {
        name.push_back(static_cast<char>(c));
      } else {
        char buf[4];
        std::snprintf(buf, sizeof(buf), "%%%02X", c);
        name += buf;
      }
    }
    return cfg_.cache_dir / (name + ".jsonl");
  }

 private:
  static std::string extract_text(const json& resp, const std::string& title) {
    if (!resp.contains("query") || !resp["query"].contains("pages")) {
      throw TransportError("MediaWiki: unexpected response for " + title);
    }
    const json& pages = resp["query"]["pages"];
    auto from_page = [&](const json& page) -> std::string {
      if (page.contains("missing") || page.contains("invalid")) throw NotFoundError("page not found: " + title);
      if (!page.contains("extract") || !page["extract"].is_string()) throw NotFoundError("page has no extract: " + title);
      return page["extract"].get<std::string>();
    };
    if (pages.is_array() && !pages.empty()) return from_page(pages.front());
    if (pages.is_object() && !pages.empty()) return from_page(pages.begin().value());
    throw NotFoundError("page not found: " + title);
  }

  OnlineConfig cfg_;
  mutable std::mutex cache_mu_;
};

inline Document fetch_document_online(const MediaWikiClient& client, const std::string& title) {
  return client.fetch(title);
}

}  // namespace factgraph
