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

// Run configuration: an INI file with one section per module.
//
//   [selection]
//   threshold = 0.01
//   top_sents = 5
//
// Every key has a default; unknown sections or keys are rejected. Command
// line flags override file values through set().

#pragma once

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cerrno>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "factgraph/error.hpp"
#include "factgraph/io.hpp"

namespace factgraph {

// Unknown key or unreadable config syntax; the CLI maps it to a usage error.
class UsageError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class Config {
 public:
  Config() {
    for (const auto& [key, value] : defaults()) values_[key] = value;
  }

  static const std::map<std::string, std::string>& defaults() {
    static const std::map<std::string, std::string> kDefaults = {
        {"corpus.wiki_pages", "data/synthetic/wiki-pages.jsonl"},
        {"corpus.store", ""},
        {"corpus.train_claims", "data/synthetic/train.jsonl"},
        {"corpus.test_claims", "data/synthetic/test.jsonl"},
        {"retrieval.top_docs", "10"},
        {"retrieval.skip_retrieval", "false"},
        {"retrieval.extractor", "rules"},
        {"retrieval.extractor_url", ""},
        {"retrieval.online", "false"},
        {"retrieval.api_url", ""},
        {"retrieval.cache_dir", "wiki-cache"},
        {"selection.threshold", "0.01"},
        {"selection.top_sents", "5"},
        {"selection.scorer", "overlap"},
        {"selection.head", ""},
        {"srl.labeler", "rules"},
        {"srl.labeler_url", ""},
        {"srl.common_info", "token_overlap"},
        {"srl.link_mode", "merge_shared_verb"},
        {"encoder.provider", "deterministic"},
        {"encoder.dim", "64"},
        {"encoder.seed", "13"},
        {"encoder.url", ""},
        {"encoder.max_in_flight", "4"},
        {"verifier.layers", "2"},
        {"verifier.hidden", "64"},
        {"verifier.shared_gcn", "true"},
        {"verifier.attention", "claim_to_evidence"},
        {"train.learning_rate", "0.01"},
        {"train.epochs", "40"},
        {"train.batch_size", "8"},
        {"train.seed", "7"},
        {"run.workers", "0"},
        {"run.thresholds", "0,1e-4,1e-3,1e-2,1e-1"},
        {"run.reference_table", ""},
    };
    return kDefaults;
  }

  static Config from_ini(std::string_view text, const std::string& source = "<config>") {
    boost::property_tree::ptree tree;
    std::istringstream in{std::string(text)};
    try {
      boost::property_tree::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
      throw UsageError(source + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
    }
    Config cfg;
    for (const auto& [section, body] : tree) {
      if (body.empty() && !body.data().empty()) {
        throw UsageError(source + ": key '" + section + "' outside a section");
      }
      for (const auto& [key, node] : body) cfg.set(section + "." + key, node.data());
    }
    return cfg;
  }

  static Config from_file(const fs::path& path) {
    std::string text;
    try {
      text = read_file(path);
    } catch (const IngestError& e) {
      throw ConfigError(e.what());
    }
    return from_ini(text, path.string());
  }

  void set(const std::string& key, std::string value) {
    if (!defaults().contains(key)) throw UsageError("unknown config key: " + key);
    values_[key] = std::move(value);
  }

  const std::string& get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("unknown config key: " + key);
    return it->second;
  }

  double get_double(const std::string& key) const {
    const std::string& v = get(key);
    char* end = nullptr;
    errno = 0;
    const double d = std::strtod(v.c_str(), &end);
    if (v.empty() || *end != '\0' || errno == ERANGE) throw ConfigError(key + ": not a number: '" + v + "'");
    return d;
  }

  std::int64_t get_int(const std::string& key) const {
    const std::string& v = get(key);
    char* end = nullptr;
    errno = 0;
    const long long i = std::strtoll(v.c_str(), &end, 10);
    if (v.empty() || *end != '\0' || errno == ERANGE) throw ConfigError(key + ": not an integer: '" + v + "'");
    return i;
  }

  std::uint64_t get_uint(const std::string& key) const {
    const std::int64_t i = get_int(key);
    if (i < 0) throw ConfigError(key + ": must be non-negative");
    return static_cast<std::uint64_t>(i);
  }

  bool get_bool(const std::string& key) const {
    const std::string& v = get(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(key + ": not a boolean: '" + v + "'");
  }

  std::string get_choice(const std::string& key, std::initializer_list<std::string_view> allowed) const {
    const std::string& v = get(key);
    for (auto a : allowed) {
      if (v == a) return v;
    }
    std::string list;
    for (auto a : allowed) list += (list.empty() ? "" : "|") + std::string(a);
    throw ConfigError(key + ": expected one of " + list + ", got '" + v + "'");
  }

  std::vector<double> get_doubles(const std::string& key) const {
    std::vector<double> out;
    std::stringstream ss(get(key));
    std::string item;
    while (std::getline(ss, item, ',')) {
      char* end = nullptr;
      const double d = std::strtod(item.c_str(), &end);
      if (item.empty() || *end != '\0') throw ConfigError(key + ": not a number list: '" + get(key) + "'");
      out.push_back(d);
    }
    if (out.empty()) throw ConfigError(key + ": empty list");
    return out;
  }

  // Canonical INI text of every key, sorted; the manifest's config snapshot.
  std::string to_ini() const {
    std::string out;
    std::string section;
    for (const auto& [key, value] : values_) {
      const auto dot = key.find('.');
      const std::string s = key.substr(0, dot);
      if (s != section) {
        out += (out.empty() ? "[" : "\n[") + s + "]\n";
        section = s;
      }
      out += key.substr(dot + 1) + " = " + value + "\n";
    }
    return out;
  }

  bool operator==(const Config&) const = default;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace factgraph
