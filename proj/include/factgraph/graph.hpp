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

// Typed SRL graphs over claim and evidence tuples.
//
// Nodes are tuple elements. Inside one sentence, elements with the same
// category and normalized text share a node, so two tuples with the same
// verb meet at that verb. Edges:
//   intra_tuple  verb node -- each non-verb node of the same tuple
//   cross_info   any two nodes of different sentences with common content

#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "factgraph/corpus.hpp"
#include "factgraph/srl.hpp"
#include "factgraph/text.hpp"

namespace factgraph {

enum class NodeCategory { kVerb, kArgument, kLocation, kTemporal };

inline std::string_view category_name(NodeCategory c) {
  switch (c) {
    case NodeCategory::kVerb: return "verb";
    case NodeCategory::kArgument: return "argument";
    case NodeCategory::kLocation: return "location";
    case NodeCategory::kTemporal: return "temporal";
  }
  return "?";
}

// Role -> node category, indexed by Role. Extend both together.
inline constexpr std::array<NodeCategory, 3> kRoleCategories = {
    NodeCategory::kArgument,  // ARG
    NodeCategory::kLocation,  // LOC
    NodeCategory::kTemporal,  // TMP
};

inline NodeCategory category_of(Role r) { return kRoleCategories[static_cast<std::size_t>(r)]; }

enum class EdgeKind { kIntraTuple, kCrossInfo, kTupleLink };

inline std::string_view edge_kind_name(EdgeKind k) {
  switch (k) {
    case EdgeKind::kIntraTuple: return "intra_tuple";
    case EdgeKind::kCrossInfo: return "cross_info";
    case EdgeKind::kTupleLink: return "tuple_link";
  }
  return "?";
}

struct GraphNode {
  int id = 0;
  NodeCategory category = NodeCategory::kArgument;
  std::string text;  // surface text of the first occurrence
  std::string key;   // normalized text, the merge key
  TokenSet content;  // normalized content tokens
  SentenceRef sentence;
  std::vector<int> tuples;  // owning tuple ids
  std::vector<Span> spans;  // every occurrence in the sentence

  bool operator==(const GraphNode&) const = default;
};

struct GraphEdge {
  int u = 0;  // u < v
  int v = 0;
  EdgeKind kind = EdgeKind::kIntraTuple;

  auto operator<=>(const GraphEdge&) const = default;
};

using TupleGroup = std::pair<SentenceRef, std::vector<SrlTuple>>;

struct SrlGraph {
  std::vector<GraphNode> nodes;  // index == id
  std::set<GraphEdge> edges;
  std::vector<TupleGroup> groups;  // the input, kept for rebuilding

  std::size_t size() const { return nodes.size(); }
  bool empty() const { return nodes.empty(); }
  std::size_t count_edges(EdgeKind k) const {
    return static_cast<std::size_t>(std::count_if(edges.begin(), edges.end(), [k](const GraphEdge& e) { return e.kind == k; }));
  }
  bool operator==(const SrlGraph& o) const { return nodes == o.nodes && edges == o.edges; }
};

struct GraphConfig {
  // What counts as "common information" between sentences.
  enum class CommonInfo { kTokenOverlap, kExactMatch } common_info = CommonInfo::kTokenOverlap;
  // kMergeSharedVerb: tuples of a sentence share nodes with equal keys.
  // kTupleLinks: no cross-tuple merging; verb nodes of two tuples in the same
  // sentence get a tuple_link edge when their argument keys intersect.
  enum class LinkMode { kMergeSharedVerb, kTupleLinks } link_mode = LinkMode::kMergeSharedVerb;
};

inline SrlGraph build_graph(const std::vector<TupleGroup>& groups, const GraphConfig& cfg = {}) {
  SrlGraph g;
  g.groups = groups;
  int tuple_id = 0;
  auto add_edge = [&g](int a, int b, EdgeKind k) {
    if (a == b) return;
    g.edges.insert({std::min(a, b), std::max(a, b), k});
  };

  for (const auto& [ref, tuples] : groups) {
    std::map<std::tuple<int, NodeCategory, std::string>, int> by_key;
    std::vector<std::pair<int, std::set<std::string>>> tuple_verbs;  // link mode bookkeeping
    for (const auto& t : tuples) {
      const int tid = tuple_id++;
      const int scope = cfg.link_mode == GraphConfig::LinkMode::kTupleLinks ? tid : -1;
      auto node_for = [&](NodeCategory cat, const std::string& text, Span span) {
        std::string key = normalize(text);
        auto [it, inserted] = by_key.try_emplace({scope, cat, key}, static_cast<int>(g.nodes.size()));
        if (inserted) {
          GraphNode n;
          n.id = it->second;
          n.category = cat;
          n.text = text;
          n.content = content_tokens(text);
          n.key = std::move(key);
          n.sentence = ref;
          g.nodes.push_back(std::move(n));
        }
        GraphNode& n = g.nodes[static_cast<std::size_t>(it->second)];
        if (n.tuples.empty() || n.tuples.back() != tid) n.tuples.push_back(tid);
        if (std::find(n.spans.begin(), n.spans.end(), span) == n.spans.end()) n.spans.push_back(span);
        return it->second;
      };
      const int verb = node_for(NodeCategory::kVerb, t.verb, t.verb_span);
      std::set<std::string> arg_keys;
      for (const auto& a : t.arguments) {
        const int node = node_for(category_of(a.role), a.text, a.span);
        add_edge(verb, node, EdgeKind::kIntraTuple);
        arg_keys.insert(g.nodes[static_cast<std::size_t>(node)].key);
      }
      tuple_verbs.emplace_back(verb, std::move(arg_keys));
    }
    if (cfg.link_mode == GraphConfig::LinkMode::kTupleLinks) {
      for (std::size_t i = 0; i < tuple_verbs.size(); ++i) {
        for (std::size_t j = i + 1; j < tuple_verbs.size(); ++j) {
          const auto& a = tuple_verbs[i].second;
          const auto& b = tuple_verbs[j].second;
          if (std::any_of(a.begin(), a.end(), [&](const std::string& k) { return b.contains(k); })) {
            add_edge(tuple_verbs[i].first, tuple_verbs[j].first, EdgeKind::kTupleLink);
          }
        }
      }
    }
  }

  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < g.nodes.size(); ++j) {
      const GraphNode& a = g.nodes[i];
      const GraphNode& b = g.nodes[j];
      if (a.sentence == b.sentence) continue;
      const bool common = cfg.common_info == GraphConfig::CommonInfo::kExactMatch
                              ? (!a.content.empty() && a.key == b.key)
                              : intersects(a.content, b.content);
      if (common) add_edge(a.id, b.id, EdgeKind::kCrossInfo);
    }
  }
  return g;
}

inline std::vector<TupleGroup> label_sentences(const std::vector<std::pair<SentenceRef, std::string>>& sentences,
                                               const Labeler& labeler) {
  std::vector<TupleGroup> groups;
  groups.reserve(sentences.size());
  for (const auto& [ref, text] : sentences) {
    groups.emplace_back(ref, text.empty() ? std::vector<SrlTuple>{} : extract_tuples(text, ref, labeler));
  }
  return groups;
}

inline SrlGraph build_claim_graph(const Claim& claim, const Labeler& labeler, const GraphConfig& cfg = {}) {
  return build_graph(label_sentences({{SentenceRef::for_claim(), claim.text}}, labeler), cfg);
}

// Evidence sentences sorted by descending cross_info degree (edge endpoints
// on the sentence's nodes), stable in the given order.
inline std::vector<SentenceRef> sentence_order(const SrlGraph& graph, const std::vector<SentenceRef>& refs) {
  std::map<SentenceRef, int> degree;
  for (const auto& e : graph.edges) {
    if (e.kind != EdgeKind::kCrossInfo) continue;
    ++degree[graph.nodes[static_cast<std::size_t>(e.u)].sentence];
    ++degree[graph.nodes[static_cast<std::size_t>(e.v)].sentence];
  }
  std::vector<SentenceRef> out = refs;
  std::stable_sort(out.begin(), out.end(), [&](const SentenceRef& a, const SentenceRef& b) {
    auto da = degree.find(a);
    auto db = degree.find(b);
    return (da == degree.end() ? 0 : da->second) > (db == degree.end() ? 0 : db->second);
  });
  return out;
}

inline constexpr std::string_view kGraphSchema = "FACTGRAPH-SRL v1";

inline json sentence_ref_to_json(const SentenceRef& r) {
  return r.claim ? json::array({nullptr, 0}) : json::array({r.page, r.index});
}

inline json graph_to_json(const SrlGraph& g) {
  json nodes = json::array();
  for (const auto& n : g.nodes) {
    json spans = json::array();
    for (const auto& s : n.spans) spans.push_back(json::array({s.begin, s.end}));
    nodes.push_back({{"id", n.id},
                     {"category", category_name(n.category)},
                     {"text", n.text},
                     {"key", n.key},
                     {"sentence", sentence_ref_to_json(n.sentence)},
                     {"tuples", n.tuples},
                     {"spans", spans}});
  }
  json edges = json::array();
  for (const auto& e : g.edges) edges.push_back({{"u", e.u}, {"v", e.v}, {"kind", edge_kind_name(e.kind)}});
  return json{{"schema", kGraphSchema}, {"nodes", nodes}, {"edges", edges}};
}

}  // namespace factgraph
