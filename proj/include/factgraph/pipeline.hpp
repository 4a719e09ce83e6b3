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

// Three-stage pipeline wired from a Config: document retrieval, evidence
// selection, claim verification.

#pragma once

#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "factgraph/checkpoint.hpp"
#include "factgraph/config.hpp"
#include "factgraph/corpus.hpp"
#include "factgraph/encoder.hpp"
#include "factgraph/graph.hpp"
#include "factgraph/metrics.hpp"
#include "factgraph/online.hpp"
#include "factgraph/parallel.hpp"
#include "factgraph/retrieval.hpp"
#include "factgraph/selection.hpp"
#include "factgraph/srl.hpp"
#include "factgraph/train.hpp"
#include "factgraph/verifier.hpp"

namespace factgraph {

// An error tagged with the pipeline stage it came from.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what) : Error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

template <typename Fn>
auto in_stage(const std::string& stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(stage, e.what());
  }
}

inline GraphConfig graph_config_from(const Config& cfg) {
  GraphConfig g;
  g.common_info = cfg.get_choice("srl.common_info", {"token_overlap", "exact_match"}) == "exact_match"
                      ? GraphConfig::CommonInfo::kExactMatch
                      : GraphConfig::CommonInfo::kTokenOverlap;
  g.link_mode = cfg.get_choice("srl.link_mode", {"merge_shared_verb", "tuple_links"}) == "tuple_links"
                    ? GraphConfig::LinkMode::kTupleLinks
                    : GraphConfig::LinkMode::kMergeSharedVerb;
  return g;
}

inline SelectionConfig selection_config_from(const Config& cfg) {
  SelectionConfig s;
  s.threshold = cfg.get_double("selection.threshold");
  const auto top_docs = cfg.get_int("retrieval.top_docs");
  const auto top_sents = cfg.get_int("selection.top_sents");
  if (top_docs < 1 || top_sents < 1) throw ConfigError("top_docs and top_sents must be >= 1");
  s.top_docs = static_cast<std::size_t>(top_docs);
  s.top_sents = static_cast<std::size_t>(top_sents);
  s.scorer = cfg.get_choice("selection.scorer", {"overlap", "encoder"}) == "encoder" ? ScorerKind::kEncoder
                                                                                     : ScorerKind::kOverlap;
  s.validate();
  return s;
}

inline VerifierShape verifier_shape_from(const Config& cfg) {
  VerifierShape v;
  v.dim = static_cast<int>(cfg.get_int("encoder.dim"));
  v.hidden = static_cast<int>(cfg.get_int("verifier.hidden"));
  v.layers = static_cast<int>(cfg.get_int("verifier.layers"));
  v.shared_gcn = cfg.get_bool("verifier.shared_gcn");
  v.direction = cfg.get_choice("verifier.attention", {"claim_to_evidence", "evidence_to_claim"}) == "evidence_to_claim"
                    ? AttentionDirection::kEvidenceToClaim
                    : AttentionDirection::kClaimToEvidence;
  if (v.dim < 1 || v.hidden < 1 || v.layers < 1) throw ConfigError("verifier dims must be positive");
  return v;
}

inline TrainConfig train_config_from(const Config& cfg, std::size_t workers) {
  TrainConfig t;
  t.learning_rate = cfg.get_double("train.learning_rate");
  t.epochs = static_cast<int>(cfg.get_int("train.epochs"));
  const auto batch = cfg.get_int("train.batch_size");
  if (batch < 1) throw ConfigError("train.batch_size must be >= 1");
  t.batch_size = static_cast<std::size_t>(batch);
  t.seed = cfg.get_uint("train.seed");
  t.shape = verifier_shape_from(cfg);
  t.workers = workers;
  t.validate();
  return t;
}

struct ClaimOutcome {
  std::vector<ScoredSentence> evidence;
  Verdict verdict;
};

class Pipeline {
 public:
  explicit Pipeline(Config cfg) : cfg_(std::move(cfg)) {
    const auto w = cfg_.get_int("run.workers");
    if (w < 0) throw ConfigError("run.workers must be >= 0");
    workers_ = w == 0 ? default_workers() : static_cast<std::size_t>(w);
    selection_ = selection_config_from(cfg_);
    graph_ = graph_config_from(cfg_);
    shape_ = verifier_shape_from(cfg_);

    if (cfg_.get_choice("retrieval.extractor", {"rules", "external"}) == "external") {
      extractor_ = std::make_unique<ExternalEntityExtractor>(required("retrieval.extractor_url"));
    } else {
      extractor_ = std::make_unique<RuleEntityExtractor>();
    }
    if (cfg_.get_choice("srl.labeler", {"rules", "external"}) == "external") {
      labeler_ = std::make_unique<ExternalLabeler>(required("srl.labeler_url"));
    } else {
      labeler_ = std::make_unique<RuleLabeler>();
    }
    if (cfg_.get_choice("encoder.provider", {"deterministic", "external"}) == "external") {
      std::string url = cfg_.get("encoder.url");
      if (const char* env = std::getenv("FACTGRAPH_ENCODER_URL"); url.empty() && env != nullptr) url = env;
      if (url.empty()) throw ConfigError("encoder.url (or FACTGRAPH_ENCODER_URL) must be set");
      provider_ = std::make_unique<ExternalProvider>(url, shape_.dim,
                                                     static_cast<int>(cfg_.get_int("encoder.max_in_flight")));
    } else {
      provider_ = std::make_unique<DeterministicProvider>(shape_.dim, cfg_.get_uint("encoder.seed"));
    }
    if (selection_.scorer == ScorerKind::kEncoder) {
      const std::string head = required("selection.head");
      scorer_ = std::make_unique<EncoderScorer>(*provider_, relevance_head_from_string(read_config_file(head)));
    } else {
      scorer_ = std::make_unique<OverlapScorer>();
    }
    OnlineConfig online;
    online.enabled = cfg_.get_bool("retrieval.online");
    online.api_url = cfg_.get("retrieval.api_url");
    online.cache_dir = cfg_.get("retrieval.cache_dir");
    online_ = std::make_unique<MediaWikiClient>(online);
    online_enabled_ = online.enabled;
  }

  const Config& config() const { return cfg_; }
  std::size_t workers() const { return workers_; }
  const SelectionConfig& selection() const { return selection_; }
  const VerifierShape& shape() const { return shape_; }
  const Labeler& labeler() const { return *labeler_; }
  const EmbeddingProvider& provider() const { return *provider_; }
  VerifierComponents components() const { return {*labeler_, *provider_, graph_}; }

  // The inputs this run reads, for the manifest.
  std::vector<std::string> corpus_inputs() const {
    const std::string& store_dir = cfg_.get("corpus.store");
    if (!store_dir.empty()) {
      return {(fs::path(store_dir) / "documents.jsonl").string(), (fs::path(store_dir) / "index.jsonl").string()};
    }
    return {cfg_.get("corpus.wiki_pages")};
  }

  std::size_t load_corpus() {
    return in_stage("ingest", [&]() -> std::size_t {
      const std::string& store_dir = cfg_.get("corpus.store");
      if (!store_dir.empty()) {
        store_ = load_store(store_dir);
        return 0;
      }
      LoadResult r = load_wiki_pages(cfg_.get("corpus.wiki_pages"));
      store_ = std::move(r.store);
      return r.warnings;
    });
  }

  void set_store(DocumentStore store) { store_ = std::move(store); }
  const DocumentStore& store() const { return store_; }

  // With --online, pages named by mentions that the local store cannot
  // resolve are fetched (or read from the cache) and merged in.
  void prefetch_online(const std::vector<Claim>& claims) {
    if (!online_enabled_ || cfg_.get_bool("retrieval.skip_retrieval")) return;
    in_stage("retrieval", [&] {
      std::set<std::string> wanted;
      for (const auto& c : claims) {
        for (const auto& m : extractor_->extract(c.text)) {
          if (store_.lookup_exact(normalize(m.text)) == nullptr && store_.find(m.text) == nullptr) {
            wanted.insert(m.text);
          }
        }
      }
      std::vector<Document> docs;
      for (const auto& [title, doc] : store_.documents()) docs.push_back(doc);
      for (const auto& title : wanted) {
        try {
          docs.push_back(online_->fetch(title));
        } catch (const NotFoundError&) {
          // Not every mention names a page.
        }
      }
      store_ = DocumentStore(std::move(docs));
    });
  }

  std::vector<RankedDocument> retrieve(const Claim& claim) const {
    return in_stage("retrieval", [&] {
      if (cfg_.get_bool("retrieval.skip_retrieval")) return all_documents(store_);
      RankConfig rc;
      rc.k = selection_.top_docs;
      return rank_documents(extractor_->extract(claim.text), store_, rc);
    });
  }

  // Threshold-independent scored candidates for one claim.
  std::vector<ScoredSentence> candidates(const Claim& claim) const {
    const auto docs = retrieve(claim);
    return in_stage("selection", [&] { return score_candidates(claim, docs, store_, *scorer_); });
  }

  std::vector<ScoredSentence> select(const Claim& claim) const { return select_at(candidates(claim), selection_.threshold); }

  std::vector<ScoredSentence> select_at(const std::vector<ScoredSentence>& scored, double threshold) const {
    SelectionConfig s = selection_;
    s.threshold = threshold;
    return in_stage("selection", [&] {
      s.validate();
      return filter_top(scored, s);
    });
  }

  std::vector<std::vector<ScoredSentence>> select_all(const std::vector<Claim>& claims) const {
    return parallel_map(claims.size(), workers_, [&](std::size_t i) { return select(claims[i]); });
  }

  std::vector<std::vector<ScoredSentence>> candidates_all(const std::vector<Claim>& claims) const {
    return parallel_map(claims.size(), workers_, [&](std::size_t i) { return candidates(claims[i]); });
  }

  TrainResult train_verifier(const std::vector<Claim>& claims) const {
    std::vector<TrainingExample> data;
    const auto evidence = select_all(claims);
    for (std::size_t i = 0; i < claims.size(); ++i) {
      if (!claims[i].gold_label) {
        throw StageError("train", "claim " + std::to_string(claims[i].id) + " has no gold label");
      }
      data.push_back({claims[i], evidence[i], *claims[i].gold_label});
    }
    return in_stage("verification", [&] { return train(data, train_config_from(cfg_, workers_), components()); });
  }

  // Positive pairs are gold evidence sentences of the retrieved documents,
  // negatives every other candidate sentence.
  RelevanceHead fit_head(const std::vector<Claim>& claims) const {
    std::vector<RelevanceExample> data;
    const OverlapScorer overlap;
    for (const auto& c : claims) {
      const EvidenceGroup gold = c.gold_union();
      const auto docs = retrieve(c);
      for (const auto& s : in_stage("selection", [&] { return score_candidates(c, docs, store_, overlap); })) {
        data.push_back({c.text, s.text, gold.contains(s.ref())});
      }
    }
    return in_stage("selection", [&] { return fit_relevance_head(data, *provider_); });
  }

  Verdict verify(const Claim& claim, const std::vector<ScoredSentence>& evidence, const VerifierParams& params) const {
    return in_stage("verification", [&] { return predict(claim, evidence, params, components()); });
  }

  std::vector<ClaimOutcome> run(const std::vector<Claim>& claims, const VerifierParams& params) const {
    return parallel_map(claims.size(), workers_, [&](std::size_t i) {
      ClaimOutcome o;
      o.evidence = select(claims[i]);
      o.verdict = verify(claims[i], o.evidence, params);
      return o;
    });
  }

  SweepReport sweep(const std::vector<Claim>& claims, const VerifierParams& params,
                    const std::vector<double>& thresholds) const {
    const auto scored = candidates_all(claims);
    // Rows run one after another; claims fan out inside each row.
    return threshold_sweep(
        thresholds,
        [&](double tau) {
          const auto outcomes = parallel_map(claims.size(), workers_, [&](std::size_t i) {
            ClaimOutcome o;
            o.evidence = select_at(scored[i], tau);
            o.verdict = verify(claims[i], o.evidence, params);
            return o;
          });
          return to_sweep_run(claims, outcomes);
        },
        claims, 1);
  }

  static SweepRun to_sweep_run(const std::vector<Claim>& claims, const std::vector<ClaimOutcome>& outcomes) {
    SweepRun run;
    for (std::size_t i = 0; i < claims.size(); ++i) {
      run.preds.emplace_back(claims[i].id, outcomes[i].verdict.label);
      auto& refs = run.retrieved[claims[i].id];
      for (const auto& s : outcomes[i].evidence) refs.push_back(s.ref());
    }
    return run;
  }

 private:
  std::string required(const std::string& key) const {
    const std::string& v = cfg_.get(key);
    if (v.empty()) throw ConfigError(key + " must be set");
    return v;
  }

  static std::string read_config_file(const std::string& path) {
    try {
      return read_file(path);
    } catch (const IngestError& e) {
      throw ConfigError(e.what());
    }
  }

  Config cfg_;
  std::size_t workers_ = 1;
  SelectionConfig selection_;
  GraphConfig graph_;
  VerifierShape shape_;
  std::unique_ptr<EntityExtractor> extractor_;
  std::unique_ptr<Labeler> labeler_;
  std::unique_ptr<EmbeddingProvider> provider_;
  std::unique_ptr<PairScorer> scorer_;
  std::unique_ptr<MediaWikiClient> online_;
  bool online_enabled_ = false;
  DocumentStore store_;
};

}  // namespace factgraph
