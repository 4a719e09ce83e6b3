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

// factgraph: command line driver for the verification pipeline.
//
// Every subcommand writes its artifacts and a <command>.manifest.json under
// --out. Exit status: 0 success, 1 pipeline failure, 2 usage error.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "factgraph/factgraph.hpp"

namespace fg = factgraph;

namespace {

constexpr int kExitPipeline = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string config_file;
  std::string out = "out";
  std::map<std::string, std::string> overrides;
  std::string claims;
  std::string checkpoint;
  std::string predictions;
};

class Manifest {
 public:
  Manifest(std::string command, const fg::Config& cfg) : command_(std::move(command)), config_(cfg.to_ini()) {
    seeds_ = {{"train", cfg.get("train.seed")}, {"encoder", cfg.get("encoder.seed")}};
  }

  void input(const std::string& path) {
    std::string sum = "missing";
    if (fg::fs::exists(path)) sum = fg::hex32(fg::crc32_of(fg::read_file(path)));
    inputs_.push_back({{"path", path}, {"crc32", sum}});
  }

  void output(const fg::fs::path& dir, const std::string& name, const std::string& contents) {
    fg::write_file_atomic(dir / name, contents);
    outputs_.push_back({{"path", name}, {"crc32", fg::hex32(fg::crc32_of(contents))}});
  }

  void write(const fg::fs::path& dir) const {
    const fg::json m{{"command", command_}, {"config", config_}, {"seeds", seeds_}, {"inputs", inputs_},
                     {"outputs", outputs_}};
    fg::write_file_atomic(dir / (command_ + ".manifest.json"), m.dump(2) + "\n");
  }

 private:
  std::string command_;
  std::string config_;
  fg::json seeds_;
  fg::json inputs_ = fg::json::array();
  fg::json outputs_ = fg::json::array();
};

std::string jsonl(const std::vector<fg::json>& records) {
  std::string out;
  for (const auto& r : records) out += r.dump() + "\n";
  return out;
}

std::vector<fg::Claim> load_claims_for(const std::string& command, const Options& opt, const fg::Config& cfg,
                                       Manifest& manifest) {
  std::string path = opt.claims;
  if (path.empty()) path = cfg.get(command == "train" ? "corpus.train_claims" : "corpus.test_claims");
  manifest.input(path);
  return fg::in_stage("ingest", [&] { return fg::load_claims(path); });
}

std::string checkpoint_path(const Options& opt) {
  return opt.checkpoint.empty() ? (fg::fs::path(opt.out) / "checkpoint.ckpt").string() : opt.checkpoint;
}

fg::json evidence_json(const std::vector<fg::ScoredSentence>& ev) {
  fg::json items = fg::json::array();
  for (const auto& s : ev) items.push_back(fg::json::array({s.page_title, s.sentence_index, s.score}));
  return items;
}

fg::json metrics_json(const fg::SweepRun& run, const std::vector<fg::Claim>& claims) {
  const fg::EvidencePrf prf = fg::evidence_prf(run.retrieved, claims);
  fg::json j{{"precision", prf.precision}, {"recall", prf.recall}, {"f1", prf.f1}, {"averaging", "micro"}};
  if (!run.preds.empty()) {
    j["label_accuracy"] = fg::label_accuracy(run.preds, fg::gold_labels(claims));
    j["fever_score"] = fg::fever_score(run.preds, run.retrieved, claims);
  }
  j["claims"] = claims.size();
  return j;
}

int run_command(const std::string& command, const Options& opt, fg::Pipeline& pipeline) {
  const fg::Config& cfg = pipeline.config();
  const fg::fs::path out(opt.out);
  Manifest manifest(command, cfg);
  for (const auto& in : pipeline.corpus_inputs()) manifest.input(in);
  if (!opt.config_file.empty()) manifest.input(opt.config_file);
  const std::size_t warnings = pipeline.load_corpus();
  if (warnings > 0) std::cerr << "ingest: " << warnings << " malformed sentence line(s) skipped\n";

  int status = 0;
  if (command == "ingest") {
    fg::save_store(pipeline.store(), out / "store");
    manifest.output(out, "ingest.json",
                    fg::json{{"documents", pipeline.store().size()}, {"warnings", warnings}}.dump(2) + "\n");
  } else if (command == "retrieve") {
    const auto claims = load_claims_for(command, opt, cfg, manifest);
    pipeline.prefetch_online(claims);
    const auto ranked = fg::parallel_map(claims.size(), pipeline.workers(),
                                         [&](std::size_t i) { return pipeline.retrieve(claims[i]); });
    std::vector<fg::json> recs;
    for (std::size_t i = 0; i < claims.size(); ++i) {
      fg::json docs = fg::json::array();
      for (const auto& d : ranked[i]) docs.push_back(fg::json::array({d.title, d.score, d.ambiguous}));
      recs.push_back({{"claim_id", claims[i].id}, {"documents", docs}});
    }
    manifest.output(out, "retrieved.jsonl", jsonl(recs));
  } else if (command == "select") {
    const auto claims = load_claims_for(command, opt, cfg, manifest);
    pipeline.prefetch_online(claims);
    const auto evidence = pipeline.select_all(claims);
    std::vector<fg::json> recs;
    fg::SweepRun run;
    for (std::size_t i = 0; i < claims.size(); ++i) {
      recs.push_back(fg::evidence_to_json(claims[i].id, evidence[i]));
      auto& refs = run.retrieved[claims[i].id];
      for (const auto& s : evidence[i]) refs.push_back(s.ref());
    }
    manifest.output(out, "evidence.jsonl", jsonl(recs));
    manifest.output(out, "selection.json", metrics_json(run, claims).dump(2) + "\n");
  } else if (command == "graph") {
    const auto claims = load_claims_for(command, opt, cfg, manifest);
    pipeline.prefetch_online(claims);
    const auto evidence = pipeline.select_all(claims);
    const auto prepared = fg::parallel_map(claims.size(), pipeline.workers(), [&](std::size_t i) {
      return fg::in_stage("graph", [&] { return fg::prepare_claim(claims[i], evidence[i], pipeline.components()); });
    });
    std::vector<fg::json> recs;
    for (std::size_t i = 0; i < claims.size(); ++i) {
      fg::json order = fg::json::array();
      for (const auto& r : prepared[i].evidence_order) order.push_back(fg::sentence_ref_to_json(r));
      recs.push_back({{"claim_id", claims[i].id},
                      {"claim_graph", fg::graph_to_json(prepared[i].claim_graph)},
                      {"evidence_graph", fg::graph_to_json(prepared[i].evidence_graph)},
                      {"sentence_order", order},
                      {"fallback_nodes",
                       {{"claim", prepared[i].example.claim_fallback_nodes},
                        {"evidence", prepared[i].example.evidence_fallback_nodes}}}});
    }
    manifest.output(out, "graphs.jsonl", jsonl(recs));
  } else if (command == "train") {
    const auto claims = load_claims_for(command, opt, cfg, manifest);
    pipeline.prefetch_online(claims);
    const fg::TrainResult result = pipeline.train_verifier(claims);
    std::string trace = "epoch\tloss\n";
    for (std::size_t e = 0; e < result.loss_trace.size(); ++e) {
      trace += std::to_string(e) + "\t" + fg::format_fixed(result.loss_trace[e], 10) + "\n";
    }
    const fg::RelevanceHead head = pipeline.fit_head(claims);
    manifest.output(out, "checkpoint.ckpt", fg::checkpoint_to_string(result.params));
    manifest.output(out, "loss_trace.tsv", trace);
    manifest.output(out, "relevance_head.json", fg::relevance_head_to_string(head));
  } else if (command == "predict" || command == "evaluate") {
    const auto claims = load_claims_for(command, opt, cfg, manifest);
    pipeline.prefetch_online(claims);
    std::vector<fg::ClaimOutcome> outcomes;
    if (command == "evaluate" && !opt.predictions.empty()) {
      manifest.input(opt.predictions);
      std::map<std::int64_t, fg::ClaimOutcome> by_id;
      fg::in_stage("evaluate", [&] {
        fg::detail::for_each_jsonl(fg::read_file(opt.predictions), opt.predictions, [&](const fg::json& rec,
                                                                                       std::size_t) {
          fg::ClaimOutcome o;
          auto [id, ev] = fg::evidence_from_json(rec, pipeline.store());
          const auto label = fg::parse_label(rec.at("label").get<std::string>());
          if (!label) throw fg::IngestError("predictions: bad label for claim " + std::to_string(id));
          o.evidence = std::move(ev);
          o.verdict.label = *label;
          by_id[id] = std::move(o);
        });
      });
      for (const auto& c : claims) {
        auto it = by_id.find(c.id);
        if (it == by_id.end()) throw fg::StageError("evaluate", "no prediction for claim " + std::to_string(c.id));
        outcomes.push_back(it->second);
      }
    } else {
      const std::string ckpt = checkpoint_path(opt);
      manifest.input(ckpt);
      const fg::VerifierParams params = fg::in_stage("verification", [&] { return fg::load_checkpoint(ckpt); });
      outcomes = pipeline.run(claims, params);
    }
    if (command == "predict") {
      std::vector<fg::json> recs;
      for (std::size_t i = 0; i < claims.size(); ++i) {
        const auto& v = outcomes[i].verdict;
        recs.push_back({{"claim_id", claims[i].id},
                        {"label", fg::label_name(v.label)},
                        {"probs", v.probs},
                        {"evidence", evidence_json(outcomes[i].evidence)}});
      }
      manifest.output(out, "predictions.jsonl", jsonl(recs));
    } else {
      const fg::SweepRun run = fg::Pipeline::to_sweep_run(claims, outcomes);
      manifest.output(out, "metrics.json", fg::in_stage("evaluate", [&] { return metrics_json(run, claims); }).dump(2) + "\n");
    }
  } else if (command == "sweep") {
    const auto claims = load_claims_for(command, opt, cfg, manifest);
    pipeline.prefetch_online(claims);
    const std::string ckpt = checkpoint_path(opt);
    manifest.input(ckpt);
    const fg::VerifierParams params = fg::in_stage("verification", [&] { return fg::load_checkpoint(ckpt); });
    fg::SweepReport report =
        fg::in_stage("sweep", [&] { return pipeline.sweep(claims, params, cfg.get_doubles("run.thresholds")); });
    const std::string& ref = cfg.get("run.reference_table");
    if (!ref.empty()) {
      manifest.input(ref);
      report.notes = fg::in_stage("sweep", [&] { return fg::reference_notes(fg::report_from_tsv(fg::read_file(ref))); });
    }
    manifest.output(out, "sweep.tsv", fg::report_to_tsv(report.rows));
    manifest.output(out, "sweep.json", fg::report_to_json(report).dump(2) + "\n");
    for (const auto& v : report.violations) std::cerr << "sweep: violation: " << v << "\n";
    if (!report.ok()) status = kExitPipeline;
  }
  manifest.write(out);
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"factgraph: SRL-graph claim verification pipeline"};
  app.require_subcommand(1, 1);
  Options opt;

  auto add_override = [&](CLI::App* sub, const std::string& flag, const std::string& key, const std::string& help) {
    return sub->add_option_function<std::string>(
        flag, [&opt, key](const std::string& v) { opt.overrides[key] = v; }, help);
  };
  auto add_switch = [&](CLI::App* sub, const std::string& flag, const std::string& key, const std::string& help) {
    return sub->add_flag_function(
        flag, [&opt, key](std::int64_t) { opt.overrides[key] = "true"; }, help);
  };

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"ingest", "Parse a wiki-pages dump into a document store"},
      {"retrieve", "Rank candidate documents for each claim"},
      {"select", "Select evidence sentences for each claim"},
      {"graph", "Build claim and evidence SRL graphs"},
      {"train", "Train the verifier and write a checkpoint"},
      {"predict", "Predict a label for each claim"},
      {"evaluate", "Compute label accuracy, evidence P/R/F1 and FEVER score"},
      {"sweep", "Evaluate over a list of selection thresholds"},
  };
  std::string chosen;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->callback([&chosen, n = name] { chosen = n; });
    sub->add_option("--config", opt.config_file, "INI config file")->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "Output directory");
    sub->add_option("--claims", opt.claims, "Claims JSONL (default from config)");
    sub->add_option("--checkpoint", opt.checkpoint, "Verifier checkpoint (default <out>/checkpoint.ckpt)");
    sub->add_option("--predictions", opt.predictions, "Predictions JSONL to evaluate instead of predicting");
    add_override(sub, "--wiki-pages", "corpus.wiki_pages", "Wiki pages JSONL");
    add_override(sub, "--store", "corpus.store", "Document store directory written by ingest");
    add_override(sub, "--threshold", "selection.threshold", "Selection threshold in [0, 1]");
    add_override(sub, "--top-docs", "retrieval.top_docs", "Documents kept by retrieval (default 10)");
    add_override(sub, "--top-sents", "selection.top_sents", "Sentences kept by selection (default 5)");
    add_override(sub, "--scorer", "selection.scorer", "overlap|encoder")->check(CLI::IsMember({"overlap", "encoder"}));
    add_override(sub, "--head", "selection.head", "Relevance head for the encoder scorer");
    add_override(sub, "--labeler", "srl.labeler", "rules|external")->check(CLI::IsMember({"rules", "external"}));
    add_override(sub, "--provider", "encoder.provider", "deterministic|external")
        ->check(CLI::IsMember({"deterministic", "external"}));
    add_override(sub, "--seed", "train.seed", "Training seed");
    add_override(sub, "--epochs", "train.epochs", "Training epochs");
    add_override(sub, "--workers", "run.workers", "Worker threads (0 = logical cores)");
    add_override(sub, "--thresholds", "run.thresholds", "Comma-separated sweep thresholds");
    add_override(sub, "--reference", "run.reference_table", "Reference report TSV to annotate the sweep with");
    add_switch(sub, "--skip-retrieval", "retrieval.skip_retrieval", "Pass every document to selection");
    add_switch(sub, "--online", "retrieval.online", "Enable the MediaWiki client");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  fg::Config cfg;
  std::optional<fg::Pipeline> pipeline;
  try {
    if (!opt.config_file.empty()) cfg = fg::Config::from_file(opt.config_file);
    for (const auto& [key, value] : opt.overrides) cfg.set(key, value);
    pipeline.emplace(cfg);
  } catch (const fg::Error& e) {
    std::cerr << "factgraph: config: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    return run_command(chosen, opt, *pipeline);
  } catch (const fg::StageError& e) {
    std::cerr << "factgraph: " << chosen << ": stage " << e.what() << "\n";
  } catch (const fg::Error& e) {
    std::cerr << "factgraph: " << chosen << ": " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "factgraph: " << chosen << ": unexpected error: " << e.what() << "\n";
  }
  return kExitPipeline;
}
