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


#include <gtest/gtest.h>

#include <cstdlib>
#include <string>

#include "factgraph/config.hpp"
#include "factgraph/pipeline.hpp"

namespace fg = factgraph;

TEST(Config, DefaultsMatchTheDocumentedValues) {
  const fg::Config cfg;
  EXPECT_EQ(cfg.get_int("retrieval.top_docs"), 10);
  EXPECT_EQ(cfg.get_int("selection.top_sents"), 5);
  EXPECT_EQ(cfg.get_double("selection.threshold"), 0.01);
  EXPECT_EQ(cfg.get("selection.scorer"), "overlap");
  EXPECT_EQ(cfg.get("srl.labeler"), "rules");
  EXPECT_EQ(cfg.get("encoder.provider"), "deterministic");
  EXPECT_EQ(cfg.get_int("encoder.dim"), 64);
  EXPECT_EQ(cfg.get_int("verifier.layers"), 2);
  EXPECT_TRUE(cfg.get_bool("verifier.shared_gcn"));
  EXPECT_EQ(cfg.get("verifier.attention"), "claim_to_evidence");
  EXPECT_EQ(cfg.get_doubles("run.thresholds"), (std::vector<double>{0, 1e-4, 1e-3, 1e-2, 1e-1}));
}

TEST(Config, IniSectionsOverrideDefaults) {
  const auto cfg = fg::Config::from_ini("[selection]\nthreshold = 0.1\n\n[train]\nseed = 11\nepochs=3\n");
  EXPECT_EQ(cfg.get_double("selection.threshold"), 0.1);
  EXPECT_EQ(cfg.get_uint("train.seed"), 11u);
  EXPECT_EQ(cfg.get_int("train.epochs"), 3);
  EXPECT_EQ(cfg.get_int("train.batch_size"), 8);
}

TEST(Config, UnknownKeysAndBadSyntaxAreUsageErrors) {
  EXPECT_THROW(fg::Config::from_ini("[selection]\nthreshhold = 0.1\n"), fg::UsageError);
  EXPECT_THROW(fg::Config::from_ini("[nosuch]\nkey = 1\n"), fg::UsageError);
  EXPECT_THROW(fg::Config::from_ini("threshold = 0.1\n"), fg::UsageError);
  EXPECT_THROW(fg::Config::from_ini("[selection\nthreshold = 0.1\n"), fg::UsageError);
  fg::Config cfg;
  EXPECT_THROW(cfg.set("selection.nope", "1"), fg::UsageError);
  EXPECT_THROW(fg::Config::from_file("/nonexistent/factgraph.ini"), fg::ConfigError);
}

TEST(Config, TypedGettersRejectMalformedValues) {
  fg::Config cfg;
  cfg.set("selection.threshold", "0.1x");
  EXPECT_THROW(cfg.get_double("selection.threshold"), fg::ConfigError);
  cfg.set("train.epochs", "ten");
  EXPECT_THROW(cfg.get_int("train.epochs"), fg::ConfigError);
  cfg.set("train.seed", "-3");
  EXPECT_THROW(cfg.get_uint("train.seed"), fg::ConfigError);
  cfg.set("verifier.shared_gcn", "maybe");
  EXPECT_THROW(cfg.get_bool("verifier.shared_gcn"), fg::ConfigError);
  cfg.set("run.thresholds", "0,,1");
  EXPECT_THROW(cfg.get_doubles("run.thresholds"), fg::ConfigError);
  cfg.set("srl.link_mode", "tuple-links");
  EXPECT_THROW(fg::graph_config_from(cfg), fg::ConfigError);
}

TEST(Config, CanonicalIniRoundTrips) {
  fg::Config cfg;
  cfg.set("selection.threshold", "0.001");
  cfg.set("encoder.url", "http://localhost:9/enc");
  const std::string ini = cfg.to_ini();
  EXPECT_NE(ini.find("[selection]\n"), std::string::npos);
  EXPECT_NE(ini.find("threshold = 0.001\n"), std::string::npos);
  EXPECT_EQ(fg::Config::from_ini(ini), cfg);
  EXPECT_EQ(fg::Config::from_ini(ini).to_ini(), ini);
}

TEST(ConfigAdapters, BuildModuleConfigs) {
  fg::Config cfg;
  cfg.set("srl.common_info", "exact_match");
  cfg.set("srl.link_mode", "tuple_links");
  cfg.set("verifier.shared_gcn", "false");
  cfg.set("verifier.attention", "evidence_to_claim");
  cfg.set("encoder.dim", "16");
  const auto g = fg::graph_config_from(cfg);
  EXPECT_EQ(g.common_info, fg::GraphConfig::CommonInfo::kExactMatch);
  EXPECT_EQ(g.link_mode, fg::GraphConfig::LinkMode::kTupleLinks);
  const auto t = fg::train_config_from(cfg, 2);
  EXPECT_EQ(t.shape.dim, 16);
  EXPECT_FALSE(t.shape.shared_gcn);
  EXPECT_EQ(t.shape.direction, fg::AttentionDirection::kEvidenceToClaim);
  EXPECT_EQ(t.seed, 7u);
  EXPECT_EQ(t.workers, 2u);
  cfg.set("selection.threshold", "1.5");
  EXPECT_THROW(fg::selection_config_from(cfg), fg::ConfigError);
  cfg.set("selection.threshold", "0.1");
  cfg.set("selection.top_sents", "0");
  EXPECT_THROW(fg::selection_config_from(cfg), fg::ConfigError);
}

TEST(Pipeline, ExternalServicesNeedEndpoints) {
  fg::Config cfg;
  cfg.set("srl.labeler", "external");
  EXPECT_THROW(fg::Pipeline{cfg}, fg::ConfigError);
  cfg = fg::Config();
  cfg.set("selection.scorer", "encoder");
  EXPECT_THROW(fg::Pipeline{cfg}, fg::ConfigError);

  cfg = fg::Config();
  cfg.set("encoder.provider", "external");
  ::unsetenv("FACTGRAPH_ENCODER_URL");
  EXPECT_THROW(fg::Pipeline{cfg}, fg::ConfigError);
  ::setenv("FACTGRAPH_ENCODER_URL", "http://127.0.0.1:9/enc", 1);
  EXPECT_NO_THROW(fg::Pipeline{cfg});
  ::unsetenv("FACTGRAPH_ENCODER_URL");
}

TEST(Pipeline, StageErrorsNameTheStage) {
  fg::Config cfg;
  cfg.set("corpus.wiki_pages", "/nonexistent/wiki.jsonl");
  fg::Pipeline p(cfg);
  try {
    p.load_corpus();
    FAIL();
  } catch (const fg::StageError& e) {
    EXPECT_EQ(e.stage(), "ingest");
  }
}
