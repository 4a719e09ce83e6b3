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

#include <random>
#include <string>
#include <vector>

#include "factgraph/corpus.hpp"
#include "factgraph/retrieval.hpp"
#include "test_support.hpp"

namespace fg = factgraph;

namespace {

std::vector<std::string> texts(const std::vector<fg::EntityMention>& ms) {
  std::vector<std::string> out;
  for (const auto& m : ms) out.push_back(m.text);
  return out;
}

fg::DocumentStore make_store(const std::vector<std::string>& titles) {
  std::vector<fg::Document> docs;
  for (const auto& t : titles) docs.push_back({t, {{0, t + " is a page."}}});
  return fg::DocumentStore(docs);
}

fg::EntityMention mention(const std::string& s) { return {s, 0, s.size()}; }

}  // namespace

TEST(ExtractEntities, CapitalizedRunsPlusFullClaim) {
  const std::string claim = "Barack Obama was born in Hawaii";
  const auto ms = fg::extract_entities(claim);
  EXPECT_EQ(texts(ms), (std::vector<std::string>{"Barack Obama", "Hawaii", claim}));
  for (const auto& m : ms) {
    EXPECT_LT(m.begin, m.end);
    EXPECT_LE(m.end, claim.size());
    EXPECT_EQ(claim.substr(m.begin, m.end - m.begin), m.text);
  }
}

TEST(ExtractEntities, NoCapitalizedRunsGivesOnlyFallback) {
  EXPECT_EQ(texts(fg::extract_entities("the sky is blue")), (std::vector<std::string>{"the sky is blue"}));
  EXPECT_EQ(texts(fg::extract_entities("The sky is blue")), (std::vector<std::string>{"The sky is blue"}));
}

TEST(ExtractEntities, PunctuationEndsARun) {
  EXPECT_EQ(texts(fg::extract_entities("Paris, France is big.")),
            (std::vector<std::string>{"Paris", "France", "Paris, France is big."}));
}

TEST(ExtractEntities, EmptyClaimIsAPreconditionViolation) {
  EXPECT_THROW(fg::extract_entities(""), fg::PreconditionError);
}

TEST(AmbiguousTitle, DetectsParentheticalSuffix) {
  EXPECT_TRUE(fg::is_ambiguous_title("Hawaii (film)"));
  EXPECT_TRUE(fg::is_ambiguous_title("Hawaii_-LRB-film-RRB-"));
  EXPECT_FALSE(fg::is_ambiguous_title("Hawaii"));
  EXPECT_FALSE(fg::is_ambiguous_title("()"));
  EXPECT_EQ(fg::title_main_part("Hawaii (film)"), "Hawaii");
}

TEST(RankDocuments, UnambiguousTitleRanksAboveFilm) {
  const auto store = make_store({"Hawaii", "Hawaii (film)"});
  const auto ranked = fg::rank_documents({mention("Hawaii")}, store);
  ASSERT_EQ(ranked.size(), 2u);
  EXPECT_EQ(ranked[0].title, "Hawaii");
  EXPECT_DOUBLE_EQ(ranked[0].score, 1.0);
  EXPECT_FALSE(ranked[0].ambiguous);
  EXPECT_EQ(ranked[1].title, "Hawaii (film)");
  EXPECT_DOUBLE_EQ(ranked[1].score, 0.5);
  EXPECT_TRUE(ranked[1].ambiguous);
}

TEST(RankDocuments, ExactUniqueTitleFirstWithScoreOne) {
  const auto store = make_store({"Barack Obama", "Michelle Obama", "Hawaii"});
  const auto ranked = fg::rank_documents(fg::extract_entities("Barack Obama was born in Hawaii"), store);
  ASSERT_GE(ranked.size(), 2u);
  EXPECT_DOUBLE_EQ(ranked[0].score, 1.0);
  EXPECT_DOUBLE_EQ(ranked[1].score, 1.0);
  EXPECT_EQ(ranked[0].title, "Barack Obama");
  EXPECT_EQ(ranked[1].title, "Hawaii");
  // Jaccard of {barack, obama} and {michelle, obama}.
  EXPECT_DOUBLE_EQ(ranked[2].score, 1.0 / 3.0);
}

TEST(RankDocuments, NoOverlapOrEmptyStoreGivesNothing) {
  EXPECT_TRUE(fg::rank_documents({mention("Atlantis")}, make_store({"Hawaii"})).empty());
  EXPECT_TRUE(fg::rank_documents({mention("Hawaii")}, fg::DocumentStore{}).empty());
  EXPECT_THROW(fg::rank_documents({mention("Hawaii")}, make_store({"Hawaii"}), {0, {}}), fg::PreconditionError);
}

TEST(RankDocuments, TruncatesSortsAndIsDeterministic) {
  std::vector<std::string> titles;
  for (int i = 0; i < 30; ++i) titles.push_back("Alpha " + std::to_string(i) + (i % 4 == 0 ? " (film)" : ""));
  const auto store = make_store(titles);
  for (std::size_t k : {1u, 5u, 10u, 50u}) {
    fg::RankConfig rc;
    rc.k = k;
    const auto a = fg::rank_documents({mention("Alpha 3"), mention("Alpha")}, store, rc);
    const auto b = fg::rank_documents({mention("Alpha 3"), mention("Alpha")}, store, rc);
    ASSERT_EQ(a.size(), std::min<std::size_t>(k, 30));
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].title, b[i].title);
      EXPECT_EQ(a[i].score, b[i].score);
      EXPECT_TRUE(std::isfinite(a[i].score));
      EXPECT_GE(a[i].score, 0.0);
      if (i > 0) {
        EXPECT_GE(a[i - 1].score, a[i].score);
        if (a[i - 1].score == a[i].score) EXPECT_LT(a[i - 1].title, a[i].title);
      }
    }
  }
}

TEST(RankDocuments, AmbiguousVariantNeverOutranksBaseTitle) {
  std::mt19937 gen(11);
  const std::vector<std::string> words = {"Red", "River", "Stone", "Hill", "North"};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::string> titles;
    for (int t = 0; t < 6; ++t) {
      std::string title = words[gen() % words.size()] + " " + words[gen() % words.size()] + std::to_string(t);
      titles.push_back(title);
      titles.push_back(title + " (film)");
    }
    const auto store = make_store(titles);
    const std::string q = words[gen() % words.size()] + " " + words[gen() % words.size()];
    fg::RankConfig rc;
    rc.k = 100;
    const auto ranked = fg::rank_documents({mention(q)}, store, rc);
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < ranked.size(); ++i) pos[ranked[i].title] = i;
    for (const auto& t : titles) {
      if (fg::is_ambiguous_title(t) || !pos.contains(t + " (film)")) continue;
      ASSERT_TRUE(pos.contains(t));
      EXPECT_LT(pos[t], pos[t + " (film)"]);
    }
  }
}

TEST(RankDocuments, RescoreHookIsApplied) {
  const auto store = make_store({"Hawaii", "Ohio"});
  fg::RankConfig rc;
  rc.rescore = [](const auto&, const std::string& title, double s) { return title == "Ohio" ? 2.0 : s; };
  const auto ranked = fg::rank_documents({mention("Hawaii"), mention("Ohio")}, store, rc);
  ASSERT_EQ(ranked.size(), 2u);
  EXPECT_EQ(ranked[0].title, "Ohio");
}

TEST(RankDocuments, SyntheticGoldPagesRetrieved) {
  const auto store = fg::load_wiki_pages(FACTGRAPH_SOURCE_DIR "/data/synthetic/wiki-pages.jsonl").store;
  const auto ranked = fg::rank_documents(fg::extract_entities("Dimstae was born in Siolsil."), store);
  ASSERT_FALSE(ranked.empty());
  EXPECT_EQ(ranked[0].title, "Dimstae");
  EXPECT_EQ(fg::all_documents(store).size(), store.size());
}

TEST(ExternalEntityExtractor, UsesServiceSpansAndAppendsFallback) {
  fg::testing::LocalServer srv;
  srv.server().Post("/mentions", [](const httplib::Request& req, httplib::Response& res) {
    const auto body = fg::json::parse(req.body);
    EXPECT_EQ(body.at("text"), "Barack Obama was born in Hawaii");
    res.set_content(R"({"mentions": [{"begin": 0, "end": 12}, {"begin": 25, "end": 31}]})", "application/json");
  });
  srv.start();
  const fg::ExternalEntityExtractor ex(srv.url("/mentions"));
  EXPECT_EQ(texts(ex.extract("Barack Obama was born in Hawaii")),
            (std::vector<std::string>{"Barack Obama", "Hawaii", "Barack Obama was born in Hawaii"}));
}

TEST(ExternalEntityExtractor, TransportFailureIsRetryable) {
  fg::testing::LocalServer srv;
  srv.server().Post("/mentions", [](const httplib::Request&, httplib::Response& res) { res.status = 503; });
  srv.start();
  const fg::ExternalEntityExtractor ex(srv.url("/mentions"));
  EXPECT_THROW(ex.extract("Hawaii"), fg::TransportError);
  srv.stop();
  EXPECT_THROW(ex.extract("Hawaii"), fg::RetryableError);
}
