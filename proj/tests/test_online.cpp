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

#include <atomic>
#include <cstdlib>
#include <string>
#include <vector>

#include "factgraph/online.hpp"
#include "test_support.hpp"

namespace fg = factgraph;

namespace {

struct MockWiki {
  fg::testing::LocalServer srv;
  std::atomic<int> hits{0};

  MockWiki() {
    srv.server().Get("/w/api.php", [this](const httplib::Request& req, httplib::Response& res) {
      ++hits;
      EXPECT_EQ(req.get_param_value("action"), "query");
      EXPECT_EQ(req.get_param_value("prop"), "extracts");
      const std::string title = req.get_param_value("titles");
      if (title == "Hawaii") {
        res.set_content(R"({"query": {"pages": [{"title": "Hawaii", "extract":
          "Hawaii is a state. It joined the union in 1959.\n\n== History ==\nIt was settled early."}]}})",
                        "application/json");
      } else if (title == "Broken") {
        res.status = 500;
      } else {
        res.set_content(R"({"query": {"pages": [{"title": ")" + title + R"(", "missing": true}]}})",
                        "application/json");
      }
    });
    srv.start();
  }
};

fg::OnlineConfig online(const std::string& url, const fg::fs::path& cache) {
  fg::OnlineConfig c;
  c.enabled = true;
  c.api_url = url;
  c.cache_dir = cache;
  return c;
}

}  // namespace

TEST(SplitSentences, SplitsOnTerminalPunctuationAndDropsHeadings) {
  EXPECT_EQ(fg::split_sentences("Hawaii is a state. It joined in 1959.\n== History ==\nSettled 1778."),
            (std::vector<std::string>{"Hawaii is a state.", "It joined in 1959.", "Settled 1778."}));
  EXPECT_EQ(fg::split_sentences("Mr. smith left."), (std::vector<std::string>{"Mr. smith left."}));
  EXPECT_TRUE(fg::split_sentences("\n\n").empty());
}

TEST(MediaWikiClient, OfflineModeIsADisabledFeature) {
  const fg::MediaWikiClient client(fg::OnlineConfig{});
  EXPECT_THROW(fg::fetch_document_online(client, "Hawaii"), fg::DisabledFeatureError);
}

TEST(MediaWikiClient, FetchesSplitsAndCaches) {
  MockWiki wiki;
  const auto cache = fg::testing::temp_dir("wiki_cache");
  const fg::MediaWikiClient client(online(wiki.srv.url("/w/api.php"), cache));
  const fg::Document doc = fg::fetch_document_online(client, "Hawaii");
  EXPECT_EQ(doc.title, "Hawaii");
  ASSERT_EQ(doc.sentences.size(), 3u);
  EXPECT_EQ(doc.sentences[1].text, "It joined the union in 1959.");
  EXPECT_EQ(doc.sentences[2].index, 2);
  EXPECT_TRUE(fg::fs::exists(client.cache_path("Hawaii")));

  wiki.srv.stop();
  const fg::Document again = fg::fetch_document_online(client, "Hawaii");
  EXPECT_EQ(again, doc);
  EXPECT_EQ(wiki.hits.load(), 1);
  fg::fs::remove_all(cache);
}

TEST(MediaWikiClient, DistinguishesNotFoundFromTransportFailure) {
  MockWiki wiki;
  const auto cache = fg::testing::temp_dir("wiki_cache_err");
  const fg::MediaWikiClient client(online(wiki.srv.url("/w/api.php"), cache));
  EXPECT_THROW(client.fetch("Atlantis"), fg::NotFoundError);
  EXPECT_THROW(client.fetch("Broken"), fg::TransportError);
  wiki.srv.stop();
  EXPECT_THROW(client.fetch("Atlantis"), fg::TransportError);
  fg::fs::remove_all(cache);
}

TEST(MediaWikiClient, CachePathEscapesTitles) {
  const fg::MediaWikiClient client(fg::OnlineConfig{});
  EXPECT_EQ(client.cache_path("A/B (c)").filename().string(), "A%2FB%20%28c%29.jsonl");
}

TEST(OnlineConfig, UrlResolutionOrder) {
  fg::OnlineConfig c;
  ::unsetenv("FACTGRAPH_WIKI_URL");
  EXPECT_EQ(c.resolved_url(), fg::kDefaultWikiUrl);
  ::setenv("FACTGRAPH_WIKI_URL", "http://127.0.0.1:1/api.php", 1);
  EXPECT_EQ(c.resolved_url(), "http://127.0.0.1:1/api.php");
  c.api_url = "http://example.invalid/w/api.php";
  EXPECT_EQ(c.resolved_url(), "http://example.invalid/w/api.php");
  ::unsetenv("FACTGRAPH_WIKI_URL");
}
