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

#include <string>
#include <vector>

#include "factgraph/text.hpp"

namespace fg = factgraph;

TEST(Normalize, LowercasesStripsPunctuationAndCollapsesSpace) {
  EXPECT_EQ(fg::normalize("  Hawaii,   USA!  "), "hawaii usa");
  EXPECT_EQ(fg::normalize("It joined in 1959."), "it joined in 1959");
  EXPECT_EQ(fg::normalize(""), "");
  EXPECT_EQ(fg::normalize("...!?"), "");
}

TEST(Normalize, ComposesToNfc) {
  // "e" + combining acute accent and the precomposed form normalize alike.
  EXPECT_EQ(fg::normalize("Caf\x65\xCC\x81"), fg::normalize("Caf\xC3\xA9"));
  EXPECT_EQ(fg::normalize("CAF\xC3\x89"), "caf\xC3\xA9");
}

TEST(Normalize, IsIdempotent) {
  for (const char* s : {"Barack Obama was born in Hawaii.", "  A  b\tC\n", "Ünïcödé (film)"}) {
    const std::string once = fg::normalize(s);
    EXPECT_EQ(fg::normalize(once), once);
  }
}

TEST(Tokenize, SplitsNormalizedText) {
  EXPECT_EQ(fg::tokenize("Obama was born in Hawaii."),
            (std::vector<std::string>{"obama", "was", "born", "in", "hawaii"}));
  EXPECT_TRUE(fg::tokenize("  ").empty());
}

TEST(ContentTokens, DropsStopwords) {
  EXPECT_EQ(fg::content_tokens("Obama was born in Kenya"), (fg::TokenSet{"born", "kenya", "obama"}));
  EXPECT_TRUE(fg::content_tokens("the of and").empty());
  EXPECT_TRUE(fg::is_stopword("not"));
  EXPECT_FALSE(fg::is_stopword("hawaii"));
}

TEST(ContentTokens, StopwordListIsAboutOneHundredFifty) {
  const auto n = std::size(fg::detail::kStopwords);
  EXPECT_GE(n, 120u);
  EXPECT_LE(n, 180u);
  for (auto w : fg::detail::kStopwords) EXPECT_EQ(fg::normalize(w), w) << w;
}

TEST(TokenSets, IntersectionHelpersAgree) {
  const fg::TokenSet a{"a", "b", "c"};
  const fg::TokenSet b{"c", "d"};
  const fg::TokenSet c{"x"};
  EXPECT_TRUE(fg::intersects(a, b));
  EXPECT_FALSE(fg::intersects(a, c));
  EXPECT_EQ(fg::intersection_size(a, b), 1u);
  EXPECT_EQ(fg::intersection_size(a, a), 3u);
}

TEST(SplitWords, KeepsByteSpans) {
  const std::string s = " Obama  was\tborn";
  const auto words = fg::split_words(s);
  ASSERT_EQ(words.size(), 3u);
  for (const auto& w : words) EXPECT_EQ(s.substr(w.begin, w.end - w.begin), w.text);
  EXPECT_EQ(words[0].begin, 1u);
  EXPECT_EQ(words[2].text, "born");
}

TEST(DisplayTitle, DecodesFeverIds) {
  EXPECT_EQ(fg::display_title("Hawaii_-LRB-film-RRB-"), "Hawaii (film)");
  EXPECT_EQ(fg::display_title("Star_Wars-COLON-_Episode_IV"), "Star Wars: Episode IV");
  EXPECT_EQ(fg::display_title("Hawaii"), "Hawaii");
}
