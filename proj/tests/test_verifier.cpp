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

#include <Eigen/Eigenvalues>

#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "factgraph/verifier.hpp"
#include "oracles.hpp"

namespace fg = factgraph;
namespace oracle = factgraph::oracle;
using fg::Matrix;
using fg::Vector;

namespace {

const fg::RuleLabeler kRules;
const fg::DeterministicProvider kProvider(16, 13);

fg::VerifierShape shape16() {
  fg::VerifierShape s;
  s.dim = 16;
  s.hidden = 8;
  return s;
}

fg::ScoredSentence sentence(std::string page, int index, std::string text) {
  return {std::move(page), index, std::move(text), 1.0};
}

}  // namespace

TEST(NodeFeatures, MeanOfAlignedRows) {
  const auto seq = fg::build_marked_sequence("a b c d", {});
  const auto emb = fg::encode(seq, kProvider);
  fg::SrlGraph g;
  fg::GraphNode two;
  two.id = 0;
  two.text = "b d";
  two.sentence = fg::SentenceRef::for_claim();
  two.spans = {{2, 3}, {6, 7}};
  fg::GraphNode one = two;
  one.id = 1;
  one.text = "c";
  one.spans = {{4, 5}};
  g.nodes = {two, one};
  const auto f = fg::node_features(g, emb, seq, {{fg::SentenceRef::for_claim(), 0}}, kProvider);
  EXPECT_TRUE(f.features.row(0).isApprox((emb.rows.row(2) + emb.rows.row(4)) / 2.0, 1e-15));
  EXPECT_EQ(f.features.row(1), emb.rows.row(3));
  EXPECT_TRUE(f.fallback_nodes.empty());
}

TEST(NodeFeatures, UnalignedNodeFallsBackToStandaloneEncoding) {
  const auto seq = fg::build_marked_sequence("a b", {});
  const auto emb = fg::encode(seq, kProvider);
  fg::SrlGraph g;
  fg::GraphNode n;
  n.text = "Hawaii state";
  n.sentence = fg::SentenceRef::for_page("Elsewhere", 2);
  n.spans = {{0, 6}};
  g.nodes = {n};
  const auto f = fg::node_features(g, emb, seq, {{fg::SentenceRef::for_claim(), 0}}, kProvider);
  EXPECT_EQ(f.fallback_nodes, std::vector<int>{0});
  const Vector expect = (kProvider.token_vector("hawaii") + kProvider.token_vector("state")) / 2.0;
  EXPECT_TRUE(f.features.row(0).transpose().isApprox(expect, 1e-12));
}

TEST(Adjacency, HandComputedExamples) {
  fg::SrlGraph g;
  g.nodes.resize(2);
  EXPECT_EQ(fg::normalize_adjacency(g), Matrix::Identity(2, 2));
  g.edges = {{0, 1, fg::EdgeKind::kCrossInfo}};
  EXPECT_TRUE(fg::normalize_adjacency(g).isApprox(Matrix::Constant(2, 2, 0.5), 1e-15));
  // A second relation between the same pair does not double the weight.
  g.edges.insert({0, 1, fg::EdgeKind::kIntraTuple});
  EXPECT_TRUE(fg::normalize_adjacency(g).isApprox(Matrix::Constant(2, 2, 0.5), 1e-15));
}

TEST(Adjacency, SymmetricWithSpectrumInUnitIntervalOnRandomGraphs) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = static_cast<Eigen::Index>(1 + gen() % 12);
    const Matrix a = oracle::random_adjacency(n, gen);
    const Matrix a_hat = fg::normalize_adjacency_matrix(a);
    EXPECT_TRUE(a_hat == a_hat.transpose());
    EXPECT_TRUE(a_hat.isApprox(oracle::dense_normalized(a), 1e-12));
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(a_hat);
    EXPECT_GE(eig.eigenvalues().minCoeff(), -1.0 - 1e-8);
    EXPECT_LE(eig.eigenvalues().maxCoeff(), 1.0 + 1e-8);
  }
}

TEST(Gcn, IdentityWeightsWithoutEdgesKeepNonNegativeInput) {
  std::mt19937_64 gen(3);
  const Matrix h0 = oracle::random_matrix(5, 4, gen).cwiseAbs();
  const Matrix out = fg::gcn_forward(h0, Matrix::Identity(5, 5), {Matrix::Identity(4, 4), Matrix::Identity(4, 4)});
  EXPECT_TRUE(out.isApprox(h0, 1e-15));
}

TEST(Gcn, SingleEdgeFixture) {
  Matrix h0(2, 2);
  h0 << 2, 0, 0, 2;
  const Matrix a_hat = fg::normalize_adjacency_matrix((Matrix(2, 2) << 0, 1, 1, 0).finished());
  const Matrix out = fg::gcn_forward(h0, a_hat, {Matrix::Identity(2, 2)});
  EXPECT_TRUE(out.isApprox(Matrix::Ones(2, 2), 1e-15));
}

TEST(Gcn, DimensionMismatchIsAConfigError) {
  EXPECT_THROW(fg::gcn_forward(Matrix::Ones(3, 4), Matrix::Identity(3, 3), {Matrix::Identity(5, 5)}),
               fg::ConfigError);
  EXPECT_THROW(fg::gcn_forward(Matrix::Ones(3, 4), Matrix::Identity(2, 2), {Matrix::Identity(4, 4)}),
               fg::ConfigError);
}

TEST(Gcn, PermutationEquivariance) {
  std::mt19937_64 gen(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = static_cast<Eigen::Index>(1 + gen() % 12);
    const int d = 6;
    const Matrix h = oracle::random_matrix(n, d, gen);
    const Matrix a_hat = fg::normalize_adjacency_matrix(oracle::random_adjacency(n, gen));
    const std::vector<Matrix> w = {oracle::random_matrix(d, d, gen), oracle::random_matrix(d, d, gen)};
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    const Matrix p = oracle::permutation_matrix(perm);
    const Matrix lhs = fg::gcn_forward(p * h, p * a_hat * p.transpose(), w);
    const Matrix rhs = p * fg::gcn_forward(h, a_hat, w);
    EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-6) << "trial " << trial;
  }
}

TEST(Attention, SingleKeyGetsAllWeight) {
  std::mt19937_64 gen(5);
  const auto p = oracle::small_params(1, true, fg::AttentionDirection::kClaimToEvidence, 4);
  const auto r = fg::cross_graph_attention(oracle::random_matrix(3, 4, gen), oracle::random_matrix(1, 4, gen), p);
  EXPECT_TRUE(r.alpha.isApprox(Matrix::Ones(3, 1), 1e-15));
}

TEST(Attention, IdenticalKeysSplitEvenly) {
  std::mt19937_64 gen(6);
  const auto p = oracle::small_params(2, true, fg::AttentionDirection::kClaimToEvidence, 4);
  const Matrix row = oracle::random_matrix(1, 4, gen);
  const auto r = fg::cross_graph_attention(oracle::random_matrix(2, 4, gen), row.replicate(2, 1), p);
  EXPECT_TRUE(r.alpha.isApprox(Matrix::Constant(2, 2, 0.5), 1e-15));
}

TEST(Attention, MatchesNaiveOracleOnThreeByFour) {
  std::mt19937_64 gen(7);
  const int d = 5;
  const auto p = oracle::small_params(3, true, fg::AttentionDirection::kClaimToEvidence, d);
  const Matrix hq = oracle::random_matrix(3, d, gen);
  const Matrix hk = oracle::random_matrix(4, d, gen);
  // e_ij = LeakyReLU(a . [W h_i ; W h_j]) written out pair by pair.
  Matrix e(3, 4);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 4; ++j) {
      Vector cat(2 * d);
      cat << p.attn_w * hq.row(i).transpose(), p.attn_w * hk.row(j).transpose();
      const double s = p.attn_a.col(0).dot(cat);
      e(i, j) = s > 0 ? s : 0.2 * s;
    }
  }
  const Matrix alpha = oracle::naive_softmax_rows(e);
  const auto r = fg::cross_graph_attention(hq, hk, p);
  EXPECT_LE((r.alpha - alpha).cwiseAbs().maxCoeff(), 1e-10);
  Vector pooled(2 * d);
  pooled << (hq * p.attn_w.transpose()).colwise().mean().transpose(),
      (alpha * hk * p.attn_w.transpose()).colwise().mean().transpose();
  EXPECT_LE((r.pooled - pooled).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Attention, RowsOnSimplexForRandomGraphs) {
  std::mt19937_64 gen(8);
  const auto p = oracle::small_params(4, true, fg::AttentionDirection::kClaimToEvidence, 6);
  for (int trial = 0; trial < 50; ++trial) {
    const auto nq = static_cast<Eigen::Index>(1 + gen() % 12);
    const auto nk = static_cast<Eigen::Index>(1 + gen() % 12);
    const auto r = fg::cross_graph_attention(oracle::random_matrix(nq, 6, gen, 3.0),
                                             oracle::random_matrix(nk, 6, gen, 3.0), p);
    EXPECT_GE(r.alpha.minCoeff(), 0.0);
    for (Eigen::Index i = 0; i < nq; ++i) EXPECT_NEAR(r.alpha.row(i).sum(), 1.0, 1e-6);
  }
}

TEST(Attention, EmptyKeysGiveZeroContext) {
  std::mt19937_64 gen(9);
  const auto p = oracle::small_params(5, true, fg::AttentionDirection::kClaimToEvidence, 4);
  const auto r = fg::cross_graph_attention(oracle::random_matrix(3, 4, gen), Matrix(0, 4), p);
  EXPECT_EQ(r.pooled.tail(4), Vector::Zero(4));
  EXPECT_NE(r.pooled.head(4), Vector::Zero(4));
}

TEST(Classify, ArgmaxWithFixedTieOrder) {
  Vector logits(3);
  logits << 10, 0, 0;
  EXPECT_EQ(fg::verdict_from_logits(logits).label, fg::Label::kSupports);
  logits << 1, 3, 3;
  EXPECT_EQ(fg::verdict_from_logits(logits).label, fg::Label::kRefutes);
  logits << 2, 2, 2;
  EXPECT_EQ(fg::verdict_from_logits(logits).label, fg::Label::kSupports);
  logits << -1, -4, 0.5;
  EXPECT_EQ(fg::verdict_from_logits(logits).label, fg::Label::kNei);
  EXPECT_EQ(fg::argmax_label({0.2, 0.4, 0.4}), fg::Label::kRefutes);
}

TEST(Classify, ProbabilitiesOnTheSimplexAndLabelIsArgmax) {
  std::mt19937_64 gen(10);
  const auto p = oracle::small_params(6, true, fg::AttentionDirection::kClaimToEvidence, 4);
  for (int trial = 0; trial < 100; ++trial) {
    const auto v = fg::classify(oracle::random_matrix(8, 1, gen, 5.0).col(0), p);
    double sum = 0;
    for (double x : v.probs) {
      EXPECT_GE(x, 0.0);
      sum += x;
    }
    EXPECT_NEAR(sum, 1.0, 1e-6);
    EXPECT_EQ(v.label, fg::argmax_label(v.probs));
  }
  EXPECT_THROW(fg::classify(Vector::Zero(3), p), fg::ConfigError);
}

TEST(Gradients, MatchCentralDifferencesForEveryTensor) {
  struct Variant {
    bool shared;
    fg::AttentionDirection dir;
    bool cls;
    bool no_evidence;
  };
  const Variant variants[] = {{true, fg::AttentionDirection::kClaimToEvidence, false, false},
                              {false, fg::AttentionDirection::kClaimToEvidence, false, false},
                              {true, fg::AttentionDirection::kEvidenceToClaim, false, false},
                              {false, fg::AttentionDirection::kEvidenceToClaim, true, false},
                              {true, fg::AttentionDirection::kClaimToEvidence, false, true}};
  std::uint64_t seed = 100;
  for (const auto& v : variants) {
    std::mt19937_64 gen(seed);
    auto ex = oracle::small_example(gen);
    if (v.cls) {
      ex.claim_is_cls = true;
      ex.claim_h0 = oracle::random_matrix(1, 5, gen);
    }
    if (v.no_evidence) ex.evidence_h0 = Matrix(0, 5);
    const auto p = oracle::small_params(seed, v.shared, v.dir);
    for (fg::Label gold : fg::kLabelOrder) {
      for (const auto& g : oracle::gradient_check(ex, gold, p)) {
        EXPECT_LT(g.relative_error, 1e-4) << g.name << " variant seed " << seed;
      }
    }
    ++seed;
  }
}

TEST(Params, InitIsSeededAndInRange) {
  const auto a = fg::init_params(shape16(), 7);
  const auto b = fg::init_params(shape16(), 7);
  const auto c = fg::init_params(shape16(), 8);
  bool differs = false;
  std::vector<const Matrix*> cm;
  c.for_each_tensor([&](const std::string&, const Matrix& m) { cm.push_back(&m); });
  std::size_t k = 0;
  std::vector<const Matrix*> bm;
  b.for_each_tensor([&](const std::string&, const Matrix& m) { bm.push_back(&m); });
  a.for_each_tensor([&](const std::string&, const Matrix& m) {
    EXPECT_EQ(m, *bm[k]);
    differs |= m != *cm[k];
    EXPECT_LT(m.cwiseAbs().maxCoeff(), 0.1);
    ++k;
  });
  EXPECT_TRUE(differs);
  EXPECT_TRUE(a.gcn_evidence.empty());
  auto bad = a;
  bad.mlp_w2 = Matrix::Zero(4, 8);
  EXPECT_THROW(bad.validate(), fg::ConfigError);
}

TEST(Predict, PipelineGlueBuildsBothGraphsAndOrdersEvidence) {
  const fg::VerifierComponents comp{kRules, kProvider, {}};
  const fg::Claim claim{1, "Barack Obama was born in Hawaii.", fg::Label::kSupports, {}};
  const std::vector<fg::ScoredSentence> ev = {sentence("Dogs", 0, "Dogs bark."),
                                              sentence("Obama", 0, "Obama was born in Hawaii in 1961."),
                                              sentence("Hawaii", 1, "Hawaii is a state."),
                                              sentence("Obama", 0, "Obama was born in Hawaii in 1961.")};
  const auto prepared = fg::prepare_claim(claim, ev, comp);
  EXPECT_EQ(prepared.claim_graph.size(), 3u);
  EXPECT_FALSE(prepared.example.claim_is_cls);
  EXPECT_EQ(prepared.evidence_order.size(), 3u);  // the duplicate is dropped
  EXPECT_EQ(prepared.evidence_order.back(), fg::SentenceRef::for_page("Dogs", 0));
  EXPECT_EQ(prepared.example.evidence_h0.rows(), static_cast<Eigen::Index>(prepared.evidence_graph.size()));
  EXPECT_EQ(prepared.example.claim_h0.cols(), 16);

  const auto p = fg::init_params(shape16(), 7);
  const auto v1 = fg::predict(claim, ev, p, comp);
  const auto v2 = fg::predict(claim, ev, p, comp);
  EXPECT_EQ(v1.label, v2.label);
  EXPECT_EQ(v1.probs, v2.probs);
  EXPECT_EQ(v1.evidence_used, ev);
}

TEST(Predict, DegeneratePaths) {
  const fg::VerifierComponents comp{kRules, kProvider, {}};
  const auto p = fg::init_params(shape16(), 7);
  const fg::Claim claim{1, "Barack Obama was born in Hawaii.", std::nullopt, {}};
  const auto empty = fg::predict(claim, {}, p, comp);
  EXPECT_NEAR(empty.probs[0] + empty.probs[1] + empty.probs[2], 1.0, 1e-6);

  // No tuples in the claim: the [CLS] row stands in for the claim graph.
  const fg::Claim bare{2, "Blue.", std::nullopt, {}};
  const auto prepared = fg::prepare_claim(bare, {sentence("Blue", 0, "Blue was founded in Rome.")}, comp);
  EXPECT_TRUE(prepared.example.claim_is_cls);
  EXPECT_EQ(prepared.example.claim_h0.rows(), 1);
  EXPECT_EQ(prepared.example.claim_h0.row(0), kProvider.token_vector("[CLS]").transpose());
  EXPECT_NO_THROW(fg::predict(bare, {}, p, comp));

  EXPECT_THROW(fg::predict({3, "", std::nullopt, {}}, {}, p, comp), fg::PreconditionError);
  const fg::DeterministicProvider wide(32, 13);
  EXPECT_THROW(fg::predict(claim, {}, p, {kRules, wide, {}}), fg::ConfigError);
}
