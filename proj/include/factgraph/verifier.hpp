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

// Claim verification over SRL graphs.
//
//   features   H0[v]   = mean of the token rows aligned to node v
//   GCN        H_{l+1} = ReLU(Â H_l W_l),  Â = D^-1/2 (A + I) D^-1/2
//   attention  g_i = W_a h_i
//              e_ij = LeakyReLU_0.2(a · [g_i ; g_j])   i: claim, j: evidence
//              alpha_i = softmax_j(e_ij),  c_i = sum_j alpha_ij g_j
//   pooling    p = [mean_i g_i ; mean_i c_i]
//   classifier probs = softmax(W2 ReLU(W1 p + b1) + b2)
//
// Degenerate inputs: no evidence nodes gives c_i = 0; no claim nodes makes
// the claim side a single row holding the [CLS] vector.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "factgraph/corpus.hpp"
#include "factgraph/encoder.hpp"
#include "factgraph/error.hpp"
#include "factgraph/graph.hpp"
#include "factgraph/selection.hpp"
#include "factgraph/srl.hpp"

namespace factgraph {

inline constexpr int kNumLabels = 3;
inline constexpr double kLeakySlope = 0.2;

enum class AttentionDirection { kClaimToEvidence, kEvidenceToClaim };

struct VerifierShape {
  int dim = 64;
  int hidden = 64;
  int layers = 2;
  bool shared_gcn = true;
  AttentionDirection direction = AttentionDirection::kClaimToEvidence;
};

struct VerifierParams {
  VerifierShape shape;
  std::uint64_t seed = 0;
  std::vector<Matrix> gcn_claim;     // layers x (dim x dim)
  std::vector<Matrix> gcn_evidence;  // empty when weights are shared
  Matrix attn_w;                     // dim x dim
  Matrix attn_a;                     // 2 dim x 1
  Matrix mlp_w1;                     // hidden x 2 dim
  Matrix mlp_b1;                     // hidden x 1
  Matrix mlp_w2;                     // 3 x hidden
  Matrix mlp_b2;                     // 3 x 1

  const std::vector<Matrix>& gcn_for_evidence() const { return shape.shared_gcn ? gcn_claim : gcn_evidence; }

  // Every trainable tensor in a fixed order (Adam state, checkpoints and
  // gradient checks all walk this list).
  template <typename Self, typename Fn>
  static void for_each_tensor_impl(Self& self, Fn&& fn) {
    for (std::size_t l = 0; l < self.gcn_claim.size(); ++l) fn("gcn_claim." + std::to_string(l), self.gcn_claim[l]);
    for (std::size_t l = 0; l < self.gcn_evidence.size(); ++l) {
      fn("gcn_evidence." + std::to_string(l), self.gcn_evidence[l]);
    }
    fn(std::string("attn_w"), self.attn_w);
    fn(std::string("attn_a"), self.attn_a);
    fn(std::string("mlp_w1"), self.mlp_w1);
    fn(std::string("mlp_b1"), self.mlp_b1);
    fn(std::string("mlp_w2"), self.mlp_w2);
    fn(std::string("mlp_b2"), self.mlp_b2);
  }
  template <typename Fn>
  void for_each_tensor(Fn&& fn) {
    for_each_tensor_impl(*this, std::forward<Fn>(fn));
  }
  template <typename Fn>
  void for_each_tensor(Fn&& fn) const {
    for_each_tensor_impl(*this, std::forward<Fn>(fn));
  }

  // Same shapes, all zero.
  VerifierParams zeros_like() const {
    VerifierParams z = *this;
    z.for_each_tensor([](const std::string&, Matrix& m) { m.setZero(); });
    return z;
  }

  void validate() const {
    const int d = shape.dim;
    auto expect = [](const Matrix& m, Eigen::Index r, Eigen::Index c, std::string_view name) {
      if (m.rows() != r || m.cols() != c) {
        throw ConfigError("verifier parameter " + std::string(name) + " has shape " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()) + ", expected " + std::to_string(r) + "x" + std::to_string(c));
      }
      if (!m.allFinite()) throw ConfigError("verifier parameter " + std::string(name) + " is not finite");
    };
    if (d <= 0 || shape.hidden <= 0 || shape.layers < 1) throw ConfigError("verifier dims must be positive");
    if (gcn_claim.size() != static_cast<std::size_t>(shape.layers)) throw ConfigError("GCN layer count mismatch");
    if (!shape.shared_gcn && gcn_evidence.size() != static_cast<std::size_t>(shape.layers)) {
      throw ConfigError("evidence GCN layer count mismatch");
    }
    for (const auto& w : gcn_claim) expect(w, d, d, "gcn_claim");
    for (const auto& w : gcn_evidence) expect(w, d, d, "gcn_evidence");
    expect(attn_w, d, d, "attn_w");
    expect(attn_a, 2 * d, 1, "attn_a");
    expect(mlp_w1, shape.hidden, 2 * d, "mlp_w1");
    expect(mlp_b1, shape.hidden, 1, "mlp_b1");
    expect(mlp_w2, kNumLabels, shape.hidden, "mlp_w2");
    expect(mlp_b2, kNumLabels, 1, "mlp_b2");
  }
};

// Seeded uniform(-0.1, 0.1) initialization in for_each_tensor order.
inline VerifierParams init_params(const VerifierShape& shape, std::uint64_t seed) {
  VerifierParams p;
  p.shape = shape;
  p.seed = seed;
  const int d = shape.dim;
  p.gcn_claim.assign(static_cast<std::size_t>(shape.layers), Matrix(d, d));
  if (!shape.shared_gcn) p.gcn_evidence.assign(static_cast<std::size_t>(shape.layers), Matrix(d, d));
  p.attn_w = Matrix(d, d);
  p.attn_a = Matrix(2 * d, 1);
  p.mlp_w1 = Matrix(shape.hidden, 2 * d);
  p.mlp_b1 = Matrix(shape.hidden, 1);
  p.mlp_w2 = Matrix(kNumLabels, shape.hidden);
  p.mlp_b2 = Matrix(kNumLabels, 1);
  std::mt19937_64 gen(detail::splitmix64(seed));
  p.for_each_tensor([&](const std::string&, Matrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = 0.1 * detail::unit_interval_signed(gen());
    }
  });
  p.validate();
  return p;
}

struct Verdict {
  Label label = Label::kNei;
  std::array<double, kNumLabels> probs{};
  std::vector<ScoredSentence> evidence_used;
};

// ---------------------------------------------------------------------------
// Node features.

struct NodeFeatures {
  Matrix features;                  // |V| x d, row order = node id
  std::vector<int> fallback_nodes;  // nodes encoded standalone
};

// `segment_of` maps each sentence of the graph to its segment in `seq`.
inline NodeFeatures node_features(const SrlGraph& graph, const TokenEmbeddings& emb, const MarkedSequence& seq,
                                  const std::map<SentenceRef, int>& segment_of, const EmbeddingProvider& provider) {
  NodeFeatures out{Matrix::Zero(static_cast<Eigen::Index>(graph.size()), emb.dim()), {}};
  for (const auto& node : graph.nodes) {
    std::vector<std::size_t> rows;
    if (auto it = segment_of.find(node.sentence); it != segment_of.end()) {
      for (const auto& span : node.spans) {
        for (std::size_t r : aligned_rows(seq, it->second, span.begin, span.end)) {
          if (std::find(rows.begin(), rows.end(), r) == rows.end()) rows.push_back(r);
        }
      }
    }
    auto row = out.features.row(node.id);
    if (rows.empty()) {
      row = encode_standalone_mean(node.text, provider).transpose();
      out.fallback_nodes.push_back(node.id);
      continue;
    }
    for (std::size_t r : rows) row += emb.rows.row(static_cast<Eigen::Index>(r));
    row /= static_cast<double>(rows.size());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Graph convolution.

inline Matrix adjacency_matrix(const SrlGraph& graph) {
  const auto n = static_cast<Eigen::Index>(graph.size());
  Matrix a = Matrix::Zero(n, n);
  for (const auto& e : graph.edges) {
    a(e.u, e.v) = 1.0;
    a(e.v, e.u) = 1.0;
  }
  return a;
}

inline Matrix normalize_adjacency_matrix(const Matrix& a) {
  const Eigen::Index n = a.rows();
  Matrix a_hat = a + Matrix::Identity(n, n);
  const Vector inv_sqrt_deg = a_hat.rowwise().sum().array().rsqrt().matrix();
  // Elementwise D^-1/2 (A + I) D^-1/2; keeps exact symmetry.
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a_hat(i, j) *= inv_sqrt_deg[i] * inv_sqrt_deg[j];
  }
  return a_hat;
}

inline Matrix normalize_adjacency(const SrlGraph& graph) { return normalize_adjacency_matrix(adjacency_matrix(graph)); }

struct GcnTrace {
  std::vector<Matrix> propagated;  // Â H_l
  std::vector<Matrix> pre;         // Â H_l W_l
  Matrix output;
};

inline GcnTrace gcn_forward_traced(const Matrix& h0, const Matrix& a_hat, const std::vector<Matrix>& weights) {
  if (a_hat.rows() != h0.rows() || a_hat.cols() != h0.rows()) throw ConfigError("GCN: adjacency/feature size mismatch");
  GcnTrace t;
  Matrix h = h0;
  for (const auto& w : weights) {
    if (w.rows() != h.cols()) {
      throw ConfigError("GCN: feature dim " + std::to_string(h.cols()) + " != layer input " + std::to_string(w.rows()));
    }
    t.propagated.push_back(a_hat * h);
    t.pre.push_back(t.propagated.back() * w);
    h = t.pre.back().cwiseMax(0.0);
  }
  t.output = std::move(h);
  return t;
}

inline Matrix gcn_forward(const Matrix& h0, const Matrix& a_hat, const std::vector<Matrix>& weights) {
  return gcn_forward_traced(h0, a_hat, weights).output;
}

// Accumulates dL/dW_l into grads and returns dL/dH0.
inline Matrix gcn_backward(const GcnTrace& t, const Matrix& a_hat, const std::vector<Matrix>& weights,
                           const Matrix& d_out, std::vector<Matrix>& grads) {
  Matrix d_h = d_out;
  for (std::size_t l = weights.size(); l-- > 0;) {
    const Matrix d_pre = d_h.cwiseProduct((t.pre[l].array() > 0.0).cast<double>().matrix());
    grads[l].noalias() += t.propagated[l].transpose() * d_pre;
    d_h = a_hat.transpose() * (d_pre * weights[l].transpose());
  }
  return d_h;
}

// ---------------------------------------------------------------------------
// Cross-graph attention.

struct AttentionTrace {
  Matrix g_query;  // nq x d
  Matrix g_key;    // nk x d
  Matrix scores;   // nq x nk, before LeakyReLU
  Matrix alpha;    // nq x nk
  Matrix context;  // nq x d
  Vector pooled;   // 2 d
};

inline Matrix row_softmax(const Matrix& e) {
  Matrix out(e.rows(), e.cols());
  for (Eigen::Index i = 0; i < e.rows(); ++i) {
    const double m = e.row(i).maxCoeff();
    const Eigen::RowVectorXd ex = (e.row(i).array() - m).exp().matrix();
    out.row(i) = ex / ex.sum();
  }
  return out;
}

inline AttentionTrace attention_forward(const Matrix& h_query, const Matrix& h_key, const VerifierParams& p) {
  const Eigen::Index d = p.attn_w.rows();
  AttentionTrace t;
  t.g_query = h_query * p.attn_w.transpose();
  t.g_key = h_key * p.attn_w.transpose();
  const Eigen::Index nq = t.g_query.rows();
  const Eigen::Index nk = t.g_key.rows();
  t.context = Matrix::Zero(nq, d);
  if (nq > 0 && nk > 0) {
    const Vector sq = t.g_query * p.attn_a.topRows(d);
    const Vector sk = t.g_key * p.attn_a.bottomRows(d);
    t.scores = sq.replicate(1, nk) + sk.transpose().replicate(nq, 1);
    const Matrix e = t.scores.unaryExpr([](double s) { return s > 0.0 ? s : kLeakySlope * s; });
    t.alpha = row_softmax(e);
    t.context = t.alpha * t.g_key;
  }
  t.pooled = Vector::Zero(2 * d);
  if (nq > 0) {
    t.pooled.head(d) = t.g_query.colwise().mean().transpose();
    t.pooled.tail(d) = t.context.colwise().mean().transpose();
  }
  return t;
}

struct AttentionResult {
  Vector pooled;
  Matrix alpha;
};

// Claim nodes query evidence nodes unless the direction is reversed.
inline AttentionResult cross_graph_attention(const Matrix& h_claim, const Matrix& h_evidence, const VerifierParams& p) {
  const bool forward = p.shape.direction == AttentionDirection::kClaimToEvidence;
  AttentionTrace t = forward ? attention_forward(h_claim, h_evidence, p) : attention_forward(h_evidence, h_claim, p);
  return {std::move(t.pooled), std::move(t.alpha)};
}

// Accumulates dL/dW_a and dL/da; returns (dL/dH_query, dL/dH_key).
inline std::pair<Matrix, Matrix> attention_backward(const AttentionTrace& t, const Matrix& h_query,
                                                    const Matrix& h_key, const VerifierParams& p,
                                                    const Vector& d_pooled, VerifierParams& grad) {
  const Eigen::Index d = p.attn_w.rows();
  const Eigen::Index nq = t.g_query.rows();
  const Eigen::Index nk = t.g_key.rows();
  Matrix d_gq = Matrix::Zero(nq, d);
  Matrix d_gk = Matrix::Zero(nk, d);
  if (nq > 0) {
    d_gq.rowwise() += d_pooled.head(d).transpose() / static_cast<double>(nq);
    if (nk > 0) {
      const Matrix d_ctx = Matrix::Ones(nq, 1) * (d_pooled.tail(d).transpose() / static_cast<double>(nq));
      const Matrix d_alpha = d_ctx * t.g_key.transpose();
      d_gk += t.alpha.transpose() * d_ctx;
      const Vector inner = (t.alpha.array() * d_alpha.array()).rowwise().sum().matrix();
      const Matrix d_e = (t.alpha.array() * (d_alpha.colwise() - inner).array()).matrix();
      const Matrix d_s =
          d_e.cwiseProduct(t.scores.unaryExpr([](double s) { return s > 0.0 ? 1.0 : kLeakySlope; }));
      const Vector row_sum = d_s.rowwise().sum();
      const Vector col_sum = d_s.colwise().sum().transpose();
      grad.attn_a.topRows(d) += t.g_query.transpose() * row_sum;
      grad.attn_a.bottomRows(d) += t.g_key.transpose() * col_sum;
      d_gq += row_sum * p.attn_a.topRows(d).transpose();
      d_gk += col_sum * p.attn_a.bottomRows(d).transpose();
    }
  }
  grad.attn_w += d_gq.transpose() * h_query + d_gk.transpose() * h_key;
  return {d_gq * p.attn_w, d_gk * p.attn_w};
}

// ---------------------------------------------------------------------------
// Classifier.

struct ClassifierTrace {
  Vector pre_hidden;
  Vector hidden;
  Vector logits;
  Vector probs;
};

inline Vector softmax(const Vector& z) {
  const Vector e = (z.array() - z.maxCoeff()).exp().matrix();
  return e / e.sum();
}

inline ClassifierTrace classifier_forward(const Vector& pooled, const VerifierParams& p) {
  if (pooled.size() != p.mlp_w1.cols()) throw ConfigError("classifier: pooled vector dimension mismatch");
  ClassifierTrace t;
  t.pre_hidden = p.mlp_w1 * pooled + p.mlp_b1.col(0);
  t.hidden = t.pre_hidden.cwiseMax(0.0);
  t.logits = p.mlp_w2 * t.hidden + p.mlp_b2.col(0);
  t.probs = softmax(t.logits);
  return t;
}

// First maximum in label order wins ties.
inline Label argmax_label(const std::array<double, kNumLabels>& probs) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < probs.size(); ++i) {
    if (probs[i] > probs[best]) best = i;
  }
  return kLabelOrder[best];
}

inline Verdict verdict_from_logits(const Vector& logits) {
  Verdict v;
  const Vector probs = softmax(logits);
  for (int i = 0; i < kNumLabels; ++i) v.probs[static_cast<std::size_t>(i)] = probs[i];
  // Decide on logits: exact ties stay exact there, softmax rounding can
  // separate them.
  std::size_t best = 0;
  for (std::size_t i = 1; i < kNumLabels; ++i) {
    if (logits[static_cast<Eigen::Index>(i)] > logits[static_cast<Eigen::Index>(best)]) best = i;
  }
  v.label = kLabelOrder[best];
  return v;
}

inline Verdict classify(const Vector& pooled, const VerifierParams& p) {
  return verdict_from_logits(classifier_forward(pooled, p).logits);
}

// ---------------------------------------------------------------------------
// Full model on prepared inputs.

// Everything the trainable part needs for one claim; independent of the
// parameters, so it is computed once per example.
struct PreparedExample {
  Matrix claim_h0;     // claim node features, or the [CLS] row
  Matrix claim_adj;    // Â of the claim graph (unused when claim_is_cls)
  bool claim_is_cls = false;
  Matrix evidence_h0;  // 0 rows when there are no evidence nodes
  Matrix evidence_adj;
  std::vector<int> claim_fallback_nodes;
  std::vector<int> evidence_fallback_nodes;
};

struct ForwardTrace {
  GcnTrace claim_gcn;
  GcnTrace evidence_gcn;
  Matrix h_claim;
  Matrix h_evidence;
  AttentionTrace attention;
  ClassifierTrace classifier;
};

inline ForwardTrace model_forward(const PreparedExample& ex, const VerifierParams& p) {
  ForwardTrace t;
  if (ex.claim_is_cls) {
    t.h_claim = ex.claim_h0;
  } else {
    t.claim_gcn = gcn_forward_traced(ex.claim_h0, ex.claim_adj, p.gcn_claim);
    t.h_claim = t.claim_gcn.output;
  }
  if (ex.evidence_h0.rows() > 0) {
    t.evidence_gcn = gcn_forward_traced(ex.evidence_h0, ex.evidence_adj, p.gcn_for_evidence());
    t.h_evidence = t.evidence_gcn.output;
  } else {
    t.h_evidence = Matrix(0, p.shape.dim);
  }
  const bool forward = p.shape.direction == AttentionDirection::kClaimToEvidence;
  t.attention = forward ? attention_forward(t.h_claim, t.h_evidence, p) : attention_forward(t.h_evidence, t.h_claim, p);
  t.classifier = classifier_forward(t.attention.pooled, p);
  return t;
}

// Cross-entropy of the gold label; when grad is given, adds dL/dparams.
inline double loss_and_gradient(const PreparedExample& ex, Label gold, const VerifierParams& p,
                                VerifierParams* grad) {
  const ForwardTrace t = model_forward(ex, p);
  const auto y = static_cast<Eigen::Index>(gold);
  // log-softmax computed from logits for stability.
  const double m = t.classifier.logits.maxCoeff();
  const double lse = m + std::log((t.classifier.logits.array() - m).exp().sum());
  const double loss = lse - t.classifier.logits[y];
  if (grad == nullptr) return loss;

  Vector d_logits = t.classifier.probs;
  d_logits[y] -= 1.0;
  grad->mlp_w2 += d_logits * t.classifier.hidden.transpose();
  grad->mlp_b2.col(0) += d_logits;
  const Vector d_hidden = p.mlp_w2.transpose() * d_logits;
  const Vector d_pre = d_hidden.cwiseProduct((t.classifier.pre_hidden.array() > 0.0).cast<double>().matrix());
  grad->mlp_w1 += d_pre * t.attention.pooled.transpose();
  grad->mlp_b1.col(0) += d_pre;
  const Vector d_pooled = p.mlp_w1.transpose() * d_pre;

  const bool forward = p.shape.direction == AttentionDirection::kClaimToEvidence;
  const Matrix& hq = forward ? t.h_claim : t.h_evidence;
  const Matrix& hk = forward ? t.h_evidence : t.h_claim;
  auto [d_hq, d_hk] = attention_backward(t.attention, hq, hk, p, d_pooled, *grad);
  const Matrix& d_claim = forward ? d_hq : d_hk;
  const Matrix& d_evid = forward ? d_hk : d_hq;

  if (!ex.claim_is_cls) gcn_backward(t.claim_gcn, ex.claim_adj, p.gcn_claim, d_claim, grad->gcn_claim);
  if (ex.evidence_h0.rows() > 0) {
    auto& g = p.shape.shared_gcn ? grad->gcn_claim : grad->gcn_evidence;
    gcn_backward(t.evidence_gcn, ex.evidence_adj, p.gcn_for_evidence(), d_evid, g);
  }
  return loss;
}

// ---------------------------------------------------------------------------
// Pipeline glue: graphs, ordering, encoding, features.

struct VerifierComponents {
  const Labeler& labeler;
  const EmbeddingProvider& provider;
  GraphConfig graph;
};

struct PreparedClaim {
  SrlGraph claim_graph;
  SrlGraph evidence_graph;
  std::vector<SentenceRef> evidence_order;
  MarkedSequence sequence;
  PreparedExample example;
};

inline PreparedClaim prepare_claim(const Claim& claim, const std::vector<ScoredSentence>& evidence,
                                   const VerifierComponents& c) {
  if (claim.text.empty()) throw PreconditionError("predict: empty claim text");
  PreparedClaim out;
  out.claim_graph = build_claim_graph(claim, c.labeler, c.graph);

  std::vector<std::pair<SentenceRef, std::string>> sentences;
  std::map<SentenceRef, std::string> text_of;
  for (const auto& s : evidence) {
    SentenceRef ref = SentenceRef::for_page(s.page_title, s.sentence_index);
    if (!text_of.emplace(ref, s.text).second) continue;
    sentences.emplace_back(std::move(ref), s.text);
  }
  out.evidence_graph = build_graph(label_sentences(sentences, c.labeler), c.graph);

  std::vector<SentenceRef> refs;
  refs.reserve(sentences.size());
  for (const auto& [ref, text] : sentences) refs.push_back(ref);
  out.evidence_order = sentence_order(out.evidence_graph, refs);

  std::vector<std::string> ordered_texts;
  std::map<SentenceRef, int> segment_of{{SentenceRef::for_claim(), 0}};
  for (std::size_t i = 0; i < out.evidence_order.size(); ++i) {
    ordered_texts.push_back(text_of.at(out.evidence_order[i]));
    segment_of[out.evidence_order[i]] = static_cast<int>(i + 1);
  }
  out.sequence = build_marked_sequence(claim.text, ordered_texts);
  const TokenEmbeddings emb = c.provider.encode(out.sequence);

  PreparedExample& ex = out.example;
  if (out.claim_graph.empty()) {
    ex.claim_is_cls = true;
    ex.claim_h0 = classification_vector(emb).transpose();
  } else {
    NodeFeatures f = node_features(out.claim_graph, emb, out.sequence, segment_of, c.provider);
    ex.claim_h0 = std::move(f.features);
    ex.claim_fallback_nodes = std::move(f.fallback_nodes);
    ex.claim_adj = normalize_adjacency(out.claim_graph);
  }
  if (out.evidence_graph.empty()) {
    ex.evidence_h0 = Matrix(0, emb.dim());
  } else {
    NodeFeatures f = node_features(out.evidence_graph, emb, out.sequence, segment_of, c.provider);
    ex.evidence_h0 = std::move(f.features);
    ex.evidence_fallback_nodes = std::move(f.fallback_nodes);
    ex.evidence_adj = normalize_adjacency(out.evidence_graph);
  }
  return out;
}

inline void check_dimension(const PreparedExample& ex, const VerifierParams& p) {
  if (ex.claim_h0.cols() != p.shape.dim) {
    throw ConfigError("encoder dimension " + std::to_string(ex.claim_h0.cols()) +
                      " does not match verifier dimension " + std::to_string(p.shape.dim));
  }
}

inline Verdict predict_prepared(const PreparedExample& ex, const VerifierParams& p) {
  check_dimension(ex, p);
  return verdict_from_logits(model_forward(ex, p).classifier.logits);
}

inline Verdict predict(const Claim& claim, const std::vector<ScoredSentence>& evidence, const VerifierParams& p,
                       const VerifierComponents& c) {
  if (c.provider.dim() != 0 && c.provider.dim() != p.shape.dim) {
    throw ConfigError("encoder dimension " + std::to_string(c.provider.dim()) + " does not match verifier dimension " +
                      std::to_string(p.shape.dim));
  }
  const PreparedClaim prepared = prepare_claim(claim, evidence, c);
  Verdict v = predict_prepared(prepared.example, p);
  v.evidence_used = evidence;
  return v;
}

}  // namespace factgraph
