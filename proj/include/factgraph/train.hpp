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

// Mini-batch Adam on mean cross-entropy.

#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "factgraph/corpus.hpp"
#include "factgraph/error.hpp"
#include "factgraph/parallel.hpp"
#include "factgraph/selection.hpp"
#include "factgraph/verifier.hpp"

namespace factgraph {

struct TrainingExample {
  Claim claim;
  std::vector<ScoredSentence> evidence;
  Label gold = Label::kNei;
};

struct TrainConfig {
  double learning_rate = 0.01;
  int epochs = 40;
  std::size_t batch_size = 8;
  std::uint64_t seed = 7;
  VerifierShape shape;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  // Gradient evaluation inside a batch; sums are reduced in example order.
  std::size_t workers = 1;

  void validate() const {
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) throw ConfigError("learning rate must be positive");
    if (epochs < 1) throw ConfigError("epochs must be >= 1");
    if (batch_size < 1) throw ConfigError("batch size must be >= 1");
  }
};

struct TrainResult {
  VerifierParams params;
  std::vector<double> loss_trace;  // mean loss per epoch
};

class Adam {
 public:
  Adam(const VerifierParams& like, const TrainConfig& cfg) : m_(like.zeros_like()), v_(like.zeros_like()), cfg_(cfg) {}

  void step(VerifierParams& params, const VerifierParams& grad) {
    ++t_;
    const double c1 = 1.0 - std::pow(cfg_.beta1, t_);
    const double c2 = 1.0 - std::pow(cfg_.beta2, t_);
    std::vector<Matrix*> ps, ms, vs;
    std::vector<const Matrix*> gs;
    params.for_each_tensor([&](const std::string&, Matrix& m) { ps.push_back(&m); });
    m_.for_each_tensor([&](const std::string&, Matrix& m) { ms.push_back(&m); });
    v_.for_each_tensor([&](const std::string&, Matrix& m) { vs.push_back(&m); });
    grad.for_each_tensor([&](const std::string&, const Matrix& m) { gs.push_back(&m); });
    for (std::size_t i = 0; i < ps.size(); ++i) {
      *ms[i] = cfg_.beta1 * *ms[i] + (1.0 - cfg_.beta1) * *gs[i];
      *vs[i] = cfg_.beta2 * *vs[i] + (1.0 - cfg_.beta2) * gs[i]->cwiseProduct(*gs[i]);
      const Matrix m_hat = *ms[i] / c1;
      const Matrix v_hat = *vs[i] / c2;
      *ps[i] -= (cfg_.learning_rate * m_hat.array() / (v_hat.array().sqrt() + cfg_.epsilon)).matrix();
    }
  }

 private:
  VerifierParams m_;
  VerifierParams v_;
  TrainConfig cfg_;
  int t_ = 0;
};

// Fisher-Yates driven by raw 64-bit draws, so the permutation does not
// depend on the standard library's distribution implementations.
inline void deterministic_shuffle(std::vector<std::size_t>& v, std::mt19937_64& gen) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(gen() % i);
    std::swap(v[i - 1], v[j]);
  }
}

inline void add_into(VerifierParams& acc, const VerifierParams& g) {
  std::vector<const Matrix*> src;
  g.for_each_tensor([&](const std::string&, const Matrix& m) { src.push_back(&m); });
  std::size_t k = 0;
  acc.for_each_tensor([&](const std::string&, Matrix& m) { m += *src[k++]; });
}

inline void scale(VerifierParams& p, double s) {
  p.for_each_tensor([&](const std::string&, Matrix& m) { m *= s; });
}

// Trains on already prepared inputs; `claim_ids` only feeds diagnostics.
inline TrainResult train_prepared(const std::vector<PreparedExample>& examples, const std::vector<Label>& gold,
                                  const std::vector<std::int64_t>& claim_ids, const TrainConfig& cfg) {
  cfg.validate();
  if (examples.empty()) throw PreconditionError("train: empty dataset");
  if (gold.size() != examples.size() || claim_ids.size() != examples.size()) {
    throw PreconditionError("train: labels and examples differ in length");
  }
  for (const auto& ex : examples) {
    if (ex.claim_h0.cols() != cfg.shape.dim) {
      throw ConfigError("encoder dimension " + std::to_string(ex.claim_h0.cols()) + " != verifier dimension " +
                        std::to_string(cfg.shape.dim));
    }
  }

  TrainResult result{init_params(cfg.shape, cfg.seed), {}};
  Adam adam(result.params, cfg);
  std::mt19937_64 gen(detail::splitmix64(cfg.seed ^ 0x5EEDF00DULL));
  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    deterministic_shuffle(order, gen);
    double epoch_loss = 0.0;
    std::size_t batch_no = 0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size, ++batch_no) {
      const std::size_t end = std::min(order.size(), start + cfg.batch_size);
      const std::size_t n = end - start;
      const auto per_example = parallel_map(n, cfg.workers, [&](std::size_t k) {
        const std::size_t i = order[start + k];
        VerifierParams g = result.params.zeros_like();
        const double loss = loss_and_gradient(examples[i], gold[i], result.params, &g);
        return std::make_pair(loss, std::move(g));
      });
      VerifierParams grad = result.params.zeros_like();
      double batch_loss = 0.0;
      for (const auto& [loss, g] : per_example) {
        batch_loss += loss;
        add_into(grad, g);
      }
      if (!std::isfinite(batch_loss)) {
        std::string ids;
        for (std::size_t k = start; k < end; ++k) ids += (ids.empty() ? "" : ",") + std::to_string(claim_ids[order[k]]);
        throw NumericalError("non-finite loss at epoch " + std::to_string(epoch) + ", batch " +
                             std::to_string(batch_no) + " (claims " + ids + ")");
      }
      scale(grad, 1.0 / static_cast<double>(n));
      adam.step(result.params, grad);
      epoch_loss += batch_loss;
    }
    result.loss_trace.push_back(epoch_loss / static_cast<double>(examples.size()));
  }
  result.params.validate();
  return result;
}

inline std::vector<PreparedExample> prepare_examples(const std::vector<TrainingExample>& data,
                                                     const VerifierComponents& c, std::size_t workers = 1) {
  return parallel_map(data.size(), workers,
                      [&](std::size_t i) { return prepare_claim(data[i].claim, data[i].evidence, c).example; });
}

inline TrainResult train(const std::vector<TrainingExample>& data, const TrainConfig& cfg,
                         const VerifierComponents& c) {
  if (data.empty()) throw PreconditionError("train: empty dataset");
  std::vector<Label> gold;
  std::vector<std::int64_t> ids;
  for (const auto& ex : data) {
    gold.push_back(ex.gold);
    ids.push_back(ex.claim.id);
  }
  return train_prepared(prepare_examples(data, c, cfg.workers), gold, ids, cfg);
}

}  // namespace factgraph
