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


// Minimal library use: load the synthetic corpus, train a small verifier on
// the training split and verify one claim given on the command line.
//
//   factgraph_demo [data/synthetic] ["Dimstae was born in Siolsil."]

#include <iostream>
#include <string>

#include "factgraph/factgraph.hpp"

int main(int argc, char** argv) {
  namespace fg = factgraph;
  const fg::fs::path data = argc > 1 ? argv[1] : "data/synthetic";
  const std::string text = argc > 2 ? argv[2] : "Dimstae was born in Siolsil.";

  try {
    fg::Config cfg;
    cfg.set("corpus.wiki_pages", (data / "wiki-pages.jsonl").string());
    cfg.set("train.epochs", "20");
    fg::Pipeline pipeline(cfg);
    pipeline.load_corpus();

    const auto result = pipeline.train_verifier(fg::load_claims(data / "train.jsonl"));
    std::cout << "final training loss " << result.loss_trace.back() << "\n";

    fg::Claim claim;
    claim.text = text;
    const auto evidence = pipeline.select(claim);
    const fg::Verdict v = pipeline.verify(claim, evidence, result.params);
    std::cout << fg::label_name(v.label) << "  (" << v.probs[0] << ", " << v.probs[1] << ", " << v.probs[2] << ")\n";
    for (const auto& s : evidence) std::cout << "  " << s.page_title << "#" << s.sentence_index << "  " << s.text << "\n";
  } catch (const fg::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
