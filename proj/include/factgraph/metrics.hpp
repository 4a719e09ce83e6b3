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

// Label accuracy, evidence precision/recall/F1, FEVER score and the
// threshold sweep report. All values are percents.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "factgraph/corpus.hpp"
#include "factgraph/error.hpp"
#include "factgraph/io.hpp"
#include "factgraph/parallel.hpp"

namespace factgraph {

using Prediction = std::pair<std::int64_t, Label>;
// Selected evidence per claim, in selection order.
using RetrievedMap = std::map<std::int64_t, std::vector<EvidenceRef>>;

// Only the first five selected sentences count towards the FEVER score.
inline constexpr std::size_t kFeverEvidenceLimit = 5;

inline double label_accuracy(const std::vector<Prediction>& preds, const std::map<std::int64_t, Label>& gold) {
  if (preds.empty()) throw PreconditionError("label_accuracy: no predictions");
  std::size_t correct = 0;
  for (const auto& [id, label] : preds) {
    auto it = gold.find(id);
    if (it == gold.end()) throw LookupError("label_accuracy: unknown claim id " + std::to_string(id));
    if (it->second == label) ++correct;
  }
  return 100.0 * static_cast<double>(correct) / static_cast<double>(preds.size());
}

inline std::map<std::int64_t, Label> gold_labels(const std::vector<Claim>& claims) {
  std::map<std::int64_t, Label> out;
  for (const auto& c : claims) {
    if (!c.gold_label) throw PreconditionError("claim " + std::to_string(c.id) + " has no gold label");
    out[c.id] = *c.gold_label;
  }
  return out;
}

struct EvidencePrf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

inline double f1_of(double p, double r) { return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0; }

// Micro-averaged over the verifiable (SUPPORTS/REFUTES) claims.
inline EvidencePrf evidence_prf(const RetrievedMap& retrieved, const std::vector<Claim>& gold_claims) {
  std::size_t n_retrieved = 0, hits = 0, n_gold = 0, found = 0;
  for (const auto& c : gold_claims) {
    if (!c.gold_label || *c.gold_label == Label::kNei) continue;
    const EvidenceGroup gold = c.gold_union();
    n_gold += gold.size();
    auto it = retrieved.find(c.id);
    if (it == retrieved.end()) continue;
    const std::set<EvidenceRef> got(it->second.begin(), it->second.end());
    n_retrieved += got.size();
    for (const auto& r : got) {
      if (gold.contains(r)) ++hits;
    }
    for (const auto& g : gold) {
      if (got.contains(g)) ++found;
    }
  }
  EvidencePrf m;
  m.precision = n_retrieved == 0 ? 0.0 : 100.0 * static_cast<double>(hits) / static_cast<double>(n_retrieved);
  m.recall = n_gold == 0 ? 0.0 : 100.0 * static_cast<double>(found) / static_cast<double>(n_gold);
  m.f1 = f1_of(m.precision, m.recall);
  return m;
}

inline bool evidence_covered(const Claim& c, const std::vector<EvidenceRef>& selected) {
  const std::size_t n = std::min(selected.size(), kFeverEvidenceLimit);
  const std::set<EvidenceRef> got(selected.begin(), selected.begin() + static_cast<std::ptrdiff_t>(n));
  return std::any_of(c.gold_evidence.begin(), c.gold_evidence.end(), [&](const EvidenceGroup& g) {
    return std::includes(got.begin(), got.end(), g.begin(), g.end());
  });
}

inline double fever_score(const std::vector<Prediction>& preds, const RetrievedMap& retrieved,
                          const std::vector<Claim>& gold_claims) {
  if (preds.empty()) throw PreconditionError("fever_score: no predictions");
  std::map<std::int64_t, const Claim*> by_id;
  for (const auto& c : gold_claims) by_id[c.id] = &c;
  static const std::vector<EvidenceRef> kNone;
  std::size_t scored = 0;
  for (const auto& [id, label] : preds) {
    auto it = by_id.find(id);
    if (it == by_id.end() || !it->second->gold_label) {
      throw LookupError("fever_score: unknown claim id " + std::to_string(id));
    }
    const Claim& c = *it->second;
    if (*c.gold_label != label) continue;
    auto r = retrieved.find(id);
    if (*c.gold_label == Label::kNei || evidence_covered(c, r == retrieved.end() ? kNone : r->second)) ++scored;
  }
  return 100.0 * static_cast<double>(scored) / static_cast<double>(preds.size());
}

// ---------------------------------------------------------------------------
// Sweep report.

struct MetricsRow {
  double threshold = 0.0;
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
  double fever_score = 0.0;
  double label_accuracy = 0.0;
};

inline constexpr std::string_view kReportColumns[] = {"threshold", "recall",      "precision",
                                                      "f1",        "fever_score", "label_accuracy"};

struct SweepReport {
  std::vector<MetricsRow> rows;
  std::string averaging = "micro";
  std::vector<std::string> violations;
  std::vector<std::string> notes;

  bool ok() const { return violations.empty(); }
};

// Outcome of one selection + verification run.
struct SweepRun {
  std::vector<Prediction> preds;
  RetrievedMap retrieved;
};

inline MetricsRow metrics_row(double threshold, const SweepRun& run, const std::vector<Claim>& gold) {
  const EvidencePrf prf = evidence_prf(run.retrieved, gold);
  MetricsRow row;
  row.threshold = threshold;
  row.recall = prf.recall;
  row.precision = prf.precision;
  row.f1 = prf.f1;
  row.fever_score = fever_score(run.preds, run.retrieved, gold);
  row.label_accuracy = label_accuracy(run.preds, gold_labels(gold));
  return row;
}

// Row invariants plus monotonicity of recall and FEVER score in the threshold.
inline std::vector<std::string> check_rows(const std::vector<MetricsRow>& rows) {
  constexpr double kSlack = 1e-9;
  std::vector<std::string> out;
  for (const auto& r : rows) {
    const std::string at = "threshold " + format_general(r.threshold);
    for (double v : {r.recall, r.precision, r.f1, r.fever_score, r.label_accuracy}) {
      if (!(v >= 0.0 && v <= 100.0)) out.push_back(at + ": value outside [0, 100]");
    }
    if (r.fever_score > r.label_accuracy + kSlack) out.push_back(at + ": fever_score exceeds label_accuracy");
    if (std::abs(r.f1 - f1_of(r.precision, r.recall)) > 1e-6) out.push_back(at + ": f1 inconsistent with P and R");
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (!(rows[i].threshold < rows[j].threshold)) continue;
      const std::string pair = format_general(rows[i].threshold) + " -> " + format_general(rows[j].threshold);
      if (rows[j].recall > rows[i].recall + kSlack) out.push_back("recall increases with threshold (" + pair + ")");
      if (rows[j].fever_score > rows[i].fever_score + kSlack) {
        out.push_back("fever_score increases with threshold (" + pair + ")");
      }
    }
  }
  return out;
}

// Notes on a reference table whose numbers violate properties that hold for
// any output of this pipeline.
inline std::vector<std::string> reference_notes(const std::vector<MetricsRow>& reference) {
  std::vector<std::string> notes;
  for (const auto& v : check_rows(reference)) notes.push_back("reference table: " + v);
  if (!notes.empty()) {
    notes.push_back(
        "reference table: thresholding can only remove sentences, so its recall cannot rise with the threshold; "
        "its values are kept as a report-format fixture, not a target");
  }
  return notes;
}

// One row per threshold, in input order. `run` may be called concurrently.
inline SweepReport threshold_sweep(const std::vector<double>& thresholds,
                                   const std::function<SweepRun(double)>& run, const std::vector<Claim>& gold,
                                   std::size_t workers = 1) {
  if (thresholds.empty()) throw PreconditionError("threshold_sweep: no thresholds");
  for (double t : thresholds) {
    if (!(t >= 0.0 && t <= 1.0)) throw ConfigError("threshold_sweep: threshold outside [0, 1]");
  }
  SweepReport report;
  report.rows = parallel_map(thresholds.size(), workers,
                             [&](std::size_t i) { return metrics_row(thresholds[i], run(thresholds[i]), gold); });
  report.violations = check_rows(report.rows);
  return report;
}

inline std::string report_to_tsv(const std::vector<MetricsRow>& rows) {
  std::string out;
  for (std::size_t i = 0; i < std::size(kReportColumns); ++i) {
    out += (i ? "\t" : "") + std::string(kReportColumns[i]);
  }
  out += "\n";
  for (const auto& r : rows) {
    out += format_general(r.threshold);
    for (double v : {r.recall, r.precision, r.f1, r.fever_score, r.label_accuracy}) out += "\t" + format_fixed(v, 2);
    out += "\n";
  }
  return out;
}

inline std::vector<MetricsRow> report_from_tsv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::string header;
  for (std::size_t i = 0; i < std::size(kReportColumns); ++i) header += (i ? "\t" : "") + std::string(kReportColumns[i]);
  if (!std::getline(in, line) || line != header) throw IngestError("report: header does not match the column schema");
  std::vector<MetricsRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::vector<double> v;
    std::string cell;
    while (std::getline(fields, cell, '\t')) {
      try {
        std::size_t used = 0;
        v.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw IngestError("report line " + std::to_string(line_no) + ": bad number '" + cell + "'");
      }
    }
    if (v.size() != std::size(kReportColumns)) {
      throw IngestError("report line " + std::to_string(line_no) + ": expected 6 columns");
    }
    rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5]});
  }
  return rows;
}

inline json report_to_json(const SweepReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"threshold", row.threshold},
                    {"recall", row.recall},
                    {"precision", row.precision},
                    {"f1", row.f1},
                    {"fever_score", row.fever_score},
                    {"label_accuracy", row.label_accuracy}});
  }
  json cols = json::array();
  for (auto c : kReportColumns) cols.push_back(c);
  return json{{"columns", cols}, {"rows", rows}, {"averaging", r.averaging}, {"violations", r.violations},
              {"notes", r.notes}};
}

}  // namespace factgraph
