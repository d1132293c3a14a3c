// Copyright 2026 The KBC Tagger Authors.
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
#include "kbc/kpeval/report_format.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "kbc/errors.h"

namespace kbc::kpeval {

namespace {

constexpr int kNameWidth = 28;
constexpr int kCellWidth = 10;

std::string Pad(const std::string &s, int width, bool left_align) {
  if (static_cast<int>(s.size()) >= width) return s;
  std::string fill(width - s.size(), ' ');
  return left_align ? s + fill : fill + s;
}

// Percent strings are compared, not doubles, so that rows that print equal
// are flagged together.
std::string BestF1(const std::vector<ResultRow> &rows, bool labelled) {
  std::string best;
  double best_value = -1.0;
  for (const auto &r : rows) {
    const auto &rep = labelled ? r.labelled : r.unlabelled;
    if (!rep) continue;
    std::string s = Percent(rep->micro.f1());
    double v = std::stod(s);
    if (v > best_value) {
      best_value = v;
      best = s;
    }
  }
  return best;
}

void AppendBlock(std::ostringstream &out, const std::optional<EvalReport> &rep,
                 const std::string &best) {
  if (!rep) {
    for (int i = 0; i < 3; ++i) out << Pad("-", kCellWidth, false) << ' ';
    return;
  }
  out << Pad(Percent(rep->micro.precision()), kCellWidth, false) << ' ';
  out << Pad(Percent(rep->micro.recall()), kCellWidth, false) << ' ';
  std::string f1 = Percent(rep->micro.f1());
  out << Pad(f1 == best ? f1 + "*" : f1 + " ", kCellWidth, false) << ' ';
}

}  // namespace

std::string Percent(double ratio) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", 100.0 * ratio);
  return buf;
}

std::string FormatResultsTable(const std::vector<ResultRow> &rows) {
  if (rows.empty()) throw ContractError("results table needs at least one row");
  const std::string best_u = BestF1(rows, false);
  const std::string best_l = BestF1(rows, true);

  std::ostringstream out;
  const int block = 3 * (kCellWidth + 1);
  out << Pad("", kNameWidth, true) << " | " << Pad("Unlabelled", block, true)
      << "| " << "Labelled" << '\n';
  out << Pad("Method", kNameWidth, true) << " | ";
  for (int b = 0; b < 2; ++b) {
    out << Pad("Precision", kCellWidth, false) << ' '
        << Pad("Recall", kCellWidth, false) << ' '
        << Pad("F1 ", kCellWidth, false) << ' ';
    if (b == 0) out << "| ";
  }
  out << '\n';
  for (const auto &r : rows) {
    out << Pad(r.model, kNameWidth, true) << " | ";
    AppendBlock(out, r.unlabelled, best_u);
    out << "| ";
    AppendBlock(out, r.labelled, best_l);
    out << '\n';
  }
  return out.str();
}

nlohmann::ordered_json ToJson(const PrfCounts &c) {
  nlohmann::ordered_json j;
  j["true_positive"] = c.true_positive;
  j["predicted"] = c.predicted;
  j["gold"] = c.gold;
  j["precision"] = c.precision();
  j["recall"] = c.recall();
  j["f1"] = c.f1();
  return j;
}

nlohmann::ordered_json ToJson(const EvalReport &report) {
  nlohmann::ordered_json j;
  j["mode"] = ModeName(report.mode);
  j["micro"] = ToJson(report.micro);
  nlohmann::ordered_json types = nlohmann::ordered_json::object();
  for (const auto &[type, counts] : report.per_type) types[type] = ToJson(counts);
  j["per_type"] = types;
  return j;
}

nlohmann::ordered_json ToJson(const std::vector<LengthBucket> &buckets) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto &b : buckets) {
    nlohmann::ordered_json e;
    e["bucket"] = b.name;
    e["gold_spans"] = b.gold_spans;
    e["recalled_spans"] = b.recalled_spans;
    e["strict_recall"] = b.strict_recall();
    e["gold_tokens"] = b.gold_tokens;
    e["recalled_tokens"] = b.recalled_tokens;
    e["token_recall"] = b.token_recall();
    j.push_back(e);
  }
  return j;
}

nlohmann::ordered_json ToJson(const CorpusStats &s) {
  nlohmann::ordered_json j;
  j["n_keyphrases"] = s.n_keyphrases;
  j["proportion_singletons"] = s.proportion_singletons;
  j["proportion_single_word"] = s.proportion_single_word;
  j["proportion_len_ge2"] = s.proportion_len_ge2;
  j["proportion_len_ge3"] = s.proportion_len_ge3;
  j["proportion_len_ge5"] = s.proportion_len_ge5;
  return j;
}

std::string FormatCorpusStats(const std::string &corpus_name,
                              const CorpusStats &s) {
  std::ostringstream out;
  auto line = [&](const std::string &label, const std::string &value) {
    out << Pad(label, 46, true) << ' ' << value << '\n';
  };
  auto pct = [](double v) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%.0f%%", std::round(100.0 * v));
    return std::string(buf);
  };
  line("", corpus_name);
  line("Number all keyphrases", std::to_string(s.n_keyphrases));
  line("Proportion singleton keyphrases", pct(s.proportion_singletons));
  line("Proportion single-word mentions", pct(s.proportion_single_word));
  line("Proportion mentions with word length >= 2", pct(s.proportion_len_ge2));
  line("Proportion mentions with word length >= 3", pct(s.proportion_len_ge3));
  line("Proportion mentions with word length >= 5", pct(s.proportion_len_ge5));
  return out.str();
}

std::string FormatLengthReport(const std::vector<LengthBucket> &buckets) {
  std::ostringstream out;
  out << Pad("Length", 8, true) << Pad("Gold", 8, false)
      << Pad("Strict R", 10, false) << Pad("Token R", 10, false) << '\n';
  for (const auto &b : buckets) {
    out << Pad(b.name, 8, true) << Pad(std::to_string(b.gold_spans), 8, false)
        << Pad(Percent(b.strict_recall()), 10, false)
        << Pad(Percent(b.token_recall()), 10, false) << '\n';
  }
  return out.str();
}

}  // namespace kbc::kpeval
