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
#include "kbc/kpeval/token_prf.h"

#include "kbc/errors.h"
#include "kbc/tagdata/bio.h"

namespace kbc::kpeval {

const char *ModeName(EvalMode mode) {
  return mode == EvalMode::kLabelled ? "labelled" : "unlabelled";
}

namespace {

double Ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

double PrfCounts::precision() const { return Ratio(true_positive, predicted); }
double PrfCounts::recall() const { return Ratio(true_positive, gold); }
double PrfCounts::f1() const {
  const double p = precision(), r = recall();
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

void CheckAligned(const std::vector<tagdata::LabelSequence> &gold,
                  const std::vector<tagdata::LabelSequence> &pred) {
  if (gold.size() != pred.size()) {
    throw AlignmentError(std::to_string(gold.size()) + " gold vs " +
                         std::to_string(pred.size()) + " predicted sentences");
  }
  for (std::size_t s = 0; s < gold.size(); ++s) {
    if (gold[s].size() != pred[s].size()) {
      throw AlignmentError("sentence " + std::to_string(s) + ": " +
                           std::to_string(gold[s].size()) + " gold vs " +
                           std::to_string(pred[s].size()) + " predicted tags");
    }
  }
}

EvalReport TokenPrf(const std::vector<tagdata::LabelSequence> &gold,
                    const std::vector<tagdata::LabelSequence> &pred,
                    EvalMode mode) {
  CheckAligned(gold, pred);
  EvalReport report;
  report.mode = mode;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    for (std::size_t i = 0; i < gold[s].size(); ++i) {
      const bool g_pos = !tagdata::IsOutside(gold[s][i]);
      const bool p_pos = !tagdata::IsOutside(pred[s][i]);
      if (mode == EvalMode::kUnlabelled) {
        report.micro.gold += g_pos;
        report.micro.predicted += p_pos;
        report.micro.true_positive += g_pos && p_pos;
        continue;
      }
      const std::string_view g_type = tagdata::TagType(gold[s][i]);
      const std::string_view p_type = tagdata::TagType(pred[s][i]);
      if (g_pos) ++report.per_type[std::string(g_type)].gold;
      if (p_pos) ++report.per_type[std::string(p_type)].predicted;
      if (g_pos && p_pos && g_type == p_type) {
        ++report.per_type[std::string(g_type)].true_positive;
      }
    }
  }
  for (const auto &[type, counts] : report.per_type) report.micro += counts;
  return report;
}

}  // namespace kbc::kpeval
