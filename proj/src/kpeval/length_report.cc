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
#include "kbc/kpeval/length_report.h"

#include <algorithm>

#include "kbc/kpeval/token_prf.h"
#include "kbc/tagdata/bio.h"

namespace kbc::kpeval {

namespace {

double Ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

double LengthBucket::strict_recall() const {
  return Ratio(recalled_spans, gold_spans);
}
double LengthBucket::token_recall() const {
  return Ratio(recalled_tokens, gold_tokens);
}

std::vector<LengthBucket> DefaultLengthBuckets() {
  return {{"1", 1, 1}, {"2", 2, 2}, {"3-4", 3, 4}, {">=5", 5, 0}};
}

std::vector<LengthBucket> LengthStratifiedReport(
    const std::vector<tagdata::LabelSequence> &gold,
    const std::vector<tagdata::LabelSequence> &pred,
    std::vector<LengthBucket> buckets) {
  CheckAligned(gold, pred);
  for (std::size_t s = 0; s < gold.size(); ++s) {
    const auto pred_spans = tagdata::BioToSpans(pred[s]);
    for (const auto &span : tagdata::BioToSpans(gold[s])) {
      auto bucket = std::find_if(buckets.begin(), buckets.end(),
                                 [&](const LengthBucket &b) {
                                   return b.Contains(span.length());
                                 });
      if (bucket == buckets.end()) continue;
      ++bucket->gold_spans;
      if (std::find(pred_spans.begin(), pred_spans.end(), span) !=
          pred_spans.end()) {
        ++bucket->recalled_spans;
      }
      for (std::size_t i = span.start; i < span.end; ++i) {
        ++bucket->gold_tokens;
        if (!tagdata::IsOutside(pred[s][i]) &&
            tagdata::TagType(pred[s][i]) == span.label) {
          ++bucket->recalled_tokens;
        }
      }
    }
  }
  return buckets;
}

}  // namespace kbc::kpeval
