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
#ifndef KBC_KPEVAL_LENGTH_REPORT_H_
#define KBC_KPEVAL_LENGTH_REPORT_H_

#include <cstddef>
#include <string>
#include <vector>

#include "kbc/tagdata/types.h"

namespace kbc::kpeval {

// Gold spans with min_len <= length <= max_len; max_len 0 means unbounded.
struct LengthBucket {
  std::string name;
  std::size_t min_len = 1;
  std::size_t max_len = 0;

  std::size_t gold_spans = 0;
  std::size_t recalled_spans = 0;  // identical predicted span, same type
  std::size_t gold_tokens = 0;
  std::size_t recalled_tokens = 0;  // predicted tag has the gold span's type

  bool Contains(std::size_t len) const {
    return len >= min_len && (max_len == 0 || len <= max_len);
  }
  double strict_recall() const;
  double token_recall() const;
};

// Buckets 1, 2, 3-4, >=5.
std::vector<LengthBucket> DefaultLengthBuckets();

// Recall of gold spans stratified by span length in tokens. Strict recall
// counts a gold span as found only when the prediction contains exactly that
// span with the same type; token recall is restricted to the tokens of gold
// spans in the bucket.
std::vector<LengthBucket> LengthStratifiedReport(
    const std::vector<tagdata::LabelSequence> &gold,
    const std::vector<tagdata::LabelSequence> &pred,
    std::vector<LengthBucket> buckets = DefaultLengthBuckets());

}  // namespace kbc::kpeval

#endif  // KBC_KPEVAL_LENGTH_REPORT_H_
