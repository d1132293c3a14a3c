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
#ifndef KBC_KPEVAL_TOKEN_PRF_H_
#define KBC_KPEVAL_TOKEN_PRF_H_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "kbc/tagdata/types.h"

namespace kbc::kpeval {

enum class EvalMode {
  kUnlabelled,  // a token is positive iff its tag is not O
  kLabelled,    // a token is positive for type X iff its tag's type is X
};

const char *ModeName(EvalMode mode);

// Token counts for one type (or pooled). Zero denominators give 0.
struct PrfCounts {
  std::size_t true_positive = 0;
  std::size_t predicted = 0;
  std::size_t gold = 0;

  double precision() const;
  double recall() const;
  double f1() const;

  PrfCounts &operator+=(const PrfCounts &o) {
    true_positive += o.true_positive;
    predicted += o.predicted;
    gold += o.gold;
    return *this;
  }
  friend bool operator==(const PrfCounts &, const PrfCounts &) = default;
};

// Labelled reports carry one entry per type seen in gold or prediction, and
// micro holds their pooled counts. Unlabelled reports have no per-type
// entries.
struct EvalReport {
  EvalMode mode = EvalMode::kUnlabelled;
  std::map<std::string, PrfCounts> per_type;
  PrfCounts micro;
};

// Token-level micro-averaged precision/recall/F1. The B-/I- prefix is
// ignored in labelled mode. AlignmentError names the first sentence whose
// lengths disagree.
EvalReport TokenPrf(const std::vector<tagdata::LabelSequence> &gold,
                    const std::vector<tagdata::LabelSequence> &pred,
                    EvalMode mode);

// Throws AlignmentError unless gold and pred have equal counts and lengths.
void CheckAligned(const std::vector<tagdata::LabelSequence> &gold,
                  const std::vector<tagdata::LabelSequence> &pred);

}  // namespace kbc::kpeval

#endif  // KBC_KPEVAL_TOKEN_PRF_H_
