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
#ifndef KBC_KPEVAL_CORPUS_STATS_H_
#define KBC_KPEVAL_CORPUS_STATS_H_

#include <cstddef>

#include "kbc/tagdata/types.h"

namespace kbc::kpeval {

// Keyphrase mention statistics of a training set. Every proportion is a
// share of all mentions and is 0 for a corpus without mentions.
struct CorpusStats {
  std::size_t n_keyphrases = 0;
  // Mentions whose case-folded surface form (tokens joined by one space)
  // occurs exactly once in the corpus.
  double proportion_singletons = 0.0;
  double proportion_single_word = 0.0;
  double proportion_len_ge2 = 0.0;
  double proportion_len_ge3 = 0.0;
  double proportion_len_ge5 = 0.0;
};

CorpusStats ComputeCorpusStats(const tagdata::Corpus &corpus);

}  // namespace kbc::kpeval

#endif  // KBC_KPEVAL_CORPUS_STATS_H_
