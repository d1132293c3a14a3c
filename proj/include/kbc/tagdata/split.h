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
#ifndef KBC_TAGDATA_SPLIT_H_
#define KBC_TAGDATA_SPLIT_H_

#include <cstdint>

#include "kbc/tagdata/types.h"

namespace kbc::tagdata {

struct CorpusSplit {
  Corpus train;
  Corpus test;
};

// Document-level random split. Documents are shuffled with seed and a
// prefix of the shuffled order becomes the test side, grown while it brings
// the test sentence share closer to test_fraction (at least one document on
// each side). Both sides keep the corpus's original sentence order and its
// TaskSpec.
CorpusSplit SplitCorpus(const Corpus &corpus, double test_fraction,
                        std::uint64_t seed);

}  // namespace kbc::tagdata

#endif  // KBC_TAGDATA_SPLIT_H_
