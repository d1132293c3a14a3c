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
#include "kbc/kpeval/corpus_stats.h"

#include <map>
#include <string>
#include <vector>

#include "kbc/tagdata/bio.h"
#include "kbc/tagdata/vocab.h"

namespace kbc::kpeval {

CorpusStats ComputeCorpusStats(const tagdata::Corpus &corpus) {
  std::map<std::string, std::size_t> surface_counts;
  std::vector<std::pair<std::string, std::size_t>> mentions;  // form, length
  for (const auto &ls : corpus.sentences) {
    for (const auto &span : tagdata::BioToSpans(ls.tags)) {
      std::string form;
      for (std::size_t i = span.start; i < span.end; ++i) {
        if (i > span.start) form += ' ';
        form += ls.sentence.tokens[i];
      }
      form = tagdata::AsciiLower(std::move(form));
      ++surface_counts[form];
      mentions.emplace_back(std::move(form), span.length());
    }
  }

  CorpusStats stats;
  stats.n_keyphrases = mentions.size();
  if (mentions.empty()) return stats;
  std::size_t singletons = 0, single = 0, ge2 = 0, ge3 = 0, ge5 = 0;
  for (const auto &[form, len] : mentions) {
    singletons += surface_counts[form] == 1;
    single += len == 1;
    ge2 += len >= 2;
    ge3 += len >= 3;
    ge5 += len >= 5;
  }
  const double n = static_cast<double>(mentions.size());
  stats.proportion_singletons = singletons / n;
  stats.proportion_single_word = single / n;
  stats.proportion_len_ge2 = ge2 / n;
  stats.proportion_len_ge3 = ge3 / n;
  stats.proportion_len_ge5 = ge5 / n;
  return stats;
}

}  // namespace kbc::kpeval
