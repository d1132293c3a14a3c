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
#include "kbc/tagdata/split.h"

#include <cmath>
#include <map>
#include <set>
#include <utility>

#include "kbc/errors.h"
#include "kbc/numcore/random.h"

namespace kbc::tagdata {

CorpusSplit SplitCorpus(const Corpus &corpus, double test_fraction,
                        std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw SplitError("test fraction must lie in (0, 1)");
  }
  std::vector<std::string> docs;
  std::map<std::string, std::size_t> doc_sizes;
  for (const auto &ls : corpus.sentences) {
    auto [it, inserted] = doc_sizes.emplace(ls.sentence.doc_id, 0);
    if (inserted) docs.push_back(ls.sentence.doc_id);
    ++it->second;
  }
  if (docs.size() < 2) {
    throw SplitError("need at least 2 documents, got " +
                     std::to_string(docs.size()));
  }

  numcore::Rng rng(seed);
  for (std::size_t i = docs.size() - 1; i > 0; --i) {
    std::swap(docs[i], docs[rng.UniformInt(i + 1)]);
  }

  const double target = test_fraction * static_cast<double>(corpus.size());
  std::set<std::string> test_docs;
  double taken = 0.0;
  for (std::size_t i = 0; i + 1 < docs.size(); ++i) {
    double next = taken + static_cast<double>(doc_sizes[docs[i]]);
    if (!test_docs.empty() && std::abs(next - target) >= std::abs(taken - target)) {
      break;
    }
    test_docs.insert(docs[i]);
    taken = next;
  }

  CorpusSplit out;
  out.train.task = out.test.task = corpus.task;
  out.train.explicit_documents = out.test.explicit_documents =
      corpus.explicit_documents;
  for (const auto &ls : corpus.sentences) {
    (test_docs.count(ls.sentence.doc_id) ? out.test : out.train)
        .sentences.push_back(ls);
  }
  return out;
}

}  // namespace kbc::tagdata
