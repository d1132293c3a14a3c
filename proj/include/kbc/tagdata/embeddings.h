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
#ifndef KBC_TAGDATA_EMBEDDINGS_H_
#define KBC_TAGDATA_EMBEDDINGS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "kbc/numcore/tensor.h"
#include "kbc/tagdata/vocab.h"

namespace kbc::tagdata {

// |V| x dim matrix aligned with a Vocabulary.
struct EmbeddingTable {
  numcore::Tensor matrix;
  std::size_t dim = 0;
};

struct EmbeddingCoverage {
  std::size_t file_entries = 0;
  std::size_t covered = 0;       // vocabulary entries (excluding unk) copied
  std::size_t vocab_entries = 0; // vocabulary entries excluding unk
  // covered / vocab_entries, 0 when the vocabulary has only unk.
  double ratio() const {
    return vocab_entries == 0
               ? 0.0
               : static_cast<double>(covered) / static_cast<double>(vocab_entries);
  }
};

inline constexpr double kEmbeddingInitRange = 0.1;

// Every row uniform in [-0.1, 0.1], drawn row by row from seed.
EmbeddingTable RandomEmbeddings(const Vocabulary &vocab, std::size_t dim,
                                std::uint64_t seed);

// Only the token column of an embedding file, in file order.
std::vector<std::string> ReadEmbeddingVocab(const std::filesystem::path &path);

// Text format: one entry per line, a token followed by dim reals separated
// by whitespace. Rows of vocabulary tokens found in the file (directly or
// through their lowercased form) are copied; every other row, including the
// unknown row, keeps its RandomEmbeddings value for the same seed.
EmbeddingTable LoadEmbeddings(const std::filesystem::path &path,
                              const Vocabulary &vocab, std::size_t dim,
                              std::uint64_t seed,
                              EmbeddingCoverage *coverage = nullptr);

}  // namespace kbc::tagdata

#endif  // KBC_TAGDATA_EMBEDDINGS_H_
