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
#include "kbc/tagdata/embeddings.h"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "kbc/errors.h"
#include "kbc/numcore/random.h"

namespace kbc::tagdata {

namespace {

std::vector<std::string> SplitWhitespace(const std::string &line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string field;
  while (ss >> field) out.push_back(std::move(field));
  return out;
}

}  // namespace

EmbeddingTable RandomEmbeddings(const Vocabulary &vocab, std::size_t dim,
                                std::uint64_t seed) {
  if (dim == 0) throw ContractError("embedding dimension must be positive");
  EmbeddingTable table{numcore::Tensor({vocab.size(), dim}), dim};
  numcore::Rng rng(seed);
  for (double &v : table.matrix.data()) {
    v = rng.Uniform(-kEmbeddingInitRange, kEmbeddingInitRange);
  }
  return table;
}

std::vector<std::string> ReadEmbeddingVocab(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string token;
    if (ss >> token) out.push_back(token);
  }
  return out;
}

EmbeddingTable LoadEmbeddings(const std::filesystem::path &path,
                              const Vocabulary &vocab, std::size_t dim,
                              std::uint64_t seed, EmbeddingCoverage *coverage) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());

  std::unordered_map<std::string, std::vector<double>> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto fields = SplitWhitespace(line);
    if (fields.empty()) continue;
    if (fields.size() != dim + 1) {
      throw ParseError(path.string(), line_no,
                       "expected token + " + std::to_string(dim) +
                           " values, got " + std::to_string(fields.size() - 1));
    }
    std::vector<double> row(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      const std::string &f = fields[j + 1];
      char *end = nullptr;
      row[j] = std::strtod(f.c_str(), &end);
      if (end != f.c_str() + f.size()) {
        throw ParseError(path.string(), line_no, "not a number: " + f);
      }
    }
    entries.emplace(fields[0], std::move(row));  // first entry wins
  }

  EmbeddingTable table = RandomEmbeddings(vocab, dim, seed);
  EmbeddingCoverage cov;
  cov.file_entries = entries.size();
  cov.vocab_entries = vocab.size() - 1;
  for (std::size_t i = 1; i < vocab.size(); ++i) {
    const std::string &tok = vocab.token(i);
    auto it = entries.find(tok);
    if (it == entries.end()) it = entries.find(AsciiLower(tok));
    if (it == entries.end()) continue;
    std::copy(it->second.begin(), it->second.end(), table.matrix.row(i).begin());
    ++cov.covered;
  }
  if (coverage) *coverage = cov;
  return table;
}

}  // namespace kbc::tagdata
