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
#ifndef KBC_TAGDATA_VOCAB_H_
#define KBC_TAGDATA_VOCAB_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "kbc/tagdata/types.h"

namespace kbc::tagdata {

// Shared input vocabulary V. Index 0 is the unknown token; indices
// 1..size()-1 are assigned in order of first insertion.
class Vocabulary {
 public:
  static constexpr std::size_t kUnknown = 0;
  static constexpr char kUnknownToken[] = "<unk>";

  explicit Vocabulary(bool lowercase = false);

  // Returns the index of token, inserting it if new.
  std::size_t Add(const std::string &token);

  // Exact lookup after case normalization.
  std::optional<std::size_t> Find(const std::string &token) const;

  // Exact, then lowercased, then kUnknown.
  std::size_t Lookup(const std::string &token) const;
  std::vector<std::size_t> LookupAll(const std::vector<std::string> &tokens) const;

  std::size_t size() const { return tokens_.size(); }
  const std::string &token(std::size_t index) const { return tokens_.at(index); }
  const std::vector<std::string> &tokens() const { return tokens_; }
  bool lowercase() const { return lowercase_; }

  friend bool operator==(const Vocabulary &a, const Vocabulary &b) {
    return a.lowercase_ == b.lowercase_ && a.tokens_ == b.tokens_;
  }

 private:
  std::string Normalize(const std::string &token) const;

  bool lowercase_;
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::size_t> index_;
};

// ASCII lowercasing; bytes >= 0x80 are left untouched.
std::string AsciiLower(std::string s);

// Union of the tokens of every corpus (main and auxiliary) in order of first
// occurrence, followed by the embedding vocabulary when supplied.
Vocabulary BuildVocab(std::span<const Corpus *const> corpora,
                      const std::vector<std::string> *embedding_vocab = nullptr,
                      bool lowercase = false);

}  // namespace kbc::tagdata

#endif  // KBC_TAGDATA_VOCAB_H_
