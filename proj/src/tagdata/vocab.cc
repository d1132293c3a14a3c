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
#include "kbc/tagdata/vocab.h"

#include "kbc/errors.h"

namespace kbc::tagdata {

std::string AsciiLower(std::string s) {
  for (char &c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

Vocabulary::Vocabulary(bool lowercase) : lowercase_(lowercase) {
  tokens_.push_back(kUnknownToken);
}

std::string Vocabulary::Normalize(const std::string &token) const {
  return lowercase_ ? AsciiLower(token) : token;
}

std::size_t Vocabulary::Add(const std::string &token) {
  std::string key = Normalize(token);
  auto [it, inserted] = index_.emplace(key, tokens_.size());
  if (inserted) tokens_.push_back(std::move(key));
  return it->second;
}

std::optional<std::size_t> Vocabulary::Find(const std::string &token) const {
  auto it = index_.find(Normalize(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Vocabulary::Lookup(const std::string &token) const {
  if (auto i = Find(token)) return *i;
  if (!lowercase_) {
    auto it = index_.find(AsciiLower(token));
    if (it != index_.end()) return it->second;
  }
  return kUnknown;
}

std::vector<std::size_t> Vocabulary::LookupAll(
    const std::vector<std::string> &tokens) const {
  std::vector<std::size_t> out;
  out.reserve(tokens.size());
  for (const auto &t : tokens) out.push_back(Lookup(t));
  return out;
}

Vocabulary BuildVocab(std::span<const Corpus *const> corpora,
                      const std::vector<std::string> *embedding_vocab,
                      bool lowercase) {
  if (corpora.empty()) throw ContractError("build_vocab needs a corpus");
  Vocabulary vocab(lowercase);
  for (const Corpus *c : corpora) {
    for (const auto &ls : c->sentences) {
      for (const auto &t : ls.sentence.tokens) vocab.Add(t);
    }
  }
  if (embedding_vocab) {
    for (const auto &t : *embedding_vocab) vocab.Add(t);
  }
  return vocab;
}

}  // namespace kbc::tagdata
