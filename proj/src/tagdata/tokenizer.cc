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
#include "kbc/tagdata/tokenizer.h"

namespace kbc::tagdata {

namespace {

bool IsWordByte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c >= 0x80;
}

bool IsSpace(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool IsJoiner(unsigned char c) {
  return c == '-' || c == '.' || c == '\'' || c == '/';
}

}  // namespace

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    unsigned char c = text[i];
    if (IsSpace(c)) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (IsWordByte(c)) {
      ++i;
      while (i < n) {
        unsigned char d = text[i];
        if (IsWordByte(d)) {
          ++i;
        } else if (IsJoiner(d) && i + 1 < n &&
                   IsWordByte(static_cast<unsigned char>(text[i + 1]))) {
          i += 2;
        } else {
          break;
        }
      }
    } else {
      ++i;
    }
    tokens.push_back({std::string(text.substr(start, i - start)), start, i});
  }
  return tokens;
}

std::vector<std::pair<std::size_t, std::size_t>> SegmentSentences(
    std::string_view text, const std::vector<Token> &tokens) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t begin = 0;
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    const Token &t = tokens[i];
    const Token &next = tokens[i + 1];
    bool line_break =
        text.substr(t.end, next.begin - t.end).find('\n') != std::string_view::npos;
    bool terminal = t.text == "." || t.text == "!" || t.text == "?";
    unsigned char first = next.text[0];
    bool lower_next = first >= 'a' && first <= 'z';
    if (line_break || (terminal && !lower_next)) {
      out.emplace_back(begin, i + 1);
      begin = i + 1;
    }
  }
  if (begin < tokens.size()) out.emplace_back(begin, tokens.size());
  return out;
}

}  // namespace kbc::tagdata
