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
#ifndef KBC_TAGDATA_TOKENIZER_H_
#define KBC_TAGDATA_TOKENIZER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace kbc::tagdata {

struct Token {
  std::string text;
  std::size_t begin = 0;  // byte offsets into the source text
  std::size_t end = 0;
};

// Whitespace-plus-punctuation tokenizer.
//
//  * Word characters are ASCII letters, digits and every byte >= 0x80, so
//    UTF-8 sequences are never split.
//  * A token is a maximal run of word characters. The joiners '-', '.',
//    '\'', '/' stay inside a token when a word character follows them
//    directly and one precedes them ("log-linear", "3.5", "don't",
//    "TCP/IP").
//  * Every other non-space byte is a token of its own.
std::vector<Token> Tokenize(std::string_view text);

// Splits a token stream into sentences. A sentence ends after ".", "!" or
// "?" when the next token does not start with a lowercase ASCII letter, and
// at any line break between tokens. Returns [begin, end) token ranges.
std::vector<std::pair<std::size_t, std::size_t>> SegmentSentences(
    std::string_view text, const std::vector<Token> &tokens);

}  // namespace kbc::tagdata

#endif  // KBC_TAGDATA_TOKENIZER_H_
