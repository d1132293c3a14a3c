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
#ifndef KBC_TAGDATA_BIO_H_
#define KBC_TAGDATA_BIO_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "kbc/tagdata/types.h"

namespace kbc::tagdata {

// Decomposed tag. prefix is 'B', 'I', 'O', or '\0' for tags outside the
// BIO scheme (e.g. part-of-speech tags of an auxiliary task).
struct BioTag {
  char prefix = 'O';
  std::string_view type;
};

BioTag ParseTag(std::string_view tag);

// Type X of B-X / I-X; empty for O. Non-BIO tags are their own type.
std::string_view TagType(std::string_view tag);

inline bool IsOutside(std::string_view tag) { return tag == kOutsideTag; }

bool IsWellFormed(const LabelSequence &tags);

// Rewrites every I-X not preceded by B-X or I-X as B-X. Returns the number
// of rewritten tags.
std::size_t RepairBio(LabelSequence &tags);

// B-X at each span start, I-X inside, O elsewhere. Spans must lie within
// [0, n) and must not overlap; violations raise ContractError.
LabelSequence SpansToBio(std::size_t n, const std::vector<SpanAnnotation> &spans);
inline LabelSequence SpansToBio(const Sentence &sentence,
                                const std::vector<SpanAnnotation> &spans) {
  return SpansToBio(sentence.size(), spans);
}

// Decodes spans in order of start. Ill-formed input is read as if repaired:
// an I-X that does not continue an X span opens a new one.
std::vector<SpanAnnotation> BioToSpans(const LabelSequence &tags);

}  // namespace kbc::tagdata

#endif  // KBC_TAGDATA_BIO_H_
