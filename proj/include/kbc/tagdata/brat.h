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
#ifndef KBC_TAGDATA_BRAT_H_
#define KBC_TAGDATA_BRAT_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "kbc/tagdata/types.h"

namespace kbc::tagdata {

// One "T" line of a standoff .ann file.
struct TextBoundAnnotation {
  std::string id;
  std::string type;
  std::size_t begin = 0;  // character (byte) offsets into the .txt file
  std::size_t end = 0;
};

// Parses the text-bound lines of an .ann document; all other line kinds
// (relations, events, attributes, notes, comments) are skipped.
// Discontinuous spans "a b;c d" are read as covering [a, d).
std::vector<TextBoundAnnotation> ParseAnnotations(std::string_view ann,
                                                  const std::string &source);

// Builds the labelled sentences of one document.
//  * text is tokenized with Tokenize() and segmented with SegmentSentences();
//    a sentence boundary is never placed inside an annotation.
//  * annotation boundaries that fall inside a token are widened to that
//    token (IngestReport::expanded_spans).
//  * overlapping annotations: the longest (in tokens) wins, ties go to the
//    earlier start, then to file order; the rest are dropped and counted.
Corpus BuildBratDocument(std::string_view text,
                         const std::vector<TextBoundAnnotation> &annotations,
                         const std::string &doc_id, const std::string &task_name,
                         IngestReport *report = nullptr);

// Reads one .txt/.ann pair. The document id is the file stem.
Corpus ReadBrat(const std::filesystem::path &txt_path,
                const std::filesystem::path &ann_path,
                const std::string &task_name, IngestReport *report = nullptr);

// Reads every <stem>.ann with a sibling <stem>.txt in a directory, in
// lexicographic order of file name.
Corpus ReadBratDirectory(const std::filesystem::path &dir,
                         const std::string &task_name,
                         IngestReport *report = nullptr);

}  // namespace kbc::tagdata

#endif  // KBC_TAGDATA_BRAT_H_
