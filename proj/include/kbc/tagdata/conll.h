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
#ifndef KBC_TAGDATA_CONLL_H_
#define KBC_TAGDATA_CONLL_H_

#include <filesystem>
#include <iosfwd>
#include <string>

#include "kbc/tagdata/types.h"

namespace kbc::tagdata {

// Two-column CoNLL: one "TOKEN<TAB>TAG" per line, blank lines between
// sentences, UTF-8. A line whose token is -DOCSTART- opens a new document
// whose id is the tag column. Without such lines every sentence is treated
// as its own document, named "<source>#<index>". Trailing CR is ignored.
//
// Ill-formed I-X tags are repaired to B-X; the number of repairs is added
// to *report when given.
Corpus ReadConll(const std::filesystem::path &path, const std::string &task_name,
                 IngestReport *report = nullptr);
Corpus ParseConll(std::istream &in, const std::string &source_name,
                  const std::string &task_name, IngestReport *report = nullptr);

inline constexpr char kDocStart[] = "-DOCSTART-";

// Canonical output: LF line endings, one blank line after every sentence,
// -DOCSTART- lines only when the corpus carries explicit documents.
void WriteConll(std::ostream &out, const Corpus &corpus);
void WriteConll(const std::filesystem::path &path, const Corpus &corpus);

}  // namespace kbc::tagdata

#endif  // KBC_TAGDATA_CONLL_H_
