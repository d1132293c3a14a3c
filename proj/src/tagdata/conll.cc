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
#include "kbc/tagdata/conll.h"

#include <fstream>
#include <istream>
#include <ostream>

#include "kbc/errors.h"
#include "kbc/tagdata/bio.h"

namespace kbc::tagdata {

namespace {

bool IsBlank(const std::string &line) {
  return line.find_first_not_of(" \t") == std::string::npos;
}

}  // namespace

Corpus ParseConll(std::istream &in, const std::string &source_name,
                  const std::string &task_name, IngestReport *report) {
  Corpus corpus;
  IngestReport local;
  std::string line;
  std::size_t line_no = 0;
  std::string doc_id;
  LabelledSentence current;

  auto flush = [&]() {
    if (current.sentence.tokens.empty()) return;
    local.repaired_tags += RepairBio(current.tags);
    current.sentence.doc_id =
        corpus.explicit_documents
            ? doc_id
            : source_name + "#" + std::to_string(corpus.sentences.size());
    local.tokens += current.sentence.size();
    corpus.sentences.push_back(std::move(current));
    current = LabelledSentence{};
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (IsBlank(line)) {
      flush();
      continue;
    }
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw ParseError(source_name, line_no,
                       "expected 2 tab-separated fields (TOKEN<TAB>TAG)");
    }
    std::string token = line.substr(0, tab);
    std::string tag = line.substr(tab + 1);
    if (token.empty() || tag.empty()) {
      throw ParseError(source_name, line_no, "empty token or tag field");
    }
    if (token == kDocStart) {
      flush();
      corpus.explicit_documents = true;
      doc_id = tag;
      continue;
    }
    current.sentence.tokens.push_back(std::move(token));
    current.tags.push_back(std::move(tag));
  }
  if (in.bad()) throw IoError("read failed: " + source_name);
  flush();

  corpus.task = TaskSpec::FromSequences(task_name, corpus.Labels(), false);
  local.sentences = corpus.sentences.size();
  if (report) report->Merge(local);
  return corpus;
}

Corpus ReadConll(const std::filesystem::path &path,
                 const std::string &task_name, IngestReport *report) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return ParseConll(in, path.string(), task_name, report);
}

void WriteConll(std::ostream &out, const Corpus &corpus) {
  const std::string *prev_doc = nullptr;
  for (const auto &ls : corpus.sentences) {
    if (corpus.explicit_documents &&
        (prev_doc == nullptr || *prev_doc != ls.sentence.doc_id)) {
      out << kDocStart << '\t' << ls.sentence.doc_id << "\n\n";
      prev_doc = &ls.sentence.doc_id;
    }
    for (std::size_t i = 0; i < ls.sentence.size(); ++i) {
      out << ls.sentence.tokens[i] << '\t' << ls.tags[i] << '\n';
    }
    out << '\n';
  }
}

void WriteConll(const std::filesystem::path &path, const Corpus &corpus) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  WriteConll(out, corpus);
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace kbc::tagdata
