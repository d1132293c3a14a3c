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
#include "kbc/tagdata/brat.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "kbc/errors.h"
#include "kbc/tagdata/bio.h"
#include "kbc/tagdata/tokenizer.h"

namespace kbc::tagdata {

namespace {

std::string ReadFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path.string());
  return ss.str();
}

bool ParseOffset(std::string_view s, std::size_t *out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::vector<std::string_view> SplitOn(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

struct TokenSpan {
  std::size_t start;
  std::size_t end;
  std::size_t order;
  const TextBoundAnnotation *ann;
};

}  // namespace

std::vector<TextBoundAnnotation> ParseAnnotations(std::string_view ann,
                                                  const std::string &source) {
  std::vector<TextBoundAnnotation> out;
  std::size_t line_no = 0;
  for (std::string_view line : SplitOn(ann, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line[0] != 'T') continue;
    auto fields = SplitOn(line, '\t');
    if (fields.size() < 2) {
      throw ParseError(source, line_no, "text-bound line without a tab");
    }
    TextBoundAnnotation a;
    a.id = std::string(fields[0]);
    std::string_view body = fields[1];
    std::size_t sp = body.find(' ');
    if (sp == std::string_view::npos || sp == 0) {
      throw ParseError(source, line_no, "expected '<Type> <start> <end>'");
    }
    a.type = std::string(body.substr(0, sp));
    bool first = true;
    for (std::string_view frag : SplitOn(body.substr(sp + 1), ';')) {
      auto nums = SplitOn(frag, ' ');
      std::size_t b = 0, e = 0;
      if (nums.size() != 2 || !ParseOffset(nums[0], &b) ||
          !ParseOffset(nums[1], &e)) {
        throw ParseError(source, line_no, "bad offsets in " + a.id);
      }
      if (first) a.begin = b;
      a.end = e;
      first = false;
    }
    out.push_back(std::move(a));
  }
  return out;
}

Corpus BuildBratDocument(std::string_view text,
                         const std::vector<TextBoundAnnotation> &annotations,
                         const std::string &doc_id,
                         const std::string &task_name, IngestReport *report) {
  IngestReport local;
  const std::vector<Token> tokens = Tokenize(text);

  std::vector<TokenSpan> spans;
  for (std::size_t k = 0; k < annotations.size(); ++k) {
    const auto &a = annotations[k];
    if (a.end > text.size() || a.begin > text.size()) {
      throw AnnotationError(a.id, "offset " + std::to_string(a.end) +
                                      " beyond text length " +
                                      std::to_string(text.size()));
    }
    if (a.begin >= a.end) {
      throw AnnotationError(a.id, "empty or inverted character range");
    }
    std::size_t first = tokens.size(), last = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (tokens[i].begin < a.end && tokens[i].end > a.begin) {
        first = std::min(first, i);
        last = i;
      }
    }
    if (first == tokens.size()) {
      ++local.empty_spans;
      continue;
    }
    if (a.begin > tokens[first].begin || a.end < tokens[last].end) {
      ++local.expanded_spans;
    }
    spans.push_back({first, last + 1, k, &a});
  }

  // Longest first, then earliest start, then file order.
  std::vector<TokenSpan> ranked = spans;
  std::sort(ranked.begin(), ranked.end(), [](const TokenSpan &x, const TokenSpan &y) {
    std::size_t lx = x.end - x.start, ly = y.end - y.start;
    if (lx != ly) return lx > ly;
    if (x.start != y.start) return x.start < y.start;
    return x.order < y.order;
  });
  std::vector<bool> taken(tokens.size(), false);
  std::vector<TokenSpan> kept;
  for (const auto &s : ranked) {
    bool clash = false;
    for (std::size_t i = s.start; i < s.end; ++i) clash = clash || taken[i];
    if (clash) {
      ++local.dropped_overlaps;
      local.dropped_ids.push_back(doc_id + ":" + s.ann->id);
      continue;
    }
    for (std::size_t i = s.start; i < s.end; ++i) taken[i] = true;
    kept.push_back(s);
  }
  std::sort(kept.begin(), kept.end(),
            [](const TokenSpan &x, const TokenSpan &y) { return x.start < y.start; });

  // Sentence boundaries, minus those that would cut a kept span.
  std::set<std::size_t> cuts;
  for (auto [b, e] : SegmentSentences(text, tokens)) cuts.insert(e);
  for (const auto &s : kept) {
    for (std::size_t i = s.start + 1; i < s.end; ++i) cuts.erase(i);
  }

  Corpus corpus;
  corpus.explicit_documents = true;
  std::size_t begin = 0;
  std::size_t next_span = 0;
  for (std::size_t end : cuts) {
    if (end <= begin) continue;
    LabelledSentence ls;
    ls.sentence.doc_id = doc_id;
    for (std::size_t i = begin; i < end; ++i) {
      ls.sentence.tokens.push_back(tokens[i].text);
      ls.sentence.char_offsets.push_back({tokens[i].begin, tokens[i].end});
    }
    std::vector<SpanAnnotation> local_spans;
    while (next_span < kept.size() && kept[next_span].start < end) {
      const auto &s = kept[next_span++];
      local_spans.push_back({s.start - begin, s.end - begin, s.ann->type});
    }
    ls.tags = SpansToBio(ls.sentence, local_spans);
    local.tokens += ls.sentence.size();
    corpus.sentences.push_back(std::move(ls));
    begin = end;
  }

  corpus.task = TaskSpec::FromSequences(task_name, corpus.Labels(), false);
  local.sentences = corpus.sentences.size();
  if (report) report->Merge(local);
  return corpus;
}

Corpus ReadBrat(const std::filesystem::path &txt_path,
                const std::filesystem::path &ann_path,
                const std::string &task_name, IngestReport *report) {
  const std::string text = ReadFile(txt_path);
  const std::string ann = ReadFile(ann_path);
  auto annotations = ParseAnnotations(ann, ann_path.string());
  return BuildBratDocument(text, annotations, txt_path.stem().string(),
                           task_name, report);
}

Corpus ReadBratDirectory(const std::filesystem::path &dir,
                         const std::string &task_name, IngestReport *report) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw IoError("not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> anns;
  for (const auto &entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".ann") anns.push_back(entry.path());
  }
  std::sort(anns.begin(), anns.end());
  Corpus all;
  all.explicit_documents = true;
  for (const auto &ann : anns) {
    auto txt = ann;
    txt.replace_extension(".txt");
    if (!std::filesystem::exists(txt)) {
      throw IoError("missing text file for " + ann.string());
    }
    Corpus doc = ReadBrat(txt, ann, task_name, report);
    for (auto &s : doc.sentences) all.sentences.push_back(std::move(s));
  }
  all.task = TaskSpec::FromSequences(task_name, all.Labels(), false);
  return all;
}

}  // namespace kbc::tagdata
