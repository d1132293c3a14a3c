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
#ifndef KBC_TAGDATA_TYPES_H_
#define KBC_TAGDATA_TYPES_H_

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace kbc::tagdata {

inline constexpr char kOutsideTag[] = "O";

// Character range [begin, end) into a source text.
struct CharSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  friend bool operator==(const CharSpan &, const CharSpan &) = default;
};

struct Sentence {
  std::vector<std::string> tokens;
  std::string doc_id;
  // Empty, or one entry per token.
  std::vector<CharSpan> char_offsets;

  std::size_t size() const { return tokens.size(); }
  friend bool operator==(const Sentence &, const Sentence &) = default;
};

// Typed keyphrase mention over tokens [start, end).
struct SpanAnnotation {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string label;

  std::size_t length() const { return end - start; }
  friend bool operator==(const SpanAnnotation &,
                         const SpanAnnotation &) = default;
};

// One tag per token, over the BIO alphabet of the owning task.
using LabelSequence = std::vector<std::string>;

// A task t and its tag alphabet. The alphabet always contains "O" at
// index 0; remaining tags are sorted, so equal tag sets give equal indices.
class TaskSpec {
 public:
  TaskSpec() : TaskSpec("", {}, false) {}
  TaskSpec(std::string name, const std::vector<std::string> &tags,
           bool is_main);

  // Collects the tag alphabet of a set of label sequences.
  static TaskSpec FromSequences(std::string name,
                                const std::vector<LabelSequence> &sequences,
                                bool is_main);

  int task_id = 0;
  std::string name;
  bool is_main = false;

  const std::vector<std::string> &tagset() const { return tagset_; }
  std::size_t num_tags() const { return tagset_.size(); }
  std::optional<std::size_t> IndexOf(const std::string &tag) const;
  bool Contains(const std::string &tag) const {
    return IndexOf(tag).has_value();
  }
  const std::string &tag(std::size_t i) const { return tagset_.at(i); }

  // Span types X for which B-X or I-X is in the alphabet, sorted.
  std::vector<std::string> SpanTypes() const;

 private:
  std::vector<std::string> tagset_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct LabelledSentence {
  Sentence sentence;
  LabelSequence tags;
};

// Training set D_t of task t.
struct Corpus {
  TaskSpec task;
  std::vector<LabelledSentence> sentences;
  // True when the source carried document boundaries (brat files or
  // -DOCSTART- lines); otherwise each sentence is its own document.
  bool explicit_documents = false;

  std::size_t size() const { return sentences.size(); }
  bool empty() const { return sentences.empty(); }
  std::vector<LabelSequence> Labels() const;
};

// Counts of the repairs made while ingesting a corpus.
struct IngestReport {
  std::size_t sentences = 0;
  std::size_t tokens = 0;
  std::size_t repaired_tags = 0;     // ill-formed I-X rewritten to B-X
  std::size_t expanded_spans = 0;    // span boundary moved to a token edge
  std::size_t dropped_overlaps = 0;  // shorter overlapping span discarded
  std::size_t empty_spans = 0;       // span covering no token
  std::vector<std::string> dropped_ids;

  void Merge(const IngestReport &other);
};

}  // namespace kbc::tagdata

#endif  // KBC_TAGDATA_TYPES_H_
