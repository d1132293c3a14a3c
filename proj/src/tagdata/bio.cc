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
#include "kbc/tagdata/bio.h"

#include <algorithm>
#include <set>

#include "kbc/errors.h"

namespace kbc::tagdata {

TaskSpec::TaskSpec(std::string name, const std::vector<std::string> &tags,
                   bool is_main)
    : name(std::move(name)), is_main(is_main) {
  std::set<std::string> sorted(tags.begin(), tags.end());
  sorted.erase(kOutsideTag);
  tagset_.push_back(kOutsideTag);
  tagset_.insert(tagset_.end(), sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < tagset_.size(); ++i) index_[tagset_[i]] = i;
}

TaskSpec TaskSpec::FromSequences(std::string name,
                                 const std::vector<LabelSequence> &sequences,
                                 bool is_main) {
  std::vector<std::string> tags;
  for (const auto &seq : sequences) tags.insert(tags.end(), seq.begin(), seq.end());
  return TaskSpec(std::move(name), tags, is_main);
}

std::optional<std::size_t> TaskSpec::IndexOf(const std::string &tag) const {
  auto it = index_.find(tag);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> TaskSpec::SpanTypes() const {
  std::set<std::string> types;
  for (const auto &t : tagset_) {
    BioTag b = ParseTag(t);
    if (b.prefix == 'B' || b.prefix == 'I') types.emplace(b.type);
  }
  return {types.begin(), types.end()};
}

std::vector<LabelSequence> Corpus::Labels() const {
  std::vector<LabelSequence> out;
  out.reserve(sentences.size());
  for (const auto &s : sentences) out.push_back(s.tags);
  return out;
}

void IngestReport::Merge(const IngestReport &other) {
  sentences += other.sentences;
  tokens += other.tokens;
  repaired_tags += other.repaired_tags;
  expanded_spans += other.expanded_spans;
  dropped_overlaps += other.dropped_overlaps;
  empty_spans += other.empty_spans;
  dropped_ids.insert(dropped_ids.end(), other.dropped_ids.begin(),
                     other.dropped_ids.end());
}

BioTag ParseTag(std::string_view tag) {
  if (tag == kOutsideTag) return {'O', {}};
  if (tag.size() > 2 && (tag[0] == 'B' || tag[0] == 'I') && tag[1] == '-') {
    return {tag[0], tag.substr(2)};
  }
  return {'\0', tag};
}

std::string_view TagType(std::string_view tag) { return ParseTag(tag).type; }

bool IsWellFormed(const LabelSequence &tags) {
  BioTag prev{'O', {}};
  for (const auto &t : tags) {
    BioTag cur = ParseTag(t);
    if (cur.prefix == 'I' &&
        !((prev.prefix == 'B' || prev.prefix == 'I') && prev.type == cur.type)) {
      return false;
    }
    prev = cur;
  }
  return true;
}

std::size_t RepairBio(LabelSequence &tags) {
  std::size_t repaired = 0;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    BioTag cur = ParseTag(tags[i]);
    if (cur.prefix != 'I') continue;
    bool continues = false;
    if (i > 0) {
      BioTag prev = ParseTag(tags[i - 1]);
      continues =
          (prev.prefix == 'B' || prev.prefix == 'I') && prev.type == cur.type;
    }
    if (!continues) {
      tags[i][0] = 'B';
      ++repaired;
    }
  }
  return repaired;
}

LabelSequence SpansToBio(std::size_t n,
                         const std::vector<SpanAnnotation> &spans) {
  LabelSequence tags(n, kOutsideTag);
  std::vector<bool> covered(n, false);
  for (const auto &s : spans) {
    if (s.start >= s.end || s.end > n) {
      throw ContractError("span [" + std::to_string(s.start) + "," +
                          std::to_string(s.end) + ") outside sentence of " +
                          std::to_string(n) + " tokens");
    }
    for (std::size_t i = s.start; i < s.end; ++i) {
      if (covered[i]) {
        throw ContractError("overlapping spans at token " + std::to_string(i));
      }
      covered[i] = true;
      tags[i] = (i == s.start ? "B-" : "I-") + s.label;
    }
  }
  return tags;
}

std::vector<SpanAnnotation> BioToSpans(const LabelSequence &tags) {
  std::vector<SpanAnnotation> spans;
  bool open = false;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    BioTag cur = ParseTag(tags[i]);
    bool continues = open && cur.prefix == 'I' && spans.back().label == cur.type;
    if (continues) {
      spans.back().end = i + 1;
      continue;
    }
    open = false;
    if (cur.prefix == 'B' || cur.prefix == 'I') {
      spans.push_back({i, i + 1, std::string(cur.type)});
      open = true;
    }
  }
  return spans;
}

}  // namespace kbc::tagdata
