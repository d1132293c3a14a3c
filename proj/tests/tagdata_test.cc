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
#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "kbc/errors.h"
#include "kbc/numcore/random.h"
#include "kbc/tagdata/bio.h"
#include "kbc/tagdata/brat.h"
#include "kbc/tagdata/conll.h"
#include "kbc/tagdata/embeddings.h"
#include "kbc/tagdata/split.h"
#include "kbc/tagdata/tokenizer.h"
#include "kbc/tagdata/vocab.h"
#include "test_util.h"

namespace kbc::tagdata {
namespace {

using kbc::testing::TempDir;
using kbc::testing::WriteFile;

Corpus ParseString(const std::string &text, IngestReport *report = nullptr) {
  std::istringstream in(text);
  return ParseConll(in, "mem", "main", report);
}

// ---- BIO ------------------------------------------------------------------

TEST(BioTest, SpansToBioExamples) {
  EXPECT_EQ(SpansToBio(4, {{0, 2, "Process"}, {3, 4, "Task"}}),
            (LabelSequence{"B-Process", "I-Process", "O", "B-Task"}));
  EXPECT_EQ(SpansToBio(3, {}), (LabelSequence{"O", "O", "O"}));
  EXPECT_EQ(SpansToBio(3, {{0, 3, "X"}}), (LabelSequence{"B-X", "I-X", "I-X"}));
}

TEST(BioTest, SpansToBioRejectsBadSpans) {
  EXPECT_THROW(SpansToBio(3, {{0, 2, "X"}, {1, 3, "Y"}}), ContractError);
  EXPECT_THROW(SpansToBio(3, {{2, 4, "X"}}), ContractError);
  EXPECT_THROW(SpansToBio(3, {{1, 1, "X"}}), ContractError);
}

TEST(BioTest, BioToSpansExamples) {
  EXPECT_EQ(BioToSpans({"B-Task"}), (std::vector<SpanAnnotation>{{0, 1, "Task"}}));
  EXPECT_TRUE(BioToSpans({"O", "O", "O"}).empty());
  // Hand decoding: a B- always opens a new span, even of the same type.
  EXPECT_EQ(BioToSpans({"B-Process", "I-Process", "B-Process"}),
            (std::vector<SpanAnnotation>{{0, 2, "Process"}, {2, 3, "Process"}}));
  // I- of a different type starts a fresh span.
  EXPECT_EQ(BioToSpans({"B-Task", "I-Process"}),
            (std::vector<SpanAnnotation>{{0, 1, "Task"}, {1, 2, "Process"}}));
}

TEST(BioTest, RepairRule) {
  LabelSequence t = {"I-Task", "I-Task", "O", "I-Process", "B-Task", "I-Process"};
  EXPECT_FALSE(IsWellFormed(t));
  EXPECT_EQ(RepairBio(t), 3u);
  EXPECT_EQ(t, (LabelSequence{"B-Task", "I-Task", "O", "B-Process", "B-Task",
                              "B-Process"}));
  EXPECT_TRUE(IsWellFormed(t));
  EXPECT_EQ(RepairBio(t), 0u);
}

TEST(BioTest, RoundTripProperty) {
  numcore::Rng rng(71);
  const std::vector<std::string> types = {"Task", "Process", "Material"};
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 1 + rng.UniformInt(12);
    LabelSequence x = kbc::testing::RandomWellFormed(rng, n, types);
    ASSERT_TRUE(IsWellFormed(x));
    ASSERT_EQ(SpansToBio(n, BioToSpans(x)), x);
    auto spans = kbc::testing::RandomSpans(rng, n, types);
    ASSERT_EQ(BioToSpans(SpansToBio(n, spans)), spans);
  }
}

TEST(BioTest, NonBioTagsPassThrough) {
  EXPECT_EQ(ParseTag("NN").prefix, '\0');
  EXPECT_EQ(TagType("NN"), "NN");
  EXPECT_EQ(TagType("B-Task"), "Task");
  EXPECT_EQ(TagType("O"), "");
}

// ---- CoNLL ----------------------------------------------------------------

TEST(ConllTest, TwoTokenSentence) {
  Corpus c = ParseString("We\tO\nfind\tO\n\n");
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.sentences[0].sentence.tokens, (std::vector<std::string>{"We", "find"}));
  EXPECT_EQ(c.sentences[0].tags, (LabelSequence{"O", "O"}));
}

TEST(ConllTest, ProcessSpan) {
  Corpus c = ParseString("log-linear\tB-Process\ninterpolation\tI-Process\n");
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(BioToSpans(c.sentences[0].tags),
            (std::vector<SpanAnnotation>{{0, 2, "Process"}}));
}

TEST(ConllTest, RepairsLeadingInside) {
  IngestReport report;
  Corpus c = ParseString("x\tI-Task\ny\tO\n", &report);
  EXPECT_EQ(c.sentences[0].tags, (LabelSequence{"B-Task", "O"}));
  EXPECT_EQ(report.repaired_tags, 1u);
  EXPECT_TRUE(c.task.Contains("B-Task"));
}

TEST(ConllTest, ParseErrorCarriesLine) {
  try {
    ParseString("a\tO\nb O\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.file(), "mem");
  }
  EXPECT_THROW(ParseString("a\tO\textra\n"), ParseError);
}

TEST(ConllTest, MissingFileIsIoError) {
  EXPECT_THROW(ReadConll("/nonexistent/x.conll", "main"), IoError);
}

TEST(ConllTest, DocumentsAndCrlf) {
  Corpus c = ParseString(
      "-DOCSTART-\td1\r\n\r\na\tO\r\n\r\nb\tB-Task\r\n\r\n-DOCSTART-\td2\r\n\r\nc\tO\r\n");
  ASSERT_EQ(c.size(), 3u);
  EXPECT_TRUE(c.explicit_documents);
  EXPECT_EQ(c.sentences[0].sentence.doc_id, "d1");
  EXPECT_EQ(c.sentences[1].sentence.doc_id, "d1");
  EXPECT_EQ(c.sentences[2].sentence.doc_id, "d2");
  Corpus plain = ParseString("a\tO\n\nb\tO\n");
  EXPECT_FALSE(plain.explicit_documents);
  EXPECT_NE(plain.sentences[0].sentence.doc_id, plain.sentences[1].sentence.doc_id);
}

TEST(ConllTest, WriteIsIdempotent) {
  const std::string src = "-DOCSTART-\td1\r\n\r\na\tO\r\nb\tI-Task\r\n\r\n\r\nc\tO";
  std::ostringstream once, twice;
  WriteConll(once, ParseString(src));
  WriteConll(twice, ParseString(once.str()));
  EXPECT_EQ(once.str(), twice.str());
  EXPECT_EQ(once.str().find('\r'), std::string::npos);
}

TEST(ConllTest, IngestedSequencesAreWellFormed) {
  numcore::Rng rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    const std::size_t n = 1 + rng.UniformInt(10);
    for (const auto &t : kbc::testing::RandomAnyTags(rng, n, {"A", "B"})) {
      text += "w\t" + t + "\n";
    }
    for (const auto &s : ParseString(text).sentences) EXPECT_TRUE(IsWellFormed(s.tags));
  }
}

// ---- Tokenizer ------------------------------------------------------------

std::vector<std::string> Texts(const std::vector<Token> &tokens) {
  std::vector<std::string> out;
  for (const auto &t : tokens) out.push_back(t.text);
  return out;
}

TEST(TokenizerTest, Rules) {
  EXPECT_EQ(Texts(Tokenize("log-linear models (e.g. 3.5%), don't TCP/IP.")),
            (std::vector<std::string>{"log-linear", "models", "(", "e.g", ".",
                                      "3.5", "%", ")", ",", "don't", "TCP/IP",
                                      "."}));
  EXPECT_EQ(Texts(Tokenize("  -a- ")), (std::vector<std::string>{"-", "a", "-"}));
  EXPECT_EQ(Texts(Tokenize("na\xc3\xafve")), (std::vector<std::string>{"na\xc3\xafve"}));
  auto toks = Tokenize("an oracle");
  ASSERT_EQ(toks.size(), 2u);
  EXPECT_EQ(toks[1].begin, 3u);
  EXPECT_EQ(toks[1].end, 9u);
}

TEST(TokenizerTest, Segmentation) {
  const std::string text = "We parse. It works, e.g. here! okay? Yes\nNext line";
  auto toks = Tokenize(text);
  auto ranges = SegmentSentences(text, toks);
  std::vector<std::vector<std::string>> sents;
  for (auto [b, e] : ranges) {
    std::vector<std::string> s;
    for (std::size_t i = b; i < e; ++i) s.push_back(toks[i].text);
    sents.push_back(s);
  }
  // "here! okay?" stays together: the next token is lowercase.
  ASSERT_EQ(sents.size(), 4u);
  EXPECT_EQ(sents[0], (std::vector<std::string>{"We", "parse", "."}));
  EXPECT_EQ(sents[1], (std::vector<std::string>{"It", "works", ",", "e.g", ".",
                                                "here", "!", "okay", "?"}));
  EXPECT_EQ(sents[2], (std::vector<std::string>{"Yes"}));
  EXPECT_EQ(sents[3], (std::vector<std::string>{"Next", "line"}));
}

// ---- brat -----------------------------------------------------------------

TEST(BratTest, OneSpan) {
  auto anns = ParseAnnotations("T1\tTask 3 9\toracle\n", "doc.ann");
  Corpus c = BuildBratDocument("an oracle", anns, "doc", "main");
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.sentences[0].tags, (LabelSequence{"O", "B-Task"}));
  EXPECT_EQ(c.sentences[0].sentence.doc_id, "doc");
  EXPECT_TRUE(c.explicit_documents);
}

TEST(BratTest, NoAnnotationsIsAllOutside) {
  Corpus c = BuildBratDocument("We study parsing.", ParseAnnotations("", "x"), "d", "m");
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.sentences[0].tags, (LabelSequence{"O", "O", "O", "O"}));
}

TEST(BratTest, OverlapKeepsLongest) {
  // Tokens: log-linear(0,10) interpolation(11,24) works(25,30) .(30,31)
  const std::string text = "log-linear interpolation works.";
  auto anns = ParseAnnotations(
      "T1\tTask 11 24\tinterpolation\nT2\tProcess 0 24\tlog-linear interpolation\n",
      "x.ann");
  IngestReport report;
  Corpus c = BuildBratDocument(text, anns, "d", "m", &report);
  EXPECT_EQ(c.sentences[0].tags,
            (LabelSequence{"B-Process", "I-Process", "O", "O"}));
  EXPECT_EQ(report.dropped_overlaps, 1u);
  EXPECT_EQ(report.dropped_ids, (std::vector<std::string>{"d:T1"}));
}

TEST(BratTest, OverlapTieGoesToEarlierStartThenFileOrder) {
  const std::string text = "a b c";
  IngestReport r1;
  Corpus c1 = BuildBratDocument(
      text, ParseAnnotations("T1\tX 2 5\tb c\nT2\tY 0 3\ta b\n", "x"), "d", "m", &r1);
  EXPECT_EQ(c1.sentences[0].tags, (LabelSequence{"B-Y", "I-Y", "O"}));
  EXPECT_EQ(r1.dropped_ids, (std::vector<std::string>{"d:T1"}));
  IngestReport r2;
  Corpus c2 = BuildBratDocument(
      text, ParseAnnotations("T1\tX 0 3\ta b\nT2\tY 0 3\ta b\n", "x"), "d", "m", &r2);
  EXPECT_EQ(c2.sentences[0].tags, (LabelSequence{"B-X", "I-X", "O"}));
  EXPECT_EQ(r2.dropped_ids, (std::vector<std::string>{"d:T2"}));
}

TEST(BratTest, PartialTokenIsExpanded) {
  IngestReport report;
  Corpus c = BuildBratDocument(
      "an oracle", ParseAnnotations("T1\tTask 4 9\tracle\n", "x"), "d", "m", &report);
  EXPECT_EQ(c.sentences[0].tags, (LabelSequence{"O", "B-Task"}));
  EXPECT_EQ(report.expanded_spans, 1u);
}

TEST(BratTest, DiscontinuousAndSkippedLines) {
  auto anns = ParseAnnotations(
      "# comment\nT1\tMaterial 0 2;6 9\tan oracle\nR1\tHyponym Arg1:T1 Arg2:T1\n"
      "A1\tNeg T1\n",
      "x");
  ASSERT_EQ(anns.size(), 1u);
  EXPECT_EQ(anns[0].begin, 0u);
  EXPECT_EQ(anns[0].end, 9u);
}

TEST(BratTest, BadOffsetsNameTheAnnotation) {
  try {
    BuildBratDocument("short", ParseAnnotations("T7\tTask 2 40\tx\n", "x"), "d", "m");
    FAIL() << "expected AnnotationError";
  } catch (const AnnotationError &e) {
    EXPECT_EQ(e.annotation_id(), "T7");
  }
  EXPECT_THROW(ParseAnnotations("T1\tTask x 4\tabc\n", "x"), ParseError);
}

TEST(BratTest, SentenceBoundaryNeverSplitsSpan) {
  const std::string text = "We use e.g. Fig. 3 here. Next one.";
  auto toks = Tokenize(text);
  // Span over "Fig. 3": from 'F' to end of "3".
  const std::size_t b = text.find("Fig"), e = text.find("3") + 1;
  auto anns = ParseAnnotations(
      "T1\tMaterial " + std::to_string(b) + " " + std::to_string(e) + "\tFig. 3\n", "x");
  Corpus c = BuildBratDocument(text, anns, "d", "m");
  std::size_t spans = 0;
  for (const auto &s : c.sentences) {
    for (const auto &sp : BioToSpans(s.tags)) {
      ++spans;
      EXPECT_EQ(sp.length(), 3u);
    }
  }
  EXPECT_EQ(spans, 1u);
}

TEST(BratTest, ReadDirectory) {
  TempDir dir("brat");
  WriteFile(dir / "b.txt", "an oracle");
  WriteFile(dir / "b.ann", "T1\tTask 3 9\toracle\n");
  WriteFile(dir / "a.txt", "we parse");
  WriteFile(dir / "a.ann", "");
  Corpus c = ReadBratDirectory(dir.path(), "main");
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.sentences[0].sentence.doc_id, "a");
  EXPECT_EQ(c.sentences[1].sentence.doc_id, "b");
}

// ---- Vocabulary -----------------------------------------------------------

Corpus TokensCorpus(const std::vector<std::vector<std::string>> &sents) {
  Corpus c;
  for (const auto &s : sents) {
    LabelledSentence ls;
    ls.sentence.tokens = s;
    ls.tags.assign(s.size(), "O");
    c.sentences.push_back(ls);
  }
  return c;
}

TEST(VocabTest, Examples) {
  Corpus one = TokensCorpus({{"a", "b"}});
  const Corpus *c1[] = {&one};
  EXPECT_EQ(BuildVocab(c1).size(), 3u);

  Corpus x = TokensCorpus({{"a"}}), y = TokensCorpus({{"a", "c"}});
  const Corpus *xy[] = {&x, &y};
  const Corpus *yx[] = {&y, &x};
  Vocabulary v1 = BuildVocab(xy), v2 = BuildVocab(yx);
  EXPECT_EQ(v1.size(), 3u);
  auto sorted = [](std::vector<std::string> t) {
    std::sort(t.begin(), t.end());
    return t;
  };
  EXPECT_EQ(sorted(v1.tokens()), sorted(v2.tokens()));
  EXPECT_EQ(v1.token(Vocabulary::kUnknown), Vocabulary::kUnknownToken);
}

TEST(VocabTest, StableIndicesAndLookup) {
  Corpus a = TokensCorpus({{"The", "cat"}, {"sat", "the"}});
  const Corpus *cs[] = {&a};
  Vocabulary v = BuildVocab(cs);
  EXPECT_EQ(BuildVocab(cs), v);
  EXPECT_EQ(v.Lookup("cat"), *v.Find("cat"));
  EXPECT_EQ(v.Lookup("zebra"), Vocabulary::kUnknown);
  EXPECT_EQ(v.Lookup("CAT"), *v.Find("cat"));  // lowercase fallback
  std::vector<const Corpus *> none;
  EXPECT_THROW(BuildVocab(none), ContractError);
}

TEST(VocabTest, EmbeddingVocabIsAdded) {
  Corpus a = TokensCorpus({{"a"}});
  const Corpus *cs[] = {&a};
  std::vector<std::string> emb = {"z", "a"};
  Vocabulary v = BuildVocab(cs, &emb);
  EXPECT_EQ(v.size(), 3u);
  EXPECT_TRUE(v.Find("z").has_value());
}

// ---- Embeddings -----------------------------------------------------------

TEST(EmbeddingTest, FileRowCopied) {
  TempDir dir("emb");
  std::string line = "the";
  std::vector<double> values;
  for (int i = 0; i < 50; ++i) {
    values.push_back(0.1 + 0.01 * i);
    line += " " + std::to_string(values.back());
  }
  WriteFile(dir / "e.txt", line + "\n");
  Vocabulary v;
  v.Add("the");
  v.Add("cat");
  EmbeddingCoverage cov;
  EmbeddingTable t = LoadEmbeddings(dir / "e.txt", v, 50, 3, &cov);
  for (int i = 0; i < 50; ++i) EXPECT_DOUBLE_EQ(t.matrix.at(1, i), std::stod(std::to_string(values[i])));
  EXPECT_EQ(cov.covered, 1u);
  EXPECT_DOUBLE_EQ(cov.ratio(), 0.5);
  EmbeddingTable r = RandomEmbeddings(v, 50, 3);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(t.matrix.at(2, i), r.matrix.at(2, i));
}

TEST(EmbeddingTest, EmptyFileKeepsRandomRows) {
  TempDir dir("emb");
  WriteFile(dir / "e.txt", "");
  Vocabulary v;
  v.Add("x");
  EmbeddingCoverage cov;
  EmbeddingTable t = LoadEmbeddings(dir / "e.txt", v, 4, 9, &cov);
  EXPECT_EQ(cov.ratio(), 0.0);
  EXPECT_EQ(t.matrix, RandomEmbeddings(v, 4, 9).matrix);
  for (double x : t.matrix.data()) {
    EXPECT_LE(std::abs(x), kEmbeddingInitRange);
  }
}

TEST(EmbeddingTest, LowercaseFallback) {
  TempDir dir("emb");
  WriteFile(dir / "e.txt", "the 1 2 3\n");
  Vocabulary v;
  v.Add("The");
  EmbeddingTable t = LoadEmbeddings(dir / "e.txt", v, 3, 1);
  EXPECT_EQ(t.matrix.at(1, 0), 1.0);
  EXPECT_EQ(t.matrix.at(1, 2), 3.0);
}

TEST(EmbeddingTest, BadLines) {
  TempDir dir("emb");
  WriteFile(dir / "e.txt", "a 1 2 3\nb 1 2\n");
  Vocabulary v;
  try {
    LoadEmbeddings(dir / "e.txt", v, 3, 1);
    FAIL() << "expected ParseError";
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 2u);
  }
  WriteFile(dir / "f.txt", "a 1 x 3\n");
  EXPECT_THROW(LoadEmbeddings(dir / "f.txt", v, 3, 1), ParseError);
}

// ---- Split ----------------------------------------------------------------

Corpus NumberedCorpus(std::size_t n) {
  Corpus c;
  for (std::size_t i = 0; i < n; ++i) {
    LabelledSentence ls;
    ls.sentence.tokens = {"s" + std::to_string(i)};
    ls.sentence.doc_id = "doc" + std::to_string(i);
    ls.tags = {"O"};
    c.sentences.push_back(ls);
  }
  return c;
}

TEST(SplitTest, NineDocsOneThird) {
  Corpus c = NumberedCorpus(9);
  CorpusSplit s = SplitCorpus(c, 1.0 / 3.0, 5);
  EXPECT_EQ(s.train.size(), 6u);
  EXPECT_EQ(s.test.size(), 3u);
  CorpusSplit again = SplitCorpus(c, 1.0 / 3.0, 5);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(again.test.sentences[i].sentence, s.test.sentences[i].sentence);
  }
}

TEST(SplitTest, DisjointUnionProperty) {
  numcore::Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng.UniformInt(30);
    Corpus c = NumberedCorpus(n);
    // Multi-sentence documents.
    for (auto &ls : c.sentences) {
      ls.sentence.doc_id = "d" + std::to_string(rng.UniformInt(n / 2 + 1));
    }
    std::set<std::string> docs;
    for (auto &ls : c.sentences) docs.insert(ls.sentence.doc_id);
    if (docs.size() < 2) continue;
    CorpusSplit s = SplitCorpus(c, 0.3, trial);
    std::vector<std::string> all;
    std::set<std::string> train_docs;
    for (auto &ls : s.train.sentences) {
      all.push_back(ls.sentence.tokens[0]);
      train_docs.insert(ls.sentence.doc_id);
    }
    for (auto &ls : s.test.sentences) {
      all.push_back(ls.sentence.tokens[0]);
      EXPECT_FALSE(train_docs.count(ls.sentence.doc_id));
    }
    EXPECT_FALSE(s.train.empty());
    EXPECT_FALSE(s.test.empty());
    std::sort(all.begin(), all.end());
    std::vector<std::string> orig;
    for (auto &ls : c.sentences) orig.push_back(ls.sentence.tokens[0]);
    std::sort(orig.begin(), orig.end());
    EXPECT_EQ(all, orig);
  }
}

TEST(SplitTest, Errors) {
  EXPECT_THROW(SplitCorpus(NumberedCorpus(5), 0.0, 1), SplitError);
  EXPECT_THROW(SplitCorpus(NumberedCorpus(5), 1.0, 1), SplitError);
  EXPECT_THROW(SplitCorpus(NumberedCorpus(1), 0.5, 1), SplitError);
}

}  // namespace
}  // namespace kbc::tagdata
