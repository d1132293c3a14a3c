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
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "kbc/errors.h"
#include "kbc/kpeval/corpus_stats.h"
#include "kbc/kpeval/length_report.h"
#include "kbc/kpeval/report_format.h"
#include "kbc/kpeval/token_prf.h"
#include "kbc/numcore/random.h"
#include "kbc/tagdata/bio.h"
#include "test_util.h"

namespace kbc::kpeval {
namespace {

using tagdata::LabelSequence;
using Seqs = std::vector<LabelSequence>;

TEST(TokenPrfTest, IdentityIsPerfect) {
  Seqs gold = {{"B-Task", "I-Task", "O", "B-Process"}, {"O", "B-Material"}};
  for (EvalMode mode : {EvalMode::kUnlabelled, EvalMode::kLabelled}) {
    EvalReport r = TokenPrf(gold, gold, mode);
    EXPECT_EQ(r.micro.precision(), 1.0);
    EXPECT_EQ(r.micro.recall(), 1.0);
    EXPECT_EQ(r.micro.f1(), 1.0);
    for (const auto &[type, c] : r.per_type) EXPECT_EQ(c.f1(), 1.0) << type;
  }
  EXPECT_EQ(TokenPrf(gold, gold, EvalMode::kLabelled).per_type.size(), 3u);
}

TEST(TokenPrfTest, HalfOverlap) {
  // Gold positives {0, 1}, predicted {1, 2}: TP 1, FP 1, FN 1.
  Seqs gold = {{"B-Task", "I-Task", "O", "O"}};
  Seqs pred = {{"O", "B-Task", "I-Task", "O"}};
  EvalReport r = TokenPrf(gold, pred, EvalMode::kUnlabelled);
  EXPECT_EQ(r.micro, (PrfCounts{1, 2, 2}));
  EXPECT_EQ(r.micro.precision(), 0.5);
  EXPECT_EQ(r.micro.recall(), 0.5);
  EXPECT_EQ(r.micro.f1(), 0.5);
  EXPECT_TRUE(r.per_type.empty());
}

TEST(TokenPrfTest, LabelledVersusUnlabelled) {
  Seqs gold = {{"B-Task"}}, pred = {{"B-Process"}};
  EvalReport lab = TokenPrf(gold, pred, EvalMode::kLabelled);
  EXPECT_EQ(lab.micro.precision(), 0.0);
  EXPECT_EQ(lab.micro.recall(), 0.0);
  EXPECT_EQ(lab.micro.f1(), 0.0);
  EvalReport unl = TokenPrf(gold, pred, EvalMode::kUnlabelled);
  EXPECT_EQ(unl.micro.precision(), 1.0);
  EXPECT_EQ(unl.micro.recall(), 1.0);
  EXPECT_EQ(unl.micro.f1(), 1.0);
}

TEST(TokenPrfTest, PrefixIgnoredInLabelledMode) {
  Seqs gold = {{"B-Task", "I-Task"}}, pred = {{"B-Task", "B-Task"}};
  EXPECT_EQ(TokenPrf(gold, pred, EvalMode::kLabelled).micro.f1(), 1.0);
}

TEST(TokenPrfTest, ZeroDenominators) {
  Seqs gold = {{"O", "O"}}, pred = {{"O", "O"}};
  EvalReport r = TokenPrf(gold, pred, EvalMode::kLabelled);
  EXPECT_EQ(r.micro.precision(), 0.0);
  EXPECT_EQ(r.micro.recall(), 0.0);
  EXPECT_EQ(r.micro.f1(), 0.0);
  EXPECT_EQ(TokenPrf({}, {}, EvalMode::kUnlabelled).micro, PrfCounts{});
}

TEST(TokenPrfTest, Misalignment) {
  try {
    TokenPrf({{"O"}, {"O", "O"}}, {{"O"}, {"O"}}, EvalMode::kLabelled);
    FAIL() << "expected AlignmentError";
  } catch (const AlignmentError &e) {
    EXPECT_NE(std::string(e.what()).find("sentence 1"), std::string::npos);
  }
  EXPECT_THROW(TokenPrf({{"O"}}, {}, EvalMode::kLabelled), AlignmentError);
}

void RandomPair(numcore::Rng &rng, Seqs &gold, Seqs &pred) {
  const std::vector<std::string> types = {"Task", "Process", "Material"};
  gold.clear();
  pred.clear();
  const std::size_t n = rng.UniformInt(11);
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t len = rng.UniformInt(9);
    gold.push_back(kbc::testing::RandomWellFormed(rng, len, types));
    pred.push_back(kbc::testing::RandomAnyTags(rng, len, types));
  }
}

TEST(TokenPrfTest, MatchesBruteForceOracle) {
  numcore::Rng rng(1234);
  for (int trial = 0; trial < 1000; ++trial) {
    Seqs gold, pred;
    RandomPair(rng, gold, pred);
    for (bool labelled : {false, true}) {
      EvalReport r = TokenPrf(gold, pred, labelled ? EvalMode::kLabelled : EvalMode::kUnlabelled);
      auto o = kbc::testing::OracleMicro(gold, pred, labelled);
      ASSERT_EQ(r.micro.true_positive, o.tp);
      ASSERT_EQ(r.micro.predicted, o.predicted);
      ASSERT_EQ(r.micro.gold, o.gold);
      if (!labelled) continue;
      auto by_type = kbc::testing::OracleByType(gold, pred, true);
      ASSERT_EQ(r.per_type.size(), by_type.size());
      for (const auto &[type, c] : by_type) {
        ASSERT_EQ(r.per_type.at(type), (PrfCounts{c.tp, c.predicted, c.gold})) << type;
      }
    }
  }
}

TEST(TokenPrfTest, MicroIsSumAndUnlabelledDominates) {
  numcore::Rng rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    Seqs gold, pred;
    RandomPair(rng, gold, pred);
    EvalReport lab = TokenPrf(gold, pred, EvalMode::kLabelled);
    EvalReport unl = TokenPrf(gold, pred, EvalMode::kUnlabelled);
    PrfCounts sum;
    for (const auto &[t, c] : lab.per_type) sum += c;
    EXPECT_EQ(sum, lab.micro);
    EXPECT_GE(unl.micro.true_positive, lab.micro.true_positive);
    EXPECT_EQ(unl.micro.gold, lab.micro.gold);
    EXPECT_EQ(unl.micro.predicted, lab.micro.predicted);
  }
}

// ---- Corpus statistics ----------------------------------------------------

tagdata::Corpus SpanCorpus(const std::vector<std::pair<std::vector<std::string>,
                                                       LabelSequence>> &sents) {
  tagdata::Corpus c;
  for (const auto &[tokens, tags] : sents) {
    tagdata::LabelledSentence ls;
    ls.sentence.tokens = tokens;
    ls.tags = tags;
    c.sentences.push_back(ls);
  }
  return c;
}

TEST(CorpusStatsTest, HandCounted) {
  tagdata::Corpus c = SpanCorpus({
      {{"Neural", "nets", "for", "parsing"}, {"B-Process", "I-Process", "O", "B-Task"}},
      {{"neural", "nets", "and", "a", "b", "c", "d", "e"},
       {"B-Process", "I-Process", "O", "B-Material", "I-Material", "I-Material",
        "I-Material", "I-Material"}},
      {{"x", "y", "z"}, {"B-Task", "I-Task", "I-Task"}},
  });
  CorpusStats s = ComputeCorpusStats(c);
  // Mentions: "neural nets" x2 (case folded), "parsing", "a b c d e", "x y z".
  EXPECT_EQ(s.n_keyphrases, 5u);
  EXPECT_DOUBLE_EQ(s.proportion_singletons, 3.0 / 5.0);
  EXPECT_DOUBLE_EQ(s.proportion_single_word, 1.0 / 5.0);
  EXPECT_DOUBLE_EQ(s.proportion_len_ge2, 4.0 / 5.0);
  EXPECT_DOUBLE_EQ(s.proportion_len_ge3, 2.0 / 5.0);
  EXPECT_DOUBLE_EQ(s.proportion_len_ge5, 1.0 / 5.0);
}

TEST(CorpusStatsTest, EmptyCorpus) {
  CorpusStats s = ComputeCorpusStats(tagdata::Corpus{});
  EXPECT_EQ(s.n_keyphrases, 0u);
  EXPECT_EQ(s.proportion_singletons, 0.0);
  EXPECT_EQ(s.proportion_single_word, 0.0);
  EXPECT_EQ(s.proportion_len_ge2, 0.0);
  EXPECT_EQ(s.proportion_len_ge3, 0.0);
  EXPECT_EQ(s.proportion_len_ge5, 0.0);
}

TEST(CorpusStatsTest, PermutationInvariant) {
  numcore::Rng rng(5);
  tagdata::Corpus c;
  for (int s = 0; s < 30; ++s) {
    tagdata::LabelledSentence ls;
    const std::size_t len = 1 + rng.UniformInt(8);
    for (std::size_t i = 0; i < len; ++i) {
      ls.sentence.tokens.push_back("t" + std::to_string(rng.UniformInt(4)));
    }
    ls.tags = kbc::testing::RandomWellFormed(rng, len, {"A", "B"});
    c.sentences.push_back(ls);
  }
  CorpusStats a = ComputeCorpusStats(c);
  for (int k = 0; k < 10; ++k) {
    for (std::size_t i = c.sentences.size() - 1; i > 0; --i) {
      std::swap(c.sentences[i], c.sentences[rng.UniformInt(i + 1)]);
    }
    CorpusStats b = ComputeCorpusStats(c);
    EXPECT_EQ(a.n_keyphrases, b.n_keyphrases);
    EXPECT_EQ(a.proportion_singletons, b.proportion_singletons);
    EXPECT_EQ(a.proportion_single_word, b.proportion_single_word);
    EXPECT_EQ(a.proportion_len_ge2, b.proportion_len_ge2);
    EXPECT_EQ(a.proportion_len_ge3, b.proportion_len_ge3);
    EXPECT_EQ(a.proportion_len_ge5, b.proportion_len_ge5);
  }
}

TEST(CorpusStatsTest, TableLayout) {
  CorpusStats s{5730, 0.31, 0.18, 0.82, 0.51, 0.22};
  std::string t = FormatCorpusStats("SemEval", s);
  EXPECT_NE(t.find("5730"), std::string::npos);
  for (const char *pct : {"31%", "18%", "82%", "51%", "22%"}) {
    EXPECT_NE(t.find(pct), std::string::npos) << pct;
  }
}

// ---- Length-stratified recall ---------------------------------------------

TEST(LengthReportTest, IdentityAndAllOutside) {
  Seqs gold = {{"B-Task", "O", "B-Process", "I-Process"},
               {"B-Material", "I-Material", "I-Material", "O", "B-Task", "I-Task",
                "I-Task", "I-Task", "I-Task"}};
  for (const auto &b : LengthStratifiedReport(gold, gold)) {
    if (b.gold_spans == 0) continue;
    EXPECT_EQ(b.strict_recall(), 1.0) << b.name;
    EXPECT_EQ(b.token_recall(), 1.0) << b.name;
  }
  Seqs none;
  for (const auto &s : gold) none.push_back(LabelSequence(s.size(), "O"));
  auto buckets = LengthStratifiedReport(gold, none);
  for (const auto &b : buckets) {
    EXPECT_EQ(b.strict_recall(), 0.0) << b.name;
    EXPECT_EQ(b.token_recall(), 0.0) << b.name;
  }
  EXPECT_EQ(buckets[0].gold_spans, 1u);  // "1"
  EXPECT_EQ(buckets[1].gold_spans, 1u);  // "2"
  EXPECT_EQ(buckets[2].gold_spans, 1u);  // "3-4"
  EXPECT_EQ(buckets[3].gold_spans, 1u);  // ">=5"
}

TEST(LengthReportTest, FourOfFiveTokens) {
  Seqs gold = {{"B-Task", "I-Task", "I-Task", "I-Task", "I-Task"}};
  Seqs pred = {{"B-Task", "I-Task", "I-Task", "I-Task", "O"}};
  auto buckets = LengthStratifiedReport(gold, pred);
  const auto &ge5 = buckets.back();
  EXPECT_EQ(ge5.name, ">=5");
  EXPECT_EQ(ge5.strict_recall(), 0.0);
  EXPECT_DOUBLE_EQ(ge5.token_recall(), 0.8);
}

TEST(LengthReportTest, WrongTypeIsNotRecalled) {
  Seqs gold = {{"B-Task", "I-Task"}}, pred = {{"B-Process", "I-Process"}};
  auto buckets = LengthStratifiedReport(gold, pred);
  EXPECT_EQ(buckets[1].strict_recall(), 0.0);
  EXPECT_EQ(buckets[1].token_recall(), 0.0);
}

// ---- Results table --------------------------------------------------------

EvalReport Report(EvalMode mode, std::size_t tp, std::size_t pred, std::size_t gold) {
  EvalReport r;
  r.mode = mode;
  r.micro = {tp, pred, gold};
  return r;
}

TEST(ReportFormatTest, PerfectRow) {
  std::string t = FormatResultsTable(
      {{"BiLSTM", Report(EvalMode::kUnlabelled, 5, 5, 5), Report(EvalMode::kLabelled, 5, 5, 5)}});
  std::size_t count = 0;
  for (std::size_t at = t.find("100.00"); at != std::string::npos; at = t.find("100.00", at + 1)) {
    ++count;
  }
  EXPECT_EQ(count, 6u);
}

TEST(ReportFormatTest, ReferenceMultiWordRow) {
  EvalReport unl = Report(EvalMode::kUnlabelled, 7018, 9382, 10000);
  EvalReport lab = Report(EvalMode::kLabelled, 4409, 9383, 10000);
  EXPECT_EQ(Percent(unl.micro.precision()), "74.80");
  EXPECT_EQ(Percent(unl.micro.recall()), "70.18");
  EXPECT_EQ(Percent(unl.micro.f1()), "72.42");
  EXPECT_EQ(Percent(lab.micro.precision()), "46.99");
  EXPECT_EQ(Percent(lab.micro.recall()), "44.09");
  EXPECT_EQ(Percent(lab.micro.f1()), "45.49");
  std::string t = FormatResultsTable({{"BiLSTM + Multi-word", unl, lab}});
  EXPECT_NE(t.find("72.42"), std::string::npos);
  EXPECT_NE(t.find("45.49"), std::string::npos);
}

TEST(ReportFormatTest, MissingBlockIsDashes) {
  std::string t = FormatResultsTable({{"BiLSTM", Report(EvalMode::kUnlabelled, 1, 2, 2), std::nullopt}});
  const std::size_t row = t.find("BiLSTM");
  ASSERT_NE(row, std::string::npos);
  const std::string line = t.substr(row, t.find('\n', row) - row);
  const std::string labelled = line.substr(line.rfind('|') + 1);
  EXPECT_EQ(std::count(labelled.begin(), labelled.end(), '-'), 3);
  EXPECT_EQ(labelled.find_first_of("0123456789"), std::string::npos);
  EXPECT_NE(line.find("50.00"), std::string::npos);
  EXPECT_THROW(FormatResultsTable({}), ContractError);
}

TEST(ReportFormatTest, BestF1Marked) {
  std::string t = FormatResultsTable({{"a", Report(EvalMode::kUnlabelled, 1, 2, 2), std::nullopt},
                                      {"b", Report(EvalMode::kUnlabelled, 2, 2, 2), std::nullopt}});
  EXPECT_NE(t.find("100.00*"), std::string::npos);
  EXPECT_EQ(t.find("50.00*"), std::string::npos);
}

TEST(ReportFormatTest, JsonIsStable) {
  Seqs gold = {{"B-Task", "O"}}, pred = {{"B-Task", "B-Process"}};
  auto a = ToJson(TokenPrf(gold, pred, EvalMode::kLabelled)).dump();
  auto b = ToJson(TokenPrf(gold, pred, EvalMode::kLabelled)).dump();
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("\"labelled\""), std::string::npos);
}

}  // namespace
}  // namespace kbc::kpeval
