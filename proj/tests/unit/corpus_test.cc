// Copyright 2026 The phrasefix Authors.
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
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "phrasefix/corpus.h"
#include "phrasefix/error.h"
#include "phrasefix/noise_sim.h"
#include "test_util.h"

namespace phrasefix {
namespace {

using Tokens = std::vector<std::string>;

TEST(Tokenize, LowercasesAndSplits) {
  EXPECT_EQ(tokenize("Minister medications"), (Tokens{"minister", "medications"}));
}

TEST(Tokenize, EmptyInputGivesNoTokens) {
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_TRUE(tokenize("   \t\n").empty());
  EXPECT_TRUE(tokenize("?!.").empty());
}

TEST(Tokenize, KeepsAmpersandAndDropsPunctuation) {
  EXPECT_EQ(tokenize("H&P updated!"), (Tokens{"h&p", "updated"}));
  EXPECT_EQ(tokenize("Implant(s) available"), (Tokens{"implants", "available"}));
  EXPECT_EQ(tokenize("  RN\tcomplete  "), (Tokens{"rn", "complete"}));
}

TEST(Normalize, IsIdempotentOnNormalizedText) {
  for (PhraseType type : kAllPhraseTypes) {
    for (const Phrase& p : builtin_phrase_set(type).phrases()) {
      EXPECT_EQ(normalize(p.text), p.text);
      EXPECT_EQ(normalize(normalize(p.display)), normalize(p.display));
    }
  }
}

TEST(PhraseSet, BuiltinSetsHaveSixteenDistinctIds) {
  for (PhraseType type : kAllPhraseTypes) {
    const PhraseSet& set = builtin_phrase_set(type);
    ASSERT_EQ(set.size(), 16u);
    std::set<std::string> texts;
    for (std::size_t i = 0; i < set.size(); ++i) {
      const Phrase& p = set.phrases()[i];
      EXPECT_EQ(p.id, static_cast<PhraseId>(i));
      EXPECT_EQ(p.type, type);
      EXPECT_FALSE(p.text.empty());
      texts.insert(p.text);
    }
    EXPECT_EQ(texts.size(), 16u);
  }
  EXPECT_EQ(builtin_phrase_set(PhraseType::kAsIs).at(0).display, "Consent obtained");
  EXPECT_EQ(builtin_phrase_set(PhraseType::kReduced).at(5).text, "reports ready");
}

TEST(PhraseSet, RejectsWrongSizeDuplicatesAndBadIds) {
  std::vector<std::string> fifteen(15, "x");
  EXPECT_THROW(PhraseSet(PhraseType::kAsIs, fifteen), InvalidArgument);
  std::vector<std::string> dup;
  for (int i = 0; i < 15; ++i) dup.push_back("phrase " + std::to_string(i));
  dup.push_back("Phrase 3!");
  EXPECT_THROW(PhraseSet(PhraseType::kAsIs, dup), InvalidArgument);
  const PhraseSet& set = builtin_phrase_set(PhraseType::kAsIs);
  EXPECT_THROW(set.at(16), InvalidArgument);
  EXPECT_THROW(set.at(-1), InvalidArgument);
}

TEST(BuildVocabulary, SortsDistinctTokens) {
  std::vector<Document> docs = {{"b", "a"}, {"a", "c"}};
  Vocabulary v = build_vocabulary(docs);
  EXPECT_EQ(std::vector<std::string>(v.terms().begin(), v.terms().end()),
            (Tokens{"a", "b", "c"}));
  std::vector<Document> single = {{"x"}};
  EXPECT_EQ(build_vocabulary(single).size(), 1u);
}

TEST(BuildVocabulary, EmptyCorpusThrows) {
  try {
    build_vocabulary({});
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_STREQ(e.what(), "empty corpus");
  }
}

TEST(BuildVocabulary, AsIsColumnHasThirtyOneTerms) {
  std::vector<Document> docs;
  for (const Phrase& p : builtin_phrase_set(PhraseType::kAsIs).phrases()) {
    docs.push_back(tokenize(p.text));
  }
  Vocabulary v = build_vocabulary(docs);
  // Independent count: a plain set over the tokens.
  std::set<std::string> distinct;
  for (const auto& d : docs) distinct.insert(d.begin(), d.end());
  EXPECT_EQ(v.size(), distinct.size());
  EXPECT_EQ(v.size(), 31u);
}

TEST(Vocabulary, IndexInvertsTerms) {
  Vocabulary v({"delta", "alpha", "charlie"});
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(v.index_of(v.term(i)), i);
  EXPECT_FALSE(v.index_of("bravo").has_value());
  EXPECT_THROW(Vocabulary({"a", "a"}), InvalidArgument);
}

TEST(Vectorize, CountsRelativeFrequencies) {
  Vocabulary v({"a", "b"});
  auto x = vectorize({"a", "a", "b"}, v);
  EXPECT_DOUBLE_EQ(x[0], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(x[1], 1.0 / 3.0);
}

TEST(Vectorize, OutOfVocabularyCountsOnlyInDenominator) {
  Vocabulary v({"a", "b"});
  auto x = vectorize({"a", "z"}, v);
  EXPECT_DOUBLE_EQ(x[0], 0.5);
  EXPECT_DOUBLE_EQ(x[1], 0.0);
}

TEST(Vectorize, EmptyDocumentIsZero) {
  Vocabulary v({"a", "b"});
  EXPECT_EQ(vectorize({}, v), (std::vector<double>{0.0, 0.0}));
}

TEST(Vectorize, InVocabularyRowsSumToOne) {
  std::mt19937_64 rng(1);
  Vocabulary v({"a", "b", "c", "d", "e"});
  std::uniform_int_distribution<int> pick(0, 4), len(1, 12);
  for (int trial = 0; trial < 200; ++trial) {
    Document doc;
    for (int i = len(rng); i > 0; --i) doc.push_back(v.term(pick(rng)));
    auto x = vectorize(doc, v);
    EXPECT_NEAR(std::accumulate(x.begin(), x.end(), 0.0), 1.0, 1e-12);
    for (double e : x) {
      EXPECT_GE(e, 0.0);
      EXPECT_LE(e, 1.0);
    }
  }
}

TEST(Vectorize, PermutingVocabularyPermutesEntries) {
  std::mt19937_64 rng(2);
  Tokens terms = {"a", "b", "c", "d"};
  Document doc = {"c", "a", "c", "zz", "d"};
  Vocabulary base(terms);
  auto x = vectorize(doc, base);
  for (int trial = 0; trial < 10; ++trial) {
    Tokens shuffled = terms;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    Vocabulary perm(shuffled);
    auto y = vectorize(doc, perm);
    for (std::size_t j = 0; j < shuffled.size(); ++j) {
      EXPECT_EQ(y[j], x[*base.index_of(shuffled[j])]);
    }
  }
}

std::string corpus_csv(const std::string& rows) {
  return "transcript,target_id,phrase_type,participant,repetition,role\n" + rows;
}

TEST(ReadCorpus, ParsesFixtureRows) {
  std::istringstream in(corpus_csv(
      "Minister medications,14,as_is,p01,1,train\n"
      "\"need, heparin\",15,as_is,p02,6,test\n"
      "\"films \"\"here\"\"\",8,reduced,p03,2,train\n"));
  auto obs = read_corpus(in);
  ASSERT_EQ(obs.size(), 3u);
  EXPECT_EQ(obs[0].transcript, "Minister medications");
  EXPECT_EQ(obs[0].target, 14);
  EXPECT_EQ(obs[0].participant, "p01");
  EXPECT_EQ(obs[0].role, Role::kTrain);
  EXPECT_EQ(obs[1].transcript, "need, heparin");
  EXPECT_EQ(obs[1].repetition, 6);
  EXPECT_EQ(obs[1].role, Role::kTest);
  EXPECT_EQ(obs[2].transcript, "films \"here\"");
  EXPECT_EQ(obs[2].phrase_type, PhraseType::kReduced);
}

TEST(ReadCorpus, TargetOutOfRangeNamesRow) {
  std::istringstream in(corpus_csv(
      "consent obtained,0,as_is,p01,1,train\n"
      "consent obtained,17,as_is,p01,2,train\n"));
  try {
    read_corpus(in);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_STREQ(e.what(), "target out of range, row 2");
  }
}

TEST(ReadCorpus, RejectsMissingColumnAndUnknownValues) {
  std::istringstream missing("transcript,target_id,phrase_type,participant,role\n");
  EXPECT_THROW(read_corpus(missing), ParseError);
  std::istringstream bad_type(corpus_csv("x,1,casual,p01,1,train\n"));
  EXPECT_THROW(read_corpus(bad_type), ParseError);
  std::istringstream bad_role(corpus_csv("x,1,as_is,p01,1,validate\n"));
  EXPECT_THROW(read_corpus(bad_role), ParseError);
  std::istringstream bad_rep(corpus_csv("x,1,as_is,p01,0,train\n"));
  EXPECT_THROW(read_corpus(bad_rep), ParseError);
  std::istringstream short_row(corpus_csv("x,1,as_is\n"));
  EXPECT_THROW(read_corpus(short_row), ParseError);
  EXPECT_THROW(load_corpus("/nonexistent/corpus.csv"), ParseError);
}

TEST(Corpus, SaveLoadRoundTrip) {
  ConfusionModel model = default_confusion_model();
  auto obs = generate_corpus(model, builtin_phrase_set(PhraseType::kAsIs), 1, 5, 5);
  obs[0].transcript = "quoted \"text\", with comma\nand newline";
  testing::TempDir dir;
  save_corpus(dir / "c.csv", obs);
  EXPECT_EQ(load_corpus(dir / "c.csv"), obs);
}

TEST(Corpus, OneParticipantFiveRepsGivesEightyObservations) {
  auto obs = generate_corpus(default_confusion_model(),
                             builtin_phrase_set(PhraseType::kAsIs), 1, 0, 5);
  testing::TempDir dir;
  save_corpus(dir / "c.csv", obs);
  EXPECT_EQ(load_corpus(dir / "c.csv").size(), 80u);
}

Observation with_role(Role role, int rep) {
  Observation o;
  o.transcript = "t" + std::to_string(rep);
  o.role = role;
  o.repetition = rep;
  return o;
}

TEST(SplitByRole, PartitionsPreservingOrder) {
  std::vector<Observation> obs;
  for (int i = 1; i <= 10; ++i) {
    obs.push_back(with_role(i % 2 ? Role::kTrain : Role::kTest, i));
  }
  auto [train, test] = split_by_role(obs);
  ASSERT_EQ(train.size(), 5u);
  ASSERT_EQ(test.size(), 5u);
  for (std::size_t i = 1; i < train.size(); ++i) {
    EXPECT_LT(train[i - 1].repetition, train[i].repetition);
    EXPECT_LT(test[i - 1].repetition, test[i].repetition);
  }
}

TEST(SplitByRole, AllTestAndTenFive) {
  std::vector<Observation> all_test(5, with_role(Role::kTest, 1));
  auto [none, five] = split_by_role(all_test);
  EXPECT_TRUE(none.empty());
  EXPECT_EQ(five.size(), 5u);

  std::vector<Observation> mixed;
  for (int i = 1; i <= 10; ++i) mixed.push_back(with_role(Role::kTrain, i));
  for (int i = 11; i <= 15; ++i) mixed.push_back(with_role(Role::kTest, i));
  auto [train, test] = split_by_role(mixed);
  EXPECT_EQ(train.size(), 10u);
  EXPECT_EQ(test.size(), 5u);
}

}  // namespace
}  // namespace phrasefix
