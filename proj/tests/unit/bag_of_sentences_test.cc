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

#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "phrasefix/bag_of_sentences.h"
#include "phrasefix/error.h"

namespace phrasefix {
namespace {

const PhraseSet& as_is() { return builtin_phrase_set(PhraseType::kAsIs); }

Observation train_obs(std::string transcript, PhraseId target) {
  Observation o;
  o.transcript = std::move(transcript);
  o.target = target;
  return o;
}

constexpr PhraseId kMedicationsDelivered = 14;

TEST(TrainTable, MapsMisrecognitionToItsTarget) {
  std::vector<Observation> obs = {
      train_obs("Minister medications", kMedicationsDelivered)};
  LearningTable table = train_table(obs, as_is());
  EXPECT_EQ(table.entries().at("minister medications"), kMedicationsDelivered);
  EXPECT_EQ(classify_table(table, "minister   Medications!"), kMedicationsDelivered);
}

TEST(TrainTable, EmptyTrainingGivesIdentityTable) {
  LearningTable table = train_table({}, as_is());
  EXPECT_EQ(table.size(), 16u);
  for (const Phrase& p : as_is().phrases()) {
    EXPECT_EQ(classify_table(table, p.display), p.id);
  }
}

TEST(TrainTable, LaterObservationOverwrites) {
  std::vector<Observation> obs = {train_obs("needle", 15), train_obs("needle", 2)};
  EXPECT_EQ(classify_table(train_table(obs, as_is()), "needle"), 2);
}

TEST(TrainTable, CanOverwriteSeededIdentity) {
  std::vector<Observation> obs = {train_obs("Need heparin", 4)};
  EXPECT_EQ(classify_table(train_table(obs, as_is()), "need heparin"), 4);
}

TEST(TrainTable, InvalidTargetThrows) {
  std::vector<Observation> obs = {train_obs("x", 16)};
  EXPECT_THROW(train_table(obs, as_is()), InvalidArgument);
  obs = {train_obs("x", -1)};
  EXPECT_THROW(train_table(obs, as_is()), InvalidArgument);
}

TEST(ClassifyTable, MissIsUnrecognized) {
  LearningTable table(as_is());
  EXPECT_EQ(classify_table(table, "xyzzy"), kUnrecognized);
  EXPECT_EQ(classify_table(table, ""), kUnrecognized);
  EXPECT_EQ(classify_table(table, "Consent obtained"), 0);
}

// Random training sequences over a small alphabet of transcripts so that
// repeats and conflicts are common.
std::vector<Observation> random_sequence(std::mt19937_64& rng, int length) {
  std::uniform_int_distribution<int> word(0, 7), target(0, 15);
  std::vector<Observation> obs;
  for (int i = 0; i < length; ++i) {
    obs.push_back(train_obs("word " + std::to_string(word(rng)), target(rng)));
  }
  return obs;
}

TEST(TrainTable, LastWriteWinsAndPerfectRecall) {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 100; ++trial) {
    auto obs = random_sequence(rng, 30);
    LearningTable table = train_table(obs, as_is());
    std::set<std::string> distinct;
    for (const Observation& o : obs) distinct.insert(o.transcript);
    for (const std::string& t : distinct) {
      PhraseId last = kUnrecognized;
      for (const Observation& o : obs) {
        if (o.transcript == t) last = o.target;
      }
      EXPECT_EQ(classify_table(table, t), last);
    }
    EXPECT_LE(table.size(), 16u + distinct.size());
    EXPECT_EQ(train_table(obs, as_is()), table);
  }
}

TEST(TableCsv, RoundTrips) {
  std::mt19937_64 rng(5);
  auto obs = random_sequence(rng, 20);
  obs.push_back(train_obs("Need heparin", 3));
  obs.push_back(train_obs("comma, \"quoted\"", 9));
  LearningTable table = train_table(obs, as_is());
  std::stringstream buf;
  write_table_csv(buf, table);
  EXPECT_EQ(buf.str().rfind("transcript,target_id\n", 0), 0u);
  LearningTable back = read_table_csv(buf, as_is());
  EXPECT_EQ(back, table);
  EXPECT_EQ(back.entries(), table.entries());
}

TEST(TableCsv, RejectsBadInput) {
  std::istringstream bad_header("text,id\nx,1\n");
  EXPECT_THROW(read_table_csv(bad_header, as_is()), ParseError);
  std::istringstream bad_target("transcript,target_id\nx,99\n");
  EXPECT_THROW(read_table_csv(bad_target, as_is()), ParseError);
  std::istringstream not_a_number("transcript,target_id\nx,abc\n");
  EXPECT_THROW(read_table_csv(not_a_number, as_is()), ParseError);
}

TEST(LearningTable, FromEntriesRebuildsTable) {
  std::vector<std::pair<std::string, PhraseId>> entries = {
      {"minister medications", 14}, {"need heparin", 2}};
  LearningTable table = LearningTable::from_entries(as_is(), entries);
  EXPECT_EQ(table.lookup("Minister medications"), 14);
  EXPECT_EQ(table.lookup("need heparin"), 2);
  EXPECT_EQ(table.lookup("consent obtained"), 0);
  std::vector<std::pair<std::string, PhraseId>> bad = {{"x", 40}};
  EXPECT_THROW(LearningTable::from_entries(as_is(), bad), InvalidArgument);
}

}  // namespace
}  // namespace phrasefix
