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

#include "phrasefix/bag_of_sentences.h"

#include <istream>
#include <ostream>
#include <vector>

#include "csv.h"
#include "phrasefix/error.h"

namespace phrasefix {

LearningTable::LearningTable(PhraseSet phrases) : phrases_(std::move(phrases)) {
  for (const Phrase& p : phrases_.phrases()) entries_[p.text] = p.id;
}

void LearningTable::assign(std::string key, PhraseId target) {
  if (!phrases_.contains(target)) {
    throw InvalidArgument("target " + std::to_string(target) +
                          " is not a phrase id");
  }
  entries_[std::move(key)] = target;
}

LearningTable LearningTable::from_entries(
    PhraseSet phrases, std::span<const std::pair<std::string, PhraseId>> entries) {
  LearningTable table(std::move(phrases));
  for (const auto& [transcript, target] : entries) {
    table.assign(normalize(transcript), target);
  }
  return table;
}

PhraseId LearningTable::lookup(std::string_view transcript) const {
  auto it = entries_.find(normalize(transcript));
  return it == entries_.end() ? kUnrecognized : it->second;
}

LearningTable train_table(std::span<const Observation> train_obs,
                          const PhraseSet& phrase_set) {
  LearningTable table(phrase_set);
  for (const Observation& obs : train_obs) {
    table.assign(normalize(obs.transcript), obs.target);
  }
  return table;
}

PhraseId classify_table(const LearningTable& table, std::string_view transcript) {
  return table.lookup(transcript);
}

void write_table_csv(std::ostream& out, const LearningTable& table) {
  std::vector<std::string> fields = {"transcript", "target_id"};
  csv::write_record(out, fields);
  for (const auto& [transcript, target] : table.entries()) {
    fields = {transcript, std::to_string(target)};
    csv::write_record(out, fields);
  }
}

LearningTable read_table_csv(std::istream& in, const PhraseSet& phrase_set) {
  auto header = csv::read_record(in);
  if (!header || header->size() != 2 || (*header)[0] != "transcript" ||
      (*header)[1] != "target_id") {
    throw ParseError("table CSV must start with 'transcript,target_id'");
  }
  LearningTable table(phrase_set);
  std::size_t row = 0;
  while (auto record = csv::read_record(in)) {
    ++row;
    if (record->size() == 1 && record->front().empty()) continue;
    if (record->size() != 2) {
      throw ParseError("expected 2 fields, row " + std::to_string(row));
    }
    auto target = csv::parse_int((*record)[1]);
    if (!target || *target < 0 ||
        *target >= static_cast<long long>(phrase_set.size())) {
      throw ParseError("target out of range, row " + std::to_string(row));
    }
    table.assign(normalize((*record)[0]), static_cast<PhraseId>(*target));
  }
  return table;
}

}  // namespace phrasefix
