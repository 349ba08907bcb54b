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

#ifndef PHRASEFIX_BAG_OF_SENTENCES_H_
#define PHRASEFIX_BAG_OF_SENTENCES_H_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "phrasefix/corpus.h"

namespace phrasefix {

// Outcome of a lookup that hit no table entry. Never equal to a target.
inline constexpr PhraseId kUnrecognized = -1;

// Many-to-few map from normalized recognizer output to target phrase.
//
// Every phrase's own normalized text is seeded as an identity entry, so an
// untrained table accepts exact recognitions and nothing else. Training
// assigns entries in order; a later observation of the same transcript
// overwrites the earlier mapping, including a seeded one.
class LearningTable {
 public:
  explicit LearningTable(PhraseSet phrases);

  // Identity-seeded table with `entries` assigned in order on top. Throws
  // InvalidArgument for a target outside the set.
  static LearningTable from_entries(
      PhraseSet phrases,
      std::span<const std::pair<std::string, PhraseId>> entries);

  const PhraseSet& phrase_set() const { return phrases_; }
  std::size_t size() const { return entries_.size(); }
  // Sorted by transcript.
  const std::map<std::string, PhraseId, std::less<>>& entries() const {
    return entries_;
  }

  // Exact lookup of normalize(transcript).
  PhraseId lookup(std::string_view transcript) const;

  bool operator==(const LearningTable& other) const {
    return entries_ == other.entries_ &&
           phrases_.type() == other.phrases_.type();
  }

 private:
  friend LearningTable train_table(std::span<const Observation>,
                                   const PhraseSet&);
  friend LearningTable read_table_csv(std::istream&, const PhraseSet&);

  void assign(std::string key, PhraseId target);

  PhraseSet phrases_;
  std::map<std::string, PhraseId, std::less<>> entries_;
};

// Throws InvalidArgument if an observation's target is not in phrase_set.
LearningTable train_table(std::span<const Observation> train_obs,
                          const PhraseSet& phrase_set);

// Mapped phrase id, or kUnrecognized on a miss.
PhraseId classify_table(const LearningTable& table, std::string_view transcript);

// Two-column CSV (transcript,target_id), one row per entry.
void write_table_csv(std::ostream& out, const LearningTable& table);
LearningTable read_table_csv(std::istream& in, const PhraseSet& phrase_set);

}  // namespace phrasefix

#endif  // PHRASEFIX_BAG_OF_SENTENCES_H_
