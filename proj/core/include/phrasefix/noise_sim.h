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

// Seeded stand-in for a cloud speech recognizer.
//
// Each token of a spoken phrase is independently substituted and then
// possibly deleted. A participant tends to make the same mistake on the same
// word: every (participant, token) pair has one habitual replacement, drawn
// once from a stream keyed by that pair, and a substitution reuses it with
// probability `stickiness` instead of drawing afresh. All randomness comes
// from counter-based streams keyed by (seed, participant, phrase,
// repetition, position), so a transcript does not depend on the order in
// which transcripts are made.

#ifndef PHRASEFIX_NOISE_SIM_H_
#define PHRASEFIX_NOISE_SIM_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "phrasefix/corpus.h"

namespace phrasefix {

struct Substitution {
  std::string replacement;  // one or more tokens
  double probability = 0.0;

  bool operator==(const Substitution&) const = default;
};

struct ConfusionModel {
  std::uint64_t seed = 0;
  double deletion_prob = 0.0;
  double stickiness = 0.8;
  // Tokens absent from the map are never substituted. Probabilities for a
  // token sum to at most one; the remainder is the keep probability.
  std::map<std::string, std::vector<Substitution>, std::less<>> substitutions;
  // Scales every error probability for a participant (default 1).
  std::map<std::string, double, std::less<>> participant_bias;

  // Throws InvalidArgument.
  void validate() const;
  double bias_for(std::string_view participant) const;
  // Copy with every token's substitution probabilities rescaled to sum to
  // `rate`, keeping their ratios.
  ConfusionModel with_substitution_rate(double rate) const;

  bool operator==(const ConfusionModel&) const = default;
};

// JSON: {seed, deletion_prob, stickiness, substitutions: {token: [[rep, p],
// ...]}, participant_bias: {id: multiplier}}. Throws ParseError.
ConfusionModel parse_confusion_model(std::string_view json_text);
ConfusionModel load_confusion_model(const std::filesystem::path& path);
std::string confusion_model_to_json(const ConfusionModel& model);

// The shipped homophone-style model covering all three phrase sets.
const ConfusionModel& default_confusion_model();

// Recognizer output for one utterance of `phrase`. Pure function of its
// arguments.
std::string corrupt(const ConfusionModel& model, const Phrase& phrase,
                    std::string_view participant, int repetition);

// Participant ids "p01", "p02", ...
std::string participant_id(int index);

// For each participant and phrase, repetitions 1..train_reps are Train and
// train_reps+1..train_reps+test_reps are Test.
// Size is |phrase_set| * participants * (train_reps + test_reps).
std::vector<Observation> generate_corpus(const ConfusionModel& model,
                                         const PhraseSet& phrase_set,
                                         int participants, int train_reps,
                                         int test_reps);

}  // namespace phrasefix

#endif  // PHRASEFIX_NOISE_SIM_H_
