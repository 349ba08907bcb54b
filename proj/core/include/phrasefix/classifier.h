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

// A trained phrase classifier of any kind, and its versioned JSON model file.

#ifndef PHRASEFIX_CLASSIFIER_H_
#define PHRASEFIX_CLASSIFIER_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "phrasefix/bag_of_sentences.h"
#include "phrasefix/corpus.h"
#include "phrasefix/maxent.h"
#include "phrasefix/svm.h"

namespace phrasefix {

inline constexpr int kModelFormatVersion = 1;

enum class ClassifierKind { kBagOfSentences, kSvm, kMaxent };

// "bos", "svm", "maxent".
std::string_view to_string(ClassifierKind kind);
ClassifierKind parse_classifier_kind(std::string_view name);

class TrainedClassifier {
 public:
  using Model = std::variant<LearningTable, SvmModel, MaxentModel>;

  TrainedClassifier(PhraseSet phrases, Model model)
      : phrases_(std::move(phrases)), model_(std::move(model)) {}

  ClassifierKind kind() const;
  const PhraseSet& phrase_set() const { return phrases_; }
  const Model& model() const { return model_; }

  // Phrase id, or kUnrecognized (bag-of-sentences misses only).
  PhraseId classify(std::string_view transcript) const;

 private:
  PhraseSet phrases_;
  Model model_;
};

// {"format": "phrasefix-model", "version": 1, "kind": ..., "phrase_type":
// ..., "phrases": [...], ...}. Kind-specific members:
//   bos:    "entries": [[transcript, id], ...]
//   svm:    "config", "vocabulary", "classes": [{label, weights, bias, ...}]
//   maxent: "config", "vocabulary", "classes", "lambda" (per-term rows),
//           "diagnostics"
std::string classifier_to_json(const TrainedClassifier& classifier);
TrainedClassifier classifier_from_json(std::string_view json_text);

void save_classifier(const std::filesystem::path& path,
                     const TrainedClassifier& classifier);
TrainedClassifier load_classifier(const std::filesystem::path& path);

}  // namespace phrasefix

#endif  // PHRASEFIX_CLASSIFIER_H_
