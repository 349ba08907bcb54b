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

// The factorial experiment: phrase types x training levels x
// post-processing methods, over simulated or ingested corpora.

#ifndef PHRASEFIX_HARNESS_H_
#define PHRASEFIX_HARNESS_H_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phrasefix/classifier.h"
#include "phrasefix/corpus.h"
#include "phrasefix/maxent.h"
#include "phrasefix/noise_sim.h"
#include "phrasefix/stats.h"
#include "phrasefix/svm.h"

namespace phrasefix {

enum class Level { kTrain0, kTrain5, kTrain10 };
enum class Method { kGoogleOnly, kBagOfSentences, kSvm, kMaxent };

inline constexpr Level kAllLevels[] = {Level::kTrain0, Level::kTrain5,
                                       Level::kTrain10};
inline constexpr Method kAllMethods[] = {Method::kGoogleOnly,
                                         Method::kBagOfSentences, Method::kSvm,
                                         Method::kMaxent};

// "train0" | "train5" | "train10".
std::string_view to_string(Level level);
Level parse_level(std::string_view name);
// "google_only" | "bos" | "svm" | "maxent".
std::string_view to_string(Method method);
Method parse_method(std::string_view name);

int training_reps(Level level);

// Google-only runs without training; the three classifiers need training.
bool is_checked_cell(Level level, Method method);

struct ExperimentConfig {
  std::vector<PhraseType> phrase_types{std::begin(kAllPhraseTypes),
                                       std::end(kAllPhraseTypes)};
  std::vector<Level> levels{std::begin(kAllLevels), std::end(kAllLevels)};
  std::vector<Method> methods{std::begin(kAllMethods), std::end(kAllMethods)};
  int participants = 16;
  int test_reps = 5;
  std::uint64_t seed = 2014;
  SvmConfig svm;
  MaxentConfig maxent;
  // Train one model per participant instead of pooling.
  bool per_participant = false;

  // Exactly one corpus source: a confusion model (the shipped default when
  // neither path is set) or an ingested CSV corpus.
  std::optional<std::filesystem::path> simulator_model;
  std::optional<std::filesystem::path> corpus_csv;
  // Overrides every token's substitution rate in the confusion model.
  std::optional<double> substitution_rate;
  std::optional<double> stickiness;

  // Throws ConfigError.
  void validate() const;
};

// JSON keys mirror the fields: phrase_types, levels, methods, participants,
// test_reps, seed, per_participant, svm{c, epsilon, max_iters, step, decay,
// tolerance, refine}, maxent{max_iters, step, tolerance, l2},
// corpus{simulator | csv}, substitution_rate, stickiness. Relative corpus
// paths resolve against `base_dir`. Throws ConfigError.
ExperimentConfig parse_experiment_config(std::string_view json_text,
                                         const std::filesystem::path& base_dir = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

// The confusion model a simulated run uses, with the config's seed and
// overrides applied.
ConfusionModel resolve_confusion_model(const ExperimentConfig& config);

// Observations of one cell: training repetitions of the level plus the
// test repetitions.
std::vector<Observation> cell_corpus(const ExperimentConfig& config,
                                     PhraseType type, Level level);

// Trains `method` on the training observations. SVM and maxent see each
// observation labelled by target plus one clean copy of every phrase, over a
// vocabulary built from those documents. Google-only ignores train_obs.
TrainedClassifier train_classifier(Method method,
                                   std::span<const Observation> train_obs,
                                   const PhraseSet& phrases,
                                   const ExperimentConfig& config);

struct CellResult {
  PhraseType phrase_type = PhraseType::kAsIs;
  Level level = Level::kTrain0;
  Method method = Method::kGoogleOnly;
  std::vector<Score> per_phrase;  // indexed by phrase id
  double mean_percent = 0.0;      // mean of per-phrase percentages
  double elapsed_seconds = 0.0;   // informational, never reported as data
};

// Throws ConfigError for a cell that is not checked.
CellResult run_cell(const ExperimentConfig& config, PhraseType type, Level level,
                    Method method);

struct DesignResult {
  std::vector<CellResult> cells;  // phrase type, level, method order

  const CellResult* find(PhraseType type, Level level, Method method) const;
};

// Every checked cell of the config. Errors are rethrown prefixed with the
// cell, e.g. "cell as_is/train5/svm: ...".
DesignResult run_design(const ExperimentConfig& config);

// All counts as JSON. Byte-identical for identical results.
std::string design_json(const ExperimentConfig& config,
                        const DesignResult& result);

// Writes counts.json, timing.csv, levels_<type>.csv (per-phrase correctness
// across Google-only / bag-of-sentences levels with chi-squared p-values),
// type_means.csv and classifiers.csv into out_dir. Returns the paths.
std::vector<std::filesystem::path> write_design_reports(
    const ExperimentConfig& config, const DesignResult& result,
    const std::filesystem::path& out_dir);

struct ReplayRow {
  PhraseType phrase_type = PhraseType::kAsIs;
  std::string phrase;
  int correct[3] = {0, 0, 0};  // of 80 per level
  ChiSquared chi2;
  double p_value = 0.0;
  std::string published;  // as printed, e.g. "0.414" or "<0.001"
  bool matches = false;   // within 0.002, or below the printed bound
};

struct ReplayMean {
  PhraseType phrase_type = PhraseType::kAsIs;
  Level level = Level::kTrain0;
  std::optional<double> computed;  // absent where no per-phrase table exists
  double published = 0.0;
  bool matches = false;  // within 0.1
};

struct ReplayReport {
  std::vector<ReplayRow> rows;
  std::vector<ReplayMean> means;
};

// Recomputes chi-squared p-values from the published per-phrase counts and
// level means from the published percentage columns.
ReplayReport replay_published_tables();
std::vector<std::filesystem::path> write_replay_reports(
    const ReplayReport& report, const std::filesystem::path& out_dir);

}  // namespace phrasefix

#endif  // PHRASEFIX_HARNESS_H_
