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

#include "phrasefix/harness.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "phrasefix/bag_of_sentences.h"
#include "phrasefix/error.h"

namespace phrasefix {
namespace {

using nlohmann::json;

constexpr int kMaxTrainingReps = 10;

template <class T, class Parse>
std::vector<T> parse_list(const json& doc, const char* key, Parse parse) {
  std::vector<T> out;
  for (const json& item : doc.at(key)) {
    T value = parse(item.get<std::string>());
    if (std::find(out.begin(), out.end(), value) != out.end()) {
      throw ConfigError(std::string("duplicate entry in ") + key);
    }
    out.push_back(value);
  }
  return out;
}

void reject_unknown_keys(const json& doc, std::initializer_list<const char*> known,
                         const std::string& where) {
  for (const auto& [key, value] : doc.items()) {
    bool ok = std::any_of(known.begin(), known.end(),
                          [&](const char* k) { return key == k; });
    if (!ok) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

std::filesystem::path resolve_path(const std::string& raw,
                                   const std::filesystem::path& base_dir) {
  std::filesystem::path p(raw);
  return p.is_relative() && !base_dir.empty() ? base_dir / p : p;
}

// Rethrows the active library error with the cell prepended, keeping its type.
[[noreturn]] void rethrow_for_cell(const std::string& cell) {
  const std::string prefix = "cell " + cell + ": ";
  try {
    throw;
  } catch (const ParseError& e) {
    throw ParseError(prefix + e.what());
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(prefix + e.what());
  } catch (const TrainingError& e) {
    throw TrainingError(prefix + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(prefix + e.what());
  } catch (const std::exception& e) {
    throw Error(prefix + e.what());
  }
}

std::string cell_name(PhraseType type, Level level, Method method) {
  return std::string(to_string(type)) + "/" + std::string(to_string(level)) +
         "/" + std::string(to_string(method));
}

TrainedClassifier train_feature_model(Method method,
                                      std::span<const Observation> train_obs,
                                      const PhraseSet& phrases,
                                      const ExperimentConfig& config) {
  std::vector<Document> docs;
  std::vector<PhraseId> labels;
  docs.reserve(train_obs.size() + phrases.size());
  for (const Observation& obs : train_obs) {
    if (!phrases.contains(obs.target)) {
      throw InvalidArgument("training target " + std::to_string(obs.target) +
                            " is not a phrase id");
    }
    docs.push_back(tokenize(obs.transcript));
    labels.push_back(obs.target);
  }
  // One clean copy per phrase keeps every class populated.
  std::vector<PhraseId> classes;
  for (const Phrase& p : phrases.phrases()) {
    docs.push_back(tokenize(p.text));
    labels.push_back(p.id);
    classes.push_back(p.id);
  }
  Vocabulary vocab = build_vocabulary(docs);
  DocTermMatrix matrix =
      DocTermMatrix::from_documents(docs, std::move(vocab), std::move(labels));
  if (method == Method::kSvm) {
    return TrainedClassifier(phrases, train_svm(matrix, config.svm, classes));
  }
  return TrainedClassifier(phrases, train_maxent(matrix, config.maxent, classes));
}

}  // namespace

std::string_view to_string(Level level) {
  switch (level) {
    case Level::kTrain0: return "train0";
    case Level::kTrain5: return "train5";
    case Level::kTrain10: return "train10";
  }
  return "train0";
}

Level parse_level(std::string_view name) {
  if (name == "train0") return Level::kTrain0;
  if (name == "train5") return Level::kTrain5;
  if (name == "train10") return Level::kTrain10;
  throw ConfigError("unknown level '" + std::string(name) +
                    "' (expected train0, train5 or train10)");
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kGoogleOnly: return "google_only";
    case Method::kBagOfSentences: return "bos";
    case Method::kSvm: return "svm";
    case Method::kMaxent: return "maxent";
  }
  return "google_only";
}

Method parse_method(std::string_view name) {
  if (name == "google_only") return Method::kGoogleOnly;
  if (name == "bos") return Method::kBagOfSentences;
  if (name == "svm") return Method::kSvm;
  if (name == "maxent") return Method::kMaxent;
  throw ConfigError("unknown method '" + std::string(name) +
                    "' (expected google_only, bos, svm or maxent)");
}

int training_reps(Level level) {
  switch (level) {
    case Level::kTrain0: return 0;
    case Level::kTrain5: return 5;
    case Level::kTrain10: return 10;
  }
  return 0;
}

bool is_checked_cell(Level level, Method method) {
  return (level == Level::kTrain0) == (method == Method::kGoogleOnly);
}

void ExperimentConfig::validate() const {
  if (phrase_types.empty()) throw ConfigError("phrase_types is empty");
  if (levels.empty()) throw ConfigError("levels is empty");
  if (methods.empty()) throw ConfigError("methods is empty");
  bool any = false;
  for (Level l : levels) {
    for (Method m : methods) any = any || is_checked_cell(l, m);
  }
  if (!any) throw ConfigError("levels and methods select no checked cell");
  if (participants < 1 || participants > 999) {
    throw ConfigError("participants must be in [1, 999]");
  }
  if (test_reps < 1 || test_reps > 1000) {
    throw ConfigError("test_reps must be in [1, 1000]");
  }
  if (simulator_model && corpus_csv) {
    throw ConfigError("corpus source must be a simulator model or a CSV, not both");
  }
  if (substitution_rate && !(*substitution_rate >= 0.0 && *substitution_rate <= 1.0)) {
    throw ConfigError("substitution_rate must be in [0, 1]");
  }
  if (stickiness && !(*stickiness >= 0.0 && *stickiness <= 1.0)) {
    throw ConfigError("stickiness must be in [0, 1]");
  }
  try {
    svm.validate();
    maxent.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

ExperimentConfig parse_experiment_config(std::string_view json_text,
                                         const std::filesystem::path& base_dir) {
  ExperimentConfig config;
  try {
    json doc = json::parse(json_text);
    if (!doc.is_object()) throw ConfigError("experiment config must be an object");
    reject_unknown_keys(doc,
                        {"phrase_types", "levels", "methods", "participants",
                         "test_reps", "seed", "per_participant", "svm", "maxent",
                         "corpus", "substitution_rate", "stickiness"},
                        "experiment config");
    auto as_type = [](const std::string& s) {
      try {
        return parse_phrase_type(s);
      } catch (const Error& e) {
        throw ConfigError(e.what());
      }
    };
    if (doc.contains("phrase_types")) {
      config.phrase_types = parse_list<PhraseType>(doc, "phrase_types", as_type);
    }
    if (doc.contains("levels")) {
      config.levels = parse_list<Level>(
          doc, "levels", [](const std::string& s) { return parse_level(s); });
    }
    if (doc.contains("methods")) {
      config.methods = parse_list<Method>(
          doc, "methods", [](const std::string& s) { return parse_method(s); });
    }
    config.participants = doc.value("participants", config.participants);
    config.test_reps = doc.value("test_reps", config.test_reps);
    config.seed = doc.value("seed", config.seed);
    config.per_participant = doc.value("per_participant", false);
    if (doc.contains("svm")) {
      const json& s = doc.at("svm");
      reject_unknown_keys(
          s, {"c", "epsilon", "max_iters", "step", "decay", "tolerance", "refine"},
          "svm");
      config.svm.c = s.value("c", config.svm.c);
      config.svm.epsilon = s.value("epsilon", config.svm.epsilon);
      config.svm.max_iters = s.value("max_iters", config.svm.max_iters);
      config.svm.step = s.value("step", config.svm.step);
      config.svm.decay = s.value("decay", config.svm.decay);
      config.svm.tolerance = s.value("tolerance", config.svm.tolerance);
      config.svm.refine = s.value("refine", config.svm.refine);
    }
    if (doc.contains("maxent")) {
      const json& m = doc.at("maxent");
      reject_unknown_keys(m, {"max_iters", "step", "tolerance", "l2"}, "maxent");
      config.maxent.max_iters = m.value("max_iters", config.maxent.max_iters);
      config.maxent.step = m.value("step", config.maxent.step);
      config.maxent.tolerance = m.value("tolerance", config.maxent.tolerance);
      config.maxent.l2 = m.value("l2", config.maxent.l2);
    }
    if (doc.contains("corpus")) {
      const json& c = doc.at("corpus");
      reject_unknown_keys(c, {"simulator", "csv"}, "corpus");
      if (c.contains("simulator")) {
        config.simulator_model =
            resolve_path(c.at("simulator").get<std::string>(), base_dir);
      }
      if (c.contains("csv")) {
        config.corpus_csv = resolve_path(c.at("csv").get<std::string>(), base_dir);
      }
    }
    if (doc.contains("substitution_rate")) {
      config.substitution_rate = doc.at("substitution_rate").get<double>();
    }
    if (doc.contains("stickiness")) {
      config.stickiness = doc.at("stickiness").get<double>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("experiment config: ") + e.what());
  }
  config.validate();
  return config;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_experiment_config(buf.str(), path.parent_path());
}

ConfusionModel resolve_confusion_model(const ExperimentConfig& config) {
  ConfusionModel model = config.simulator_model
                             ? load_confusion_model(*config.simulator_model)
                             : default_confusion_model();
  model.seed = config.seed;
  if (config.substitution_rate) {
    model = model.with_substitution_rate(*config.substitution_rate);
  }
  if (config.stickiness) model.stickiness = *config.stickiness;
  model.validate();
  return model;
}

std::vector<Observation> cell_corpus(const ExperimentConfig& config,
                                     PhraseType type, Level level) {
  const int k = training_reps(level);
  std::vector<Observation> source;
  if (config.corpus_csv) {
    for (Observation& obs : load_corpus(*config.corpus_csv)) {
      if (obs.phrase_type == type) source.push_back(std::move(obs));
    }
  } else {
    // Every level draws from one corpus with a shared test block, so levels
    // differ only in how many training repetitions they see.
    source = generate_corpus(resolve_confusion_model(config),
                             builtin_phrase_set(type), config.participants,
                             kMaxTrainingReps, config.test_reps);
  }
  std::vector<Observation> out;
  out.reserve(source.size());
  for (Observation& obs : source) {
    if (obs.role == Role::kTest || obs.repetition <= k) {
      out.push_back(std::move(obs));
    }
  }
  return out;
}

TrainedClassifier train_classifier(Method method,
                                   std::span<const Observation> train_obs,
                                   const PhraseSet& phrases,
                                   const ExperimentConfig& config) {
  switch (method) {
    case Method::kGoogleOnly:
      return TrainedClassifier(phrases, LearningTable(phrases));
    case Method::kBagOfSentences:
      return TrainedClassifier(phrases, train_table(train_obs, phrases));
    case Method::kSvm:
    case Method::kMaxent:
      return train_feature_model(method, train_obs, phrases, config);
  }
  throw ConfigError("unknown method");
}

CellResult run_cell(const ExperimentConfig& config, PhraseType type, Level level,
                    Method method) {
  if (!is_checked_cell(level, method)) {
    throw ConfigError(std::string(to_string(method)) + " is not run at " +
                      std::string(to_string(level)));
  }
  const auto start = std::chrono::steady_clock::now();
  const PhraseSet& phrases = builtin_phrase_set(type);
  auto [train, test] = split_by_role(cell_corpus(config, type, level));
  if (method == Method::kGoogleOnly) train.clear();

  CellResult result;
  result.phrase_type = type;
  result.level = level;
  result.method = method;
  result.per_phrase.assign(phrases.size(), Score{});

  auto tally = [&](const TrainedClassifier& model, const Observation& obs) {
    if (!phrases.contains(obs.target)) {
      throw InvalidArgument("test target " + std::to_string(obs.target) +
                            " is not a phrase id");
    }
    Score& s = result.per_phrase[static_cast<std::size_t>(obs.target)];
    ++s.total;
    if (model.classify(obs.transcript) == obs.target) ++s.correct;
  };

  if (config.per_participant && method != Method::kGoogleOnly) {
    std::map<std::string, std::vector<Observation>> by_participant;
    for (Observation& obs : train) by_participant[obs.participant].push_back(obs);
    std::map<std::string, TrainedClassifier> models;
    for (const Observation& obs : test) {
      auto it = models.find(obs.participant);
      if (it == models.end()) {
        it = models
                 .emplace(obs.participant,
                          train_classifier(method, by_participant[obs.participant],
                                           phrases, config))
                 .first;
      }
      tally(it->second, obs);
    }
  } else {
    const TrainedClassifier model = train_classifier(method, train, phrases, config);
    for (const Observation& obs : test) tally(model, obs);
  }

  double sum = 0.0;
  for (const Score& s : result.per_phrase) sum += s.percent();
  result.mean_percent = sum / static_cast<double>(result.per_phrase.size());
  result.elapsed_seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
  return result;
}

const CellResult* DesignResult::find(PhraseType type, Level level,
                                     Method method) const {
  for (const CellResult& c : cells) {
    if (c.phrase_type == type && c.level == level && c.method == method) return &c;
  }
  return nullptr;
}

DesignResult run_design(const ExperimentConfig& config) {
  config.validate();
  DesignResult result;
  for (PhraseType type : config.phrase_types) {
    for (Level level : config.levels) {
      for (Method method : config.methods) {
        if (!is_checked_cell(level, method)) continue;
        try {
          result.cells.push_back(run_cell(config, type, level, method));
        } catch (...) {
          rethrow_for_cell(cell_name(type, level, method));
        }
      }
    }
  }
  return result;
}

std::string design_json(const ExperimentConfig& config,
                        const DesignResult& result) {
  json cfg;
  cfg["seed"] = config.seed;
  cfg["participants"] = config.participants;
  cfg["test_reps"] = config.test_reps;
  cfg["per_participant"] = config.per_participant;
  cfg["svm"] = {{"c", config.svm.c},
                {"epsilon", config.svm.epsilon},
                {"max_iters", config.svm.max_iters},
                {"step", config.svm.step},
                {"decay", config.svm.decay},
                {"tolerance", config.svm.tolerance},
                {"refine", config.svm.refine}};
  cfg["maxent"] = {{"max_iters", config.maxent.max_iters},
                   {"step", config.maxent.step},
                   {"tolerance", config.maxent.tolerance},
                   {"l2", config.maxent.l2}};
  if (config.corpus_csv) {
    cfg["corpus"] = {{"csv", config.corpus_csv->generic_string()}};
  } else if (config.simulator_model) {
    cfg["corpus"] = {{"simulator", config.simulator_model->generic_string()}};
  } else {
    cfg["corpus"] = {{"simulator", "builtin"}};
  }
  if (config.substitution_rate) cfg["substitution_rate"] = *config.substitution_rate;
  if (config.stickiness) cfg["stickiness"] = *config.stickiness;

  json cells = json::array();
  for (const CellResult& c : result.cells) {
    const PhraseSet& phrases = builtin_phrase_set(c.phrase_type);
    json per_phrase = json::array();
    for (std::size_t i = 0; i < c.per_phrase.size(); ++i) {
      per_phrase.push_back({{"id", static_cast<int>(i)},
                            {"phrase", phrases.at(static_cast<PhraseId>(i)).display},
                            {"correct", c.per_phrase[i].correct},
                            {"total", c.per_phrase[i].total}});
    }
    // Elapsed time stays out so identical runs serialize identically.
    cells.push_back({{"phrase_type", to_string(c.phrase_type)},
                     {"level", to_string(c.level)},
                     {"method", to_string(c.method)},
                     {"mean_percent", c.mean_percent},
                     {"per_phrase", std::move(per_phrase)}});
  }
  json doc;
  doc["config"] = std::move(cfg);
  doc["cells"] = std::move(cells);
  return doc.dump(2) + "\n";
}

}  // namespace phrasefix
