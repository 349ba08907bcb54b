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

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "phrasefix/classifier.h"
#include "phrasefix/error.h"

namespace phrasefix {
namespace {

using nlohmann::json;

constexpr std::string_view kFormatName = "phrasefix-model";

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

std::string_view to_string(MaxentStop stop) {
  switch (stop) {
    case MaxentStop::kConverged: return "converged";
    case MaxentStop::kMaxIterations: return "max_iterations";
    case MaxentStop::kStalled: return "stalled";
  }
  return "max_iterations";
}

MaxentStop parse_stop(const std::string& name) {
  if (name == "converged") return MaxentStop::kConverged;
  if (name == "max_iterations") return MaxentStop::kMaxIterations;
  if (name == "stalled") return MaxentStop::kStalled;
  throw ParseError("unknown maxent stop reason '" + name + "'");
}

json vocabulary_json(const Vocabulary& vocab) {
  return json(std::vector<std::string>(vocab.terms().begin(), vocab.terms().end()));
}

Vocabulary vocabulary_from(const json& doc) {
  return Vocabulary(doc.at("vocabulary").get<std::vector<std::string>>());
}

void check_label(const PhraseSet& phrases, PhraseId label) {
  if (!phrases.contains(label)) {
    throw ParseError("class label " + std::to_string(label) +
                     " is not a phrase id");
  }
}

json encode(const LearningTable& table) {
  json entries = json::array();
  for (const auto& [transcript, target] : table.entries()) {
    entries.push_back({transcript, target});
  }
  return {{"entries", std::move(entries)}};
}

json encode(const SvmModel& model) {
  const SvmConfig& c = model.config;
  json classes = json::array();
  for (const SvmClass& k : model.classes) {
    classes.push_back({{"label", k.label},
                       {"weights", k.weights},
                       {"bias", k.bias},
                       {"objective", k.objective},
                       {"iterations", k.iterations}});
  }
  return {{"config",
           {{"c", c.c},
            {"epsilon", c.epsilon},
            {"max_iters", c.max_iters},
            {"step", c.step},
            {"decay", c.decay},
            {"tolerance", c.tolerance},
            {"refine", c.refine}}},
          {"vocabulary", vocabulary_json(model.vocabulary)},
          {"classes", std::move(classes)}};
}

json encode(const MaxentModel& model) {
  json lambda = json::array();
  const std::size_t k = model.num_classes();
  for (std::size_t t = 0; t < model.vocabulary().size(); ++t) {
    auto row = model.parameters().subspan(t * k, k);
    lambda.push_back(std::vector<double>(row.begin(), row.end()));
  }
  const MaxentDiagnostics& d = model.diagnostics();
  return {{"vocabulary", vocabulary_json(model.vocabulary())},
          {"classes", std::vector<PhraseId>(model.classes().begin(),
                                            model.classes().end())},
          {"lambda", std::move(lambda)},
          {"diagnostics",
           {{"iterations", d.iterations},
            {"gradient_norm", d.gradient_norm},
            {"log_likelihood", d.log_likelihood},
            {"stop", to_string(d.stop)}}}};
}

LearningTable decode_table(const json& doc, const PhraseSet& phrases) {
  std::vector<std::pair<std::string, PhraseId>> entries;
  for (const json& e : doc.at("entries")) {
    if (!e.is_array() || e.size() != 2) {
      throw ParseError("table entry must be [transcript, id]");
    }
    PhraseId id = e[1].get<PhraseId>();
    check_label(phrases, id);
    entries.emplace_back(e[0].get<std::string>(), id);
  }
  return LearningTable::from_entries(phrases, entries);
}

SvmModel decode_svm(const json& doc, const PhraseSet& phrases) {
  SvmModel model;
  const json& c = doc.at("config");
  model.config.c = c.at("c").get<double>();
  model.config.epsilon = c.at("epsilon").get<double>();
  model.config.max_iters = c.at("max_iters").get<int>();
  model.config.step = c.at("step").get<double>();
  model.config.decay = c.at("decay").get<double>();
  model.config.tolerance = c.at("tolerance").get<double>();
  model.config.refine = c.at("refine").get<bool>();
  model.config.validate();
  model.vocabulary = vocabulary_from(doc);
  PhraseId previous = kUnrecognized;
  for (const json& k : doc.at("classes")) {
    SvmClass cls;
    cls.label = k.at("label").get<PhraseId>();
    check_label(phrases, cls.label);
    if (cls.label <= previous) {
      throw ParseError("svm classes must be in ascending label order");
    }
    previous = cls.label;
    cls.weights = k.at("weights").get<std::vector<double>>();
    if (cls.weights.size() != model.vocabulary.size()) {
      throw ParseError("svm weights do not match the vocabulary size");
    }
    cls.bias = k.at("bias").get<double>();
    cls.objective = k.value("objective", 0.0);
    cls.iterations = k.value("iterations", 0);
    model.classes.push_back(std::move(cls));
  }
  if (model.classes.empty()) throw ParseError("svm model has no classes");
  return model;
}

MaxentModel decode_maxent(const json& doc, const PhraseSet& phrases) {
  auto classes = doc.at("classes").get<std::vector<PhraseId>>();
  if (classes.empty()) throw ParseError("maxent model has no classes");
  std::set<PhraseId> distinct;
  for (PhraseId id : classes) {
    check_label(phrases, id);
    if (!distinct.insert(id).second) throw ParseError("duplicate maxent class");
  }
  MaxentModel model(vocabulary_from(doc), classes);
  const json& lambda = doc.at("lambda");
  if (lambda.size() != model.vocabulary().size()) {
    throw ParseError("maxent lambda rows do not match the vocabulary size");
  }
  for (std::size_t t = 0; t < lambda.size(); ++t) {
    auto row = lambda[t].get<std::vector<double>>();
    if (row.size() != classes.size()) {
      throw ParseError("maxent lambda row " + std::to_string(t) +
                       " does not match the class count");
    }
    for (std::size_t c = 0; c < row.size(); ++c) model.lambda(t, c) = row[c];
  }
  if (doc.contains("diagnostics")) {
    const json& d = doc.at("diagnostics");
    MaxentDiagnostics diag;
    diag.iterations = d.value("iterations", 0);
    diag.gradient_norm = d.value("gradient_norm", 0.0);
    diag.log_likelihood = d.value("log_likelihood", 0.0);
    diag.stop = parse_stop(d.value("stop", std::string("max_iterations")));
    model.set_diagnostics(diag);
  }
  return model;
}

}  // namespace

std::string_view to_string(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::kBagOfSentences: return "bos";
    case ClassifierKind::kSvm: return "svm";
    case ClassifierKind::kMaxent: return "maxent";
  }
  return "bos";
}

ClassifierKind parse_classifier_kind(std::string_view name) {
  if (name == "bos") return ClassifierKind::kBagOfSentences;
  if (name == "svm") return ClassifierKind::kSvm;
  if (name == "maxent") return ClassifierKind::kMaxent;
  throw InvalidArgument("unknown classifier kind '" + std::string(name) +
                        "' (expected bos, svm or maxent)");
}

ClassifierKind TrainedClassifier::kind() const {
  return std::visit(
      Overloaded{
          [](const LearningTable&) { return ClassifierKind::kBagOfSentences; },
          [](const SvmModel&) { return ClassifierKind::kSvm; },
          [](const MaxentModel&) { return ClassifierKind::kMaxent; }},
      model_);
}

PhraseId TrainedClassifier::classify(std::string_view transcript) const {
  return std::visit(
      Overloaded{
          [&](const LearningTable& m) { return classify_table(m, transcript); },
          [&](const SvmModel& m) { return classify_svm(m, transcript); },
          [&](const MaxentModel& m) { return classify_maxent(m, transcript); }},
      model_);
}

std::string classifier_to_json(const TrainedClassifier& classifier) {
  json doc = std::visit([](const auto& m) { return encode(m); },
                        classifier.model());
  doc["format"] = kFormatName;
  doc["version"] = kModelFormatVersion;
  doc["kind"] = to_string(classifier.kind());
  doc["phrase_type"] = to_string(classifier.phrase_set().type());
  json phrases = json::array();
  for (const Phrase& p : classifier.phrase_set().phrases()) {
    phrases.push_back(p.display);
  }
  doc["phrases"] = std::move(phrases);
  return doc.dump(1) + "\n";
}

TrainedClassifier classifier_from_json(std::string_view json_text) {
  try {
    json doc = json::parse(json_text);
    if (!doc.is_object() || doc.value("format", "") != kFormatName) {
      throw ParseError("not a phrasefix model file");
    }
    const int version = doc.at("version").get<int>();
    if (version != kModelFormatVersion) {
      throw ParseError("unsupported model version " + std::to_string(version));
    }
    const PhraseType type =
        parse_phrase_type(doc.at("phrase_type").get<std::string>());
    const auto wordings = doc.at("phrases").get<std::vector<std::string>>();
    PhraseSet phrases(type, wordings);
    switch (parse_classifier_kind(doc.at("kind").get<std::string>())) {
      case ClassifierKind::kBagOfSentences:
        return TrainedClassifier(phrases, decode_table(doc, phrases));
      case ClassifierKind::kSvm:
        return TrainedClassifier(phrases, decode_svm(doc, phrases));
      case ClassifierKind::kMaxent:
        return TrainedClassifier(phrases, decode_maxent(doc, phrases));
    }
    throw ParseError("unknown classifier kind");
  } catch (const json::exception& e) {
    throw ParseError(std::string("model file: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("model file: ") + e.what());
  }
}

void save_classifier(const std::filesystem::path& path,
                     const TrainedClassifier& classifier) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write model file '" + path.string() + "'");
  out << classifier_to_json(classifier);
  if (!out) throw Error("failed writing model file '" + path.string() + "'");
}

TrainedClassifier load_classifier(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open model file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return classifier_from_json(buf.str());
}

}  // namespace phrasefix
