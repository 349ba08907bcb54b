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

// Command-line front end. Every failure, including argument errors, exits
// nonzero after a single "phrasefix: error: ..." line on stderr.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "phrasefix/classifier.h"
#include "phrasefix/corpus.h"
#include "phrasefix/error.h"
#include "phrasefix/harness.h"
#include "phrasefix/noise_sim.h"
#include "phrasefix/stats.h"

namespace phrasefix {
namespace {

struct SimulateArgs {
  std::string model;
  std::string phrases = "as_is";
  int participants = 16;
  int train_reps = 10;
  int test_reps = 5;
  std::optional<std::uint64_t> seed;
  std::string out = "-";
};

void simulate(const SimulateArgs& a) {
  ConfusionModel model =
      a.model.empty() ? default_confusion_model() : load_confusion_model(a.model);
  if (a.seed) model.seed = *a.seed;
  const auto obs = generate_corpus(model, builtin_phrase_set(parse_phrase_type(a.phrases)),
                                   a.participants, a.train_reps, a.test_reps);
  if (a.out == "-") {
    write_corpus(std::cout, obs);
  } else {
    save_corpus(a.out, obs);
  }
}

struct TrainArgs {
  std::string method;
  std::string corpus;
  std::string out;
  std::optional<double> c, epsilon, step, tolerance;
  std::optional<int> max_iters;
};

void train(const TrainArgs& a) {
  const Method method = parse_method(a.method);
  ExperimentConfig config;
  if (method == Method::kSvm) {
    if (a.c) config.svm.c = *a.c;
    if (a.epsilon) config.svm.epsilon = *a.epsilon;
    if (a.step) config.svm.step = *a.step;
    if (a.tolerance) config.svm.tolerance = *a.tolerance;
    if (a.max_iters) config.svm.max_iters = *a.max_iters;
    config.svm.validate();
  } else {
    if (a.c || a.epsilon) throw InvalidArgument("--c and --epsilon apply only to svm");
    if (method == Method::kMaxent) {
      if (a.step) config.maxent.step = *a.step;
      if (a.tolerance) config.maxent.tolerance = *a.tolerance;
      if (a.max_iters) config.maxent.max_iters = *a.max_iters;
      config.maxent.validate();
    } else if (a.step || a.tolerance || a.max_iters) {
      throw InvalidArgument("bos takes no optimizer flags");
    }
  }

  const auto [train_obs, test_obs] = split_by_role(load_corpus(a.corpus));
  if (train_obs.empty()) throw InvalidArgument(a.corpus + ": no training rows");
  std::set<PhraseType> types;
  for (const Observation& o : train_obs) types.insert(o.phrase_type);
  if (types.size() != 1) throw InvalidArgument(a.corpus + ": mixes phrase types");
  const PhraseSet& phrases = builtin_phrase_set(*types.begin());
  save_classifier(a.out, train_classifier(method, train_obs, phrases, config));
  std::printf("trained %s on %zu rows (%zu test rows ignored) -> %s\n", a.method.c_str(),
              train_obs.size(), test_obs.size(), a.out.c_str());
}

void classify(const std::string& model_path, const std::string& text) {
  const TrainedClassifier classifier = load_classifier(model_path);
  const PhraseId id = classifier.classify(text);
  const PhraseSet& phrases = classifier.phrase_set();
  std::printf("%d\t%s\n", id,
              id == kUnrecognized ? "(unrecognized)" : phrases.at(id).display.c_str());
  if (const auto* maxent = std::get_if<MaxentModel>(&classifier.model())) {
    const auto p = predict_proba(*maxent, vectorize(tokenize(text), maxent->vocabulary()));
    for (std::size_t k = 0; k < p.size(); ++k) {
      const PhraseId cls = maxent->classes()[k];
      std::printf("%d\t%.6f\t%s\n", cls, p[k], phrases.at(cls).display.c_str());
    }
  }
}

void experiment(const std::string& config_path, const std::string& out_dir,
                bool per_participant) {
  ExperimentConfig config = load_experiment_config(config_path);
  if (per_participant) config.per_participant = true;
  const DesignResult result = run_design(config);
  for (const auto& path : write_design_reports(config, result, out_dir)) {
    std::printf("%s\n", path.string().c_str());
  }
}

void replay(const std::string& out_dir) {
  const ReplayReport report = replay_published_tables();
  int agree = 0;
  std::printf("phrase_type\tphrase\tcomputed_p\tpublished_p\tstatus\n");
  for (const ReplayRow& row : report.rows) {
    agree += row.matches;
    std::printf("%s\t%s\t%.4f\t%s\t%s\n", std::string(to_string(row.phrase_type)).c_str(),
                row.phrase.c_str(), row.p_value, row.published.c_str(),
                row.matches ? "ok" : "DIFFERS");
  }
  std::printf("phrase_type\tlevel\tcomputed_mean\tpublished_mean\tstatus\n");
  for (const ReplayMean& m : report.means) {
    std::printf("%s\t%s\t%s\t%.1f\t%s\n", std::string(to_string(m.phrase_type)).c_str(),
                std::string(to_string(m.level)).c_str(),
                m.computed ? std::to_string(*m.computed).c_str() : "NA", m.published,
                !m.computed ? "published only" : (m.matches ? "ok" : "DIFFERS"));
  }
  std::printf("%d/%zu p-values agree with the published tables\n", agree,
              report.rows.size());
  for (const auto& path : write_replay_reports(report, out_dir)) {
    std::printf("%s\n", path.string().c_str());
  }
}

void chi2(const std::string& counts) {
  std::vector<int> values;
  std::stringstream in(counts);
  std::string field;
  while (std::getline(in, field, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(field, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != field.size()) {
      throw InvalidArgument("--counts: not an integer: '" + field + "'");
    }
    values.push_back(v);
  }
  if (values.size() < 4 || values.size() % 2 != 0) {
    throw InvalidArgument("--counts needs pairs c1,n1,c2,n2[,...]");
  }
  std::vector<int> correct, totals;
  for (std::size_t i = 0; i < values.size(); i += 2) {
    correct.push_back(values[i]);
    totals.push_back(values[i + 1]);
  }
  const ChiSquared chi = chi_squared_statistic(ContingencyTable::correct_incorrect(correct, totals));
  std::printf("statistic\t%.6f\ndf\t%d\np_value\t%.6g\n", chi.statistic, chi.df,
              chi_squared_pvalue(chi.statistic, chi.df));
}

int run(int argc, char** argv) {
  CLI::App app{"Maps noisy speech transcripts onto a fixed checklist of phrases."};
  app.name("phrasefix");
  app.require_subcommand(1);
  app.failure_message([](const CLI::App*, const CLI::Error& e) {
    return "phrasefix: error: " + std::string(e.what()) + "\n";
  });
  const std::vector<std::string> phrase_types = {"as_is", "reduced", "personalized"};

  auto* corpus = app.add_subcommand("corpus", "Corpus utilities");
  corpus->require_subcommand(1);
  SimulateArgs sim;
  auto* simulate_cmd = corpus->add_subcommand("simulate", "Generate a noisy corpus CSV");
  simulate_cmd->add_option("--model", sim.model, "Confusion model JSON (default: built-in)");
  simulate_cmd->add_option("--phrases", sim.phrases, "Phrase type")
      ->check(CLI::IsMember(phrase_types));
  simulate_cmd->add_option("--participants", sim.participants)->check(CLI::NonNegativeNumber);
  simulate_cmd->add_option("--train-reps", sim.train_reps)->check(CLI::NonNegativeNumber);
  simulate_cmd->add_option("--test-reps", sim.test_reps)->check(CLI::NonNegativeNumber);
  simulate_cmd->add_option("--seed", sim.seed, "Overrides the model's seed");
  simulate_cmd->add_option("--out", sim.out, "Output CSV, '-' for stdout");
  simulate_cmd->callback([&] { simulate(sim); });

  TrainArgs tr;
  auto* train_cmd = app.add_subcommand("train", "Train a classifier on a corpus CSV");
  train_cmd->add_option("--method", tr.method)->required()->check(
      CLI::IsMember({"bos", "svm", "maxent"}));
  train_cmd->add_option("--corpus", tr.corpus)->required();
  train_cmd->add_option("--out", tr.out)->required();
  train_cmd->add_option("--c", tr.c, "svm: regularization constant");
  train_cmd->add_option("--epsilon", tr.epsilon, "svm: insensitive band half-width");
  train_cmd->add_option("--step", tr.step, "Initial step size");
  train_cmd->add_option("--max-iters", tr.max_iters, "Iteration cap");
  train_cmd->add_option("--tolerance", tr.tolerance, "Stopping tolerance");
  train_cmd->callback([&] { train(tr); });

  std::string model_path, text;
  auto* classify_cmd = app.add_subcommand("classify", "Classify one transcript");
  classify_cmd->add_option("--model", model_path)->required();
  classify_cmd->add_option("--text", text)->required();
  classify_cmd->callback([&] { classify(model_path, text); });

  std::string config_path, out_dir;
  bool per_participant = false;
  auto* experiment_cmd = app.add_subcommand("experiment", "Run the factorial design");
  experiment_cmd->add_option("--config", config_path)->required();
  experiment_cmd->add_option("--out-dir", out_dir)->required();
  experiment_cmd->add_flag("--per-participant", per_participant,
                           "Train one model per participant");
  experiment_cmd->callback([&] { experiment(config_path, out_dir, per_participant); });

  std::string replay_dir;
  auto* replay_cmd =
      app.add_subcommand("replay-paper", "Recompute statistics from the published tables");
  replay_cmd->add_option("--out-dir", replay_dir)->required();
  replay_cmd->callback([&] { replay(replay_dir); });

  auto* stats = app.add_subcommand("stats", "Statistical utilities");
  stats->require_subcommand(1);
  std::string counts;
  auto* chi2_cmd = stats->add_subcommand("chi2", "Chi-squared test over correct/total pairs");
  chi2_cmd->add_option("--counts", counts, "c1,n1,c2,n2[,c3,n3...]")->required();
  chi2_cmd->callback([&] { chi2(counts); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  return 0;
}

}  // namespace
}  // namespace phrasefix

int main(int argc, char** argv) {
  try {
    return phrasefix::run(argc, argv);
  } catch (const std::exception& e) {
    std::string message = e.what();
    for (char& ch : message) {
      if (ch == '\n') ch = ' ';
    }
    std::fprintf(stderr, "phrasefix: error: %s\n", message.c_str());
    return 1;
  }
}
