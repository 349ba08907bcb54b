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

#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "phrasefix/error.h"
#include "phrasefix/maxent.h"
#include "test_util.h"

namespace phrasefix {
namespace {

MaxentModel zero_model(std::size_t terms, std::size_t classes) {
  std::vector<std::string> names;
  for (std::size_t j = 0; j < terms; ++j) names.push_back("t" + std::to_string(j));
  std::vector<PhraseId> ids(classes);
  std::iota(ids.begin(), ids.end(), 0);
  return MaxentModel(Vocabulary(names), ids);
}

// Documents built from token strings, vocabulary from the same documents.
DocTermMatrix corpus(const std::vector<std::string>& texts,
                     std::vector<PhraseId> labels) {
  std::vector<Document> docs;
  for (const auto& t : texts) docs.push_back(tokenize(t));
  Vocabulary vocab = build_vocabulary(docs);
  return DocTermMatrix::from_documents(docs, std::move(vocab), std::move(labels));
}

DocTermMatrix random_corpus(std::mt19937_64& rng, std::size_t docs,
                            std::size_t terms, std::size_t classes) {
  std::vector<std::string> names;
  for (std::size_t j = 0; j < terms; ++j) names.push_back("t" + std::to_string(j));
  auto rows = testing::random_rows(rng, docs, terms);
  for (auto& row : rows) {
    double sum = std::accumulate(row.begin(), row.end(), 0.0);
    for (double& v : row) v /= sum;
  }
  std::vector<PhraseId> labels;
  for (std::size_t i = 0; i < docs; ++i) {
    labels.push_back(static_cast<PhraseId>(i % classes));
  }
  return DocTermMatrix(Vocabulary(names), rows, labels);
}

TEST(MaxentConfig, RejectsInvalidValues) {
  MaxentConfig c;
  EXPECT_NO_THROW(c.validate());
  c.step = 0.0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = MaxentConfig{};
  c.tolerance = -1.0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = MaxentConfig{};
  c.l2 = -0.5;
  EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(PredictProba, ZeroParametersGiveUniform) {
  MaxentModel m = zero_model(3, 16);
  const std::vector<double> x = {0.2, 0.3, 0.5};
  for (double p : predict_proba(m, x)) EXPECT_DOUBLE_EQ(p, 1.0 / 16.0);
}

TEST(PredictProba, SingleClassIsCertain) {
  MaxentModel m = zero_model(2, 1);
  m.lambda(0, 0) = 4.0;
  m.lambda(1, 0) = -9.0;
  const std::vector<double> x = {0.7, 0.3};
  auto p = predict_proba(m, x);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0], 1.0);
}

TEST(PredictProba, LogThreeScoreGapGivesThreeToOne) {
  MaxentModel m = zero_model(1, 2);
  m.lambda(0, 0) = std::log(3.0);
  const std::vector<double> x = {1.0};
  auto p = predict_proba(m, x);
  EXPECT_NEAR(p[0], 0.75, 1e-15);
  EXPECT_NEAR(p[1], 0.25, 1e-15);
}

TEST(PredictProba, DimensionMismatchThrows) {
  MaxentModel m = zero_model(2, 3);
  const std::vector<double> x = {1.0};
  EXPECT_THROW(predict_proba(m, x), InvalidArgument);
}

TEST(PredictProba, SumsToOneOverRandomModels) {
  std::mt19937_64 rng(404);
  std::uniform_int_distribution<int> terms(1, 6), classes(1, 16);
  std::uniform_real_distribution<double> lam(-700.0, 700.0), unit(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    MaxentModel m = zero_model(terms(rng), classes(rng));
    for (double& v : m.parameters()) v = lam(rng) / m.vocabulary().size();
    std::vector<double> x(m.vocabulary().size());
    for (double& v : x) v = unit(rng);
    auto p = predict_proba(m, x);
    double sum = 0.0;
    for (double v : p) {
      ASSERT_TRUE(std::isfinite(v));
      ASSERT_GE(v, 0.0);
      sum += v;
    }
    ASSERT_NEAR(sum, 1.0, 1e-10) << "trial " << trial;
  }
}

TEST(PredictProba, InvariantToPerTermShift) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> normal(0.0, 2.0);
  MaxentModel m = zero_model(4, 5);
  for (double& v : m.parameters()) v = normal(rng);
  const std::vector<double> x = {0.1, 0.4, 0.3, 0.2};
  auto before = predict_proba(m, x);
  // Adding the same vector to every class column shifts all scores equally.
  for (std::size_t t = 0; t < 4; ++t) {
    const double shift = normal(rng);
    for (std::size_t c = 0; c < 5; ++c) m.lambda(t, c) += shift;
  }
  auto after = predict_proba(m, x);
  for (std::size_t c = 0; c < 5; ++c) EXPECT_NEAR(before[c], after[c], 1e-12);
}

TEST(FeatureExpectationGap, ZeroForOneDocumentOneClass) {
  DocTermMatrix m = corpus({"need heparin"}, {0});
  MaxentModel model(m.vocabulary(), {0});
  EXPECT_EQ(feature_expectation_gap(model, m), 0.0);
}

TEST(FeatureExpectationGap, HalfTheLargestMeanFrequencyForDisjointClasses) {
  // Features (2/3, 1/3, 0) and (0, 0, 1). At zero parameters each class gets
  // probability 1/2, so every gap is half the corpus-mean frequency of its
  // term; "c" has the largest mean frequency, (0 + 1) / 2.
  DocTermMatrix m = corpus({"a a b", "c"}, {0, 1});
  MaxentModel model(m.vocabulary(), {0, 1});
  EXPECT_NEAR(feature_expectation_gap(model, m), 0.25, 1e-15);
}

TEST(LogLikelihoodGradient, MatchesCentralDifferences) {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<int> terms(1, 5), classes(2, 4);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t k = classes(rng);
    DocTermMatrix m = random_corpus(rng, 3, terms(rng), k);
    std::vector<PhraseId> ids(k);
    std::iota(ids.begin(), ids.end(), 0);
    MaxentModel model(m.vocabulary(), ids);
    for (double& v : model.parameters()) v = normal(rng);
    auto grad = log_likelihood_gradient(model, m);
    const double h = 1e-5;
    for (std::size_t i = 0; i < grad.size(); ++i) {
      MaxentModel plus = model, minus = model;
      plus.parameters()[i] += h;
      minus.parameters()[i] -= h;
      const double fd =
          (mean_log_likelihood(plus, m) - mean_log_likelihood(minus, m)) / (2 * h);
      ASSERT_NEAR(grad[i], fd, 1e-6) << "trial " << trial << " param " << i;
    }
  }
}

TEST(TrainMaxent, ConvergesToMatchedExpectations) {
  std::mt19937_64 rng(99);
  DocTermMatrix m = random_corpus(rng, 24, 5, 3);
  MaxentConfig config;
  config.max_iters = 200000;
  MaxentModel model = train_maxent(m, config);
  EXPECT_EQ(model.diagnostics().stop, MaxentStop::kConverged);
  EXPECT_LT(feature_expectation_gap(model, m), 1e-4);
  EXPECT_LT(model.diagnostics().gradient_norm, config.tolerance);
}

TEST(TrainMaxent, SeparatesDisjointDocuments) {
  DocTermMatrix m = corpus({"films", "heparin"}, {0, 1});
  MaxentModel model = train_maxent(m, MaxentConfig{});
  EXPECT_EQ(classify_maxent(model, "films"), 0);
  EXPECT_EQ(classify_maxent(model, "heparin"), 1);
  EXPECT_GT(predict_proba(model, m.row(0))[0], 0.9);
  EXPECT_GT(predict_proba(model, m.row(1))[1], 0.9);
}

TEST(TrainMaxent, IndistinguishableClassesStayUniform) {
  DocTermMatrix m = corpus({"a", "a b", "a", "a b"}, {0, 0, 1, 1});
  MaxentModel model = train_maxent(m, MaxentConfig{});
  for (std::size_t i = 0; i < m.num_rows(); ++i) {
    auto p = predict_proba(model, m.row(i));
    EXPECT_NEAR(p[0], 0.5, 1e-9);
    EXPECT_NEAR(p[1], 0.5, 1e-9);
  }
}

TEST(TrainMaxent, LikelihoodNeverDecreases) {
  std::mt19937_64 rng(3);
  DocTermMatrix m = random_corpus(rng, 12, 4, 3);
  double previous = -INFINITY;
  for (int iters = 0; iters <= 40; ++iters) {
    MaxentConfig config;
    config.max_iters = iters;
    config.step = 8.0;
    MaxentModel model = train_maxent(m, config);
    const double ll = mean_log_likelihood(model, m);
    EXPECT_GE(ll, previous) << "after " << iters << " iterations";
    previous = ll;
  }
}

TEST(TrainMaxent, L2PenaltyBoundsSeparableParameters) {
  DocTermMatrix m = corpus({"films", "heparin"}, {0, 1});
  MaxentConfig config;
  config.l2 = 0.1;
  config.max_iters = 100000;
  MaxentModel model = train_maxent(m, config);
  EXPECT_EQ(model.diagnostics().stop, MaxentStop::kConverged);
  for (double v : model.parameters()) EXPECT_LT(std::fabs(v), 20.0);
  EXPECT_EQ(classify_maxent(model, "films"), 0);
}

TEST(TrainMaxent, IsDeterministic) {
  std::mt19937_64 rng(17);
  DocTermMatrix m = random_corpus(rng, 10, 4, 2);
  MaxentModel a = train_maxent(m, MaxentConfig{});
  MaxentModel b = train_maxent(m, MaxentConfig{});
  EXPECT_TRUE(std::equal(a.parameters().begin(), a.parameters().end(),
                         b.parameters().begin(), b.parameters().end()));
}

TEST(TrainMaxent, Errors) {
  DocTermMatrix m = corpus({"a", "b"}, {0, 1});
  const std::vector<PhraseId> missing = {0, 1, 2};
  EXPECT_THROW(train_maxent(m, MaxentConfig{}, missing), TrainingError);

  Vocabulary vocab({"a"});
  EXPECT_THROW(train_maxent(DocTermMatrix(vocab, {}, {}), MaxentConfig{}),
               TrainingError);

  // Features this large overflow the class scores after the first step.
  DocTermMatrix huge(vocab, {{1e300}, {0.0}}, {0, 1});
  try {
    train_maxent(huge, MaxentConfig{});
    FAIL() << "expected a training error";
  } catch (const TrainingError& e) {
    EXPECT_NE(std::string(e.what()).find("iteration"), std::string::npos);
  }
}

TEST(ClassifyMaxent, ZeroModelPicksLowestClass) {
  DocTermMatrix m = corpus({"a", "b", "c"}, {0, 1, 2});
  MaxentModel model(m.vocabulary(), {0, 1, 2});
  EXPECT_EQ(classify_maxent(model, "b"), 0);
  EXPECT_EQ(classify_maxent(model, ""), 0);
  EXPECT_EQ(classify_maxent(model, "never seen"), 0);
}

}  // namespace
}  // namespace phrasefix
