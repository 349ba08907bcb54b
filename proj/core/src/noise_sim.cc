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

#include "phrasefix/noise_sim.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "embedded.h"
#include "phrasefix/error.h"

namespace phrasefix {
namespace {

using nlohmann::json;

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// FNV-1a; std::hash is not stable across standard libraries.
std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Counter-based stream: the key fully determines the sequence.
class KeyedStream {
 public:
  explicit KeyedStream(std::initializer_list<std::uint64_t> key) {
    for (std::uint64_t part : key) {
      state_ ^= part;
      state_ = splitmix64(state_);
    }
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(splitmix64(state_) >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_ = 0x5eed5eed5eed5eedULL;
};

constexpr std::uint64_t kOccurrenceDomain = 1;
constexpr std::uint64_t kHabitDomain = 2;

std::size_t pick(std::span<const Substitution> alts, double u) {
  double total = 0.0;
  for (const Substitution& s : alts) total += s.probability;
  double target = u * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < alts.size(); ++i) {
    acc += alts[i].probability;
    if (target < acc) return i;
  }
  // Rounding at the top end, or all-zero weights.
  for (std::size_t i = alts.size(); i-- > 0;) {
    if (alts[i].probability > 0.0) return i;
  }
  return 0;
}

double token_error_total(std::span<const Substitution> alts) {
  double total = 0.0;
  for (const Substitution& s : alts) total += s.probability;
  return total;
}

}  // namespace

void ConfusionModel::validate() const {
  if (!(deletion_prob >= 0.0 && deletion_prob < 1.0)) {
    throw InvalidArgument("deletion_prob must be in [0, 1)");
  }
  if (!(stickiness >= 0.0 && stickiness <= 1.0)) {
    throw InvalidArgument("stickiness must be in [0, 1]");
  }
  for (const auto& [token, alts] : substitutions) {
    double total = 0.0;
    for (const Substitution& s : alts) {
      if (!(s.probability >= 0.0) || !std::isfinite(s.probability)) {
        throw InvalidArgument("substitution probability for '" + token +
                              "' must be >= 0");
      }
      if (s.replacement.empty()) {
        throw InvalidArgument("empty replacement for '" + token + "'");
      }
      total += s.probability;
    }
    if (total > 1.0 + 1e-9) {
      throw InvalidArgument("substitution probabilities for '" + token +
                            "' sum to more than 1");
    }
  }
  double max_bias = 1.0;
  for (const auto& [id, bias] : participant_bias) {
    if (!(bias >= 0.0) || !std::isfinite(bias)) {
      throw InvalidArgument("participant bias for '" + id + "' must be >= 0");
    }
    max_bias = std::max(max_bias, bias);
  }
  if (deletion_prob * max_bias >= 1.0) {
    throw InvalidArgument("deletion_prob times the largest bias must be < 1");
  }
}

double ConfusionModel::bias_for(std::string_view participant) const {
  auto it = participant_bias.find(participant);
  return it == participant_bias.end() ? 1.0 : it->second;
}

ConfusionModel ConfusionModel::with_substitution_rate(double rate) const {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw InvalidArgument("substitution rate must be in [0, 1]");
  }
  ConfusionModel out = *this;
  for (auto& [token, alts] : out.substitutions) {
    double total = token_error_total(alts);
    if (total <= 0.0) {
      if (!alts.empty()) {
        for (Substitution& s : alts) s.probability = rate / alts.size();
      }
      continue;
    }
    for (Substitution& s : alts) s.probability *= rate / total;
  }
  return out;
}

ConfusionModel parse_confusion_model(std::string_view json_text) {
  ConfusionModel model;
  try {
    json doc = json::parse(json_text);
    model.seed = doc.at("seed").get<std::uint64_t>();
    model.deletion_prob = doc.value("deletion_prob", 0.0);
    model.stickiness = doc.value("stickiness", 0.8);
    if (doc.contains("substitutions")) {
      for (const auto& [token, alts] : doc.at("substitutions").items()) {
        auto& list = model.substitutions[token];
        for (const auto& pair : alts) {
          if (!pair.is_array() || pair.size() != 2) {
            throw ParseError("substitution for '" + token +
                             "' must be [replacement, probability]");
          }
          list.push_back({pair[0].get<std::string>(), pair[1].get<double>()});
        }
      }
    }
    if (doc.contains("participant_bias")) {
      for (const auto& [id, bias] : doc.at("participant_bias").items()) {
        model.participant_bias[id] = bias.get<double>();
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("confusion model: ") + e.what());
  }
  try {
    model.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("confusion model: ") + e.what());
  }
  return model;
}

ConfusionModel load_confusion_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open confusion model '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_confusion_model(buf.str());
}

std::string confusion_model_to_json(const ConfusionModel& model) {
  json doc;
  doc["seed"] = model.seed;
  doc["deletion_prob"] = model.deletion_prob;
  doc["stickiness"] = model.stickiness;
  json subs = json::object();
  for (const auto& [token, alts] : model.substitutions) {
    json list = json::array();
    for (const Substitution& s : alts) list.push_back({s.replacement, s.probability});
    subs[token] = std::move(list);
  }
  doc["substitutions"] = std::move(subs);
  json bias = json::object();
  for (const auto& [id, b] : model.participant_bias) bias[id] = b;
  doc["participant_bias"] = std::move(bias);
  return doc.dump(2);
}

const ConfusionModel& default_confusion_model() {
  static const ConfusionModel model =
      parse_confusion_model(detail::embedded_file("default_confusion.json"));
  return model;
}

std::string corrupt(const ConfusionModel& model, const Phrase& phrase,
                    std::string_view participant, int repetition) {
  const double bias = model.bias_for(participant);
  const std::uint64_t who = fnv1a(participant);
  const double p_delete = std::min(1.0, model.deletion_prob * bias);

  std::string out;
  const Document tokens = tokenize(phrase.text);
  for (std::size_t pos = 0; pos < tokens.size(); ++pos) {
    const std::string& token = tokens[pos];
    KeyedStream stream{model.seed, kOccurrenceDomain, who,
                       static_cast<std::uint64_t>(phrase.id),
                       static_cast<std::uint64_t>(repetition),
                       static_cast<std::uint64_t>(pos)};
    // Always draw all four so positions in the stream never shift.
    const double u_substitute = stream.uniform();
    const double u_sticky = stream.uniform();
    const double u_fresh = stream.uniform();
    const double u_delete = stream.uniform();

    std::string_view resolved = token;
    auto it = model.substitutions.find(token);
    if (it != model.substitutions.end() && !it->second.empty()) {
      const auto& alts = it->second;
      const double q = std::min(1.0, bias * token_error_total(alts));
      if (u_substitute < q) {
        std::size_t choice;
        if (u_sticky < model.stickiness) {
          KeyedStream habit{model.seed, kHabitDomain, who, fnv1a(token)};
          choice = pick(alts, habit.uniform());
        } else {
          choice = pick(alts, u_fresh);
        }
        resolved = alts[choice].replacement;
      }
    }
    if (u_delete < p_delete) continue;
    if (!out.empty()) out.push_back(' ');
    out += resolved;
  }
  return out;
}

std::string participant_id(int index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "p%02d", index);
  return buf;
}

std::vector<Observation> generate_corpus(const ConfusionModel& model,
                                         const PhraseSet& phrase_set,
                                         int participants, int train_reps,
                                         int test_reps) {
  if (participants < 0 || train_reps < 0 || test_reps < 0) {
    throw InvalidArgument("corpus counts must be >= 0");
  }
  model.validate();
  std::vector<Observation> out;
  out.reserve(phrase_set.size() * static_cast<std::size_t>(participants) *
              static_cast<std::size_t>(train_reps + test_reps));
  // A participant runs through the whole checklist once per repetition.
  for (int p = 1; p <= participants; ++p) {
    const std::string who = participant_id(p);
    for (int rep = 1; rep <= train_reps + test_reps; ++rep) {
      for (const Phrase& phrase : phrase_set.phrases()) {
        Observation obs;
        obs.transcript = corrupt(model, phrase, who, rep);
        obs.target = phrase.id;
        obs.phrase_type = phrase_set.type();
        obs.participant = who;
        obs.repetition = rep;
        obs.role = rep <= train_reps ? Role::kTrain : Role::kTest;
        out.push_back(std::move(obs));
      }
    }
  }
  return out;
}

}  // namespace phrasefix
