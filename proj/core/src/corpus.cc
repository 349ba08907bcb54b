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

#include "phrasefix/corpus.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "csv.h"
#include "phrasefix/error.h"

namespace phrasefix {

std::string_view to_string(PhraseType type) {
  switch (type) {
    case PhraseType::kAsIs:
      return "as_is";
    case PhraseType::kReduced:
      return "reduced";
    case PhraseType::kPersonalized:
      return "personalized";
  }
  return "unknown";
}

PhraseType parse_phrase_type(std::string_view name) {
  for (PhraseType t : kAllPhraseTypes) {
    if (to_string(t) == name) return t;
  }
  throw ParseError("unknown phrase_type '" + std::string(name) + "'");
}

std::string_view to_string(Role role) {
  return role == Role::kTrain ? "train" : "test";
}

Role parse_role(std::string_view name) {
  if (name == "train") return Role::kTrain;
  if (name == "test") return Role::kTest;
  throw ParseError("unknown role '" + std::string(name) + "'");
}

PhraseSet::PhraseSet(PhraseType type, std::span<const std::string> wordings)
    : type_(type) {
  if (wordings.size() != kPhrasesPerSet) {
    throw InvalidArgument("a phrase set needs exactly " +
                          std::to_string(kPhrasesPerSet) + " phrases, got " +
                          std::to_string(wordings.size()));
  }
  std::set<std::string, std::less<>> seen;
  for (std::size_t i = 0; i < wordings.size(); ++i) {
    Phrase p;
    p.id = static_cast<PhraseId>(i);
    p.text = normalize(wordings[i]);
    p.display = wordings[i];
    p.type = type;
    if (p.text.empty()) {
      throw InvalidArgument("phrase " + std::to_string(i) + " is empty");
    }
    if (!seen.insert(p.text).second) {
      throw InvalidArgument("duplicate phrase '" + p.text + "'");
    }
    phrases_.push_back(std::move(p));
  }
}

const Phrase& PhraseSet::at(PhraseId id) const {
  if (!contains(id)) {
    throw InvalidArgument("phrase id " + std::to_string(id) +
                          " is not in the " + std::string(to_string(type_)) +
                          " set");
  }
  return phrases_[static_cast<std::size_t>(id)];
}

Document tokenize(std::string_view raw) {
  Document tokens;
  std::string current;
  for (char ch : raw) {
    auto u = static_cast<unsigned char>(ch);
    if (std::isspace(u)) {
      if (!current.empty()) {
        tokens.push_back(std::move(current));
        current.clear();
      }
    } else if (std::isalnum(u) || ch == '&') {
      current.push_back(static_cast<char>(std::tolower(u)));
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::string normalize(std::string_view raw) {
  std::string out;
  for (const std::string& token : tokenize(raw)) {
    if (!out.empty()) out.push_back(' ');
    out += token;
  }
  return out;
}

Vocabulary::Vocabulary(std::vector<std::string> terms) : terms_(std::move(terms)) {
  index_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!index_.emplace(terms_[i], i).second) {
      throw InvalidArgument("duplicate vocabulary term '" + terms_[i] + "'");
    }
  }
}

std::optional<std::size_t> Vocabulary::index_of(std::string_view term) const {
  auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vocabulary build_vocabulary(std::span<const Document> docs) {
  if (docs.empty()) throw InvalidArgument("empty corpus");
  std::set<std::string> distinct;
  for (const Document& doc : docs) distinct.insert(doc.begin(), doc.end());
  return Vocabulary(std::vector<std::string>(distinct.begin(), distinct.end()));
}

std::vector<double> vectorize(const Document& doc, const Vocabulary& vocab) {
  std::vector<double> row(vocab.size(), 0.0);
  if (doc.empty()) return row;
  for (const std::string& token : doc) {
    if (auto col = vocab.index_of(token)) row[*col] += 1.0;
  }
  const double n = static_cast<double>(doc.size());
  for (double& v : row) v /= n;
  return row;
}

DocTermMatrix::DocTermMatrix(Vocabulary vocab,
                             std::vector<std::vector<double>> rows,
                             std::vector<PhraseId> labels)
    : vocab_(std::move(vocab)), rows_(std::move(rows)), labels_(std::move(labels)) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].size() != vocab_.size()) {
      throw InvalidArgument("row " + std::to_string(i) + " has length " +
                            std::to_string(rows_[i].size()) +
                            ", vocabulary has " + std::to_string(vocab_.size()));
    }
  }
  if (!labels_.empty() && labels_.size() != rows_.size()) {
    throw InvalidArgument("label count does not match row count");
  }
}

DocTermMatrix DocTermMatrix::from_documents(std::span<const Document> docs,
                                            Vocabulary vocab,
                                            std::vector<PhraseId> labels) {
  std::vector<std::vector<double>> rows;
  rows.reserve(docs.size());
  for (const Document& doc : docs) rows.push_back(vectorize(doc, vocab));
  return DocTermMatrix(std::move(vocab), std::move(rows), std::move(labels));
}

namespace {

constexpr std::string_view kCorpusHeader[] = {
    "transcript", "target_id", "phrase_type", "participant", "repetition", "role"};

[[noreturn]] void fail_row(const std::string& what, std::size_t row) {
  throw ParseError(what + ", row " + std::to_string(row));
}

}  // namespace

std::vector<Observation> read_corpus(std::istream& in) {
  auto header = csv::read_record(in);
  if (!header) throw ParseError("empty corpus file");
  // Column order is taken from the header so extra columns are tolerated.
  std::size_t column[std::size(kCorpusHeader)];
  for (std::size_t k = 0; k < std::size(kCorpusHeader); ++k) {
    auto it = std::find(header->begin(), header->end(), kCorpusHeader[k]);
    if (it == header->end()) {
      throw ParseError("missing column '" + std::string(kCorpusHeader[k]) + "'");
    }
    column[k] = static_cast<std::size_t>(it - header->begin());
  }

  std::vector<Observation> out;
  std::size_t row = 0;
  while (auto record = csv::read_record(in)) {
    ++row;
    if (record->size() == 1 && record->front().empty()) continue;  // blank line
    if (record->size() != header->size()) {
      fail_row("expected " + std::to_string(header->size()) + " fields, got " +
                   std::to_string(record->size()),
               row);
    }
    const auto& f = *record;
    Observation obs;
    obs.transcript = f[column[0]];
    auto target = csv::parse_int(f[column[1]]);
    if (!target) fail_row("bad target_id '" + f[column[1]] + "'", row);
    if (*target < 0 || *target >= static_cast<long long>(kPhrasesPerSet)) {
      fail_row("target out of range", row);
    }
    obs.target = static_cast<PhraseId>(*target);
    try {
      obs.phrase_type = parse_phrase_type(f[column[2]]);
      obs.role = parse_role(f[column[5]]);
    } catch (const ParseError& e) {
      fail_row(e.what(), row);
    }
    obs.participant = f[column[3]];
    auto rep = csv::parse_int(f[column[4]]);
    if (!rep || *rep < 1 || *rep > 1'000'000) {
      fail_row("bad repetition '" + f[column[4]] + "'", row);
    }
    obs.repetition = static_cast<int>(*rep);
    out.push_back(std::move(obs));
  }
  return out;
}

std::vector<Observation> load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open corpus '" + path.string() + "'");
  return read_corpus(in);
}

void write_corpus(std::ostream& out, std::span<const Observation> obs) {
  std::vector<std::string> fields(std::begin(kCorpusHeader),
                                  std::end(kCorpusHeader));
  csv::write_record(out, fields);
  for (const Observation& o : obs) {
    fields = {o.transcript,
              std::to_string(o.target),
              std::string(to_string(o.phrase_type)),
              o.participant,
              std::to_string(o.repetition),
              std::string(to_string(o.role))};
    csv::write_record(out, fields);
  }
}

void save_corpus(const std::filesystem::path& path,
                 std::span<const Observation> obs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write corpus '" + path.string() + "'");
  write_corpus(out, obs);
}

std::pair<std::vector<Observation>, std::vector<Observation>> split_by_role(
    std::span<const Observation> obs) {
  std::pair<std::vector<Observation>, std::vector<Observation>> parts;
  for (const Observation& o : obs) {
    (o.role == Role::kTrain ? parts.first : parts.second).push_back(o);
  }
  return parts;
}

}  // namespace phrasefix
