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

#include <sstream>
#include <string>
#include <vector>

#include "embedded.h"
#include "phrasefix/corpus.h"

namespace phrasefix {
namespace {

PhraseSet load_builtin(PhraseType type) {
  std::string name = "phrases_" + std::string(to_string(type)) + ".txt";
  std::istringstream in{std::string(detail::embedded_file(name))};
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return PhraseSet(type, lines);
}

}  // namespace

const PhraseSet& builtin_phrase_set(PhraseType type) {
  static const PhraseSet as_is = load_builtin(PhraseType::kAsIs);
  static const PhraseSet reduced = load_builtin(PhraseType::kReduced);
  static const PhraseSet personalized = load_builtin(PhraseType::kPersonalized);
  switch (type) {
    case PhraseType::kAsIs:
      return as_is;
    case PhraseType::kReduced:
      return reduced;
    case PhraseType::kPersonalized:
      return personalized;
  }
  return as_is;
}

}  // namespace phrasefix
