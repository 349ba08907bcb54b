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

#ifndef PHRASEFIX_ERROR_H_
#define PHRASEFIX_ERROR_H_

#include <stdexcept>
#include <string>

namespace phrasefix {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file or field (CSV, JSON, CLI values).
class ParseError : public Error {
 public:
  using Error::Error;
};

// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A trainer could not produce a model from the given data.
class TrainingError : public Error {
 public:
  using Error::Error;
};

// Experiment configuration names a cell or option that cannot be run.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace phrasefix

#endif  // PHRASEFIX_ERROR_H_
