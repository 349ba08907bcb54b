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

#ifndef PHRASEFIX_SRC_EMBEDDED_H_
#define PHRASEFIX_SRC_EMBEDDED_H_

#include <string_view>

namespace phrasefix::detail {

// Contents of a file from core/data, keyed by basename. Defined in the
// translation unit generated by EmbedData.cmake.
std::string_view embedded_file(std::string_view name);

}  // namespace phrasefix::detail

#endif  // PHRASEFIX_SRC_EMBEDDED_H_
