// Copyright 2026 The nonred Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NONRED_MATRIX_IO_H_
#define NONRED_MATRIX_IO_H_

#include <optional>
#include <string>
#include <string_view>

#include "nonred/game.h"

// Matrix files are JSON objects
//   {"n": 3, "upper": ["1", "-1", "1/2"], "scale_note": "optional"}
// with the upper triangle in row-major order. Entries may be "p/q" or decimal
// strings, or JSON numbers. A number is read from its shortest decimal
// spelling, so 0.3 becomes exactly 3/10.

namespace nonred {

struct MatrixFile {
  ExactGame game;
  std::optional<std::string> scale_note;
};

// Throws kParseError for malformed JSON or entries, and the game_core errors
// for invalid games.
MatrixFile ParseMatrixJson(std::string_view text);
MatrixFile ReadMatrixFile(const std::string& path);

// Exact games write "p/q" strings; float games write numbers.
std::string MatrixToJson(const ExactGame& game,
                         const std::optional<std::string>& scale_note = {});
std::string MatrixToJson(const FloatGame& game,
                         const std::optional<std::string>& scale_note = {});

}  // namespace nonred

#endif  // NONRED_MATRIX_IO_H_
