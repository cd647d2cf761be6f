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

#include "nonred/matrix_io.h"

#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "nonred/error.h"

namespace nonred {

namespace {

using json = nlohmann::json;

Rational EntryFromJson(const json& value, std::size_t index) {
  try {
    if (value.is_string()) return ParseRational(value.get<std::string>());
    if (value.is_number()) return ParseRational(value.dump());
  } catch (const NonredError& e) {
    throw NonredError(ErrorCode::kParseError, e.what(), index);
  }
  throw NonredError(ErrorCode::kParseError,
                    "upper entry must be a number or a string", index);
}

}  // namespace

MatrixFile ParseMatrixJson(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw NonredError(ErrorCode::kParseError, e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("upper")) {
    throw NonredError(ErrorCode::kParseError,
                      "matrix JSON needs an object with \"n\" and \"upper\"");
  }
  if (!doc["n"].is_number_integer() || !doc["upper"].is_array()) {
    throw NonredError(ErrorCode::kParseError,
                      "\"n\" must be an integer and \"upper\" an array");
  }
  const int n = doc["n"].get<int>();
  std::vector<Rational> upper;
  upper.reserve(doc["upper"].size());
  for (std::size_t k = 0; k < doc["upper"].size(); ++k) {
    upper.push_back(EntryFromJson(doc["upper"][k], k));
  }
  std::optional<std::string> note;
  if (doc.contains("scale_note") && doc["scale_note"].is_string()) {
    note = doc["scale_note"].get<std::string>();
  }
  return {ExactGame::FromUpperTriangle(n, std::move(upper)), std::move(note)};
}

MatrixFile ReadMatrixFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw NonredError(ErrorCode::kParseError, "cannot open '" + path + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseMatrixJson(buffer.str());
}

std::string MatrixToJson(const ExactGame& game,
                         const std::optional<std::string>& scale_note) {
  json doc;
  doc["n"] = game.n();
  json upper = json::array();
  for (const Rational& x : game.upper()) upper.push_back(RationalToString(x));
  doc["upper"] = std::move(upper);
  if (scale_note) doc["scale_note"] = *scale_note;
  return doc.dump();
}

std::string MatrixToJson(const FloatGame& game,
                         const std::optional<std::string>& scale_note) {
  json doc;
  doc["n"] = game.n();
  doc["upper"] = game.upper();
  if (scale_note) doc["scale_note"] = *scale_note;
  return doc.dump();
}

}  // namespace nonred
