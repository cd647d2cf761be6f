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

#ifndef NONRED_ERROR_H_
#define NONRED_ERROR_H_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace nonred {

enum class ErrorCode {
  kWrongLength,
  kEntryOutOfRange,
  kBadDimension,
  kIndexOutOfRange,
  kSingular,
  kConditionViolated,
  kAllAjSingular,
  kNotSkew,
  kNotCompletelyMixed,
  kNumericalFailure,
  kNonpositiveVariance,
  kInvalidArgument,
  kParseError,
};

const char* ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception. `index()` is set
// when the failure can be pinned to a single element (e.g. an out-of-range
// upper-triangle entry).
class NonredError : public std::runtime_error {
 public:
  NonredError(ErrorCode code, const std::string& message,
              std::optional<std::size_t> index = std::nullopt);

  ErrorCode code() const { return code_; }
  std::optional<std::size_t> index() const { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

}  // namespace nonred

#endif  // NONRED_ERROR_H_
