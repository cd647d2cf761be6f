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

#include "nonred/scalar.h"

#include <cctype>
#include <string>

#include "nonred/error.h"

namespace nonred {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kWrongLength: return "WrongLength";
    case ErrorCode::kEntryOutOfRange: return "EntryOutOfRange";
    case ErrorCode::kBadDimension: return "BadDimension";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kSingular: return "Singular";
    case ErrorCode::kConditionViolated: return "ConditionViolated";
    case ErrorCode::kAllAjSingular: return "AllAjSingular";
    case ErrorCode::kNotSkew: return "NotSkew";
    case ErrorCode::kNotCompletelyMixed: return "NotCompletelyMixed";
    case ErrorCode::kNumericalFailure: return "NumericalFailure";
    case ErrorCode::kNonpositiveVariance: return "NonpositiveVariance";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

NonredError::NonredError(ErrorCode code, const std::string& message,
                         std::optional<std::size_t> index)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code),
      index_(index) {}

const char* BackendName(Backend backend) {
  return backend == Backend::kExact ? "exact" : "float";
}

namespace {

[[noreturn]] void ParseFailure(std::string_view text) {
  throw NonredError(ErrorCode::kParseError,
                    "not a rational literal: '" + std::string(text) + "'");
}

Rational ParseDecimal(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  int scale = 0;  // number of digits after the decimal point
  bool seen_point = false;
  bool any_digit = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) ++scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) ParseFailure(text);
  long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    std::string exp_text(text.substr(pos));
    if (exp_text.empty()) ParseFailure(text);
    std::size_t used = 0;
    try {
      exponent = std::stol(exp_text, &used);
    } catch (const std::exception&) {
      ParseFailure(text);
    }
    if (used != exp_text.size() || exponent > 4096 || exponent < -4096) {
      ParseFailure(text);
    }
    pos = text.size();
  }
  if (pos != text.size()) ParseFailure(text);

  boost::multiprecision::mpz_int numerator(digits);
  boost::multiprecision::mpz_int ten_power = 1;
  long shift = exponent - scale;
  for (long i = 0; i < (shift < 0 ? -shift : shift); ++i) ten_power *= 10;
  Rational value = shift >= 0 ? Rational(numerator * ten_power)
                              : Rational(numerator, ten_power);
  return negative ? Rational(-value) : value;
}

std::string_view Trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  return text;
}

}  // namespace

Rational ParseRational(std::string_view text) {
  text = Trim(text);
  std::size_t slash = text.find('/');
  if (slash == std::string_view::npos) return ParseDecimal(text);
  Rational numerator = ParseDecimal(Trim(text.substr(0, slash)));
  Rational denominator = ParseDecimal(Trim(text.substr(slash + 1)));
  if (denominator == 0) {
    throw NonredError(ErrorCode::kParseError,
                      "zero denominator in '" + std::string(text) + "'");
  }
  return numerator / denominator;
}

std::string RationalToString(const Rational& x) {
  if (boost::multiprecision::denominator(x) == 1) {
    return boost::multiprecision::numerator(x).str();
  }
  return boost::multiprecision::numerator(x).str() + "/" +
         boost::multiprecision::denominator(x).str();
}

}  // namespace nonred
