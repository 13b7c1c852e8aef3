// Copyright 2026 The maxleak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace maxleak {

/// Error categories, named after the invariant they report.
enum class Errc {
  TooShort,
  NonPositiveEntry,
  NotNormalized,
  RowNotStochastic,
  NegativeGamma,
  SchemaError,
  EmptySet,
  EmptyVector,
  IndexOutOfRange,
  LengthMismatch,
  DimensionMismatch,
  NotSquare,
  BudgetExceedsAlphabet,
  NumericalBreakdown,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::TooShort: return "TooShort";
    case Errc::NonPositiveEntry: return "NonPositiveEntry";
    case Errc::NotNormalized: return "NotNormalized";
    case Errc::RowNotStochastic: return "RowNotStochastic";
    case Errc::NegativeGamma: return "NegativeGamma";
    case Errc::SchemaError: return "SchemaError";
    case Errc::EmptySet: return "EmptySet";
    case Errc::EmptyVector: return "EmptyVector";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotSquare: return "NotSquare";
    case Errc::BudgetExceedsAlphabet: return "BudgetExceedsAlphabet";
    case Errc::NumericalBreakdown: return "NumericalBreakdown";
  }
  return "UnknownError";
}

/// Exception carrying an Errc. The message starts with the category name so
/// callers (and the command line tool) can surface the violated invariant.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(detail.empty()
                               ? std::string(errc_name(code))
                               : std::string(errc_name(code)) + " " + detail),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& detail = "") {
  throw Error(code, detail);
}

}  // namespace maxleak
