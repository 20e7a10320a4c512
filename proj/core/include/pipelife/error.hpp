#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pipelife {

enum class ErrorCode {
  // core-data
  UnknownMaterial,
  FileUnreadable,
  SchemaMismatch,
  EmptyAfterCleaning,
  RatioSumInvalid,
  UnknownColumn,
  DegenerateColumn,
  // stats
  EmptySeries,
  ZeroStd,
  LengthMismatch,
  ConstantSeries,
  TooFewGroups,
  DegenerateWithinVariance,
  TooShort,
  MissingTarget,
  // metrics
  ConstantActuals,
  AllMapeTermsSkipped,
  NegativeMape,
  // models
  InvalidConfig,
  DimensionMismatch,
  EmptyBatch,
  EmptySplit,
  RuleExplosion,
  TooFewMfs,
  AllRulesZero,
  UntrainedModel,
  // regression
  UnsupportedMaterial,
  OutOfDomain,
  Underdetermined,
  NonpositiveBaseline,
  // synth
  EmptyDataset,
  // serialization
  InvalidModelDocument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every domain failure in the library is reported as an Error carrying a
/// stable code; callers branch on code(), humans read what().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pipelife
