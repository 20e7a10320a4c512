#include "pipelife/error.hpp"

namespace pipelife {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnknownMaterial: return "UnknownMaterial";
    case ErrorCode::FileUnreadable: return "FileUnreadable";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::EmptyAfterCleaning: return "EmptyAfterCleaning";
    case ErrorCode::RatioSumInvalid: return "RatioSumInvalid";
    case ErrorCode::UnknownColumn: return "UnknownColumn";
    case ErrorCode::DegenerateColumn: return "DegenerateColumn";
    case ErrorCode::EmptySeries: return "EmptySeries";
    case ErrorCode::ZeroStd: return "ZeroStd";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ConstantSeries: return "ConstantSeries";
    case ErrorCode::TooFewGroups: return "TooFewGroups";
    case ErrorCode::DegenerateWithinVariance: return "DegenerateWithinVariance";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::MissingTarget: return "MissingTarget";
    case ErrorCode::ConstantActuals: return "ConstantActuals";
    case ErrorCode::AllMapeTermsSkipped: return "AllMapeTermsSkipped";
    case ErrorCode::NegativeMape: return "NegativeMape";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyBatch: return "EmptyBatch";
    case ErrorCode::EmptySplit: return "EmptySplit";
    case ErrorCode::RuleExplosion: return "RuleExplosion";
    case ErrorCode::TooFewMfs: return "TooFewMfs";
    case ErrorCode::AllRulesZero: return "AllRulesZero";
    case ErrorCode::UntrainedModel: return "UntrainedModel";
    case ErrorCode::UnsupportedMaterial: return "UnsupportedMaterial";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::Underdetermined: return "Underdetermined";
    case ErrorCode::NonpositiveBaseline: return "NonpositiveBaseline";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::InvalidModelDocument: return "InvalidModelDocument";
  }
  return "Unknown";
}

}  // namespace pipelife
