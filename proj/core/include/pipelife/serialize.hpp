#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include "pipelife/anfis.hpp"
#include "pipelife/deterioration.hpp"
#include "pipelife/mlp.hpp"

namespace pipelife {

inline constexpr int kModelFormatVersion = 1;

// Versioned JSON documents: {"format": "pipelife-model", "version": 1,
// "kind": "mlp" | "anfis" | "deterioration", ...}. Doubles are written with
// round-trip precision.

[[nodiscard]] std::string to_json(const mlp::MlpModel& m);
[[nodiscard]] std::string to_json(const anfis::AnfisModel& m);
[[nodiscard]] std::string to_json(const regression::DeteriorationModel& m);

using AnyModel = std::variant<mlp::MlpModel, anfis::AnfisModel, regression::DeteriorationModel>;

/// Throws Error{InvalidModelDocument} on malformed input or a version
/// mismatch.
[[nodiscard]] AnyModel model_from_json(const std::string& text);
[[nodiscard]] AnyModel load_model(const std::filesystem::path& path);
void save_text(const std::filesystem::path& path, const std::string& text);

}  // namespace pipelife
