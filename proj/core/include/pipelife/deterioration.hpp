#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pipelife/material.hpp"

namespace pipelife::regression {

enum class MaterialClass { CI, DI, AC, Steel, Custom };

[[nodiscard]] std::string_view to_string(MaterialClass c) noexcept;
[[nodiscard]] MaterialClass parse_material_class(std::string_view s);
/// CastIron -> CI, DuctileIron -> DI, Asbestos -> AC, Steel -> Steel, else
/// Custom.
[[nodiscard]] MaterialClass material_class(MaterialKind kind) noexcept;

/// coefficient * A^age_power * W^wtl_power
struct Monomial {
  double coefficient = 0.0;
  int age_power = 0;
  int wtl_power = 0;

  [[nodiscard]] int degree() const noexcept { return age_power + wtl_power; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

inline constexpr int kMaxDegree = 3;

/// RUL (years) as a polynomial in age A (years) and wall thickness loss W
/// (percent).
struct DeteriorationModel {
  MaterialClass material = MaterialClass::Custom;
  std::vector<Monomial> terms;
  double r2_fit = 0.0;
  bool degenerate = false;  // constant target or rank-deficient design

  /// Throws Error{InvalidConfig} on an empty term list, a negative exponent
  /// or total degree above 3.
  void validate() const;
  [[nodiscard]] std::string formula() const;  // "Y = -0.342A^2 + 0.0548W + 48.163"
};

/// The four closed-form models as printed in the original deterioration
/// table, coefficients verbatim. Throws Error{UnsupportedMaterial} for Custom.
///
/// The CI model turns negative past roughly 12 years and the DI/AC models
/// grow with age; they are reproduced as published, and predict_rul also
/// reports a value floored at zero.
[[nodiscard]] DeteriorationModel builtin(MaterialClass material);

struct RulPrediction {
  double raw = 0.0;
  double clamped = 0.0;  // max(raw, 0)
};

/// Throws Error{OutOfDomain} for age < 0 or wtl outside [0, 100].
[[nodiscard]] RulPrediction predict_rul(const DeteriorationModel& m, double age, double wtl);

struct Observation {
  double age = 0.0;
  double wtl = 0.0;
  double rul = 0.0;
};

enum class TermSelection { Full, Greedy };

inline constexpr double kGreedyMinGain = 0.005;

/// All (a, w) exponent pairs with a + w <= degree, ordered by total degree
/// then by descending age power: 1, A, W, A^2, AW, W^2, ...
[[nodiscard]] std::vector<std::pair<int, int>> monomial_basis(int degree);

/// Least-squares polynomial in (A, W). A and W are scaled by their largest
/// magnitude before solving and coefficients are mapped back to raw units.
/// Greedy selection starts from the intercept and adds the basis term with
/// the best R2 while the gain is at least 0.005. A constant target yields an
/// intercept-only model with r2_fit = 1, flagged degenerate.
///
/// Errors: InvalidConfig (degree outside 1..3), Underdetermined (fewer
/// observations than terms).
[[nodiscard]] DeteriorationModel fit_polynomial(std::span<const Observation> data, int degree,
                                                TermSelection selection = TermSelection::Full,
                                                MaterialClass tag = MaterialClass::Custom);

/// (RUL(A, W0) - RUL(A, W0 + delta)) / RUL(A, W0), unclamped.
/// Throws Error{NonpositiveBaseline} when RUL(A, W0) <= 0.
[[nodiscard]] double halflife_check(const DeteriorationModel& m, double age, double wtl0,
                                    double delta_wtl);

/// Median age and median WTL of a sample.
struct RepresentativePoint {
  double age = 0.0;
  double wtl = 0.0;
};
[[nodiscard]] RepresentativePoint representative_point(std::span<const Observation> data);

/// R2 of `m` on `data` (1 - SSE/SST; 1 for a constant target fitted exactly).
[[nodiscard]] double r_squared(const DeteriorationModel& m, std::span<const Observation> data);

}  // namespace pipelife::regression
