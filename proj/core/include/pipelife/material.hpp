#pragma once

#include <array>
#include <string_view>

namespace pipelife {

enum class MaterialKind {
  Polyethylene,
  DuctileIron,
  PVC,
  Steel,
  Concrete,
  Asbestos,
  CastIron,
};

inline constexpr std::array<MaterialKind, 7> kAllMaterials = {
    MaterialKind::Polyethylene, MaterialKind::DuctileIron, MaterialKind::PVC,
    MaterialKind::Steel,        MaterialKind::Concrete,    MaterialKind::Asbestos,
    MaterialKind::CastIron,
};

/// Deterioration-impact score (EA) per pipe material. Ductile iron, PVC and
/// steel share 1.67.
[[nodiscard]] constexpr double ea_value(MaterialKind kind) noexcept {
  switch (kind) {
    case MaterialKind::Polyethylene: return 0.42;
    case MaterialKind::DuctileIron: return 1.67;
    case MaterialKind::PVC: return 1.67;
    case MaterialKind::Steel: return 1.67;
    case MaterialKind::Concrete: return 5.01;
    case MaterialKind::Asbestos: return 6.68;
    case MaterialKind::CastIron: return 8.35;
  }
  return 0.0;
}

struct Material {
  MaterialKind kind = MaterialKind::CastIron;

  [[nodiscard]] constexpr double ea() const noexcept { return ea_value(kind); }
  friend constexpr bool operator==(Material, Material) = default;
};

/// Canonical spelling used when writing CSV files ("CastIron", "PVC", ...).
[[nodiscard]] std::string_view material_name(MaterialKind kind) noexcept;

/// Parses a material name. Matching ignores case, spaces, '-' and '_', so
/// "Cast iron", "cast_iron" and "CastIron" are equivalent. Accepted aliases:
/// CI (cast iron), DI (ductile iron), AC / "asbestos cement" (asbestos),
/// PE / HDPE (polyethylene).
///
/// Throws Error{UnknownMaterial} for anything else.
[[nodiscard]] Material encode_material(std::string_view name);

}  // namespace pipelife
