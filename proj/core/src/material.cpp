#include "pipelife/material.hpp"

#include <cctype>
#include <string>

#include "pipelife/error.hpp"

namespace pipelife {

std::string_view material_name(MaterialKind kind) noexcept {
  switch (kind) {
    case MaterialKind::Polyethylene: return "Polyethylene";
    case MaterialKind::DuctileIron: return "DuctileIron";
    case MaterialKind::PVC: return "PVC";
    case MaterialKind::Steel: return "Steel";
    case MaterialKind::Concrete: return "Concrete";
    case MaterialKind::Asbestos: return "Asbestos";
    case MaterialKind::CastIron: return "CastIron";
  }
  return "";
}

namespace {

std::string fold(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == ' ' || c == '-' || c == '_' || c == '\t') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

struct Alias {
  std::string_view key;
  MaterialKind kind;
};

constexpr Alias kAliases[] = {
    {"polyethylene", MaterialKind::Polyethylene},
    {"pe", MaterialKind::Polyethylene},
    {"hdpe", MaterialKind::Polyethylene},
    {"ductileiron", MaterialKind::DuctileIron},
    {"di", MaterialKind::DuctileIron},
    {"pvc", MaterialKind::PVC},
    {"polyvinylchloride", MaterialKind::PVC},
    {"steel", MaterialKind::Steel},
    {"concrete", MaterialKind::Concrete},
    {"asbestos", MaterialKind::Asbestos},
    {"asbestoscement", MaterialKind::Asbestos},
    {"ac", MaterialKind::Asbestos},
    {"castiron", MaterialKind::CastIron},
    {"ci", MaterialKind::CastIron},
};

}  // namespace

Material encode_material(std::string_view name) {
  const std::string key = fold(name);
  for (const auto& alias : kAliases) {
    if (alias.key == key) return Material{alias.kind};
  }
  throw Error(ErrorCode::UnknownMaterial, "'" + std::string(name) + "' is not a known pipe material");
}

}  // namespace pipelife
