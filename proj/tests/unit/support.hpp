#pragma once

#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <string>

#include "pipelife/dataset.hpp"
#include "pipelife/error.hpp"

namespace pipelife::testing {

inline PipeRecord make_record(int age, double wtl, std::optional<double> rul = 40.0,
                              MaterialKind kind = MaterialKind::CastIron, int reference_year = 2012) {
  PipeRecord r;
  r.age = age;
  r.install_year = reference_year - age;
  r.diameter = 8.0;
  r.length = 500.0;
  r.material = Material{kind};
  r.breaks = 1;
  r.wall_thickness_loss = wtl;
  r.rul = rul;
  return r;
}

/// Runs `fn` and returns the ErrorCode it throws; fails the test if nothing
/// (or something else) is thrown.
inline std::optional<ErrorCode> code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

#define EXPECT_ERROR_CODE(expr, expected) \
  EXPECT_EQ(::pipelife::testing::code_of([&] { (void)(expr); }), std::optional<::pipelife::ErrorCode>(expected))

}  // namespace pipelife::testing
