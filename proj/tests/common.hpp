#pragma once

#include <optional>

#include "catch_amalgamated.hpp"
#include "levystein/error.hpp"

using Catch::Approx;

// Kind of the Error thrown by f, empty when f returns normally.
template <class F>
std::optional<levystein::ErrorKind> error_kind(F&& f) {
  try {
    f();
  } catch (const levystein::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}
