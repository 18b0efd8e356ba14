#pragma once

#include <mpfr.h>

#include <string_view>

#include "jbound/xreal.hpp"

namespace testing_support {

/// |x - y| / |y| with y parsed from a decimal string, as a double.
inline double relative_error(const jbound::BigFloat& x, std::string_view expected) {
  const auto y = jbound::BigFloat::parse(expected, 256, jbound::Rounding::Up);
  jbound::BigFloat diff(256);
  mpfr_sub(diff.get(), x.get(), y.get(), MPFR_RNDN);
  mpfr_abs(diff.get(), diff.get(), MPFR_RNDN);
  mpfr_div(diff.get(), diff.get(), y.get(), MPFR_RNDN);
  mpfr_abs(diff.get(), diff.get(), MPFR_RNDN);
  return diff.to_double();
}

inline double relative_error(const jbound::BigFloat& x, const jbound::BigFloat& y) {
  jbound::BigFloat diff(256);
  mpfr_sub(diff.get(), x.get(), y.get(), MPFR_RNDN);
  mpfr_abs(diff.get(), diff.get(), MPFR_RNDN);
  mpfr_div(diff.get(), diff.get(), y.get(), MPFR_RNDN);
  mpfr_abs(diff.get(), diff.get(), MPFR_RNDN);
  return diff.to_double();
}

}  // namespace testing_support
