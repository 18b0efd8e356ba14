#pragma once

// Extended-range reals with directed rounding.
//
// BigFloat is an owning MPFR value with the widest exponent range MPFR
// allows (about 2^62 binary digits of exponent), so quantities like
// exp(2e11) stay finite. Interval carries an enclosure [lo, hi] through a
// computation; XReal is the one-sided result handed to callers: a positive
// real stored as its natural logarithm, rounded Up (never underestimates) or
// Down (never overestimates).

#include <mpfr.h>

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace jbound {

enum class Rounding { Up, Down };

std::string_view to_string(Rounding rounding);

inline mpfr_rnd_t mpfr_mode(Rounding r) { return r == Rounding::Up ? MPFR_RNDU : MPFR_RNDD; }

class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t precision = 128);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  /// Copy of `other` rounded to `precision` bits in direction `rounding`.
  static BigFloat rounded(const BigFloat& other, mpfr_prec_t precision, Rounding rounding);
  static BigFloat from_double(double x, mpfr_prec_t precision);
  /// Parses a decimal string; throws std::invalid_argument on malformed text.
  static BigFloat parse(std::string_view text, mpfr_prec_t precision, Rounding rounding);

  mpfr_ptr get() noexcept { return value_; }
  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(value_); }

  double to_double() const;
  bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
  int sign() const noexcept { return mpfr_sgn(value_); }

  /// Scientific notation "d.ddd...e+X" with `digits` significant digits,
  /// rounded in the given direction.
  std::string to_scientific(int digits, Rounding rounding) const;

  friend int compare(const BigFloat& x, const BigFloat& y) { return mpfr_cmp(x.value_, y.value_); }
  friend bool operator<(const BigFloat& x, const BigFloat& y) { return compare(x, y) < 0; }
  friend bool operator<=(const BigFloat& x, const BigFloat& y) { return compare(x, y) <= 0; }
  friend bool operator>(const BigFloat& x, const BigFloat& y) { return compare(x, y) > 0; }
  friend bool operator>=(const BigFloat& x, const BigFloat& y) { return compare(x, y) >= 0; }
  friend bool operator==(const BigFloat& x, const BigFloat& y) { return mpfr_equal_p(x.value_, y.value_) != 0; }

 private:
  mpfr_t value_;
};

/// Closed enclosure [lo, hi] with every operation rounded outward.
class Interval {
 public:
  explicit Interval(mpfr_prec_t precision);

  static Interval exact(const mpz_class& n, mpfr_prec_t precision);
  static Interval exact(std::int64_t n, mpfr_prec_t precision);
  static Interval rational(const mpz_class& num, const mpz_class& den, mpfr_prec_t precision);
  static Interval point(const BigFloat& x, mpfr_prec_t precision);
  /// ln n for a positive integer n.
  static Interval log_of(const mpz_class& n, mpfr_prec_t precision);
  static Interval log_of(std::int64_t n, mpfr_prec_t precision);

  const BigFloat& lo() const noexcept { return lo_; }
  const BigFloat& hi() const noexcept { return hi_; }
  mpfr_prec_t precision() const noexcept { return lo_.precision(); }

  /// Relative width (hi - lo) / max(|lo|, |hi|), as a double.
  double relative_width() const;

  friend Interval operator+(const Interval& x, const Interval& y);
  friend Interval operator-(const Interval& x, const Interval& y);
  friend Interval operator*(const Interval& x, const Interval& y);
  Interval operator-() const;

  /// x / y for y bounded away from zero.
  friend Interval operator/(const Interval& x, const Interval& y);

  /// Natural log; requires lo > 0.
  Interval log() const;
  /// exp, evaluated with extra bits so that large arguments keep their
  /// relative accuracy through the exponential.
  Interval exp() const;

  /// Endpoint in the requested direction, rounded outward to `precision`.
  BigFloat bound(Rounding rounding, mpfr_prec_t precision) const;

 private:
  BigFloat lo_;
  BigFloat hi_;
};

/// Positive real e^ln with a rounding direction. Up values never
/// underestimate the quantity they stand for, Down values never overestimate.
class XReal {
 public:
  XReal(BigFloat ln, Rounding rounding) : ln_(std::move(ln)), rounding_(rounding) {}

  static XReal from_interval(const Interval& ln, Rounding rounding, mpfr_prec_t precision) {
    return XReal(ln.bound(rounding, precision), rounding);
  }

  const BigFloat& ln() const noexcept { return ln_; }
  Rounding rounding() const noexcept { return rounding_; }
  mpfr_prec_t precision() const noexcept { return ln_.precision(); }

  /// log10 of the represented value, rounded in this value's direction.
  BigFloat log10() const;

  /// The represented value times another, ln-values added in this direction.
  friend XReal operator*(const XReal& x, const XReal& y);
  XReal pow(std::int64_t k) const;

  /// "log10 ≈ X.XXXXXXe+YYYY (up)". When the log10 itself exceeds 1e6 the
  /// iterated logarithm is appended as "; log10 log10 ≈ ...".
  std::string render_log10(int digits = 7) const;

  /// ln as a decimal string with enough digits to parse back to the same
  /// rendering at this precision.
  std::string ln_string() const;
  static XReal parse_ln(std::string_view text, Rounding rounding, mpfr_prec_t precision);

 private:
  BigFloat ln_;
  Rounding rounding_;
};

}  // namespace jbound
