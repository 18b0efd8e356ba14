#include "jbound/xreal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace jbound {

namespace {

// MPFR keeps the exponent range per thread; widen it once per thread.
void ensure_extended_range() {
  thread_local bool widened = false;
  if (!widened) {
    mpfr_set_emin(mpfr_get_emin_min());
    mpfr_set_emax(mpfr_get_emax_max());
    widened = true;
  }
}

void check_finite(const BigFloat& x, const char* what) {
  if (!mpfr_number_p(x.get())) {
    throw std::overflow_error(std::string("non-finite result in ") + what);
  }
}

Rounding opposite(Rounding r) { return r == Rounding::Up ? Rounding::Down : Rounding::Up; }

}  // namespace

std::string_view to_string(Rounding rounding) { return rounding == Rounding::Up ? "up" : "down"; }

BigFloat::BigFloat(mpfr_prec_t precision) {
  ensure_extended_range();
  mpfr_init2(value_, precision);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
  ensure_extended_range();
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::rounded(const BigFloat& other, mpfr_prec_t precision, Rounding rounding) {
  BigFloat out(precision);
  mpfr_set(out.value_, other.value_, mpfr_mode(rounding));
  return out;
}

BigFloat BigFloat::from_double(double x, mpfr_prec_t precision) {
  BigFloat out(std::max<mpfr_prec_t>(precision, 53));
  mpfr_set_d(out.value_, x, MPFR_RNDN);
  return out;
}

BigFloat BigFloat::parse(std::string_view text, mpfr_prec_t precision, Rounding rounding) {
  BigFloat out(precision);
  const std::string s(text);
  if (s.empty() || mpfr_set_str(out.value_, s.c_str(), 10, mpfr_mode(rounding)) != 0) {
    throw std::invalid_argument("malformed decimal number: '" + s + "'");
  }
  return out;
}

double BigFloat::to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

std::string BigFloat::to_scientific(int digits, Rounding rounding) const {
  if (mpfr_zero_p(value_)) return "0";
  if (!mpfr_number_p(value_)) return mpfr_nan_p(value_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
  mpfr_exp_t exponent = 0;
  char* raw = mpfr_get_str(nullptr, &exponent, 10, static_cast<std::size_t>(digits), value_,
                           mpfr_mode(rounding));
  std::string mantissa(raw);
  mpfr_free_str(raw);

  std::string sign;
  if (mantissa.front() == '-') {
    sign = "-";
    mantissa.erase(0, 1);
  }
  // value = 0.MANTISSA * 10^exponent = M.ANTISSA * 10^(exponent - 1)
  const long long e = static_cast<long long>(exponent) - 1;
  std::string out = sign + mantissa.substr(0, 1);
  if (mantissa.size() > 1) out += "." + mantissa.substr(1);
  out += (e < 0 ? "e-" : "e+") + std::to_string(e < 0 ? -e : e);
  return out;
}

// Interval ---------------------------------------------------------------

Interval::Interval(mpfr_prec_t precision) : lo_(precision), hi_(precision) {}

Interval Interval::exact(const mpz_class& n, mpfr_prec_t precision) {
  Interval out(precision);
  mpfr_set_z(out.lo_.get(), n.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(out.hi_.get(), n.get_mpz_t(), MPFR_RNDU);
  return out;
}

Interval Interval::exact(std::int64_t n, mpfr_prec_t precision) {
  return exact(mpz_class(std::to_string(n)), precision);
}

Interval Interval::rational(const mpz_class& num, const mpz_class& den, mpfr_prec_t precision) {
  if (den <= 0) throw std::invalid_argument("rational with nonpositive denominator");
  const Interval n = exact(num, precision);
  Interval out(precision);
  // den > 0, so the direction of the quotient follows the numerator bound
  mpfr_div_z(out.lo_.get(), n.lo_.get(), den.get_mpz_t(), MPFR_RNDD);
  mpfr_div_z(out.hi_.get(), n.hi_.get(), den.get_mpz_t(), MPFR_RNDU);
  return out;
}

Interval Interval::point(const BigFloat& x, mpfr_prec_t precision) {
  Interval out(precision);
  mpfr_set(out.lo_.get(), x.get(), MPFR_RNDD);
  mpfr_set(out.hi_.get(), x.get(), MPFR_RNDU);
  return out;
}

Interval Interval::log_of(const mpz_class& n, mpfr_prec_t precision) {
  if (n <= 0) throw std::invalid_argument("log of nonpositive integer");
  return exact(n, precision).log();
}

Interval Interval::log_of(std::int64_t n, mpfr_prec_t precision) {
  return log_of(mpz_class(std::to_string(n)), precision);
}

double Interval::relative_width() const {
  BigFloat width(precision() + 2);
  mpfr_sub(width.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  if (width.is_zero()) return 0.0;
  const mpfr_srcptr scale = mpfr_cmpabs(lo_.get(), hi_.get()) > 0 ? lo_.get() : hi_.get();
  BigFloat ratio(64);
  mpfr_div(ratio.get(), width.get(), scale, MPFR_RNDU);
  return std::fabs(ratio.to_double());
}

Interval operator+(const Interval& x, const Interval& y) {
  Interval out(std::max(x.precision(), y.precision()));
  mpfr_add(out.lo_.get(), x.lo_.get(), y.lo_.get(), MPFR_RNDD);
  mpfr_add(out.hi_.get(), x.hi_.get(), y.hi_.get(), MPFR_RNDU);
  return out;
}

Interval operator-(const Interval& x, const Interval& y) {
  Interval out(std::max(x.precision(), y.precision()));
  mpfr_sub(out.lo_.get(), x.lo_.get(), y.hi_.get(), MPFR_RNDD);
  mpfr_sub(out.hi_.get(), x.hi_.get(), y.lo_.get(), MPFR_RNDU);
  return out;
}

Interval Interval::operator-() const {
  Interval out(precision());
  mpfr_neg(out.lo_.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(out.hi_.get(), lo_.get(), MPFR_RNDU);
  return out;
}

Interval operator*(const Interval& x, const Interval& y) {
  const mpfr_prec_t prec = std::max(x.precision(), y.precision());
  Interval out(prec);
  const BigFloat* xs[] = {&x.lo_, &x.hi_};
  const BigFloat* ys[] = {&y.lo_, &y.hi_};
  bool first = true;
  BigFloat down(prec), up(prec);
  for (const BigFloat* a : xs) {
    for (const BigFloat* b : ys) {
      mpfr_mul(down.get(), a->get(), b->get(), MPFR_RNDD);
      mpfr_mul(up.get(), a->get(), b->get(), MPFR_RNDU);
      if (first || down < out.lo_) out.lo_ = down;
      if (first || up > out.hi_) out.hi_ = up;
      first = false;
    }
  }
  return out;
}

Interval operator/(const Interval& x, const Interval& y) {
  if (y.lo_.sign() * y.hi_.sign() <= 0) throw std::domain_error("interval division by zero");
  const mpfr_prec_t prec = std::max(x.precision(), y.precision());
  Interval out(prec);
  const BigFloat* xs[] = {&x.lo_, &x.hi_};
  const BigFloat* ys[] = {&y.lo_, &y.hi_};
  bool first = true;
  BigFloat down(prec), up(prec);
  for (const BigFloat* a : xs) {
    for (const BigFloat* b : ys) {
      mpfr_div(down.get(), a->get(), b->get(), MPFR_RNDD);
      mpfr_div(up.get(), a->get(), b->get(), MPFR_RNDU);
      if (first || down < out.lo_) out.lo_ = down;
      if (first || up > out.hi_) out.hi_ = up;
      first = false;
    }
  }
  return out;
}

Interval Interval::log() const {
  if (lo_.sign() <= 0) throw std::domain_error("log of an interval reaching zero or below");
  Interval out(precision());
  mpfr_log(out.lo_.get(), lo_.get(), MPFR_RNDD);
  mpfr_log(out.hi_.get(), hi_.get(), MPFR_RNDU);
  return out;
}

Interval Interval::exp() const {
  // An argument of magnitude 2^k carries absolute error 2^(k - p); keep k
  // extra bits in the result so later operations see the same relative error.
  const mpfr_exp_t k = std::max<mpfr_exp_t>(0, std::max(mpfr_get_exp(lo_.get()), mpfr_get_exp(hi_.get())));
  Interval out(precision() + static_cast<mpfr_prec_t>(k));
  mpfr_exp(out.lo_.get(), lo_.get(), MPFR_RNDD);
  mpfr_exp(out.hi_.get(), hi_.get(), MPFR_RNDU);
  check_finite(out.hi_, "exp");
  return out;
}

BigFloat Interval::bound(Rounding rounding, mpfr_prec_t precision) const {
  return BigFloat::rounded(rounding == Rounding::Up ? hi_ : lo_, precision, rounding);
}

// XReal ------------------------------------------------------------------

BigFloat XReal::log10() const {
  const mpfr_prec_t prec = precision();
  BigFloat ln10(prec + 8);
  BigFloat ten(prec + 8);
  mpfr_set_ui(ten.get(), 10, MPFR_RNDN);
  // ln x / ln 10 is monotone in both; pick the ln 10 endpoint that pushes the
  // quotient the right way for the sign of ln x.
  const bool up = rounding_ == Rounding::Up;
  const bool positive = ln_.sign() >= 0;
  mpfr_log(ln10.get(), ten.get(), (up == positive) ? MPFR_RNDD : MPFR_RNDU);
  BigFloat out(prec);
  mpfr_div(out.get(), ln_.get(), ln10.get(), mpfr_mode(rounding_));
  return out;
}

XReal operator*(const XReal& x, const XReal& y) {
  BigFloat sum(std::max(x.precision(), y.precision()));
  mpfr_add(sum.get(), x.ln_.get(), y.ln_.get(), mpfr_mode(x.rounding_));
  return XReal(std::move(sum), x.rounding_);
}

XReal XReal::pow(std::int64_t k) const {
  BigFloat out(precision());
  mpfr_mul_si(out.get(), ln_.get(), static_cast<long>(k), mpfr_mode(rounding_));
  return XReal(std::move(out), rounding_);
}

std::string XReal::render_log10(int digits) const {
  const BigFloat l10 = log10();
  std::string out = "log10 ≈ " + l10.to_scientific(digits, rounding_);
  BigFloat million(64);
  mpfr_set_ui(million.get(), 1000000, MPFR_RNDN);
  if (l10 > million) {
    BigFloat iterated(precision());
    mpfr_log10(iterated.get(), l10.get(), mpfr_mode(rounding_));
    out += "; log10 log10 ≈ " + iterated.to_scientific(digits, rounding_);
  }
  out += " (" + std::string(to_string(rounding_)) + ")";
  return out;
}

std::string XReal::ln_string() const {
  // floor((p - 1) log10 2) digits survive a decimal -> binary -> decimal trip.
  const int digits = std::max(1, static_cast<int>(std::floor((precision() - 1) * 0.30102999566398120)));
  return ln_.to_scientific(digits, rounding_);
}

XReal XReal::parse_ln(std::string_view text, Rounding rounding, mpfr_prec_t precision) {
  // Parse toward the interior so that re-rendering outward gives the same digits.
  return XReal(BigFloat::parse(text, precision, opposite(rounding)), rounding);
}

}  // namespace jbound
