#pragma once

// Reference evaluation of the height-bound quantities, for tests only.
//
// Uses Boost's cpp_bin_float (60 decimal digits, 64-bit exponent), shares no
// code with the MPFR engine, and evaluates the defining formulas as
// literally as the magnitudes allow: Lambda is formed as an actual power,
// Delta0's discriminant term as an actual product. Only D* and Delta, whose
// values overflow even a 64-bit exponent, are handled through their logs.

#include <cstdint>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using Real = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<60, boost::multiprecision::digit_base_10, void,
                                         std::int64_t, -(std::int64_t{1} << 60),
                                         (std::int64_t{1} << 60)>,
    boost::multiprecision::et_off>;

struct Place {
  std::int64_t p;
  std::int64_t f;
};

struct Arith {
  std::int64_t d;
  std::int64_t abs_disc;
  std::int64_t inf_places;
  std::vector<Place> finite;

  std::int64_t s() const { return inf_places + static_cast<std::int64_t>(finite.size()); }
};

inline std::vector<std::int64_t> primes_dividing(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t q = 2; q <= n; ++q) {
    if (n % q != 0) continue;
    bool prime = true;
    for (std::int64_t r = 2; r * r <= q; ++r) prime = prime && (q % r != 0);
    if (prime) out.push_back(q);
  }
  return out;
}

inline std::int64_t totient(std::int64_t n) {
  std::int64_t count = 0;
  for (std::int64_t k = 1; k <= n; ++k) {
    std::int64_t a = k, b = n;
    while (b != 0) std::tie(a, b) = std::pair(b, a % b);
    if (a == 1) ++count;
  }
  return count;
}

/// d_N = N^3 prod (1 - 1/q^2) / 2, or 6 at N = 2.
inline Real d_n(std::int64_t n) {
  if (n == 2) return Real(6);
  Real v = Real(n) * n * n / 2;
  for (std::int64_t q : primes_dividing(n)) v *= Real(1) - Real(1) / (Real(q) * q);
  return round(v);
}

/// M = 3N for powers of two, 2N for odd prime powers, 0 otherwise.
inline std::int64_t m_of(std::int64_t n) {
  const auto ps = primes_dividing(n);
  if (ps.size() != 1) return 0;
  return ps[0] == 2 ? 3 * n : 2 * n;
}

inline Real lambda(std::int64_t n) {
  const Real dn = d_n(n);
  const Real base = (dn * (n - 6) / (12 * n) + 2) * dn;
  return pow(base, 25 * base);
}

inline Real ln_lambda(std::int64_t n) { return log(lambda(n)); }

inline Real h_of_s(const Arith& a) {
  Real sum = 0;
  for (const Place& v : a.finite) sum += log(pow(Real(v.p), v.f));  // log N(v)
  return sum / a.d;
}

inline Real ln_dstar(std::int64_t n, const Arith& a) {
  const Real dn = d_n(n);
  return dn * log(Real(a.abs_disc)) +
         (h_of_s(a) + (1 + log(Real(1728))) * lambda(n)) * a.d * dn;
}

inline Real log_norm_product(const Arith& a) {
  Real prod = 1;
  for (const Place& v : a.finite) prod *= log(pow(Real(v.p), v.f));
  return prod;
}

inline Real ln_delta0(std::int64_t n, const Arith& a) {
  const std::int64_t phi = totient(n);
  const Real inner = pow(Real(n), a.d * n) * pow(Real(a.abs_disc), phi);
  const Real value_ln = -a.d * log(Real(a.d)) + log(sqrt(inner)) +
                        (a.d * phi) * log(log(inner)) + phi * log(log_norm_product(a));
  return value_ln;
}

inline Real ln_delta(std::int64_t n, const Arith& a) {
  const std::int64_t phi = totient(n);
  const Real dn = d_n(n);
  // log(N^(N d d_N) |D*|^phi)
  const Real log_inner = n * a.d * dn * log(Real(n)) + phi * ln_dstar(n, a);
  return -a.d * log(Real(a.d)) + log_inner / 2 + (phi * a.d * dn) * log(log_inner) +
         (phi * dn) * log(log_norm_product(a));
}

inline std::int64_t p_of(const Arith& a) {
  std::int64_t p = 1;
  for (const Place& v : a.finite) p = std::max(p, v.p);
  return p;
}

/// ln of (C d s L^2)^(2sL) (log(dL))^(3sL) p^(dL) Delta0(L), L = N or M.
inline Real ln_bound_main(std::int64_t n, const Arith& a, const Real& ln_c) {
  const std::int64_t l = m_of(n) != 0 ? m_of(n) : n;
  const std::int64_t s = a.s();
  const Real c = exp(ln_c);
  const Real prefactor = pow(c * a.d * s * l * l, 2 * s * l) *
                         pow(log(Real(a.d * l)), 3 * s * l) * pow(Real(p_of(a)), a.d * l);
  return log(prefactor) + ln_delta0(l, a);
}

/// ln of (C d s d_L^2 L^2)^(2sLd_L) (log(dLd_L))^(3sLd_L) p^(dLd_L) Delta(L).
inline Real ln_bound_main1(std::int64_t n, const Arith& a, const Real& ln_c) {
  const std::int64_t l = m_of(n) != 0 ? m_of(n) : n;
  const std::int64_t s = a.s();
  const Real dl = d_n(l);
  const Real c = exp(ln_c);
  const Real prefactor = pow(c * a.d * s * dl * dl * l * l, 2 * s * l * dl) *
                         pow(log(a.d * l * dl), 3 * s * l * dl) *
                         pow(Real(p_of(a)), a.d * l * dl);
  return log(prefactor) + ln_delta(l, a);
}

}  // namespace oracle
