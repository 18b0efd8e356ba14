#pragma once

// Explicit upper bounds for the height of j(P) at S-integral points P of a
// modular curve, in the two regimes:
//
//   * the curve has at least three cusps: the bound built on Delta0;
//   * only the cover generated by the elliptic stabilizers has three cusps:
//     the bound built on Delta, which folds in the discriminant growth D*
//     of the fibre fields.
//
// Every quantity is evaluated as a natural logarithm in outward-rounded
// interval arithmetic and returned as an XReal rounded in the requested
// direction. Lambda alone is around 6^150 at level 2, and ln D* is of the
// order of Lambda, so nothing here fits a fixed-exponent float.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "jbound/modcurve.hpp"
#include "jbound/xreal.hpp"

namespace jbound {

/// Degree d and absolute discriminant |D| of the number field K.
struct NumberFieldSpec {
  std::int64_t degree = 1;
  std::uint64_t abs_discriminant = 1;

  /// Throws SpecError unless degree >= 1 and |D| >= 1.
  void validate() const;
  friend bool operator==(const NumberFieldSpec&, const NumberFieldSpec&) = default;
};

/// A finite place above the rational prime p with residue degree f; its
/// norm is p^f.
struct FinitePlace {
  std::uint64_t prime = 2;
  std::int64_t residue_degree = 1;
  friend bool operator==(const FinitePlace&, const FinitePlace&) = default;
};

/// The set S: all archimedean places (counted) plus a list of finite ones.
struct SSetSpec {
  std::int64_t infinite_places = 1;
  std::vector<FinitePlace> finite_places;

  std::int64_t size() const noexcept {
    return infinite_places + static_cast<std::int64_t>(finite_places.size());
  }
  /// Archimedean count in [ceil(d/2), d], each p prime, 1 <= f <= d.
  void validate(const NumberFieldSpec& field) const;
  friend bool operator==(const SSetSpec&, const SSetSpec&) = default;
};

/// Per-call evaluation settings; there is no ambient precision state.
struct EvalContext {
  mpfr_prec_t precision_bits = 128;
  Rounding rounding = Rounding::Up;
};

/// Degree of X(L) -> X(1): L^3 prod_{q | L}(1 - q^-2) / 2, and 6 at L = 2.
std::int64_t covering_degree(std::int64_t level);

/// M = 3N for N a power of 2, 2N for a power of an odd prime, none otherwise.
std::optional<std::int64_t> prime_power_level(std::int64_t n);

std::int64_t euler_phi(std::int64_t n);

/// B = d_L (L - 6) / (12 L) + 2, the genus bound of X(L) plus one. Exact.
mpq_class lambda_base(std::int64_t level);

/// Lambda = (B d_L)^(25 B d_L).
XReal lambda_ln(std::int64_t level, const EvalContext& ctx = {});

/// h(S) = sum_{v in S} log N(v) / d. Archimedean places contribute nothing.
BigFloat h_S(const SSetSpec& s, const NumberFieldSpec& field, const EvalContext& ctx = {});

/// Largest rational prime below S, or 1 when S has no finite places.
std::uint64_t p_max(const SSetSpec& s);

/// D* = D^(d_L) exp((h(S) + (1 + log 1728) Lambda) d d_L).
XReal ln_dstar(std::int64_t level, const NumberFieldSpec& field, const SSetSpec& s,
               const EvalContext& ctx = {});

/// Delta0(L) = d^-d sqrt(L^(dL) |D|^phi) log(L^(dL) |D|^phi)^(d phi)
///             (prod_{v finite} log N(v))^phi, with phi = phi(L).
XReal ln_delta0(std::int64_t level, const NumberFieldSpec& field, const SSetSpec& s,
                const EvalContext& ctx = {});

/// Delta(L): Delta0's shape with L^(L d d_L), |D*|^phi, log-exponent
/// phi d d_L and the finite-place product raised to phi d_L.
XReal ln_delta(std::int64_t level, const NumberFieldSpec& field, const SSetSpec& s,
               const EvalContext& ctx = {});

/// Field data for an extension K0 / K used in the reduction from Delta1 to
/// Delta: its degree, ln |D0|, ln of prod_{v in S0 finite} log N(v), and |S0|.
struct ExtensionData {
  std::int64_t degree = 1;
  BigFloat ln_discriminant;
  BigFloat ln_log_norm_product;
  std::int64_t s0 = 1;
};

/// Delta1(L) for the extension data: Delta0's formula with (d0, D0, S0).
XReal delta1_ln(std::int64_t level, const ExtensionData& ext, const EvalContext& ctx = {});

enum class Theorem {
  MainComposite,    ///< >= 3 cusps, N not a prime power, level N
  MainPrimePower,   ///< >= 3 cusps, N a prime power, level M
  Main1Composite,   ///< elliptic cover has >= 3 cusps, level N
  Main1PrimePower,  ///< elliptic cover has >= 3 cusps, N a prime power, level M
};

std::string_view to_string(Theorem theorem);
std::optional<Theorem> theorem_from_string(std::string_view text);

/// ln of the height bound, split as c_coefficient * ln C + ln(rest).
struct BoundReport {
  Theorem theorem;
  std::int64_t level_used;
  XReal bound;
  XReal rest;
  mpz_class c_coefficient;
  std::vector<std::pair<std::string, XReal>> components;
  std::vector<std::string> warnings;

  BigFloat log10_bound() const { return bound.log10(); }
};

BoundReport bound_main(Level n, const NumberFieldSpec& field, const SSetSpec& s,
                       const BigFloat& ln_c, const EvalContext& ctx = {});

BoundReport bound_main1(Level n, const NumberFieldSpec& field, const SSetSpec& s,
                        const BigFloat& ln_c, const EvalContext& ctx = {});

/// Dispatches on the verdict; throws Inapplicable with both cusp counts.
BoundReport bound_for(const Applicability& verdict, Level n, const NumberFieldSpec& field,
                      const SSetSpec& s, const BigFloat& ln_c, const EvalContext& ctx = {});

BoundReport bound_auto(const SubgroupImage& h, const NumberFieldSpec& field, const SSetSpec& s,
                       const BigFloat& ln_c, const EvalContext& ctx = {},
                       const EnumerationLimits& limits = {});

}  // namespace jbound
