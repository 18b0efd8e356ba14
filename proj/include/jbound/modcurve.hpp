#pragma once

// Invariants of the modular curve X_H attached to a subgroup image H of
// SL2(Z/N): index, cusps, elliptic points, genus. Also builds the subgroup
// generated by the elliptic stabilizers and decides which effective Siegel
// bound covers the curve.
//
// Every count is taken for <H, -I>, since X_H only depends on the
// +-saturation.

#include <cstdint>
#include <string_view>
#include <vector>

#include "jbound/sl2n.hpp"

namespace jbound {

enum class SubgroupKind { Gamma0, Gamma1, GammaFull, PrincipalGammaN };

std::string_view to_string(SubgroupKind kind);

/// Image of Gamma0(N), Gamma1(N), SL2(Z) or Gamma(N) at level N.
SubgroupImage standard_subgroup(SubgroupKind kind, Level level,
                                const EnumerationLimits& limits = {});

/// Index, cusp count, elliptic point counts and genus of X_H.
struct CurveInvariants {
  std::int64_t mu = 0;  ///< index of +-H in PSL2(Z)
  std::int64_t nu_inf = 0;
  std::int64_t nu2 = 0;
  std::int64_t nu3 = 0;
  std::int64_t genus = 0;

  /// mu == 12(g - 1) + 3 nu2 + 4 nu3 + 6 nu_inf
  bool satisfies_hurwitz() const noexcept {
    return mu == 12 * (genus - 1) + 3 * nu2 + 4 * nu3 + 6 * nu_inf;
  }

  friend bool operator==(const CurveInvariants&, const CurveInvariants&) = default;
};

/// Elliptic cosets over j = 1728 (test element s) and j = 0 (test element t).
struct EllipticData {
  std::vector<MatZN> order2_cosets;
  std::vector<MatZN> order3_cosets;
  /// One generator of the full stabilizer H_z per elliptic point: the
  /// conjugate g s g^-1 or g t g^-1, signed so that it lies in H and
  /// generates H intersected with <+-conjugate>. Orders are 3, 4 or 6.
  std::vector<MatZN> stabilizer_generators;

  std::int64_t nu2() const noexcept { return static_cast<std::int64_t>(order2_cosets.size()); }
  std::int64_t nu3() const noexcept { return static_cast<std::int64_t>(order3_cosets.size()); }
};

/// s = [[0,-1],[1,0]] and t = [[0,-1],[1,-1]] at the given level.
MatZN elliptic_test_s(Level level);
MatZN elliptic_test_t(Level level);

/// Orbits of <H, -I> on primitive vectors (a, c) mod N, taken up to sign.
std::int64_t cusp_count(const SubgroupImage& h);

EllipticData elliptic_counts(const SubgroupImage& h, const EnumerationLimits& limits = {});

/// g = 1 + mu/12 - nu2/4 - nu3/3 - nu_inf/2. Throws std::logic_error if the
/// right-hand side is not a nonnegative integer.
std::int64_t genus(const SubgroupImage& h, const EnumerationLimits& limits = {});

/// All five invariants in one pass over the cosets.
CurveInvariants curve_invariants(const SubgroupImage& h, const EnumerationLimits& limits = {});

/// Image of the group generated by Gamma(N) and every elliptic stabilizer of H.
///
/// The stabilizer generators are closed up under conjugation by H, so the
/// result holds every elliptic element of H regardless of which pre-image was
/// picked for each elliptic point. With no elliptic points this is {I}.
SubgroupImage tilde_subgroup(const SubgroupImage& h, const EnumerationLimits& limits = {});

enum class Verdict { MainDirect, MainViaTilde, Inapplicable };

std::string_view to_string(Verdict verdict);

struct Applicability {
  Verdict verdict;
  CurveInvariants invariants;
  SubgroupImage tilde_image;
  CurveInvariants tilde_invariants;
  /// |tilde| < N^2 prod_{q | N} (1 - q^-2) / 4, which forces at least three
  /// cusps on the elliptic cover.
  bool sufficient_criterion_holds = false;
};

Applicability applicability(const SubgroupImage& h, const EnumerationLimits& limits = {});

/// Exact test of |G| < N^2 prod_{q | N} (1 - q^-2) / 4.
bool below_three_cusp_threshold(std::uint64_t order, Level level);

/// True iff X_G -> X_H is unramified away from the cusps: every g with
/// g s g^-1 (resp. g t g^-1) in +-H has it in +-G as well. Throws SpecError
/// unless G is contained in <H, -I>.
bool verify_unramified(const SubgroupImage& h, const SubgroupImage& g,
                       const EnumerationLimits& limits = {});

}  // namespace jbound
