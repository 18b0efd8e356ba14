#include "jbound/modcurve.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace jbound {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return;
    if (y < x) std::swap(x, y);
    parent_[y] = x;
  }

 private:
  std::vector<std::size_t> parent_;
};

struct CosetScan {
  std::int64_t mu = 0;
  EllipticData elliptic;
};

CosetScan scan_cosets(const SubgroupImage& h, const EnumerationLimits& limits) {
  const Level level = h.level();
  const MatZN s = elliptic_test_s(level);
  const MatZN t = elliptic_test_t(level);
  const bool has_minus_identity = h.contains_minus_identity();

  CosetScan scan;
  const std::vector<MatZN> reps = coset_reps(h, limits);
  scan.mu = static_cast<std::int64_t>(reps.size());
  for (const MatZN& g : reps) {
    const MatZN x = s.conjugated_by(g);
    if (h.contains(x) || h.contains(x.negated())) {
      // x in H forces x^2 = -I in H, so x and -x lie in H together.
      scan.elliptic.order2_cosets.push_back(g);
      scan.elliptic.stabilizer_generators.push_back(h.contains(x) ? x : x.negated());
    }
    const MatZN y = t.conjugated_by(g);
    if (h.contains(y) || h.contains(y.negated())) {
      // -y in H gives (-y)^3 = -I in H, hence y in H too.
      scan.elliptic.order3_cosets.push_back(g);
      scan.elliptic.stabilizer_generators.push_back(has_minus_identity ? y.negated() : y);
    }
  }
  return scan;
}

std::int64_t genus_from(std::int64_t mu, std::int64_t nu2, std::int64_t nu3,
                        std::int64_t nu_inf) {
  const std::int64_t twelve_g = 12 + mu - 3 * nu2 - 4 * nu3 - 6 * nu_inf;
  if (twelve_g < 0 || twelve_g % 12 != 0) {
    throw std::logic_error("genus formula gave non-integral or negative value " +
                           std::to_string(twelve_g) + "/12");
  }
  return twelve_g / 12;
}

}  // namespace

std::string_view to_string(SubgroupKind kind) {
  switch (kind) {
    case SubgroupKind::Gamma0: return "gamma0";
    case SubgroupKind::Gamma1: return "gamma1";
    case SubgroupKind::GammaFull: return "full";
    case SubgroupKind::PrincipalGammaN: return "gamma";
  }
  return "?";
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::MainDirect: return "MainDirect";
    case Verdict::MainViaTilde: return "MainViaTilde";
    case Verdict::Inapplicable: return "Inapplicable";
  }
  return "?";
}

MatZN elliptic_test_s(Level level) { return MatZN::make(level, 0, -1, 1, 0); }
MatZN elliptic_test_t(Level level) { return MatZN::make(level, 0, -1, 1, -1); }

SubgroupImage standard_subgroup(SubgroupKind kind, Level level, const EnumerationLimits& limits) {
  const std::int64_t n = level.value();
  switch (kind) {
    case SubgroupKind::PrincipalGammaN:
      return SubgroupImage::generated_by(level, {});
    case SubgroupKind::Gamma1: {
      const MatZN gens[] = {MatZN::make(level, 1, 1, 0, 1)};
      return SubgroupImage::generated_by(level, gens);
    }
    case SubgroupKind::GammaFull: {
      const std::uint64_t order = group_order(level);
      if (order > limits.max_elements) throw CapExceeded(order, limits.max_elements);
      // SL2(Z) = <S, T> surjects onto SL2(Z/N).
      const MatZN gens[] = {elliptic_test_s(level), MatZN::make(level, 1, 1, 0, 1)};
      return SubgroupImage::generated_by(level, gens);
    }
    case SubgroupKind::Gamma0: {
      std::vector<MatZN> elements;
      for (std::int64_t a = 1; a < n; ++a) {
        if (std::gcd(a, n) != 1) continue;
        std::int64_t d = 1;
        while (a * d % n != 1) ++d;
        for (std::int64_t b = 0; b < n; ++b) elements.push_back(MatZN::make(level, a, b, 0, d));
      }
      return SubgroupImage::from_elements(level, std::move(elements));
    }
  }
  throw SpecError("unknown subgroup kind");
}

std::int64_t cusp_count(const SubgroupImage& h) {
  const std::uint64_t n = h.level().value();
  std::vector<MatZN> gens = h.generators();
  gens.push_back(MatZN::minus_identity(h.level()));

  DisjointSets sets(n * n);
  for (std::uint64_t a = 0; a < n; ++a) {
    for (std::uint64_t c = 0; c < n; ++c) {
      if (std::gcd(std::gcd(a, c), n) != 1) continue;
      for (const MatZN& g : gens) {
        const std::uint64_t a2 = (g.a() * a + g.b() * c) % n;
        const std::uint64_t c2 = (g.c() * a + g.d() * c) % n;
        sets.unite(a * n + c, a2 * n + c2);
      }
    }
  }
  std::int64_t orbits = 0;
  for (std::uint64_t a = 0; a < n; ++a) {
    for (std::uint64_t c = 0; c < n; ++c) {
      if (std::gcd(std::gcd(a, c), n) == 1 && sets.find(a * n + c) == a * n + c) ++orbits;
    }
  }
  return orbits;
}

EllipticData elliptic_counts(const SubgroupImage& h, const EnumerationLimits& limits) {
  return scan_cosets(h, limits).elliptic;
}

std::int64_t genus(const SubgroupImage& h, const EnumerationLimits& limits) {
  return curve_invariants(h, limits).genus;
}

CurveInvariants curve_invariants(const SubgroupImage& h, const EnumerationLimits& limits) {
  const CosetScan scan = scan_cosets(h, limits);
  CurveInvariants inv;
  inv.mu = scan.mu;
  inv.nu_inf = cusp_count(h);
  inv.nu2 = scan.elliptic.nu2();
  inv.nu3 = scan.elliptic.nu3();
  inv.genus = genus_from(inv.mu, inv.nu2, inv.nu3, inv.nu_inf);
  return inv;
}

SubgroupImage tilde_subgroup(const SubgroupImage& h, const EnumerationLimits& limits) {
  std::vector<MatZN> gens = elliptic_counts(h, limits).stabilizer_generators;
  SubgroupImage g = closure(h.level(), gens);
  // Close under conjugation by H; a finite subgroup is normalized by <h_i>
  // once every h_i k h_i^-1 lands inside it for k in its generators.
  for (bool grown = true; grown;) {
    grown = false;
    for (const MatZN& hg : h.generators()) {
      for (const MatZN& k : g.generators()) {
        const MatZN conj = k.conjugated_by(hg);
        if (!g.contains(conj)) {
          gens.push_back(conj);
          grown = true;
        }
      }
    }
    if (grown) g = closure(h.level(), gens);
  }
  return g;
}

bool below_three_cusp_threshold(std::uint64_t order, Level level) {
  // |G| < N^2 prod (q^2 - 1) / (4 prod q^2)
  unsigned __int128 lhs = 4 * static_cast<unsigned __int128>(order);
  unsigned __int128 rhs = static_cast<unsigned __int128>(level.value()) * level.value();
  for (std::uint64_t q : prime_divisors(level.value())) {
    lhs *= q * q;
    rhs *= q * q - 1;
  }
  return lhs < rhs;
}

Applicability applicability(const SubgroupImage& h, const EnumerationLimits& limits) {
  const CurveInvariants inv = curve_invariants(h, limits);
  SubgroupImage tilde = tilde_subgroup(h, limits);
  const CurveInvariants tilde_inv = curve_invariants(tilde, limits);

  Verdict verdict = Verdict::Inapplicable;
  if (inv.nu_inf >= 3) {
    verdict = Verdict::MainDirect;
  } else if (tilde_inv.nu_inf >= 3) {
    verdict = Verdict::MainViaTilde;
  }
  const bool criterion = below_three_cusp_threshold(tilde.size(), h.level());
  return Applicability{verdict, inv, std::move(tilde), tilde_inv, criterion};
}

bool verify_unramified(const SubgroupImage& h, const SubgroupImage& g,
                       const EnumerationLimits& limits) {
  const SubgroupImage pm_h = h.with_minus_identity();
  if (!pm_h.contains_all(g)) throw SpecError("covering subgroup is not contained in <H, -I>");
  const SubgroupImage pm_g = g.with_minus_identity();
  const MatZN tests[] = {elliptic_test_s(h.level()), elliptic_test_t(h.level())};
  for (const MatZN& rep : coset_reps(g, limits)) {
    for (const MatZN& e : tests) {
      const MatZN x = e.conjugated_by(rep);
      if (pm_h.contains(x) && !pm_g.contains(x)) return false;
    }
  }
  return true;
}

}  // namespace jbound
