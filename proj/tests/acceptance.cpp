// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <mpfr.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "jbound/bounds.hpp"
#include "jbound/modcurve.hpp"
#include "jbound/sl2n.hpp"
#include "oracle/reference_bounds.hpp"

using namespace jbound;

namespace {

constexpr double kGroupOrderSeconds = 10.0;
constexpr double kOracleSeconds = 60.0;
constexpr double kOracleTolerance = 1e-15;
constexpr double kAnchorTolerance = 1e-20;
constexpr double kEscalationTolerance = 1e-10;
constexpr int kOracleGridPoints = 240;
constexpr int kReductionSamples = 10'000;
constexpr std::int64_t kCorpusMaxLevel = 30;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

// Kronecker symbol (a|p) for p prime, by Euler's criterion when p is odd.
int kronecker(std::int64_t a, std::int64_t p) {
  if (p == 2) {
    if (a % 2 == 0) return 0;
    const std::int64_t r = ((a % 8) + 8) % 8;
    return (r == 1 || r == 7) ? 1 : -1;
  }
  a = ((a % p) + p) % p;
  if (a == 0) return 0;
  std::int64_t r = 1, base = a, e = (p - 1) / 2;
  while (e > 0) {
    if (e & 1) r = r * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

// Genus of X0(p) from the classical closed form.
std::int64_t classical_x0_genus(std::int64_t p) {
  const std::int64_t g = (p + 1) / 12;
  return p % 12 == 1 ? g - 1 : g;
}

// N^3 prod (1 - q^-2) from a trial-division factorisation.
std::uint64_t formula_order(std::int64_t n) {
  mpq_class v = mpq_class(n) * n * n;
  std::int64_t m = n;
  for (std::int64_t q = 2; q <= m; ++q) {
    if (m % q != 0) continue;
    while (m % q == 0) m /= q;
    v *= mpq_class(q * q - 1, q * q);
  }
  return mpz_class(v).get_ui();
}

oracle::Real to_real(const BigFloat& x) {
  BigFloat mantissa(x.precision());
  mpfr_exp_t e = 0;
  mpfr_frexp(&e, mantissa.get(), x.get(), MPFR_RNDN);
  char* text = nullptr;
  mpfr_asprintf(&text, "%.70Re", mantissa.get());
  oracle::Real m(text);
  mpfr_free_str(text);
  return m * pow(oracle::Real(2), static_cast<std::int64_t>(e));
}

double relative_error(const BigFloat& x, const oracle::Real& reference) {
  return static_cast<double>(abs(to_real(x) - reference) / abs(reference));
}

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(2);
  out << std::scientific << x;
  return out.str();
}

const std::vector<std::int64_t> kPrimes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};

struct GridPoint {
  std::int64_t n;
  NumberFieldSpec field;
  SSetSpec s;
  double ln_c;
};

std::vector<GridPoint> oracle_grid() {
  std::mt19937_64 rng(0x5eed);
  auto uniform = [&](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  std::vector<GridPoint> grid;
  for (int i = 0; i < kOracleGridPoints; ++i) {
    GridPoint g;
    g.n = uniform(2, kCorpusMaxLevel);
    g.field.degree = uniform(1, 5);
    // |D| log-uniform on [1, 1e6]
    g.field.abs_discriminant = static_cast<std::uint64_t>(
        std::llround(std::pow(10.0, std::uniform_real_distribution<double>(0, 6)(rng))));
    g.s.infinite_places = uniform((g.field.degree + 1) / 2, g.field.degree);
    const std::int64_t room = std::max<std::int64_t>(0, 5 - g.s.infinite_places);
    const std::int64_t finite = uniform(0, room);
    std::vector<std::int64_t> primes = kPrimes;
    std::shuffle(primes.begin(), primes.end(), rng);
    for (std::int64_t k = 0; k < finite; ++k) {
      g.s.finite_places.push_back(
          {static_cast<std::uint64_t>(primes[k]), uniform(1, g.field.degree)});
    }
    g.ln_c = std::uniform_real_distribution<double>(0, 3)(rng);
    grid.push_back(g);
  }
  return grid;
}

oracle::Arith to_arith(const GridPoint& g) {
  oracle::Arith a{g.field.degree, static_cast<std::int64_t>(g.field.abs_discriminant),
                  g.s.infinite_places, {}};
  for (const FinitePlace& v : g.s.finite_places)
    a.finite.push_back({static_cast<std::int64_t>(v.prime), v.residue_degree});
  return a;
}

// --- criteria -------------------------------------------------------------

Outcome group_orders() {
  const auto start = Clock::now();
  Outcome out;
  for (std::int64_t n = 2; n <= kCorpusMaxLevel; ++n) {
    const auto g = enumerate_group(Level(n));
    if (g.size() != formula_order(n) || group_order(Level(n)) != formula_order(n)) {
      out.pass = false;
      out.detail += " N=" + std::to_string(n);
    }
  }
  const double t = seconds_since(start);
  if (t >= kGroupOrderSeconds) out.pass = false;
  out.detail = "2<=N<=30 exact, " + fmt(t) + " s" + out.detail;
  return out;
}

Outcome x_n_identities() {
  Outcome out;
  int checked = 0;
  for (std::int64_t n = 2; n <= 20; ++n) {
    const CurveInvariants inv =
        curve_invariants(standard_subgroup(SubgroupKind::PrincipalGammaN, Level(n)));
    const std::int64_t dn = covering_degree(n);
    const bool cusps_ok = inv.nu_inf * n == dn;
    const bool genus_ok = 12 * n * (inv.genus - 1) == dn * (n - 6);
    if (!cusps_ok || !genus_ok) {
      out.pass = false;
      out.detail += " N=" + std::to_string(n);
    }
    ++checked;
  }
  out.detail = std::to_string(checked) + " levels" + out.detail;
  return out;
}

Outcome gamma0_tables() {
  Outcome out;
  int checked = 0;
  for (std::int64_t p = 2; p <= 97; ++p) {
    if (!is_prime(p)) continue;
    const CurveInvariants inv = curve_invariants(standard_subgroup(SubgroupKind::Gamma0, Level(p)));
    const bool ok = inv.nu_inf == 2 && inv.nu2 == 1 + kronecker(-4, p) &&
                    inv.nu3 == 1 + kronecker(-3, p) && inv.genus == classical_x0_genus(p);
    if (!ok) {
      out.pass = false;
      out.detail += " p=" + std::to_string(p);
    }
    ++checked;
  }
  const bool spot = curve_invariants(standard_subgroup(SubgroupKind::Gamma0, Level(11))).genus == 1 &&
                    curve_invariants(standard_subgroup(SubgroupKind::Gamma0, Level(37))).genus == 2;
  out.pass = out.pass && spot;
  out.detail = std::to_string(checked) + " primes, g(X0(11))=1, g(X0(37))=2" + out.detail;
  return out;
}

Outcome gamma0_primes_via_cover() {
  Outcome out;
  std::ostringstream detail;
  for (std::int64_t p : {17, 19, 23, 29, 31, 37}) {
    const SubgroupImage h = standard_subgroup(SubgroupKind::Gamma0, Level(p));
    const Applicability a = applicability(h);
    const std::int64_t tilde_cusps = cusp_count(tilde_subgroup(h));
    const bool ok = a.verdict == Verdict::MainViaTilde && a.invariants.nu_inf == 2 &&
                    a.invariants.genus > 0 && tilde_cusps >= 3;
    out.pass = out.pass && ok;
    detail << " p=" << p << ":" << tilde_cusps;
  }
  out.detail = "tilde cusps" + detail.str();
  return out;
}

Outcome elliptic_free() {
  Outcome out;
  int checked = 0;
  auto check = [&](SubgroupKind kind, std::int64_t n) {
    const SubgroupImage h = standard_subgroup(kind, Level(n));
    const Applicability a = applicability(h);
    bool ok = a.tilde_image.size() == 1;
    if (covering_degree(n) / n >= 3) ok = ok && a.verdict != Verdict::Inapplicable;
    if (!ok) {
      out.pass = false;
      out.detail += " " + std::string(to_string(kind)) + "(" + std::to_string(n) + ")";
    }
    ++checked;
  };
  for (std::int64_t n = 2; n <= kCorpusMaxLevel; ++n) check(SubgroupKind::PrincipalGammaN, n);
  for (std::int64_t n = 4; n <= kCorpusMaxLevel; ++n) check(SubgroupKind::Gamma1, n);
  check(SubgroupKind::Gamma0, 11);
  out.detail = std::to_string(checked) + " elliptic-free subgroups" + out.detail;
  return out;
}

Outcome order_criterion() {
  Outcome out;
  int checked = 0, triggered = 0;
  for (std::int64_t n = 2; n <= kCorpusMaxLevel; ++n) {
    for (SubgroupKind kind : {SubgroupKind::Gamma0, SubgroupKind::Gamma1,
                              SubgroupKind::PrincipalGammaN, SubgroupKind::GammaFull}) {
      const SubgroupImage t = tilde_subgroup(standard_subgroup(kind, Level(n)));
      ++checked;
      if (!below_three_cusp_threshold(t.size(), Level(n))) continue;
      ++triggered;
      if (cusp_count(t) < 3) {
        out.pass = false;
        out.detail += " " + std::string(to_string(kind)) + "(" + std::to_string(n) + ")";
      }
    }
  }
  out.detail = std::to_string(triggered) + " of " + std::to_string(checked) +
               " subgroups meet the order criterion, no counterexample" + out.detail;
  if (!out.pass) out.detail = "counterexamples:" + out.detail;
  return out;
}

Outcome oracle_equivalence() {
  const auto start = Clock::now();
  const EvalContext ctx{128, Rounding::Up};
  Outcome out;
  double worst = 0;
  int comparisons = 0;
  const auto grid = oracle_grid();
  for (const GridPoint& g : grid) {
    const oracle::Arith a = to_arith(g);
    const std::string c_text = std::to_string(g.ln_c);
    const BigFloat ln_c = BigFloat::parse(c_text, 192, Rounding::Up);
    const oracle::Real c_ref(c_text);
    const std::pair<BigFloat, oracle::Real> pairs[] = {
        {lambda_ln(g.n, ctx).ln(), oracle::ln_lambda(g.n)},
        {ln_dstar(g.n, g.field, g.s, ctx).ln(), oracle::ln_dstar(g.n, a)},
        {ln_delta0(g.n, g.field, g.s, ctx).ln(), oracle::ln_delta0(g.n, a)},
        {ln_delta(g.n, g.field, g.s, ctx).ln(), oracle::ln_delta(g.n, a)},
        {bound_main(Level(g.n), g.field, g.s, ln_c, ctx).bound.ln(),
         oracle::ln_bound_main(g.n, a, c_ref)},
        {bound_main1(Level(g.n), g.field, g.s, ln_c, ctx).bound.ln(),
         oracle::ln_bound_main1(g.n, a, c_ref)},
    };
    for (const auto& [engine, reference] : pairs) {
      const double err = relative_error(engine, reference);
      worst = std::max(worst, err);
      ++comparisons;
      if (!(err <= kOracleTolerance)) out.pass = false;
    }
  }
  const double t = seconds_since(start);
  if (t >= kOracleSeconds) out.pass = false;
  out.detail = std::to_string(grid.size()) + " points, " + std::to_string(comparisons) +
               " values, max rel " + fmt(worst) + ", " + fmt(t) + " s";
  return out;
}

Outcome anchors() {
  const EvalContext ctx{128, Rounding::Up};
  const oracle::Real ln5 = log(oracle::Real(5));
  const oracle::Real lambda2 = 150 * log(oracle::Real(6));
  const oracle::Real delta0_5 = oracle::Real(5) / 2 * ln5 + 4 * log(5 * ln5);
  const double e1 = relative_error(lambda_ln(2, ctx).ln(), lambda2);
  const double e2 = relative_error(ln_delta0(5, {1, 1}, {1, {}}, ctx).ln(), delta0_5);
  Outcome out;
  out.pass = e1 <= kAnchorTolerance && e2 <= kAnchorTolerance;
  out.detail = "150 ln 6: " + fmt(e1) + ", 2.5 ln 5 + 4 ln(5 ln 5): " + fmt(e2) + " at 128 bits";
  return out;
}

Outcome rounding_and_monotonicity() {
  Outcome out;
  int violations = 0, checks = 0;
  double worst = 0;
  auto all_values = [](const GridPoint& g, const BigFloat& ln_c, const EvalContext& ctx) {
    return std::vector<BigFloat>{
        lambda_ln(g.n, ctx).ln(),
        ln_dstar(g.n, g.field, g.s, ctx).ln(),
        ln_delta0(g.n, g.field, g.s, ctx).ln(),
        ln_delta(g.n, g.field, g.s, ctx).ln(),
        bound_main(Level(g.n), g.field, g.s, ln_c, ctx).bound.ln(),
        bound_main1(Level(g.n), g.field, g.s, ln_c, ctx).bound.ln(),
    };
  };
  auto bounds = [](const GridPoint& g, const BigFloat& ln_c, const EvalContext& ctx) {
    return std::pair(bound_main(Level(g.n), g.field, g.s, ln_c, ctx).bound.ln(),
                     bound_main1(Level(g.n), g.field, g.s, ln_c, ctx).bound.ln());
  };
  const auto grid = oracle_grid();
  for (std::size_t i = 0; i < grid.size(); i += 2) {
    const GridPoint& g = grid[i];
    const BigFloat ln_c = BigFloat::from_double(g.ln_c, 64);

    // Up at low precision must dominate Down at high precision, and
    // conversely; the high-precision pair encloses the true value.
    const auto up64 = all_values(g, ln_c, {64, Rounding::Up});
    const auto down64 = all_values(g, ln_c, {64, Rounding::Down});
    const auto up256 = all_values(g, ln_c, {256, Rounding::Up});
    const auto down256 = all_values(g, ln_c, {256, Rounding::Down});
    for (std::size_t k = 0; k < up64.size(); ++k) {
      ++checks;
      if (up64[k] < up256[k] || up256[k] < down256[k] || down256[k] < down64[k]) ++violations;
      BigFloat rel(256);
      mpfr_sub(rel.get(), up64[k].get(), up256[k].get(), MPFR_RNDU);
      mpfr_div(rel.get(), rel.get(), up256[k].get(), MPFR_RNDU);
      const double r = std::abs(rel.to_double());
      worst = std::max(worst, r);
      if (r > kEscalationTolerance) ++violations;
    }

    const EvalContext ctx{128, Rounding::Up};
    const auto base = bounds(g, ln_c, ctx);

    GridPoint bigger_d = g;
    bigger_d.field.abs_discriminant += 1 + g.field.abs_discriminant / 3;
    const auto by_d = bounds(bigger_d, ln_c, ctx);
    ++checks;
    if (by_d.first < base.first || by_d.second < base.second) ++violations;

    const BigFloat bigger_c = BigFloat::from_double(g.ln_c + 0.5, 64);
    const auto by_c = bounds(g, bigger_c, ctx);
    ++checks;
    if (by_c.first < base.first || by_c.second < base.second) ++violations;

    if (!g.s.finite_places.empty()) {
      // Replace the largest prime of S by a larger one not already in S.
      GridPoint bigger_p = g;
      auto& places = bigger_p.s.finite_places;
      auto top = std::max_element(places.begin(), places.end(),
                                  [](const auto& x, const auto& y) { return x.prime < y.prime; });
      std::uint64_t next = top->prime + 1;
      while (!is_prime(static_cast<std::int64_t>(next))) ++next;
      top->prime = next;
      const auto by_p = bounds(bigger_p, ln_c, ctx);
      ++checks;
      if (by_p.first < base.first || by_p.second < base.second) ++violations;
    }
  }
  out.pass = violations == 0;
  out.detail = std::to_string(checks) + " checks, " + std::to_string(violations) +
               " violations, max rel(Up64, Up256) " + fmt(worst);
  return out;
}

void partitions(std::int64_t remaining, std::int64_t max_part, std::uint64_t product,
                const std::function<void(std::uint64_t)>& visit) {
  if (remaining == 0) {
    visit(product);
    return;
  }
  for (std::int64_t f = std::min(remaining, max_part); f >= 1; --f)
    partitions(remaining - f, f, product * static_cast<std::uint64_t>(f), visit);
}

Outcome residue_degree_lemma_and_reduction() {
  Outcome out;
  std::uint64_t partition_count = 0;
  bool lemma_ok = true;
  for (std::int64_t total = 1; total <= 24; ++total) {
    // A multiset with sum `total` is checked against the smallest admissible
    // bound 2^total, which covers every d_L >= total.
    partitions(total, total, 1, [&](std::uint64_t product) {
      ++partition_count;
      if (product > (std::uint64_t{1} << total)) lemma_ok = false;
    });
  }

  std::mt19937_64 rng(0xd1);
  auto uniform = [&](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  int violations = 0, samples = 0;
  const EvalContext up{128, Rounding::Up};
  const EvalContext down{128, Rounding::Down};
  while (samples < kReductionSamples) {
    const std::int64_t level = uniform(2, 12);
    const NumberFieldSpec field{uniform(1, 3), static_cast<std::uint64_t>(uniform(1, 500))};
    SSetSpec s{uniform((field.degree + 1) / 2, field.degree), {}};
    std::vector<std::int64_t> primes = kPrimes;
    std::shuffle(primes.begin(), primes.end(), rng);
    const std::int64_t finite = uniform(0, 3);
    for (std::int64_t k = 0; k < finite; ++k)
      s.finite_places.push_back({static_cast<std::uint64_t>(primes[k]), uniform(1, field.degree)});

    const std::int64_t dl = covering_degree(level);
    const std::int64_t phi = euler_phi(level);
    const BigFloat dstar_down = ln_dstar(level, field, s, down).ln();
    BigFloat rhs = ln_delta(level, field, s, up).ln();
    {
      const Interval extra =
          Interval::exact(s.size() * phi * dl, 256) * Interval::log_of(2, 256);
      mpfr_add(rhs.get(), rhs.get(), extra.hi().get(), MPFR_RNDU);
    }

    for (int t = 0; t < 100 && samples < kReductionSamples; ++t, ++samples) {
      const std::int64_t relative_degree = uniform(1, dl);
      ExtensionData ext;
      ext.degree = field.degree * relative_degree;
      // ln D0 anywhere in [0, ln D*].
      ext.ln_discriminant = BigFloat(dstar_down.precision());
      mpfr_mul_d(ext.ln_discriminant.get(), dstar_down.get(),
                 std::uniform_real_distribution<double>(0, 1)(rng), MPFR_RNDD);
      // Each finite place w splits into places of residue degrees f_k over K
      // with sum f_k <= [K0 : K]; log N(v_k) = f_k log N(w).
      double ln_product = 0;
      std::int64_t s0 = s.infinite_places * relative_degree;
      for (const FinitePlace& w : s.finite_places) {
        std::int64_t budget = uniform(1, relative_degree);
        const double log_norm = static_cast<double>(w.residue_degree) *
                                std::log(static_cast<double>(w.prime));
        while (budget > 0) {
          const std::int64_t f = uniform(1, budget);
          ln_product += std::log(static_cast<double>(f) * log_norm);
          budget -= f;
          ++s0;
        }
      }
      ext.ln_log_norm_product = BigFloat::from_double(ln_product, 64);
      ext.s0 = s0;
      const BigFloat lhs = delta1_ln(level, ext, down).ln();
      if (lhs > rhs) ++violations;
    }
  }
  out.pass = lemma_ok && violations == 0;
  out.detail = std::to_string(partition_count) + " partitions with sum <= 24 " +
               (lemma_ok ? "ok" : "FAILED") + "; " + std::to_string(samples) +
               " reduction tuples, " + std::to_string(violations) + " violations";
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"group-orders", group_orders},
      {"x-n-identities", x_n_identities},
      {"gamma0-classical-tables", gamma0_tables},
      {"gamma0-primes-via-elliptic-cover", gamma0_primes_via_cover},
      {"elliptic-free-subgroups", elliptic_free},
      {"three-cusp-order-criterion", order_criterion},
      {"bound-oracle-equivalence", oracle_equivalence},
      {"hand-checkable-anchors", anchors},
      {"rounding-soundness-monotonicity", rounding_and_monotonicity},
      {"residue-degree-lemma-and-reduction", residue_degree_lemma_and_reduction},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.name << ": " << o.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
