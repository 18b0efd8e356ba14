#include "jbound/bounds.hpp"

#include <cmath>
#include <string>

namespace jbound {

namespace {

constexpr mpfr_prec_t kGuardBits = 64;

mpz_class to_mpz(std::int64_t n) { return mpz_class(std::to_string(n)); }
mpz_class to_mpz(std::uint64_t n) { return mpz_class(std::to_string(n)); }

void require_level(std::int64_t level) {
  if (level < 2) throw SpecError("level must be at least 2, got " + std::to_string(level));
}

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t q = 2; q * q <= p; ++q) {
    if (p % q == 0) return false;
  }
  return true;
}

// Bits needed to hold ln Lambda to unit precision; exp(ln Lambda) then keeps
// the working precision as relative accuracy.
mpfr_prec_t lambda_magnitude_bits(std::int64_t level) {
  const mpq_class bd = lambda_base(level) * covering_degree(level);
  const double x = bd.get_d();
  const double ln_lambda = 25.0 * x * std::log(x);
  return static_cast<mpfr_prec_t>(std::ceil(std::log2(std::max(ln_lambda, 2.0)))) + 2;
}

mpfr_prec_t working_bits(const EvalContext& ctx) { return ctx.precision_bits + kGuardBits; }

mpfr_prec_t working_bits_with_lambda(const EvalContext& ctx, std::int64_t level) {
  return working_bits(ctx) + lambda_magnitude_bits(level);
}

Interval ln_lambda_iv(std::int64_t level, mpfr_prec_t wp) {
  const mpq_class bd = lambda_base(level) * covering_degree(level);
  const Interval x = Interval::rational(bd.get_num(), bd.get_den(), wp);
  return Interval::exact(25, wp) * x * x.log();
}

// sum_{v finite} f_v ln p_v
Interval sum_log_norms(const SSetSpec& s, mpfr_prec_t wp) {
  Interval sum = Interval::exact(0, wp);
  for (const FinitePlace& v : s.finite_places) {
    sum = sum + Interval::exact(v.residue_degree, wp) * Interval::log_of(to_mpz(v.prime), wp);
  }
  return sum;
}

// sum_{v finite} ln(f_v ln p_v), the log of the log-norm product
Interval sum_log_log_norms(const SSetSpec& s, mpfr_prec_t wp) {
  Interval sum = Interval::exact(0, wp);
  for (const FinitePlace& v : s.finite_places) {
    sum = sum +
          (Interval::exact(v.residue_degree, wp) * Interval::log_of(to_mpz(v.prime), wp)).log();
  }
  return sum;
}

Interval h_s_iv(const SSetSpec& s, const NumberFieldSpec& field, mpfr_prec_t wp) {
  return sum_log_norms(s, wp) * Interval::rational(1, to_mpz(field.degree), wp);
}

Interval ln_dstar_iv(std::int64_t level, const NumberFieldSpec& field, const SSetSpec& s,
                     mpfr_prec_t wp) {
  const std::int64_t dl = covering_degree(level);
  const Interval one_plus_log1728 = Interval::exact(1, wp) + Interval::log_of(1728, wp);
  const Interval lambda = ln_lambda_iv(level, wp).exp();
  return Interval::exact(dl, wp) * Interval::log_of(to_mpz(field.abs_discriminant), wp) +
         (h_s_iv(s, field, wp) + one_plus_log1728 * lambda) * Interval::exact(field.degree, wp) *
             Interval::exact(dl, wp);
}

// The common shape -d ln d + X/2 + e ln X + k Sigma shared by Delta0,
// Delta and Delta1, where X = a ln L + phi ln disc.
Interval delta_shape(std::int64_t degree, const Interval& x, const Interval& log_exponent,
                     const Interval& product_exponent, const Interval& log_log_norms,
                     mpfr_prec_t wp) {
  const Interval d = Interval::exact(degree, wp);
  return -(d * Interval::log_of(degree, wp)) + x * Interval::rational(1, 2, wp) +
         log_exponent * x.log() + product_exponent * log_log_norms;
}

Interval ln_delta0_iv(std::int64_t level, const NumberFieldSpec& field, const SSetSpec& s,
                      mpfr_prec_t wp) {
  const std::int64_t phi = euler_phi(level);
  const Interval x = Interval::exact(field.degree * level, wp) * Interval::log_of(level, wp) +
                     Interval::exact(phi, wp) *
                         Interval::log_of(to_mpz(field.abs_discriminant), wp);
  return delta_shape(field.degree, x, Interval::exact(field.degree * phi, wp),
                     Interval::exact(phi, wp), sum_log_log_norms(s, wp), wp);
}

Interval ln_delta_iv(std::int64_t level, const NumberFieldSpec& field, const SSetSpec& s,
                     mpfr_prec_t wp, Interval* dstar_out = nullptr) {
  const mpz_class phi = to_mpz(euler_phi(level));
  const mpz_class dl = to_mpz(covering_degree(level));
  const mpz_class d = to_mpz(field.degree);
  const Interval dstar = ln_dstar_iv(level, field, s, wp);
  if (dstar_out != nullptr) *dstar_out = dstar;
  const Interval y = Interval::exact(to_mpz(level) * d * dl, wp) * Interval::log_of(level, wp) +
                     Interval::exact(phi, wp) * dstar;
  return delta_shape(field.degree, y, Interval::exact(phi * d * dl, wp),
                     Interval::exact(phi * dl, wp), sum_log_log_norms(s, wp), wp);
}

void validate_inputs(const NumberFieldSpec& field, const SSetSpec& s) {
  field.validate();
  s.validate(field);
}

XReal make(const Interval& iv, const EvalContext& ctx) {
  return XReal::from_interval(iv, ctx.rounding, ctx.precision_bits);
}

struct LevelChoice {
  std::int64_t level;
  bool prime_power;
};

LevelChoice choose_level(Level n) {
  if (const auto m = prime_power_level(n.value())) return {*m, true};
  return {n.value(), false};
}

}  // namespace

void NumberFieldSpec::validate() const {
  if (degree < 1) throw SpecError("field degree must be at least 1");
  if (abs_discriminant < 1) throw SpecError("|D| must be at least 1");
}

void SSetSpec::validate(const NumberFieldSpec& field) const {
  // r1 + 2 r2 = d, so the archimedean count r1 + r2 lies in [ceil(d/2), d].
  if (infinite_places < (field.degree + 1) / 2 || infinite_places > field.degree) {
    throw SpecError("a degree-" + std::to_string(field.degree) + " field has between " +
                    std::to_string((field.degree + 1) / 2) + " and " +
                    std::to_string(field.degree) + " archimedean places, got " +
                    std::to_string(infinite_places));
  }
  for (const FinitePlace& v : finite_places) {
    if (!is_prime(v.prime)) throw SpecError(std::to_string(v.prime) + " is not prime");
    if (v.residue_degree < 1 || v.residue_degree > field.degree) {
      throw SpecError("residue degree " + std::to_string(v.residue_degree) +
                      " outside [1, " + std::to_string(field.degree) + "]");
    }
  }
}

std::string_view to_string(Theorem theorem) {
  switch (theorem) {
    case Theorem::MainComposite: return "MainComposite";
    case Theorem::MainPrimePower: return "MainPrimePower";
    case Theorem::Main1Composite: return "Main1Composite";
    case Theorem::Main1PrimePower: return "Main1PrimePower";
  }
  return "?";
}

std::optional<Theorem> theorem_from_string(std::string_view text) {
  for (Theorem t : {Theorem::MainComposite, Theorem::MainPrimePower, Theorem::Main1Composite,
                    Theorem::Main1PrimePower}) {
    if (to_string(t) == text) return t;
  }
  return std::nullopt;
}

std::int64_t covering_degree(std::int64_t level) {
  require_level(level);
  if (level == 2) return 6;
  if (level > 2'000'000) throw SpecError("level too large for an exact covering degree");
  unsigned __int128 num = static_cast<unsigned __int128>(level) * level * level;
  unsigned __int128 den = 2;
  for (std::uint64_t q : prime_divisors(static_cast<std::uint64_t>(level))) {
    num *= q * q - 1;
    den *= q * q;
  }
  return static_cast<std::int64_t>(num / den);
}

std::optional<std::int64_t> prime_power_level(std::int64_t n) {
  if (n < 2) return std::nullopt;
  const auto primes = prime_divisors(static_cast<std::uint64_t>(n));
  if (primes.size() != 1) return std::nullopt;
  return primes.front() == 2 ? 3 * n : 2 * n;
}

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t phi = n;
  for (std::uint64_t q : prime_divisors(static_cast<std::uint64_t>(n))) {
    phi = phi / static_cast<std::int64_t>(q) * (static_cast<std::int64_t>(q) - 1);
  }
  return phi;
}

mpq_class lambda_base(std::int64_t level) {
  const mpz_class dl = to_mpz(covering_degree(level));
  mpq_class b(dl * (to_mpz(level) - 6), 12 * to_mpz(level));
  b.canonicalize();
  return b + 2;
}

XReal lambda_ln(std::int64_t level, const EvalContext& ctx) {
  return make(ln_lambda_iv(level, working_bits(ctx)), ctx);
}

BigFloat h_S(const SSetSpec& s, const NumberFieldSpec& field, const EvalContext& ctx) {
  validate_inputs(field, s);
  return h_s_iv(s, field, working_bits(ctx)).bound(ctx.rounding, ctx.precision_bits);
}

std::uint64_t p_max(const SSetSpec& s) {
  std::uint64_t p = 1;
  for (const FinitePlace& v : s.finite_places) p = std::max(p, v.prime);
  return p;
}

XReal ln_dstar(std::int64_t level, const NumberFieldSpec& field, const SSetSpec& s,
               const EvalContext& ctx) {
  require_level(level);
  validate_inputs(field, s);
  return make(ln_dstar_iv(level, field, s, working_bits_with_lambda(ctx, level)), ctx);
}

XReal ln_delta0(std::int64_t level, const NumberFieldSpec& field, const SSetSpec& s,
                const EvalContext& ctx) {
  require_level(level);
  validate_inputs(field, s);
  return make(ln_delta0_iv(level, field, s, working_bits(ctx)), ctx);
}

XReal ln_delta(std::int64_t level, const NumberFieldSpec& field, const SSetSpec& s,
               const EvalContext& ctx) {
  require_level(level);
  validate_inputs(field, s);
  return make(ln_delta_iv(level, field, s, working_bits_with_lambda(ctx, level)), ctx);
}

XReal delta1_ln(std::int64_t level, const ExtensionData& ext, const EvalContext& ctx) {
  require_level(level);
  if (ext.degree < 1) throw SpecError("extension degree must be at least 1");
  if (ext.s0 < 1) throw SpecError("|S0| must be at least 1");
  if (ext.ln_discriminant.sign() < 0) throw SpecError("|D0| must be at least 1");
  const mpfr_prec_t wp =
      std::max(working_bits(ctx),
               std::max(ext.ln_discriminant.precision(), ext.ln_log_norm_product.precision()) +
                   kGuardBits);
  const std::int64_t phi = euler_phi(level);
  const Interval x = Interval::exact(ext.degree * level, wp) * Interval::log_of(level, wp) +
                     Interval::exact(phi, wp) * Interval::point(ext.ln_discriminant, wp);
  return make(delta_shape(ext.degree, x, Interval::exact(ext.degree * phi, wp),
                          Interval::exact(phi, wp), Interval::point(ext.ln_log_norm_product, wp),
                          wp),
              ctx);
}

BoundReport bound_main(Level n, const NumberFieldSpec& field, const SSetSpec& s,
                       const BigFloat& ln_c, const EvalContext& ctx) {
  validate_inputs(field, s);
  const LevelChoice choice = choose_level(n);
  const std::int64_t level = choice.level;
  const mpfr_prec_t wp = std::max(working_bits(ctx), ln_c.precision() + kGuardBits);

  const mpz_class d = to_mpz(field.degree);
  const mpz_class sz = to_mpz(s.size());
  const mpz_class l = to_mpz(level);
  const mpz_class coefficient = 2 * sz * l;

  // (d s L^2)^(2 s L) (log(d L))^(3 s L) p^(d L) Delta0(L), with C split off
  const Interval delta0 = ln_delta0_iv(level, field, s, wp);
  const Interval rest = Interval::exact(coefficient, wp) * Interval::log_of(d * sz * l * l, wp) +
                        Interval::exact(3 * sz * l, wp) * Interval::log_of(d * l, wp).log() +
                        Interval::exact(d * l, wp) * Interval::log_of(to_mpz(p_max(s)), wp) +
                        delta0;
  const Interval total = rest + Interval::exact(coefficient, wp) * Interval::point(ln_c, wp);

  BoundReport report{choice.prime_power ? Theorem::MainPrimePower : Theorem::MainComposite,
                     level,
                     make(total, ctx),
                     make(rest, ctx),
                     coefficient,
                     {},
                     {}};
  report.components.emplace_back("delta0", make(delta0, ctx));
  return report;
}

BoundReport bound_main1(Level n, const NumberFieldSpec& field, const SSetSpec& s,
                        const BigFloat& ln_c, const EvalContext& ctx) {
  validate_inputs(field, s);
  const LevelChoice choice = choose_level(n);
  const std::int64_t level = choice.level;
  const mpfr_prec_t wp =
      std::max(working_bits_with_lambda(ctx, level), ln_c.precision() + kGuardBits);

  const mpz_class d = to_mpz(field.degree);
  const mpz_class sz = to_mpz(s.size());
  const mpz_class l = to_mpz(level);
  const mpz_class dl = to_mpz(covering_degree(level));
  const mpz_class coefficient = 2 * sz * l * dl;

  // (d s d_L^2 L^2)^(2 s L d_L) (log(d L d_L))^(3 s L d_L) p^(d L d_L) Delta(L)
  Interval dstar(wp);
  const Interval delta = ln_delta_iv(level, field, s, wp, &dstar);
  const Interval rest =
      Interval::exact(coefficient, wp) * Interval::log_of(d * sz * dl * dl * l * l, wp) +
      Interval::exact(3 * sz * l * dl, wp) * Interval::log_of(d * l * dl, wp).log() +
      Interval::exact(d * l * dl, wp) * Interval::log_of(to_mpz(p_max(s)), wp) + delta;
  const Interval total = rest + Interval::exact(coefficient, wp) * Interval::point(ln_c, wp);

  BoundReport report{choice.prime_power ? Theorem::Main1PrimePower : Theorem::Main1Composite,
                     level,
                     make(total, ctx),
                     make(rest, ctx),
                     coefficient,
                     {},
                     {}};
  report.components.emplace_back("lambda", make(ln_lambda_iv(level, wp), ctx));
  report.components.emplace_back("dstar", make(dstar, ctx));
  report.components.emplace_back("delta", make(delta, ctx));
  if (choice.prime_power) {
    report.warnings.push_back(
        "prime-power level: the bound is the M-level form, read as the case where N IS a "
        "prime power");
    report.warnings.push_back("prime-power level: Delta(M) re-evaluates d_M, Lambda and D* at "
                              "level M = " +
                              std::to_string(level) + " rather than keeping them at N = " +
                              std::to_string(n.value()));
  }
  return report;
}

BoundReport bound_for(const Applicability& verdict, Level n, const NumberFieldSpec& field,
                      const SSetSpec& s, const BigFloat& ln_c, const EvalContext& ctx) {
  switch (verdict.verdict) {
    case Verdict::MainDirect: return bound_main(n, field, s, ln_c, ctx);
    case Verdict::MainViaTilde: return bound_main1(n, field, s, ln_c, ctx);
    case Verdict::Inapplicable: break;
  }
  throw Inapplicable(verdict.invariants.nu_inf, verdict.tilde_invariants.nu_inf);
}

BoundReport bound_auto(const SubgroupImage& h, const NumberFieldSpec& field, const SSetSpec& s,
                       const BigFloat& ln_c, const EvalContext& ctx,
                       const EnumerationLimits& limits) {
  validate_inputs(field, s);
  return bound_for(applicability(h, limits), h.level(), field, s, ln_c, ctx);
}

}  // namespace jbound
