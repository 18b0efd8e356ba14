#include "jbound/sl2n.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_set>

namespace jbound {

namespace {

std::uint32_t reduce(std::int64_t x, std::uint32_t n) {
  std::int64_t r = x % static_cast<std::int64_t>(n);
  if (r < 0) r += n;
  return static_cast<std::uint32_t>(r);
}

std::uint32_t mulmod(std::uint32_t x, std::uint32_t y, std::uint32_t n) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * y % n);
}

std::uint32_t addmod(std::uint32_t x, std::uint32_t y, std::uint32_t n) {
  std::uint32_t s = x + y;
  return s >= n ? s - n : s;
}

std::uint32_t negmod(std::uint32_t x, std::uint32_t n) { return x == 0 ? 0 : n - x; }

// Extended Euclid on nonnegative integers: returns g = gcd(x, y) and u, v with
// u x + v y = g.
std::int64_t ext_gcd(std::int64_t x, std::int64_t y, std::int64_t& u, std::int64_t& v) {
  std::int64_t u0 = 1, v0 = 0, u1 = 0, v1 = 1;
  while (y != 0) {
    std::int64_t q = x / y;
    std::tie(x, y) = std::pair(y, x - q * y);
    std::tie(u0, u1) = std::pair(u1, u0 - q * u1);
    std::tie(v0, v1) = std::pair(v1, v0 - q * v1);
  }
  u = u0;
  v = v0;
  return x;
}

std::int64_t inverse_mod(std::int64_t x, std::int64_t n) {
  std::int64_t u = 0, v = 0;
  std::int64_t g = ext_gcd(((x % n) + n) % n, n, u, v);
  if (g != 1) throw SpecError("not invertible modulo " + std::to_string(n));
  return ((u % n) + n) % n;
}

std::vector<std::uint64_t> bfs_closure(Level level, std::span<const MatZN> generators) {
  const MatZN id = MatZN::identity(level);
  std::unordered_set<std::uint64_t> seen{id.code()};
  std::vector<MatZN> queue{id};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const MatZN x = queue[head];
    for (const MatZN& g : generators) {
      MatZN y = x * g;
      if (seen.insert(y.code()).second) queue.push_back(y);
    }
  }
  std::vector<std::uint64_t> codes;
  codes.reserve(queue.size());
  for (const MatZN& m : queue) codes.push_back(m.code());
  std::sort(codes.begin(), codes.end());
  return codes;
}

}  // namespace

Level::Level(std::int64_t n) {
  if (n < 2 || n > kMax) {
    throw SpecError("level must lie in [2, " + std::to_string(kMax) + "], got " +
                    std::to_string(n));
  }
  n_ = static_cast<std::uint32_t>(n);
}

MatZN MatZN::make(Level level, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  const std::uint32_t n = level.value();
  MatZN m(n, reduce(a, n), reduce(b, n), reduce(c, n), reduce(d, n));
  const std::uint64_t det =
      (static_cast<std::uint64_t>(m.a_) * m.d_ + n - mulmod(m.b_, m.c_, n)) % n;
  if (det != 1 % n) {
    throw SpecError("matrix [[" + std::to_string(a) + "," + std::to_string(b) + "],[" +
                    std::to_string(c) + "," + std::to_string(d) +
                    "]] does not have determinant 1 mod " + std::to_string(n));
  }
  return m;
}

MatZN MatZN::identity(Level level) { return MatZN(level.value(), 1, 0, 0, 1); }

MatZN MatZN::minus_identity(Level level) {
  const std::uint32_t n = level.value();
  return MatZN(n, n - 1, 0, 0, n - 1);
}

MatZN MatZN::from_code(Level level, std::uint64_t code) {
  const std::uint64_t n = level.value();
  const auto d = static_cast<std::uint32_t>(code % n);
  code /= n;
  const auto c = static_cast<std::uint32_t>(code % n);
  code /= n;
  const auto b = static_cast<std::uint32_t>(code % n);
  code /= n;
  return make(level, static_cast<std::int64_t>(code), b, c, d);
}

std::uint64_t MatZN::code() const noexcept {
  const std::uint64_t n = n_;
  return ((static_cast<std::uint64_t>(a_) * n + b_) * n + c_) * n + d_;
}

MatZN MatZN::inverse() const noexcept { return MatZN(n_, d_, negmod(b_, n_), negmod(c_, n_), a_); }

MatZN MatZN::negated() const noexcept {
  return MatZN(n_, negmod(a_, n_), negmod(b_, n_), negmod(c_, n_), negmod(d_, n_));
}

MatZN MatZN::conjugated_by(const MatZN& g) const { return g * *this * g.inverse(); }

bool MatZN::is_identity() const noexcept { return a_ == 1 && b_ == 0 && c_ == 0 && d_ == 1; }

MatZN mat_mul(const MatZN& x, const MatZN& y) {
  if (x.n_ != y.n_) {
    throw SpecError("level mismatch: " + std::to_string(x.n_) + " vs " + std::to_string(y.n_));
  }
  const std::uint32_t n = x.n_;
  return MatZN(n, addmod(mulmod(x.a_, y.a_, n), mulmod(x.b_, y.c_, n), n),
               addmod(mulmod(x.a_, y.b_, n), mulmod(x.b_, y.d_, n), n),
               addmod(mulmod(x.c_, y.a_, n), mulmod(x.d_, y.c_, n), n),
               addmod(mulmod(x.c_, y.b_, n), mulmod(x.d_, y.d_, n), n));
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t group_order(Level level) {
  // prod over q^k || N of q^(3k-2) (q^2 - 1)
  std::uint64_t n = level.value();
  std::uint64_t order = 1;
  for (std::uint64_t q : prime_divisors(n)) {
    std::uint64_t qk = 1;
    while (n % q == 0) {
      n /= q;
      qk *= q;
    }
    order *= qk * qk * qk / (q * q) * (q * q - 1);
  }
  return order;
}

std::vector<MatZN> enumerate_group(Level level, const EnumerationLimits& limits) {
  const std::uint64_t order = group_order(level);
  if (order > limits.max_elements) throw CapExceeded(order, limits.max_elements);

  // For each primitive first column (a, c) the solutions (b, d) of ad - bc = 1
  // form the line (b0, d0) + k (a, c), k in Z/N.
  const std::int64_t n = level.value();
  std::vector<MatZN> out;
  out.reserve(order);
  for (std::int64_t a = 0; a < n; ++a) {
    for (std::int64_t c = 0; c < n; ++c) {
      if (std::gcd(std::gcd(a, c), n) != 1) continue;
      std::int64_t u = 0, v = 0;
      const std::int64_t g = ext_gcd(a, c, u, v);  // u a + v c = g, gcd(g, N) = 1
      const std::int64_t ginv = inverse_mod(g, n);
      const std::int64_t d0 = ((u % n) * ginv) % n;
      const std::int64_t b0 = ((-v % n) * ginv) % n;
      for (std::int64_t k = 0; k < n; ++k) {
        out.push_back(MatZN::make(level, a, b0 + k * a, c, d0 + k * c));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t element_order(const MatZN& m) {
  std::uint64_t k = 1;
  for (MatZN p = m; !p.is_identity(); p = p * m) ++k;
  return k;
}

SubgroupImage::SubgroupImage(Level level, std::vector<std::uint64_t> codes,
                             std::vector<MatZN> generators)
    : level_(level), codes_(std::move(codes)), generators_(std::move(generators)) {
  contains_minus_identity_ = contains(MatZN::minus_identity(level_));
}

SubgroupImage SubgroupImage::generated_by(Level level, std::span<const MatZN> generators) {
  for (const MatZN& g : generators) {
    if (!(g.level() == level)) {
      throw SpecError("generator level " + std::to_string(g.level().value()) +
                      " differs from subgroup level " + std::to_string(level.value()));
    }
  }
  return SubgroupImage(level, bfs_closure(level, generators),
                       std::vector<MatZN>(generators.begin(), generators.end()));
}

SubgroupImage SubgroupImage::from_elements(Level level, std::vector<MatZN> elements) {
  std::vector<std::uint64_t> codes;
  codes.reserve(elements.size());
  for (const MatZN& m : elements) {
    if (!(m.level() == level)) throw SpecError("element level differs from subgroup level");
    codes.push_back(m.code());
  }
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());

  std::vector<MatZN> gens;
  std::vector<std::uint64_t> current{MatZN::identity(level).code()};
  for (std::uint64_t code : codes) {
    if (std::binary_search(current.begin(), current.end(), code)) continue;
    gens.push_back(MatZN::from_code(level, code));
    current = bfs_closure(level, gens);
    if (current.size() > codes.size()) break;
  }
  if (current != codes) throw SpecError("element set is not a subgroup of SL2(Z/N)");
  return SubgroupImage(level, std::move(codes), std::move(gens));
}

bool SubgroupImage::contains(const MatZN& m) const {
  return m.level() == level_ && std::binary_search(codes_.begin(), codes_.end(), m.code());
}

bool SubgroupImage::contains_all(const SubgroupImage& other) const {
  if (!(other.level_ == level_)) return false;
  return std::includes(codes_.begin(), codes_.end(), other.codes_.begin(), other.codes_.end());
}

std::vector<MatZN> SubgroupImage::elements() const {
  std::vector<MatZN> out;
  out.reserve(codes_.size());
  for (std::uint64_t code : codes_) out.push_back(MatZN::from_code(level_, code));
  return out;
}

SubgroupImage SubgroupImage::with_minus_identity() const {
  if (contains_minus_identity_) return *this;
  std::vector<std::uint64_t> codes = codes_;
  for (std::uint64_t code : codes_) codes.push_back(MatZN::from_code(level_, code).negated().code());
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  std::vector<MatZN> gens = generators_;
  gens.push_back(MatZN::minus_identity(level_));
  return SubgroupImage(level_, std::move(codes), std::move(gens));
}

SubgroupImage closure(Level level, std::span<const MatZN> generators) {
  return SubgroupImage::generated_by(level, generators);
}

std::vector<MatZN> coset_reps(const SubgroupImage& h, const EnumerationLimits& limits) {
  const std::vector<MatZN> group = enumerate_group(h.level(), limits);
  const std::vector<MatZN> pm_h = h.with_minus_identity().elements();

  std::vector<bool> covered(group.size(), false);
  std::vector<MatZN> reps;
  reps.reserve(group.size() / pm_h.size());
  for (std::size_t i = 0; i < group.size(); ++i) {
    if (covered[i]) continue;
    reps.push_back(group[i]);
    for (const MatZN& x : pm_h) {
      const auto it = std::lower_bound(group.begin(), group.end(), x * group[i]);
      covered[static_cast<std::size_t>(it - group.begin())] = true;
    }
  }
  return reps;
}

}  // namespace jbound
