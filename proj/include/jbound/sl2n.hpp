#pragma once

// Exact arithmetic in SL2(Z/N): matrices, full enumeration, subgroup closure
// and right-coset representatives.

#include <compare>
#include <cstdint>
#include <span>
#include <tuple>
#include <vector>

#include "jbound/errors.hpp"

namespace jbound {

/// The level N of a congruence subgroup. Always >= 2 and small enough that a
/// matrix packs into a 64-bit code.
class Level {
 public:
  static constexpr std::int64_t kMax = 65535;

  explicit Level(std::int64_t n);

  std::uint32_t value() const noexcept { return n_; }
  friend bool operator==(Level, Level) = default;

 private:
  std::uint32_t n_;
};

/// Upper limit on how many elements of SL2(Z/N) an operation may enumerate.
struct EnumerationLimits {
  std::uint64_t max_elements = 10'000'000;
};

/// A matrix [[a, b], [c, d]] in SL2(Z/N) with entries kept in [0, N).
class MatZN {
 public:
  /// Reduces arbitrary integers mod N; throws SpecError unless ad - bc == 1 mod N.
  static MatZN make(Level level, std::int64_t a, std::int64_t b, std::int64_t c,
                    std::int64_t d);
  static MatZN identity(Level level);
  static MatZN minus_identity(Level level);
  static MatZN from_code(Level level, std::uint64_t code);

  std::uint32_t a() const noexcept { return a_; }
  std::uint32_t b() const noexcept { return b_; }
  std::uint32_t c() const noexcept { return c_; }
  std::uint32_t d() const noexcept { return d_; }
  Level level() const noexcept { return Level(n_); }

  /// Packs the entries as ((a N + b) N + c) N + d; injective for a fixed level.
  std::uint64_t code() const noexcept;

  MatZN inverse() const noexcept;
  MatZN negated() const noexcept;
  MatZN conjugated_by(const MatZN& g) const;  // g * this * g^-1
  bool is_identity() const noexcept;

  friend bool operator==(const MatZN&, const MatZN&) = default;
  friend auto operator<=>(const MatZN& x, const MatZN& y) {
    return std::tuple(x.n_, x.code()) <=> std::tuple(y.n_, y.code());
  }

 private:
  MatZN(std::uint32_t n, std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d)
      : n_(n), a_(a), b_(b), c_(c), d_(d) {}

  friend MatZN mat_mul(const MatZN& x, const MatZN& y);

  std::uint32_t n_;
  std::uint32_t a_, b_, c_, d_;
};

/// Product reduced mod N. Throws SpecError on a level mismatch.
MatZN mat_mul(const MatZN& x, const MatZN& y);
inline MatZN operator*(const MatZN& x, const MatZN& y) { return mat_mul(x, y); }

/// |SL2(Z/N)| = N^3 prod_{q | N} (1 - 1/q^2), computed exactly.
std::uint64_t group_order(Level level);

/// All of SL2(Z/N), sorted by code. Throws CapExceeded above the limit.
std::vector<MatZN> enumerate_group(Level level, const EnumerationLimits& limits = {});

/// Least k >= 1 with m^k = I.
std::uint64_t element_order(const MatZN& m);

/// Image of a congruence subgroup in SL2(Z/N).
///
/// Holds the full element set as sorted codes, the generators it was built
/// from, and whether -I is present. Equality compares element sets only.
class SubgroupImage {
 public:
  /// Breadth-first closure of the generators; the empty list gives {I}.
  static SubgroupImage generated_by(Level level, std::span<const MatZN> generators);

  /// Wraps an element set that is already a group. A small generating set is
  /// extracted greedily in code order. Throws SpecError if the set is not closed.
  static SubgroupImage from_elements(Level level, std::vector<MatZN> elements);

  Level level() const noexcept { return level_; }
  std::uint64_t size() const noexcept { return codes_.size(); }
  bool contains(const MatZN& m) const;
  bool contains_minus_identity() const noexcept { return contains_minus_identity_; }
  bool contains_all(const SubgroupImage& other) const;

  const std::vector<MatZN>& generators() const noexcept { return generators_; }
  std::span<const std::uint64_t> codes() const noexcept { return codes_; }
  std::vector<MatZN> elements() const;

  /// <H, -I>; returns *this when -I is already present.
  SubgroupImage with_minus_identity() const;

  friend bool operator==(const SubgroupImage& x, const SubgroupImage& y) {
    return x.level_ == y.level_ && x.codes_ == y.codes_;
  }

 private:
  SubgroupImage(Level level, std::vector<std::uint64_t> codes, std::vector<MatZN> generators);

  Level level_;
  std::vector<std::uint64_t> codes_;
  std::vector<MatZN> generators_;
  bool contains_minus_identity_ = false;
};

/// Same as SubgroupImage::generated_by.
SubgroupImage closure(Level level, std::span<const MatZN> generators);

/// One representative per right coset <H, -I> g of SL2(Z/N), in code order of
/// the smallest coset member. Throws CapExceeded when the group is too large.
std::vector<MatZN> coset_reps(const SubgroupImage& h, const EnumerationLimits& limits = {});

/// Prime divisors of n in increasing order.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

}  // namespace jbound
