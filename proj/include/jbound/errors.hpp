#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace jbound {

/// Malformed input: bad level, non-unimodular generator, invalid field or S-set data.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation needed to enumerate more of SL2(Z/N) than the configured cap allows.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(std::uint64_t requested, std::uint64_t cap)
      : std::runtime_error("enumeration of " + std::to_string(requested) +
                           " elements exceeds cap " + std::to_string(cap)),
        requested_(requested),
        cap_(cap) {}

  std::uint64_t requested() const noexcept { return requested_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t requested_;
  std::uint64_t cap_;
};

/// Neither effective theorem covers the curve; carries both cusp counts.
class Inapplicable : public std::runtime_error {
 public:
  Inapplicable(std::int64_t nu_inf, std::int64_t tilde_nu_inf)
      : std::runtime_error("no effective bound applies: curve has " + std::to_string(nu_inf) +
                           " cusps and its elliptic cover has " +
                           std::to_string(tilde_nu_inf) + " (need at least 3)"),
        nu_inf_(nu_inf),
        tilde_nu_inf_(tilde_nu_inf) {}

  std::int64_t nu_inf() const noexcept { return nu_inf_; }
  std::int64_t tilde_nu_inf() const noexcept { return tilde_nu_inf_; }

 private:
  std::int64_t nu_inf_;
  std::int64_t tilde_nu_inf_;
};

}  // namespace jbound
