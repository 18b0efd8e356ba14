#pragma once

// Job specifications and reports for the command-line front end, with their
// JSON encodings (schema version 1) and plain-text renderings.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "jbound/bounds.hpp"
#include "jbound/modcurve.hpp"

namespace jbound {

inline constexpr int kSchemaVersion = 1;

std::optional<SubgroupKind> subgroup_kind_from_string(std::string_view text);

struct JobSpec {
  std::int64_t level = 0;
  /// Named family at `level`; when empty, `generators` defines the subgroup.
  std::optional<SubgroupKind> family;
  std::vector<std::array<std::int64_t, 4>> generators;
  NumberFieldSpec field;
  SSetSpec sset;
  /// ln C as a decimal string, kept verbatim so reports reproduce it.
  std::string ln_c = "0";
  mpfr_prec_t precision_bits = 128;
  Rounding rounding = Rounding::Up;
  std::uint64_t enumeration_cap = EnumerationLimits{}.max_elements;

  /// Throws SpecError on any inconsistency.
  void validate() const;
  SubgroupImage build_subgroup() const;
  EvalContext eval_context() const { return {precision_bits, rounding}; }
  EnumerationLimits limits() const { return {enumeration_cap}; }
  BigFloat parsed_ln_c() const;

  friend bool operator==(const JobSpec&, const JobSpec&) = default;
};

JobSpec job_from_json(const nlohmann::json& j);
nlohmann::json to_json(const JobSpec& job);

/// Parses "a,b,c,d;a,b,c,d;..." into generator rows.
std::vector<std::array<std::int64_t, 4>> parse_generators(std::string_view text);
/// Parses "p^f" or "p" (f = 1).
FinitePlace parse_place(std::string_view text);

struct Report {
  std::string command;  ///< "invariants" or "bound"
  JobSpec job;
  CurveInvariants invariants;
  std::uint64_t tilde_order = 0;
  CurveInvariants tilde_invariants;
  Verdict verdict = Verdict::Inapplicable;
  bool sufficient_criterion_holds = false;
  /// Present iff command == "bound" and verdict != Inapplicable.
  std::optional<BoundReport> bound;
  std::vector<std::string> warnings;
};

/// Equality on the rendered form: integers exactly, ln-values by their
/// decimal strings at the job's precision.
bool same_report(const Report& x, const Report& y);

/// Invariants of the job's subgroup and of its elliptic cover.
Report cmd_invariants(const JobSpec& job);
/// cmd_invariants plus the bound. An inapplicable verdict leaves `bound` empty.
Report cmd_bound(const JobSpec& job);

nlohmann::json to_json(const Report& report);
Report report_from_json(const nlohmann::json& j);
std::string render_text(const Report& report);

/// Deterministic invariant table for a family over [from, to]; header only
/// when the range is empty.
std::string render_table(SubgroupKind kind, std::int64_t from, std::int64_t to, bool primes_only,
                         const EnumerationLimits& limits = {});

}  // namespace jbound
