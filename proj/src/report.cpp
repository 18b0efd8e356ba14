#include "jbound/report.hpp"

#include <charconv>
#include <iomanip>
#include <sstream>

namespace jbound {

using nlohmann::json;

namespace {

std::int64_t parse_int(std::string_view text, const char* what) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw SpecError(std::string("malformed ") + what + ": '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == sep) {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) return false;
  }
  return true;
}

json to_json(const CurveInvariants& inv) {
  return {{"mu", inv.mu},
          {"nu_inf", inv.nu_inf},
          {"nu2", inv.nu2},
          {"nu3", inv.nu3},
          {"genus", inv.genus}};
}

CurveInvariants invariants_from_json(const json& j) {
  return {j.at("mu").get<std::int64_t>(), j.at("nu_inf").get<std::int64_t>(),
          j.at("nu2").get<std::int64_t>(), j.at("nu3").get<std::int64_t>(),
          j.at("genus").get<std::int64_t>()};
}

json to_json(const XReal& x) {
  return {{"ln", x.ln_string()},
          {"rounding", std::string(to_string(x.rounding()))},
          {"log10", x.render_log10()}};
}

Rounding rounding_from_string(const std::string& text) {
  if (text == "up") return Rounding::Up;
  if (text == "down") return Rounding::Down;
  throw SpecError("rounding must be 'up' or 'down', got '" + text + "'");
}

XReal xreal_from_json(const json& j, mpfr_prec_t precision) {
  return XReal::parse_ln(j.at("ln").get<std::string>(),
                         rounding_from_string(j.at("rounding").get<std::string>()), precision);
}

json to_json(const BoundReport& b) {
  json components = json::array();
  for (const auto& [name, value] : b.components) {
    components.push_back({{"name", name}, {"value", to_json(value)}});
  }
  return {{"theorem", std::string(to_string(b.theorem))},
          {"level_used", b.level_used},
          {"ln_c_coefficient", b.c_coefficient.get_str()},
          {"bound", to_json(b.bound)},
          {"rest", to_json(b.rest)},
          {"components", components},
          {"warnings", b.warnings}};
}

BoundReport bound_from_json(const json& j, mpfr_prec_t precision) {
  const auto theorem = theorem_from_string(j.at("theorem").get<std::string>());
  if (!theorem) throw SpecError("unknown theorem '" + j.at("theorem").get<std::string>() + "'");
  BoundReport b{*theorem,
                j.at("level_used").get<std::int64_t>(),
                xreal_from_json(j.at("bound"), precision),
                xreal_from_json(j.at("rest"), precision),
                mpz_class(j.at("ln_c_coefficient").get<std::string>()),
                {},
                j.at("warnings").get<std::vector<std::string>>()};
  for (const json& c : j.at("components")) {
    b.components.emplace_back(c.at("name").get<std::string>(),
                              xreal_from_json(c.at("value"), precision));
  }
  return b;
}

bool same_xreal(const XReal& x, const XReal& y) {
  return x.rounding() == y.rounding() && x.ln_string() == y.ln_string();
}

bool same_bound(const BoundReport& x, const BoundReport& y) {
  if (x.theorem != y.theorem || x.level_used != y.level_used ||
      x.c_coefficient != y.c_coefficient || x.warnings != y.warnings ||
      x.components.size() != y.components.size() || !same_xreal(x.bound, y.bound) ||
      !same_xreal(x.rest, y.rest)) {
    return false;
  }
  for (std::size_t i = 0; i < x.components.size(); ++i) {
    if (x.components[i].first != y.components[i].first ||
        !same_xreal(x.components[i].second, y.components[i].second)) {
      return false;
    }
  }
  return true;
}

Report analyse(const JobSpec& job, std::string command) {
  job.validate();
  const SubgroupImage h = job.build_subgroup();
  Applicability app = applicability(h, job.limits());
  Report report;
  report.command = std::move(command);
  report.job = job;
  report.invariants = app.invariants;
  report.tilde_order = app.tilde_image.size();
  report.tilde_invariants = app.tilde_invariants;
  report.verdict = app.verdict;
  report.sufficient_criterion_holds = app.sufficient_criterion_holds;
  if (report.command == "bound" && app.verdict != Verdict::Inapplicable) {
    report.bound = bound_for(app, h.level(), job.field, job.sset, job.parsed_ln_c(),
                             job.eval_context());
    report.warnings = report.bound->warnings;
  }
  return report;
}

std::string describe_subgroup(const JobSpec& job) {
  std::ostringstream out;
  if (job.family) {
    out << to_string(*job.family);
  } else {
    out << job.generators.size() << " generator(s)";
  }
  out << " at level " << job.level;
  return out.str();
}

std::string describe(const CurveInvariants& inv) {
  std::ostringstream out;
  out << "mu=" << inv.mu << " nu_inf=" << inv.nu_inf << " nu2=" << inv.nu2
      << " nu3=" << inv.nu3 << " genus=" << inv.genus;
  return out.str();
}

}  // namespace

std::optional<SubgroupKind> subgroup_kind_from_string(std::string_view text) {
  for (SubgroupKind k : {SubgroupKind::Gamma0, SubgroupKind::Gamma1, SubgroupKind::GammaFull,
                         SubgroupKind::PrincipalGammaN}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

std::vector<std::array<std::int64_t, 4>> parse_generators(std::string_view text) {
  std::vector<std::array<std::int64_t, 4>> out;
  for (std::string_view row : split(text, ';')) {
    if (row.find_first_not_of(' ') == std::string_view::npos) continue;
    const auto entries = split(row, ',');
    if (entries.size() != 4) {
      throw SpecError("generator '" + std::string(row) + "' needs four entries a,b,c,d");
    }
    std::array<std::int64_t, 4> m{};
    for (std::size_t i = 0; i < 4; ++i) m[i] = parse_int(entries[i], "matrix entry");
    out.push_back(m);
  }
  return out;
}

FinitePlace parse_place(std::string_view text) {
  const auto caret = text.find('^');
  if (caret == std::string_view::npos) {
    return {static_cast<std::uint64_t>(parse_int(text, "prime")), 1};
  }
  const std::int64_t p = parse_int(text.substr(0, caret), "prime");
  if (p < 2) throw SpecError("prime must be at least 2");
  return {static_cast<std::uint64_t>(p), parse_int(text.substr(caret + 1), "residue degree")};
}

void JobSpec::validate() const {
  const Level lv(level);
  for (const auto& m : generators) MatZN::make(lv, m[0], m[1], m[2], m[3]);
  field.validate();
  sset.validate(field);
  if (precision_bits < 16 || precision_bits > 1 << 20) {
    throw SpecError("precision must lie in [16, 2^20] bits");
  }
  if (enumeration_cap == 0) throw SpecError("enumeration cap must be positive");
  parsed_ln_c();
}

SubgroupImage JobSpec::build_subgroup() const {
  const Level lv(level);
  if (family) return standard_subgroup(*family, lv, limits());
  std::vector<MatZN> gens;
  for (const auto& m : generators) gens.push_back(MatZN::make(lv, m[0], m[1], m[2], m[3]));
  const std::uint64_t order = group_order(lv);
  if (order > enumeration_cap) throw CapExceeded(order, enumeration_cap);
  return closure(lv, gens);
}

BigFloat JobSpec::parsed_ln_c() const {
  try {
    return BigFloat::parse(ln_c, precision_bits + 64, Rounding::Up);
  } catch (const std::invalid_argument&) {
    throw SpecError("lnC must be a decimal number, got '" + ln_c + "'");
  }
}

JobSpec job_from_json(const json& j) {
  try {
    JobSpec job;
    if (j.contains("schema") && j.at("schema").get<int>() != kSchemaVersion) {
      throw SpecError("unsupported schema version " + j.at("schema").dump());
    }
    job.level = j.value("level", std::int64_t{0});
    if (j.contains("subgroup")) {
      const json& sg = j.at("subgroup");
      if (sg.is_string()) {
        job.family = subgroup_kind_from_string(sg.get<std::string>());
        if (!job.family) throw SpecError("unknown subgroup family '" + sg.get<std::string>() + "'");
      } else if (sg.contains("kind")) {
        job.family = subgroup_kind_from_string(sg.at("kind").get<std::string>());
        if (!job.family) throw SpecError("unknown subgroup family " + sg.at("kind").dump());
        if (sg.contains("N")) {
          const auto n = sg.at("N").get<std::int64_t>();
          if (job.level != 0 && job.level != n) {
            throw SpecError("subgroup parameter N differs from the declared level");
          }
          job.level = n;
        }
      } else if (sg.contains("generators")) {
        job.generators = sg.at("generators").get<std::vector<std::array<std::int64_t, 4>>>();
      } else {
        throw SpecError("subgroup needs a family name or a generator list");
      }
    }
    if (j.contains("field")) {
      job.field.degree = j.at("field").value("degree", std::int64_t{1});
      job.field.abs_discriminant = j.at("field").value("abs_discriminant", std::uint64_t{1});
    }
    if (j.contains("sset")) {
      const json& s = j.at("sset");
      job.sset.infinite_places = s.value("infinite_places", std::int64_t{1});
      for (const json& v : s.value("finite_places", json::array())) {
        job.sset.finite_places.push_back(
            {v.at("p").get<std::uint64_t>(), v.value("f", std::int64_t{1})});
      }
    }
    if (j.contains("lnC")) {
      job.ln_c = j.at("lnC").is_string() ? j.at("lnC").get<std::string>() : j.at("lnC").dump();
    }
    job.precision_bits = j.value("precision", mpfr_prec_t{128});
    job.rounding = rounding_from_string(j.value("rounding", std::string("up")));
    job.enumeration_cap = j.value("enumeration_cap", EnumerationLimits{}.max_elements);
    return job;
  } catch (const json::exception& e) {
    throw SpecError(std::string("malformed job spec: ") + e.what());
  }
}

json to_json(const JobSpec& job) {
  json sg;
  if (job.family) {
    sg = std::string(to_string(*job.family));
  } else {
    sg = {{"generators", job.generators}};
  }
  json places = json::array();
  for (const FinitePlace& v : job.sset.finite_places) {
    places.push_back({{"p", v.prime}, {"f", v.residue_degree}});
  }
  return {{"level", job.level},
          {"subgroup", sg},
          {"field", {{"degree", job.field.degree}, {"abs_discriminant", job.field.abs_discriminant}}},
          {"sset", {{"infinite_places", job.sset.infinite_places}, {"finite_places", places}}},
          {"lnC", job.ln_c},
          {"precision", job.precision_bits},
          {"rounding", std::string(to_string(job.rounding))},
          {"enumeration_cap", job.enumeration_cap}};
}

bool same_report(const Report& x, const Report& y) {
  if (x.command != y.command || !(x.job == y.job) || !(x.invariants == y.invariants) ||
      x.tilde_order != y.tilde_order || !(x.tilde_invariants == y.tilde_invariants) ||
      x.verdict != y.verdict || x.sufficient_criterion_holds != y.sufficient_criterion_holds ||
      x.warnings != y.warnings || x.bound.has_value() != y.bound.has_value()) {
    return false;
  }
  return !x.bound || same_bound(*x.bound, *y.bound);
}

Report cmd_invariants(const JobSpec& job) { return analyse(job, "invariants"); }
Report cmd_bound(const JobSpec& job) { return analyse(job, "bound"); }

json to_json(const Report& report) {
  json j = {{"schema", kSchemaVersion},
            {"command", report.command},
            {"job", to_json(report.job)},
            {"invariants", to_json(report.invariants)},
            {"tilde", {{"order", report.tilde_order}, {"invariants", to_json(report.tilde_invariants)}}},
            {"applicability",
             {{"verdict", std::string(to_string(report.verdict))},
              {"three_cusp_criterion", report.sufficient_criterion_holds}}},
            {"warnings", report.warnings}};
  j["bound"] = report.bound ? to_json(*report.bound) : json(nullptr);
  return j;
}

Report report_from_json(const json& j) {
  try {
    if (j.at("schema").get<int>() != kSchemaVersion) {
      throw SpecError("unsupported schema version " + j.at("schema").dump());
    }
    Report r;
    r.command = j.at("command").get<std::string>();
    r.job = job_from_json(j.at("job"));
    r.invariants = invariants_from_json(j.at("invariants"));
    r.tilde_order = j.at("tilde").at("order").get<std::uint64_t>();
    r.tilde_invariants = invariants_from_json(j.at("tilde").at("invariants"));
    const auto verdict = j.at("applicability").at("verdict").get<std::string>();
    bool known = false;
    for (Verdict v : {Verdict::MainDirect, Verdict::MainViaTilde, Verdict::Inapplicable}) {
      if (to_string(v) == verdict) {
        r.verdict = v;
        known = true;
      }
    }
    if (!known) throw SpecError("unknown verdict '" + verdict + "'");
    r.sufficient_criterion_holds = j.at("applicability").at("three_cusp_criterion").get<bool>();
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    if (!j.at("bound").is_null()) r.bound = bound_from_json(j.at("bound"), r.job.precision_bits);
    return r;
  } catch (const json::exception& e) {
    throw SpecError(std::string("malformed report: ") + e.what());
  }
}

std::string render_text(const Report& report) {
  std::ostringstream out;
  out << "subgroup   " << describe_subgroup(report.job) << "\n";
  out << "curve      " << describe(report.invariants) << "\n";
  out << "cover      |G~|=" << report.tilde_order << " " << describe(report.tilde_invariants)
      << "\n";
  out << "verdict    " << to_string(report.verdict) << " (three-cusp order criterion "
      << (report.sufficient_criterion_holds ? "holds" : "fails") << ")\n";
  if (report.verdict == Verdict::Inapplicable) {
    out << "           neither the curve (" << report.invariants.nu_inf
        << " cusps) nor its elliptic cover (" << report.tilde_invariants.nu_inf
        << " cusps) has three cusps\n";
  }
  if (report.bound) {
    const BoundReport& b = *report.bound;
    out << "theorem    " << to_string(b.theorem) << " at level " << b.level_used << "\n";
    out << "field      d=" << report.job.field.degree
        << " |D|=" << report.job.field.abs_discriminant << " |S|=" << report.job.sset.size()
        << " p=" << p_max(report.job.sset) << "\n";
    out << "height     h(j(P)) <= C^k * R with k = " << b.c_coefficient.get_str() << "\n";
    out << "  bound    " << b.bound.render_log10() << "  [ln C = " << report.job.ln_c << "]\n";
    out << "  R        " << b.rest.render_log10() << "\n";
    for (const auto& [name, value] : b.components) {
      out << "  " << std::left << std::setw(8) << name << " " << value.render_log10() << "\n";
    }
    out << "note       C is an absolute effective constant left unspecified; it enters only "
           "through C^k.\n";
  }
  for (const std::string& w : report.warnings) out << "warning    " << w << "\n";
  return out.str();
}

std::string render_table(SubgroupKind kind, std::int64_t from, std::int64_t to, bool primes_only,
                         const EnumerationLimits& limits) {
  std::ostringstream out;
  out << std::left << std::setw(7) << "#kind" << std::right << std::setw(5) << "N" << std::setw(9)
      << "mu" << std::setw(8) << "nu_inf" << std::setw(5) << "nu2" << std::setw(5) << "nu3"
      << std::setw(7) << "genus" << std::setw(12) << "tilde_order" << std::setw(13)
      << "tilde_nu_inf" << std::setw(10) << "criterion"
      << "  verdict\n";
  for (std::int64_t n = std::max<std::int64_t>(from, 2); n <= to; ++n) {
    if (primes_only && !is_prime(n)) continue;
    const Level level(n);
    const Applicability app = applicability(standard_subgroup(kind, level, limits), limits);
    out << std::left << std::setw(7) << to_string(kind) << std::right << std::setw(5) << n
        << std::setw(9) << app.invariants.mu << std::setw(8) << app.invariants.nu_inf
        << std::setw(5) << app.invariants.nu2 << std::setw(5) << app.invariants.nu3
        << std::setw(7) << app.invariants.genus << std::setw(12) << app.tilde_image.size()
        << std::setw(13) << app.tilde_invariants.nu_inf << std::setw(10)
        << (app.sufficient_criterion_holds ? "yes" : "no") << "  " << to_string(app.verdict)
        << "\n";
  }
  return out.str();
}

}  // namespace jbound
