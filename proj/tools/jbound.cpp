// jbound: invariants of congruence-subgroup curves and effective height
// bounds for the j-invariant of their S-integral points.
//
// Exit codes: 0 success, 2 no theorem applies, 3 malformed input,
// 4 enumeration cap exceeded.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "jbound/report.hpp"

namespace {

enum ExitCode { kOk = 0, kInapplicable = 2, kSpecError = 3, kCapExceeded = 4 };

struct Options {
  std::string spec_file;
  std::optional<std::int64_t> level;
  std::optional<std::string> subgroup;
  std::optional<std::string> gens;
  std::optional<std::int64_t> degree;
  std::optional<std::uint64_t> disc;
  std::optional<std::int64_t> inf_places;
  std::vector<std::string> places;
  std::optional<std::string> ln_c;
  std::optional<long> precision;
  std::optional<std::string> rounding;
  std::optional<std::uint64_t> cap;
  std::string range = "2..30";
  bool primes = false;
  bool json = false;
};

void add_job_options(CLI::App& cmd, Options& o) {
  cmd.add_option("--spec", o.spec_file, "JSON job spec file ('-' for stdin)");
  cmd.add_option("--level", o.level, "level N");
  cmd.add_option("--subgroup", o.subgroup, "gamma0 | gamma1 | gamma | full");
  cmd.add_option("--gens", o.gens, "explicit generators \"a,b,c,d;a,b,c,d\"");
  cmd.add_option("--degree", o.degree, "degree d of K");
  cmd.add_option("--disc", o.disc, "absolute discriminant |D| of K");
  cmd.add_option("--inf-places", o.inf_places, "number of archimedean places of K");
  cmd.add_option("--place", o.places, "finite place of S as p^f (repeatable)");
  cmd.add_option("--lnC", o.ln_c, "natural log of the absolute constant C (default 0)");
  cmd.add_option("--precision", o.precision, "mantissa bits (default 128)");
  cmd.add_option("--rounding", o.rounding, "up | down (default up)");
  cmd.add_option("--cap", o.cap, "enumeration cap on |SL2(Z/N)| (default 1e7)");
  cmd.add_flag("--json", o.json, "emit a JSON report");
}

jbound::JobSpec build_job(const Options& o) {
  nlohmann::json base = nlohmann::json::object();
  if (!o.spec_file.empty()) {
    std::string text;
    if (o.spec_file == "-") {
      text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
      std::ifstream in(o.spec_file);
      if (!in) throw jbound::SpecError("cannot open spec file '" + o.spec_file + "'");
      text.assign(std::istreambuf_iterator<char>(in), {});
    }
    try {
      base = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw jbound::SpecError(std::string("spec file is not valid JSON: ") + e.what());
    }
  }
  jbound::JobSpec job = jbound::job_from_json(base);
  if (o.level) job.level = *o.level;
  if (o.subgroup) {
    job.family = jbound::subgroup_kind_from_string(*o.subgroup);
    if (!job.family) throw jbound::SpecError("unknown subgroup family '" + *o.subgroup + "'");
    job.generators.clear();
  }
  if (o.gens) {
    job.family.reset();
    job.generators = jbound::parse_generators(*o.gens);
  }
  if (o.degree) job.field.degree = *o.degree;
  if (o.disc) job.field.abs_discriminant = *o.disc;
  if (o.inf_places) job.sset.infinite_places = *o.inf_places;
  if (!o.places.empty()) {
    job.sset.finite_places.clear();
    for (const std::string& p : o.places) job.sset.finite_places.push_back(jbound::parse_place(p));
  }
  if (o.ln_c) job.ln_c = *o.ln_c;
  if (o.precision) job.precision_bits = *o.precision;
  if (o.rounding) {
    if (*o.rounding != "up" && *o.rounding != "down") {
      throw jbound::SpecError("--rounding must be up or down");
    }
    job.rounding = *o.rounding == "up" ? jbound::Rounding::Up : jbound::Rounding::Down;
  }
  if (o.cap) job.enumeration_cap = *o.cap;
  if (job.level == 0) throw jbound::SpecError("no level given (--level or \"level\")");
  if (!job.family && job.generators.empty() && !o.gens && !base.contains("subgroup")) {
    throw jbound::SpecError("no subgroup given (--subgroup, --gens or \"subgroup\")");
  }
  return job;
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const std::int64_t n = std::stoll(text);
      return {n, n};
    }
    return {std::stoll(text.substr(0, dots)), std::stoll(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw jbound::SpecError("range must look like A..B, got '" + text + "'");
  }
}

int emit(const jbound::Report& report, bool as_json) {
  if (as_json) {
    std::cout << jbound::to_json(report).dump(2) << "\n";
  } else {
    std::cout << jbound::render_text(report);
  }
  if (report.command == "bound" && report.verdict == jbound::Verdict::Inapplicable) {
    return kInapplicable;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Congruence-subgroup invariants and effective j-invariant height bounds"};
  app.require_subcommand(1);
  Options o;

  CLI::App* invariants = app.add_subcommand("invariants", "index, cusps, elliptic points, genus");
  add_job_options(*invariants, o);
  CLI::App* bound = app.add_subcommand("bound", "height bound for S-integral points");
  add_job_options(*bound, o);
  CLI::App* tables = app.add_subcommand("tables", "invariant table for a family over a range");
  tables->add_option("--subgroup", o.subgroup, "gamma0 | gamma1 | gamma | full")->required();
  tables->add_option("--range", o.range, "levels A..B (default 2..30)");
  tables->add_flag("--primes", o.primes, "prime levels only");
  tables->add_option("--cap", o.cap, "enumeration cap on |SL2(Z/N)|");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kSpecError;
  }

  try {
    if (tables->parsed()) {
      const auto kind = jbound::subgroup_kind_from_string(*o.subgroup);
      if (!kind) throw jbound::SpecError("unknown subgroup family '" + *o.subgroup + "'");
      const auto [from, to] = parse_range(o.range);
      jbound::EnumerationLimits limits;
      if (o.cap) limits.max_elements = *o.cap;
      std::cout << jbound::render_table(*kind, from, to, o.primes, limits);
      return kOk;
    }
    const jbound::JobSpec job = build_job(o);
    if (invariants->parsed()) return emit(jbound::cmd_invariants(job), o.json);
    return emit(jbound::cmd_bound(job), o.json);
  } catch (const jbound::CapExceeded& e) {
    std::cerr << "jbound: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const jbound::SpecError& e) {
    std::cerr << "jbound: " << e.what() << "\n";
    return kSpecError;
  }
}
