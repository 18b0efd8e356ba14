#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jbound/report.hpp"

namespace py = pybind11;
using namespace jbound;

namespace {

Rounding rounding_arg(const std::string& text) {
  if (text == "up") return Rounding::Up;
  if (text == "down") return Rounding::Down;
  throw SpecError("rounding must be 'up' or 'down', got '" + text + "'");
}

SubgroupImage subgroup_arg(const std::string& kind, std::int64_t level,
                           const std::optional<std::vector<std::array<std::int64_t, 4>>>& gens,
                           std::uint64_t cap) {
  JobSpec job;
  job.level = level;
  job.enumeration_cap = cap;
  if (gens) {
    job.generators = *gens;
  } else {
    job.family = subgroup_kind_from_string(kind);
    if (!job.family) throw SpecError("unknown subgroup family '" + kind + "'");
  }
  return job.build_subgroup();
}

py::dict to_dict(const CurveInvariants& inv) {
  py::dict d;
  d["mu"] = inv.mu;
  d["nu_inf"] = inv.nu_inf;
  d["nu2"] = inv.nu2;
  d["nu3"] = inv.nu3;
  d["genus"] = inv.genus;
  return d;
}

struct ArithArgs {
  NumberFieldSpec field;
  SSetSpec s;
  EvalContext ctx;
};

ArithArgs arith_args(std::int64_t degree, std::uint64_t abs_disc, std::optional<std::int64_t> inf,
                     const std::vector<std::pair<std::uint64_t, std::int64_t>>& places,
                     mpfr_prec_t precision, const std::string& rounding) {
  ArithArgs a;
  a.field = {degree, abs_disc};
  a.s.infinite_places = inf.value_or(degree);
  for (const auto& [p, f] : places) a.s.finite_places.push_back({p, f});
  a.ctx = {precision, rounding_arg(rounding)};
  a.field.validate();
  a.s.validate(a.field);
  return a;
}

py::object json_to_python(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

nlohmann::json python_to_json(const py::object& o) {
  const std::string text = py::str(py::module_::import("json").attr("dumps")(o));
  return nlohmann::json::parse(text);
}

constexpr std::uint64_t kDefaultCap = EnumerationLimits{}.max_elements;

}  // namespace

PYBIND11_MODULE(_jbound, m) {
  m.doc() = "Congruence-subgroup invariants and effective j-invariant height bounds.";

  py::register_exception<SpecError>(m, "SpecError", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);
  py::register_exception<Inapplicable>(m, "Inapplicable", PyExc_RuntimeError);

  m.attr("SCHEMA_VERSION") = kSchemaVersion;

  m.def("group_order", [](std::int64_t n) { return group_order(Level(n)); }, py::arg("level"),
        "Order of SL2(Z/N).");
  m.def("covering_degree", &covering_degree, py::arg("level"));
  m.def("prime_power_level", &prime_power_level, py::arg("level"));
  m.def("euler_phi", &euler_phi, py::arg("n"));

  m.def(
      "invariants",
      [](const std::string& kind, std::int64_t level,
         std::optional<std::vector<std::array<std::int64_t, 4>>> generators, std::uint64_t cap) {
        return to_dict(curve_invariants(subgroup_arg(kind, level, generators, cap)));
      },
      py::arg("kind") = "gamma0", py::arg("level"), py::arg("generators") = py::none(),
      py::arg("cap") = kDefaultCap,
      "Index, cusps, elliptic points and genus. Pass generators as rows (a, b, c, d) to use "
      "an explicit subgroup instead of a named family.");

  m.def(
      "applicability",
      [](const std::string& kind, std::int64_t level,
         std::optional<std::vector<std::array<std::int64_t, 4>>> generators, std::uint64_t cap) {
        const SubgroupImage h = subgroup_arg(kind, level, generators, cap);
        const Applicability a = applicability(h, EnumerationLimits{cap});
        py::dict d;
        d["verdict"] = std::string(to_string(a.verdict));
        d["invariants"] = to_dict(a.invariants);
        d["tilde_order"] = a.tilde_image.size();
        d["tilde_invariants"] = to_dict(a.tilde_invariants);
        d["three_cusp_criterion"] = a.sufficient_criterion_holds;
        return d;
      },
      py::arg("kind") = "gamma0", py::arg("level"), py::arg("generators") = py::none(),
      py::arg("cap") = kDefaultCap);

  m.def(
      "lambda_ln",
      [](std::int64_t level, mpfr_prec_t precision, const std::string& rounding) {
        return lambda_ln(level, {precision, rounding_arg(rounding)}).ln_string();
      },
      py::arg("level"), py::arg("precision") = 128, py::arg("rounding") = "up",
      "ln Lambda as a decimal string.");

  using Places = std::vector<std::pair<std::uint64_t, std::int64_t>>;
  auto field_fn = [&m](const char* name, XReal (*fn)(std::int64_t, const NumberFieldSpec&,
                                                      const SSetSpec&, const EvalContext&)) {
    m.def(
        name,
        [fn](std::int64_t level, std::int64_t degree, std::uint64_t abs_disc,
             std::optional<std::int64_t> inf_places, const Places& places, mpfr_prec_t precision,
             const std::string& rounding) {
          const ArithArgs a = arith_args(degree, abs_disc, inf_places, places, precision, rounding);
          return fn(level, a.field, a.s, a.ctx).ln_string();
        },
        py::arg("level"), py::arg("degree") = 1, py::arg("abs_disc") = 1,
        py::arg("inf_places") = py::none(), py::arg("places") = Places{},
        py::arg("precision") = 128, py::arg("rounding") = "up");
  };
  field_fn("ln_dstar", &ln_dstar);
  field_fn("ln_delta0", &ln_delta0);
  field_fn("ln_delta", &ln_delta);

  m.def(
      "run",
      [](const std::string& command, const py::object& spec) {
        const JobSpec job = job_from_json(python_to_json(spec));
        if (command == "invariants") return json_to_python(to_json(cmd_invariants(job)));
        if (command == "bound") return json_to_python(to_json(cmd_bound(job)));
        throw SpecError("command must be 'invariants' or 'bound', got '" + command + "'");
      },
      py::arg("command"), py::arg("spec"),
      "Runs a job spec (same schema as the CLI's --spec) and returns the JSON report as a dict.");

  m.def(
      "table",
      [](const std::string& kind, std::int64_t start, std::int64_t stop, bool primes_only,
         std::uint64_t cap) {
        const auto k = subgroup_kind_from_string(kind);
        if (!k) throw SpecError("unknown subgroup family '" + kind + "'");
        return render_table(*k, start, stop, primes_only, EnumerationLimits{cap});
      },
      py::arg("kind"), py::arg("start") = 2, py::arg("stop") = 30, py::arg("primes_only") = false,
      py::arg("cap") = kDefaultCap);
}
