// Python bindings for the main operations. Exact rationals cross the
// boundary as fractions.Fraction, arbitrary-precision integers as int.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "qveq/commands.hpp"
#include "qveq/equation.hpp"
#include "qveq/fixture.hpp"
#include "qveq/fuzzy.hpp"
#include "qveq/identity.hpp"
#include "qveq/stability.hpp"

namespace py = pybind11;
using namespace qveq;

namespace {

py::object py_int(const Int& v) {
  return py::module_::import("builtins").attr("int")(v.get_str());
}

py::object py_fraction(const Rat& v) {
  return py::module_::import("fractions").attr("Fraction")(v.get_str());
}

Rat rat_from_py(py::handle h) {
  if (py::isinstance<py::int_>(h))
    return Rat(int_from_string(py::str(h).cast<std::string>()));
  if (py::isinstance<py::str>(h))
    return rat_from_string(h.cast<std::string>());
  if (py::hasattr(h, "numerator") && py::hasattr(h, "denominator")) {
    const Int num = int_from_string(py::str(h.attr("numerator")).cast<std::string>());
    const Int den = int_from_string(py::str(h.attr("denominator")).cast<std::string>());
    return make_rat(num, den);
  }
  throw py::type_error("expected int, Fraction or rational string");
}

py::dict identity_to_dict(const FormalIdentity& id) {
  py::dict d;
  for (const auto& [j, c] : id.coeffs) d[py::int_(j)] = py_int(c);
  return d;
}

py::dict raw_to_dict(const RawIdentity& id) {
  py::dict d;
  for (const auto& [j, c] : id.coeffs) d[py::int_(j)] = py_int(c);
  return d;
}

FormalIdentity identity_from_dict(const py::dict& d) {
  FormalIdentity id;
  for (const auto& [k, v] : d) {
    const long j = k.cast<long>();
    if (j < 1) throw py::value_error("formal identity keys must be >= 1");
    id.coeffs[j] = int_from_string(py::str(v).cast<std::string>());
  }
  return id;
}

py::object report_to_py(const ReportDocument& rep) {
  return py::module_::import("json").attr("loads")(rep.serialize());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact workbench for the degree-25 difference equation";

  // numeric primitives
  m.def("binomial", [](unsigned n, long k) { return py_int(binomial(n, k)); },
        py::arg("n"), py::arg("k"));
  m.def("factorial", [](unsigned n) { return py_int(factorial(n)); }, py::arg("n"));
  m.def("padic_abs",
        [](py::handle x, long p) { return py_fraction(padic_abs(rat_from_py(x), Int(p))); },
        py::arg("x"), py::arg("p"));
  m.def("padic_valuation",
        [](py::handle x, long p) { return padic_valuation(rat_from_py(x), Int(p)); },
        py::arg("x"), py::arg("p"));

  // the difference operator
  m.def(
      "eval_h",
      [](int degree, py::function f, py::handle u, py::handle v) {
        const auto fam = EquationFamily::of_degree(degree);
        auto oracle = [&f](const Rat& x) { return rat_from_py(f(py_fraction(x))); };
        return py_fraction(eval_h(fam, oracle, rat_from_py(u), rat_from_py(v)));
      },
      py::arg("degree"), py::arg("f"), py::arg("u"), py::arg("v"),
      "H f(u,v) with f a callable on Fractions, evaluated exactly");
  m.def(
      "eval_h_poly",
      [](int degree, const std::string& spec, py::handle u, py::handle v) {
        const auto fam = EquationFamily::of_degree(degree);
        const auto poly = RationalPoly::parse(spec, degree);
        return py_fraction(eval_h(fam, poly, rat_from_py(u), rat_from_py(v)));
      },
      py::arg("degree"), py::arg("spec"), py::arg("u"), py::arg("v"));
  m.def("coefficient",
        [](int degree, int k) { return py_int(EquationFamily::of_degree(degree).coefficient(k)); },
        py::arg("degree"), py::arg("k"));

  // identity algebra
  m.def("expand_instance_raw",
        [](int degree, long a, long b) {
          return raw_to_dict(expand_instance_raw(EquationFamily::of_degree(degree), {a, b}));
        },
        py::arg("degree"), py::arg("a"), py::arg("b"));
  m.def("expand_instance",
        [](int degree, long a, long b) {
          return identity_to_dict(expand_instance(EquationFamily::of_degree(degree), {a, b}));
        },
        py::arg("degree"), py::arg("a"), py::arg("b"));
  m.def("combine",
        [](const py::dict& x, const py::dict& y, py::handle mult) {
          const Int mi = int_from_string(py::str(mult).cast<std::string>());
          return identity_to_dict(combine(identity_from_dict(x), identity_from_dict(y), mi));
        },
        py::arg("x"), py::arg("y"), py::arg("m"), "x - m*y, renormalized");
  m.def(
      "auto_eliminate",
      [](int degree, std::optional<std::vector<std::pair<long, long>>> instances) {
        const auto fam = EquationFamily::of_degree(degree);
        std::vector<InstanceSpec> specs;
        if (instances) {
          for (const auto& [a, b] : *instances) specs.push_back({a, b});
        } else {
          specs = default_instances(fam);
        }
        const auto cert = auto_eliminate(fam, specs);
        py::dict out;
        out["identity"] = identity_to_dict(cert.result);
        out["ratio"] = py_fraction(cert.ratio());
        out["steps"] = py::int_(cert.steps.size());
        return out;
      },
      py::arg("degree") = 25, py::arg("instances") = py::none(),
      "exact elimination to the doubling identity; returns identity and ratio");
  m.def("scripted_cascade",
        [](bool alt_seed) {
          const auto fam = EquationFamily::of_degree(25);
          const auto script = alt_seed ? corrected_seed_script() : printed_script();
          py::list out;
          for (const auto& id : scripted_cascade(fam, script))
            out.append(identity_to_dict(id));
          return out;
        },
        py::arg("alt_seed") = false);
  m.def("multiplier_pattern", []() {
    py::list out;
    for (const auto& c : multiplier_pattern_check(EquationFamily::of_degree(25)))
      out.append(py::make_tuple(c.j, py_int(c.pattern_value), py_int(c.scripted_value),
                                c.match));
    return out;
  });

  // stability constants and iteration
  m.def("sigma_star_power",
        [](py::handle omega, long l, py::handle c) {
          const auto control =
              ControlFunction<Rat>::power_sum(rat_from_py(omega), Rat(l));
          return py_fraction(sigma_star(control, rat_from_py(c)));
        },
        py::arg("omega"), py::arg("l"), py::arg("c"));
  m.def("kappa_for_power",
        [](long l, int q) { return py_fraction(kappa_for_power(l, q)); }, py::arg("l"),
        py::arg("q"));
  m.def(
      "omega0_constants",
      [](const std::string& which) {
        ConstantsBundle b;
        if (which == "power")
          b = omega0_power();
        else if (which == "product")
          b = omega0_product();
        else if (which == "mixed")
          b = omega0_mixed();
        else
          throw py::value_error("which must be power|product|mixed");
        py::dict out;
        out["printed_constant"] = py_int(b.printed.constant);
        out["recomputed_constant"] = py_int(b.recomputed.constant);
        out["discrepancy"] = b.discrepancy;
        py::list diffs;
        for (const auto& d : b.diffs)
          diffs.append(py::make_tuple(d.term, py_int(d.printed), py_int(d.recomputed)));
        out["diffs"] = diffs;
        return out;
      },
      py::arg("which"));
  m.def(
      "fixed_point_iterate",
      [](const std::string& spec, int q, int iterations, py::handle c) {
        const auto poly = RationalPoly::parse(spec, 25);
        py::list out;
        for (const auto& v : fixed_point_iterate<Rat>(poly, q, iterations, rat_from_py(c)))
          out.append(py_fraction(v));
        return out;
      },
      py::arg("spec"), py::arg("q"), py::arg("iterations"), py::arg("c"),
      "V_k(c) = 2^(-25kq) f(2^(kq) c) in exact rationals");

  // fuzzy layer
  m.def("fuzzy_norm",
        [](long p, py::handle x, py::handle t) {
          const auto field = PAdicContext::of(Int(p));
          return py_fraction(standard_fuzzy_norm(field)(rat_from_py(x), rat_from_py(t)));
        },
        py::arg("p"), py::arg("x"), py::arg("t"), "t / (t + |x|_p)");
  m.def("gamma_time_scales", [](long p) {
    py::list out;
    for (const auto& s : gamma_time_scales(PAdicContext::of(Int(p))))
      out.append(py_fraction(s));
    return out;
  }, py::arg("p"));

  // full command dispatch; config keys mirror the CLI flags
  m.def(
      "run",
      [](const py::dict& config) {
        RunConfig cfg;
        auto set_str = [&](const char* k, std::string& into) {
          if (config.contains(k)) into = py::str(config[k]).cast<std::string>();
        };
        auto set_int = [&](const char* k, auto& into) {
          if (config.contains(k))
            into = static_cast<std::decay_t<decltype(into)>>(config[k].cast<long long>());
        };
        auto set_bool = [&](const char* k, bool& into) {
          if (config.contains(k)) into = config[k].cast<bool>();
        };
        set_str("command", cfg.command);
        set_int("degree", cfg.degree);
        set_str("mode", cfg.mode);
        set_int("precision", cfg.precision);
        set_int("seed", cfg.seed);
        set_int("samples", cfg.samples);
        set_int("range", cfg.range);
        set_str("function", cfg.function);
        set_str("replay_mode", cfg.replay_mode);
        set_bool("diff", cfg.diff);
        set_bool("alt_seed", cfg.alt_seed);
        set_str("fixture", cfg.fixture_path);
        set_str("control", cfg.control);
        set_int("q", cfg.q);
        set_int("iterations", cfg.iterations);
        set_str("kappa", cfg.kappa);
        set_str("eps", cfg.eps);
        set_bool("constants_only", cfg.constants_only);
        set_str("which", cfg.which);
        set_str("a", cfg.exp_a);
        set_str("b", cfg.exp_b);
        set_str("l", cfg.exp_l);
        set_str("p", cfg.prime);
        set_int("matrix_n", cfg.matrix_n);
        return report_to_py(run_command(cfg));
      },
      py::arg("config"), "runs a full command and returns the report as a dict");

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

#ifdef QVEQ_VERSION_INFO
  m.attr("__version__") = QVEQ_VERSION_INFO;
#else
  m.attr("__version__") = "dev";
#endif
}
