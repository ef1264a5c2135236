// Python bindings. Multiprecision values cross the boundary as decimal strings
// so nothing is lost to doubles; inputs may be str, int or float.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "primebounds/cli.hpp"
#include "primebounds/engine.hpp"
#include "primebounds/error_terms.hpp"
#include "primebounds/errors.hpp"
#include "primebounds/primes.hpp"
#include "primebounds/published.hpp"
#include "primebounds/ramanujan.hpp"
#include "primebounds/special.hpp"
#include "primebounds/zeros.hpp"

namespace py = pybind11;
using namespace primebounds;

namespace {

constexpr int kDigits = 30;

Real to_real(const py::handle& v) {
  if (py::isinstance<py::str>(v)) return Real(std::string_view(v.cast<std::string>()));
  if (py::isinstance<py::bool_>(v)) throw py::type_error("expected a number, got bool");
  if (py::isinstance<py::int_>(v)) return Real(v.cast<long long>());
  if (py::isinstance<py::float_>(v)) return Real(v.cast<double>());
  throw py::type_error("expected str, int or float");
}

std::string s(const Real& r) { return r.str(kDigits); }

ThresholdKind threshold_kind(const std::string& name) {
  if (name == "strong") return ThresholdKind::strong;
  if (name == "weak") return ThresholdKind::weak;
  if (name == "buthe") return ThresholdKind::buthe;
  throw ParameterError("unknown threshold kind '" + name + "'");
}

CountKind count_kind(const std::string& name) {
  if (name == "pi") return CountKind::pi;
  if (name == "theta") return CountKind::theta;
  if (name == "psi") return CountKind::psi;
  if (name == "Pi") return CountKind::Pi;
  throw ParameterError("unknown counting function '" + name + "'");
}

BoundVariant variant_for(const py::object& a) {
  return a.is_none() ? BoundVariant::strong() : BoundVariant::weak(to_real(a));
}

IterationState make_state(const py::object& A, const py::object& B, const py::object& C, const py::object& D,
                          const py::object& E, const py::object& a) {
  return {to_real(A), to_real(B), to_real(C), to_real(D), to_real(E), variant_for(a)};
}

py::dict profile_dict(const ErrorProfile& p) {
  py::dict d;
  d["coef1"] = s(p.coef1);
  d["coef2"] = s(p.coef2);
  d["alpha3"] = s(p.alpha3);
  d["coef4"] = s(p.coef4);
  d["coef5a"] = s(p.coef5a);
  d["coef5b"] = s(p.coef5b);
  py::dict exact;
  exact["coef1"] = s(p.exact.coef1);
  exact["coef2"] = s(p.exact.coef2);
  exact["alpha3"] = s(p.exact.alpha3);
  exact["coef4"] = s(p.exact.coef4);
  d["exact"] = exact;
  return d;
}

py::dict report_dict(const DerivationReport& r) {
  py::list rounds;
  for (const auto& rr : r.rounds) {
    py::dict d;
    d["A"] = s(rr.state.A);
    d["B"] = s(rr.state.B);
    d["C"] = s(rr.state.C);
    d["D"] = s(rr.state.D);
    d["E"] = s(rr.state.E);
    d["e_at_A"] = s(rr.e_at_A);
    d["x_max"] = s(rr.x_max);
    rounds.append(d);
  }
  py::dict out;
  out["T"] = s(r.T);
  out["K"] = s(r.final_K);
  out["C"] = s(r.final_C);
  out["x_max"] = s(r.x_max);
  out["rounds"] = rounds;
  out["notes"] = r.notes;
  return out;
}

py::list rows_dict(const std::vector<TableRow>& rows) {
  py::list out;
  for (const auto& row : rows) {
    py::dict d;
    d["key"] = s(row.key);
    d["K"] = s(row.K);
    d["x_max"] = s(row.x_max);
    d["rounds"] = row.report.rounds.size();
    out.append(d);
  }
  return out;
}

std::vector<Real> reals(const py::iterable& it) {
  std::vector<Real> out;
  for (const auto& v : it) out.push_back(to_real(v));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Explicit prime-counting bounds: thresholds, error terms, sieve scans, zero checks";

  static py::exception<Error> base(m, "Error", PyExc_RuntimeError);
  static py::exception<ParameterError> param(m, "ParameterError", PyExc_ValueError);
  static py::exception<DomainError> domain(m, "DomainError", PyExc_ValueError);
  static py::exception<CoverageError> coverage(m, "CoverageError", base.ptr());
  static py::exception<OverflowError> overflow(m, "OverflowError", base.ptr());
  static py::exception<IoError> io(m, "IoError", PyExc_OSError);
  static py::exception<ParseError> parse(m, "ParseError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParameterError& e) {
      py::set_error(param, e.what());
    } catch (const DomainError& e) {
      py::set_error(domain, e.what());
    } catch (const CoverageError& e) {
      py::set_error(coverage, e.what());
    } catch (const OverflowError& e) {
      py::set_error(overflow, e.what());
    } catch (const IoError& e) {
      py::set_error(io, e.what());
    } catch (const ParseError& e) {
      py::set_error(parse, e.what());
    } catch (const Error& e) {
      py::set_error(base, e.what());
    }
  });

  m.def("precision_bits", [] { return precision_bits(); });
  m.def("set_precision_bits", [](unsigned bits) { set_precision_bits(bits); }, py::arg("bits"));

  m.def("li", [](const py::object& x) { return s(li(to_real(x))); }, py::arg("x"));
  m.def("bessel_i1", [](const py::object& c) { return s(bessel_i1(to_real(c))); }, py::arg("c"));

  m.def(
      "solve_x_max",
      [](const std::string& kind, const py::object& constant, const py::object& T) {
        return s(solve_x_max({threshold_kind(kind), to_real(constant), to_real(T)}));
      },
      py::arg("kind"), py::arg("constant"), py::arg("T") = "3e12");

  m.def(
      "error_profile",
      [](const py::object& A, const py::object& B, const py::object& C, const py::object& D,
         const py::object& E, const py::object& a, bool coarse) {
        const IterationState st = make_state(A, B, C, D, E, a);
        const ErrorProfile p = derive_profile(st, coarse ? RoundingPolicy::coarse() : RoundingPolicy{});
        py::dict d = profile_dict(p);
        d["e_at_A"] = s(e_total(st.A, st, p, true));
        return d;
      },
      py::arg("A"), py::arg("B"), py::arg("C"), py::arg("D"), py::arg("E"), py::arg("a") = py::none(),
      py::arg("coarse") = false);

  m.def(
      "check_admissible",
      [](const py::object& A, const py::object& B, const py::object& C, const py::object& D,
         const py::object& E, const py::object& a) {
        const AdmissibilityVerdict v = check_admissible(make_state(A, B, C, D, E, a));
        py::dict d;
        d["pass"] = v.pass;
        d["failures"] = v.failures;
        d["e_at_A"] = s(v.e_at_A);
        d["c_limit"] = s(v.c_limit);
        d["c_min"] = s(v.c_min);
        return d;
      },
      py::arg("A"), py::arg("B"), py::arg("C"), py::arg("D"), py::arg("E"), py::arg("a") = py::none());

  m.def(
      "derive",
      [](const py::object& T, unsigned max_rounds) {
        IterateOptions opts;
        opts.max_rounds = max_rounds;
        const Real t = to_real(T);
        return report_dict(iterate(t, strong_seed(t), opts));
      },
      py::arg("T") = "3e12", py::arg("max_rounds") = 4);

  m.def(
      "derive_weak",
      [](const py::object& a, const py::object& T) { return report_dict(derive_weak(to_real(a), to_real(T))); },
      py::arg("a"), py::arg("T") = "3e12");

  m.def("table1", [](const py::iterable& T0s) { return rows_dict(table1(reals(T0s))); }, py::arg("T0s"));
  m.def(
      "table2", [](const py::iterable& as, const py::object& T) { return rows_dict(table2(reals(as), to_real(T))); },
      py::arg("as_"), py::arg("T") = "3e12");

  m.def(
      "partial_summation",
      [](std::uint64_t x0, const py::object& a) {
        const PartialSummation ps = partial_summation_slack(x0, to_real(a));
        py::dict d;
        d["x0"] = ps.x0;
        d["offset"] = s(ps.offset);
        d["credit"] = s(ps.credit);
        d["slack"] = s(ps.slack);
        return d;
      },
      py::arg("x0"), py::arg("a"));

  m.def(
      "count",
      [](const std::string& kind, const py::object& x, std::uint64_t limit) {
        return s(PrimeTables::build(limit).count(count_kind(kind), to_real(x)));
      },
      py::arg("kind"), py::arg("x"), py::arg("limit"));

  m.def("prime_count", [](std::uint64_t n) { return prime_count_upto(n); }, py::arg("n"));

  m.def(
      "scan",
      [](const std::string& kind, const py::object& a, const py::object& C, std::uint64_t limit) {
        const PrimeTables tables = PrimeTables::build(limit);
        const InequalitySpec spec{parse_inequality_kind(kind), to_real(a), to_real(C)};
        const ScanReport r = scan_inequality(spec, Real(2), Real(static_cast<unsigned long long>(limit)), tables);
        py::dict d;
        d["kind"] = kind;
        d["points"] = r.points;
        d["violations"] = r.violations;
        d["holds_everywhere"] = r.holds_everywhere;
        if (r.last_violation) {
          d["last_violation"] = s(r.last_violation->x);
          d["last_violation_side"] = r.last_violation->side < 0 ? "left" : "at";
        } else {
          d["last_violation"] = py::none();
          d["last_violation_side"] = py::none();
        }
        return d;
      },
      py::arg("kind"), py::arg("a"), py::arg("C") = 0, py::arg("limit") = 1000000);

  m.def(
      "zero_sum",
      [](const std::string& path, const py::object& t2) {
        const ZeroSumVerdict v = check_zero_sum(load_zeros(path), to_real(t2));
        py::dict d;
        d["pass"] = v.pass;
        d["empirical"] = s(v.empirical);
        d["bound"] = s(v.bound);
        d["margin"] = s(v.margin);
        d["zeros_used"] = v.zeros_used;
        return d;
      },
      py::arg("path"), py::arg("t2"));

  m.def(
      "ramanujan_steps",
      [](std::size_t rung, std::uint64_t steps) {
        const auto rungs = regime_schedule();
        if (rung >= rungs.size()) throw ParameterError("rung index out of range");
        const StepReport r = step_verify(rungs[rung], {steps, 0});
        py::dict d;
        d["pass"] = r.pass();
        d["steps_checked"] = r.steps_checked;
        d["z_start"] = s(r.z_start);
        d["min_margin"] = s(r.min_margin);
        d["min_relative_margin"] = s(r.min_relative_margin);
        d["precision_bits"] = r.precision_bits;
        return d;
      },
      py::arg("rung"), py::arg("steps"));

  m.def(
      "counterexample",
      [](std::uint64_t x) {
        const CounterexampleVerdict v = counterexample_check(x);
        py::dict d;
        d["x"] = v.x;
        d["outcome"] = outcome_name(v.outcome);
        d["pi_x"] = v.pi_x;
        d["pi_x_over_e"] = v.pi_x_over_e;
        d["lhs"] = s(v.lhs);
        d["rhs"] = s(v.rhs);
        return d;
      },
      py::arg("x"));

  m.def("published_values_json", [] { return published_values_text(); });

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "primebounds");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
