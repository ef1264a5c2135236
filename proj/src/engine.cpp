#include "primebounds/engine.hpp"

#include <string>

#include "primebounds/errors.hpp"
#include "primebounds/primes.hpp"
#include "primebounds/special.hpp"

namespace primebounds {

const char* threshold_kind_name(ThresholdKind kind) {
  switch (kind) {
    case ThresholdKind::strong: return "strong";
    case ThresholdKind::weak: return "weak";
    case ThresholdKind::buthe: return "buthe";
  }
  return "?";
}

Real ThresholdEquation::lhs(const Real& x) const {
  const Real L = log(x);
  switch (kind) {
    case ThresholdKind::strong: return constant / log(L) * sqrt(x / L);
    case ThresholdKind::weak: return constant * sqrt(x / (L * L * L));
    case ThresholdKind::buthe: return constant * sqrt(x / L);
  }
  return Real(0);
}

Real solve_x_max(const ThresholdEquation& eq) {
  if (eq.constant.sign() <= 0) throw ParameterError("threshold constant must be positive");
  if (eq.T.sign() <= 0) throw ParameterError("RH height T must be positive");
  const std::pair<Real, Real> brackets[] = {{exp(Real(10)), Real("1e60")},
                                            {exp(Real(3)), Real("1e200")}};
  for (const auto& [lo0, hi0] : brackets) {
    if (!(eq.lhs(lo0) < eq.T && eq.lhs(hi0) > eq.T)) continue;
    Real lo = lo0;
    Real hi = hi0;
    const Real tol("1e-13");
    for (int i = 0; i < 400 && hi / lo - 1 > tol; ++i) {
      Real mid = sqrt(lo * hi);
      if (eq.lhs(mid) <= eq.T) {
        lo = std::move(mid);
      } else {
        hi = std::move(mid);
      }
    }
    return sqrt(lo * hi);
  }
  throw ParameterError("threshold equation has no sign change in [e^3, 1e200] for constant " +
                       eq.constant.str(6) + " and T = " + eq.T.str(6));
}

Real admissible_B_exact(const IterationState& s) { return s.E / 2 + s.D * s.E / log(s.A); }

Real admissible_B(const IterationState& s) { return round_up_sig(admissible_B_exact(s), 3); }

PartialSummation partial_summation_slack(std::uint64_t x0, const Real& a,
                                         const PrimeTables& tables) {
  if (x0 < 2) throw ParameterError("partial summation needs x0 >= 2");
  if (a.sign() <= 0) throw ParameterError("partial summation needs a > 0");
  const Real x(static_cast<unsigned long>(x0));
  const Real pi = tables.count(CountKind::pi, x);
  const Real theta = tables.count(CountKind::theta, x);
  PartialSummation out{x0, abs(pi - li(x) - (theta - x) / log(x)), 2 * a * sqrt(x), Real(0)};
  out.slack = out.offset - out.credit;
  return out;
}

PartialSummation partial_summation_slack(std::uint64_t x0, const Real& a) {
  const PrimeTables tables = PrimeTables::build(std::max<std::uint64_t>(x0, 100));
  return partial_summation_slack(x0, a, tables);
}

AdmissibilityVerdict check_admissible(const IterationState& s,
                                      const AdmissibilityOptions& options) {
  AdmissibilityVerdict v;
  const Real& a = s.variant.a;
  for (const auto& check : profile_checks(s)) {
    if (!check.ok) {
      v.failures.push_back("precondition " + check.name + ": " + check.value.str(8) +
                           " vs limit " + check.limit.str(8));
    }
  }
  if (!v.failures.empty()) {
    v.pass = false;
    return v;
  }
  v.profile = derive_profile(s, options.rounding);
  v.e_at_A = e_total(s.A, s, *v.profile, true);
  v.c_limit = -v.e_at_A / a;
  if (!(v.e_at_A < -s.C * a)) {
    v.failures.push_back("E(A) = " + v.e_at_A.str(6) + " is not below -C a = " +
                         (-s.C * a).str(6));
  }
  v.c_min = c_min_for(s.A, a);
  if (!psi_theta_margin(s.A, s.C, a).pass) {
    v.failures.push_back("psi - theta step needs C >= " + v.c_min.str(6) + ", got " +
                         s.C.str(6));
  }
  if (s.B < admissible_B_exact(s)) {
    v.failures.push_back("B = " + s.B.str(6) + " is below E/2 + DE/log A = " +
                         admissible_B_exact(s).str(8));
  }
  if (options.partial_summation && !s.variant.is_weak()) {
    const PartialSummation ps = partial_summation_slack(5000, a);
    if (!(ps.slack < 0)) {
      v.failures.push_back("partial summation slack at 5000 is " + ps.slack.str(6));
    }
  }
  v.pass = v.failures.empty();
  return v;
}

SearchOptions SearchOptions::weak_defaults(const Real& a) {
  SearchOptions o;
  o.d_lo = Real(0);
  o.d_hi = Real(0);
  o.e_lo = 2 / a;
  o.e_hi = 3 / a;
  o.e_step = Real("0.02") / a;
  return o;
}

std::optional<Real> choose_C(const Real& c_limit, const Real& c_min, const Real& step) {
  // Work in whole units of the step so the result is the nearest binary value
  // of the decimal grid point.
  const Real per_unit = floor(1 / step + Real(1) / 2);
  if (per_unit.sign() <= 0 || abs(per_unit * step - 1) > Real("1e-20")) {
    throw ParameterError("C step must be the reciprocal of a positive integer");
  }
  for (const Real& units : {per_unit, per_unit * 10}) {
    Real n = ceil(c_limit * units) - 1;
    Real C = n / units;
    if (C >= c_limit) C = (n - 1) / units;
    if (C >= c_min) return C;
  }
  return std::nullopt;
}

namespace {

struct Evaluation {
  bool feasible = false;
  Real C;
};

Evaluation evaluate(const Real& A, const Real& D, const Real& E, const BoundVariant& variant,
                    const SearchOptions& options) {
  IterationState s{A, Real(0), Real(0), D, E, variant};
  for (const auto& check : profile_checks(s)) {
    if (!check.ok) return {};
  }
  const ErrorProfile p = derive_profile(s, options.rounding);
  const Real c_limit = -e_total(A, s, p, true) / variant.a;
  auto C = choose_C(c_limit, c_min_for(A, variant.a), options.c_step);
  if (!C) return {};
  return {true, *C};
}

long grid_count(const Real& lo, const Real& hi, const Real& step) {
  if (hi < lo) return 0;
  return static_cast<long>(floor((hi - lo) / step + Real("1e-9")).to_double()) + 1;
}

}  // namespace

std::optional<IterationState> optimize_state(const Real& A, const BoundVariant& variant,
                                             const SearchOptions& options) {
  const Real L = log(A);
  const long nd = grid_count(options.d_lo, options.d_hi, options.d_step);
  const long ne = grid_count(options.e_lo, options.e_hi, options.e_step);
  const long stride = std::max<long>(1, options.e_stride);
  std::optional<IterationState> best;
  Real best_B;
  for (long i = 0; i < nd; ++i) {
    const Real D = options.d_lo + options.d_step * i;
    // D(c) only depends on D; skip the whole E scan when it already fails.
    if (d_of(L / 2 + D) < Real("0.98")) continue;
    const Real slope = Real(1) / 2 + D / L;
    long limit = ne - 1;
    if (best) {
      // Larger E only increases B = E (1/2 + D/log A).
      const Real e_cap = best_B / slope;
      if (e_cap < options.e_lo) continue;
      limit = std::min<long>(limit, grid_count(options.e_lo, e_cap, options.e_step) - 1);
    }
    auto E_at = [&](long j) { return options.e_lo + options.e_step * j; };
    long found = -1;
    Real found_C;
    if (limit < 0) continue;
    long prev = -1;
    for (long j = 0;; j = std::min(j + stride, limit)) {
      const Evaluation ev = evaluate(A, D, E_at(j), variant, options);
      if (ev.feasible) {
        found = j;
        found_C = ev.C;
        // The first feasible point may sit between the coarse nodes.
        for (long k = prev + 1; k < j; ++k) {
          Evaluation fine = evaluate(A, D, E_at(k), variant, options);
          if (fine.feasible) {
            found = k;
            found_C = std::move(fine.C);
            break;
          }
        }
        break;
      }
      if (j == limit) break;
      prev = j;
    }
    if (found < 0) continue;
    const Real E = E_at(found);
    IterationState s{A, Real(0), found_C, D, E, variant};
    const Real B = admissible_B_exact(s);
    if (!best || B < best_B) {
      best_B = B;
      s.B = admissible_B(s);
      best = std::move(s);
    }
  }
  return best;
}

namespace {

ThresholdKind equation_for(const BoundVariant& v) {
  return v.is_weak() ? ThresholdKind::weak : ThresholdKind::strong;
}

RoundRecord make_record(IterationState s, const AdmissibilityVerdict& v, const Real& T) {
  RoundRecord r{s, *v.profile, v.e_at_A, v.c_min, admissible_B_exact(s), Real(0)};
  r.x_max = solve_x_max({equation_for(s.variant), s.B, T});
  r.state = std::move(s);
  return r;
}

std::string failures_text(const AdmissibilityVerdict& v) {
  std::string out;
  for (const auto& f : v.failures) out += (out.empty() ? "" : "; ") + f;
  return out;
}

}  // namespace

DerivationReport iterate(const Real& T, const IterationState& seed,
                         const IterateOptions& options) {
  if (options.max_rounds == 0) throw ParameterError("max_rounds must be at least 1");
  DerivationReport report;
  report.equation = equation_for(seed.variant);
  report.T = T;
  const AdmissibilityOptions check_opts{options.search.rounding, true};

  IterationState s = seed;
  s.B = admissible_B(s);
  {
    for (const auto& check : profile_checks(s)) {
      if (!check.ok) {
        throw ParameterError("seed fails precondition " + check.name + " at A = " +
                             s.A.str(6));
      }
    }
    const ErrorProfile p = derive_profile(s, options.search.rounding);
    const Real c_limit = -e_total(s.A, s, p, true) / s.variant.a;
    auto C = choose_C(c_limit, c_min_for(s.A, s.variant.a), options.search.c_step);
    if (!C) {
      throw ParameterError("seed is not admissible: no C between " +
                           c_min_for(s.A, s.variant.a).str(6) + " and " + c_limit.str(6));
    }
    s.C = *C;
  }
  AdmissibilityVerdict v = check_admissible(s, check_opts);
  if (!v.pass) throw ParameterError("seed is not admissible: " + failures_text(v));
  report.rounds.push_back(make_record(s, v, T));

  for (unsigned round = 2; round <= options.max_rounds; ++round) {
    const Real A = round_down_sig(report.rounds.back().x_max, 4);
    auto next = optimize_state(A, seed.variant, options.search);
    if (!next) {
      report.notes.push_back("round " + std::to_string(round) + ": no admissible (D, E) at A = " +
                             A.str(6));
      break;
    }
    v = check_admissible(*next, check_opts);
    if (!v.pass) {
      report.notes.push_back("round " + std::to_string(round) +
                             ": search result failed admissibility: " + failures_text(v));
      break;
    }
    RoundRecord rec = make_record(*next, v, T);
    const Real previous = report.rounds.back().x_max;
    if (!(rec.x_max > previous)) {
      report.notes.push_back("round " + std::to_string(round) + ": x_max did not increase");
      break;
    }
    const Real gain = rec.x_max / previous - 1;
    report.rounds.push_back(std::move(rec));
    if (gain < options.min_improvement) {
      report.notes.push_back("round " + std::to_string(round) + ": x_max improved by " +
                             (gain * 100).str(3) + "%, stopping");
      break;
    }
  }
  const RoundRecord& last = report.rounds.back();
  report.final_K = last.state.B;
  report.final_C = last.state.C;
  report.x_max = last.x_max;
  return report;
}

IterationState strong_seed(const Real& T) {
  const Real A = round_down_sig(solve_x_max({ThresholdKind::buthe, Real("4.92"), T}), 4);
  IterationState s{A, Real(0), Real(0), Real(6), Real(16), BoundVariant::strong()};
  s.B = admissible_B(s);
  return s;
}

std::vector<TableRow> table1(const std::vector<Real>& T0s, const IterateOptions& options) {
  std::vector<TableRow> rows;
  for (const Real& T0 : T0s) {
    DerivationReport r = iterate(T0, strong_seed(T0), options);
    rows.push_back({T0, r.final_K, r.x_max, std::move(r)});
  }
  return rows;
}

DerivationReport derive_weak(const Real& a, const Real& T, const std::optional<Real>& start_A,
                             const IterateOptions& options) {
  Real A;
  if (start_A) {
    A = *start_A;
  } else {
    A = round_down_sig(iterate(T, strong_seed(T), options).x_max, 4);
  }
  IterateOptions o = options;
  o.search = SearchOptions::weak_defaults(a);
  o.search.rounding = options.search.rounding;
  IterationState seed{A, Real(0), Real(0), Real(0), Real("2.4") / a, BoundVariant::weak(a)};
  return iterate(T, seed, o);
}

std::vector<TableRow> table2(const std::vector<Real>& as, const Real& T,
                             const IterateOptions& options) {
  std::vector<TableRow> rows;
  std::optional<Real> A;
  for (const Real& a : as) {
    DerivationReport r = derive_weak(a, T, A, options);
    A = round_down_sig(r.x_max, 4);
    rows.push_back({a, r.final_K, r.x_max, std::move(r)});
  }
  return rows;
}

}  // namespace primebounds
