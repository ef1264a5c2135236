// One line per acceptance criterion. Exit status is nonzero when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracles.hpp"
#include "primebounds/cli.hpp"
#include "primebounds/engine.hpp"
#include "primebounds/errors.hpp"
#include "primebounds/error_terms.hpp"
#include "primebounds/kernel.hpp"
#include "primebounds/primes.hpp"
#include "primebounds/published.hpp"
#include "primebounds/ramanujan.hpp"
#include "primebounds/special.hpp"
#include "primebounds/zeros.hpp"

using namespace primebounds;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kDataDir = PB_TEST_DATA_DIR;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back(std::string(ok ? "" : "FAILED ") + what);
  }
  void note(const std::string& what) { notes.push_back(what); }
};

Real R(const char* s) { return Real(std::string_view(s)); }
Real R(const std::string& s) { return Real(std::string_view(s)); }
Real R(const json& j) { return R(j.get<std::string>()); }

std::string fmt(const Real& v, int digits = 6) { return v.str(digits); }

// Same value after rounding both to `sig` significant figures.
bool same_sig(const Real& v, const Real& ref, int sig) {
  char a[64], b[64];
  std::snprintf(a, sizeof a, "%.*Le", sig - 1, v.to_long_double());
  std::snprintf(b, sizeof b, "%.*Le", sig - 1, ref.to_long_double());
  return std::string(a) == b;
}

IterationState state(const json& j) {
  return {R(j.at("A")), R(j.at("B")), R(j.at("C")), R(j.at("D")), R(j.at("E")), BoundVariant::strong()};
}
IterationState first_state() { return state(published_values().at("iteration").at("first")); }
IterationState second_state() {
  return {Real("9.68e25"), Real("9.34"), Real("2.43"), Real(5), Real(16), BoundVariant::strong()};
}

std::vector<KernelParams> kernel_param_sets() {
  const IterationState s1 = first_state();
  const IterationState s2 = second_state();
  return {{c_of(s1.A, s1), eps_of(s1.A, s1)}, {c_of(s2.A, s2), eps_of(s2.A, s2)}, {Real(35), Real("1e-8")}};
}

int run_cli_capture(std::vector<std::string> args, std::string& out, std::string& err) {
  args.insert(args.begin(), "primebounds");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream o, e;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), o, e);
  out = o.str();
  err = e.str();
  return code;
}

// --- criteria -------------------------------------------------------------

Outcome threshold_reproduction() {
  Outcome o;
  const auto& th = published_values().at("threshold");
  const Real T = R(th.at("T"));
  const Real xb = solve_x_max({ThresholdKind::buthe, R(th.at("buthe").at("K")), T});
  const Real xs = solve_x_max({ThresholdKind::strong, R(th.at("strong").at("K")), T});
  o.require(same_sig(xb, R(th.at("buthe").at("x_max")), 3), "buthe K=4.92 -> x_max " + fmt(xb));
  o.require(same_sig(xs, R(th.at("strong").at("x_max")), 3), "strong K=9.06 -> x_max " + fmt(xs));
  return o;
}

Outcome aggregate_error() {
  Outcome o;
  const auto& it = published_values().at("iteration");
  const IterationState s1 = first_state();
  const Real e1 = e_total(s1.A, s1, derive_profile(s1, RoundingPolicy::coarse()), true);
  const IterationState s2 = second_state();
  const Real e2 = e_total(s2.A, s2, derive_profile(s2), true);
  const Real tol("0.0005");
  o.require(abs(e1 - R(it.at("first").at("e_at_A"))) <= tol, "first E(A) = " + fmt(e1));
  o.require(abs(e2 - R(it.at("second").at("e_at_A"))) <= tol, "second E(A) = " + fmt(e2));
  return o;
}

Outcome coefficients() {
  Outcome o;
  const auto& printed = published_values().at("iteration").at("coefficients");
  const ErrorProfile p = derive_profile(first_state(), RoundingPolicy::coarse());
  const Real* rounded[] = {&p.coef1, &p.coef2, &p.coef4};
  const Real* exact[] = {&p.exact.coef1, &p.exact.coef2, &p.exact.coef4};
  const char* lo[] = {"0.0000316", "0.0292", "0.141"};
  for (int i = 0; i < 3; ++i) {
    const Real want = R(printed[static_cast<std::size_t>(i)]);
    const bool ok = *rounded[i] == want && *exact[i] > R(lo[i]) && *exact[i] <= want;
    o.require(ok, fmt(*exact[i], 8) + " -> " + fmt(*rounded[i], 4));
  }
  return o;
}

Outcome full_iteration() {
  Outcome o;
  const json& pub = published_values();
  std::string out, err;
  const int code = run_cli_capture({"--format", "json", "derive", "--T", "3e12"}, out, err);
  o.require(code == kExitPass, "derive exit code " + std::to_string(code));
  if (code == kExitPass) {
    const json doc = json::parse(out);
    const json& s = doc.at("summary");
    const int rounds = s.at("rounds").get<int>();
    const double K = s.at("K").get<double>();
    const double xm = s.at("x_max").get<double>();
    o.require(rounds <= 4, "derive rounds " + std::to_string(rounds));
    o.require(K <= 9.06, "derive K " + std::to_string(K));
    char buf[64];
    std::snprintf(buf, sizeof buf, "derive x_max %.5e", xm);
    o.require(xm >= 1.095e26, buf);
  }

  std::vector<Real> T0s;
  for (const auto& row : pub.at("table1")) T0s.push_back(R(row.at("T0")));
  const auto t1 = table1(T0s);
  for (std::size_t i = 0; i < t1.size(); ++i) {
    const auto& row = pub.at("table1")[i];
    const bool ok = t1[i].K <= R(row.at("K")) && t1[i].x_max >= Real("0.995") * R(row.at("x_max"));
    o.require(ok, "table 1 T0=" + row.at("T0").get<std::string>() + ": K " + fmt(t1[i].K, 3) + " vs " +
                      row.at("K").get<std::string>() + ", x_max " + fmt(t1[i].x_max, 5) + " vs " +
                      row.at("x_max").get<std::string>());
  }

  std::vector<Real> as;
  for (const auto& row : pub.at("table2")) as.push_back(R(row.at("a")));
  const auto t2 = table2(as);
  for (std::size_t i = 0; i < t2.size(); ++i) {
    const auto& row = pub.at("table2")[i];
    const bool ok = t2[i].K <= R(row.at("K")) && t2[i].x_max >= Real("0.995") * R(row.at("x_max"));
    o.require(ok, "table 2 a=" + row.at("a").get<std::string>() + ": K " + fmt(t2[i].K, 3) + " vs " +
                      row.at("K").get<std::string>() + ", x_max " + fmt(t2[i].x_max, 5) + " vs " +
                      row.at("x_max").get<std::string>());
  }
  return o;
}

Outcome sieve_verification() {
  Outcome o;
  std::ifstream in(kDataDir + "/last_violations.json");
  if (!in) throw IoError("missing last_violations.json fixture");
  const json frozen = json::parse(in);
  const PrimeTables tables = PrimeTables::build(1000000);
  const Real strong_a = 1 / (8 * const_pi());

  struct Case {
    const char* group;
    InequalityKind kind;
    Real a;
    Real C;
    long threshold;  // 0: not gated, reported only
  };
  const Case cases[] = {
      {"strong", InequalityKind::pi_li, strong_a, Real(0), 2657},
      {"strong", InequalityKind::psi_sq, strong_a, Real(0), 59},
      {"strong", InequalityKind::theta_sq, strong_a, Real(0), 599},
      {"strong", InequalityKind::psi_shift, strong_a, Real(3), 5000},
      {"strong", InequalityKind::theta_shift, strong_a, Real(2), 5000},
      {"strong", InequalityKind::Pi_li, strong_a, Real(0), 0},
      {"weak", InequalityKind::psi_sq, Real(1), Real(0), 3},
      {"weak", InequalityKind::theta_sq, Real(1), Real(0), 3},
      {"weak", InequalityKind::Pi_li, Real(1), Real(0), 2},
      {"weak", InequalityKind::pi_li, Real(1), Real(0), 2},
  };
  std::vector<InequalitySpec> specs;
  for (const auto& c : cases) specs.push_back({c.kind, c.a, c.C});
  const auto reports = scan_inequalities(specs, Real(2), Real(1000000), tables);

  for (std::size_t i = 0; i < std::size(cases); ++i) {
    const Case& c = cases[i];
    const ScanReport& r = reports[i];
    const std::string name = std::string(c.group) + " " + kind_name(c.kind);
    std::string last = "none";
    if (r.last_violation) {
      last = r.last_violation->x.str(12) + (r.last_violation->side < 0 ? "-" : "");
    }
    if (c.threshold > 0) {
      o.require(r.holds_from(Real(c.threshold)),
                name + " holds from " + std::to_string(c.threshold) + " (last violation " + last + ")");
    } else {
      const long printed = published_values().at("prime_thresholds").at(c.group).at(kind_name(c.kind)).get<long>();
      o.note(name + " not gated: printed threshold " + std::to_string(printed) + ", holds from " +
             std::to_string(printed) + " is " + (r.holds_from(Real(printed)) ? "true" : "false") +
             " (last violation " + last + ")");
    }
    const json& want = frozen.at(c.group).at(kind_name(c.kind));
    bool same;
    if (want.is_null()) {
      same = !r.last_violation.has_value();
    } else {
      same = r.last_violation && r.last_violation->x == Real(want.at("x").get<long>()) &&
             (r.last_violation->side < 0) == (want.at("side") == "left");
    }
    o.require(same, name + " last violation matches the frozen fixture");
  }
  return o;
}

Outcome partial_summation() {
  Outcome o;
  const auto& printed = published_values().at("iteration").at("partial_summation");
  const PrimeTables tables = PrimeTables::build(5000);
  const PartialSummation ps = partial_summation_slack(5000, 1 / (8 * const_pi()), tables);
  const Real tol("0.01");
  o.require(abs(ps.offset - R(printed.at("offset"))) <= tol, "offset " + fmt(ps.offset));
  o.require(abs(ps.credit - R(printed.at("credit"))) <= tol, "credit " + fmt(ps.credit));
  o.require(ps.slack.sign() < 0, "slack " + fmt(ps.slack));
  return o;
}

Outcome zero_data_check() {
  Outcome o;
  const ZeroList zeros = load_zeros(kDataDir + "/zeta_zeros_4600.txt");
  o.require(zeros.size() >= 4520, "fixture holds " + std::to_string(zeros.size()) + " ordinates");
  const ZeroSumVerdict v = check_zero_sum(zeros, Real(5000));
  o.require(v.pass && v.margin.sign() > 0, "sum " + fmt(v.empirical) + " <= " + fmt(v.bound) + ", margin " +
                                               fmt(v.margin) + " over " + std::to_string(v.zeros_used) + " zeros");
  int k = 0;
  for (const auto& p : kernel_param_sets()) {
    const KernelWeightVerdict w = check_kernel_weights(zeros.first(100), p);
    o.require(w.pass && w.checked == 100 && w.max_weight <= 1,
              "weights set " + std::to_string(++k) + ": " + std::to_string(w.checked) + " checked, max " +
                  fmt(w.max_weight, 10));
  }
  return o;
}

Outcome ramanujan_stepping() {
  Outcome o;
  const auto rungs = regime_schedule();
  const Regime* picks[] = {&rungs.at(0), &rungs.at(1)};
  o.require(rungs[0].z_lo == 43 && rungs[0].delta == Real("5e-8") &&
                abs(rungs[0].a - 1 / (8 * const_pi())) < Real("1e-40"),
            "rung 0 is z = 43, delta 5e-8, a = 1/8pi");
  o.require(rungs[1].z_lo == 59 && rungs[1].delta == Real("2.5e-8") && rungs[1].a == 1,
            "rung 1 is z = 59, delta 2.5e-8, a = 1");
  for (const Regime* r : picks) {
    const StabilityVerdict v = precision_stability(*r, 20000);
    const bool ok = v.pass && v.base.steps_checked == 20000 && v.base.pass() && v.doubled.pass() &&
                    v.base.min_margin.sign() > 0 && v.relative_change < Real("1e-6");
    o.require(ok, "z from " + fmt(r->z_lo, 3) + ": " + std::to_string(v.base.steps_checked) +
                      " steps, min relative margin " + fmt(v.base.min_relative_margin, 4) + ", change under " +
                      std::to_string(v.doubled.precision_bits) + " bits " + fmt(v.relative_change, 3));
  }
  return o;
}

Outcome property_suites() {
  Outcome o;

  bool sandwich = true;
  for (const char* c0s : {"0.5", "3", "35.17"}) {
    const Real c0 = R(c0s);
    const Real d0 = d_of(c0);
    for (int k = 0; k <= 60; ++k) {
      const Real c = c0 * pow(Real(100), Real(k) / 60);
      const Real mid = bessel_i1(c) / (2 * sinh(c));
      const Real s = sqrt(2 * const_pi() * c);
      sandwich = sandwich && d0 / s <= mid * (1 + Real("1e-50")) && mid <= 1 / s;
    }
  }
  o.require(sandwich, "I1/sinh sandwich on 3 c-grids of 61 points");

  bool weights = true;
  for (const auto& p : kernel_param_sets()) {
    const Real strip = p.c / p.eps;
    for (int k = 1; k <= 1000; ++k) {
      const Real w = a_weight(strip * Real(k) / 1000, p);
      weights = weights && w.sign() > 0 && w <= 1;
    }
  }
  o.require(weights, "a_weight in (0, 1] on 3 sweeps of 1000 points");

  const IterationState s1 = first_state();
  const ErrorProfile p1 = derive_profile(s1, RoundingPolicy::coarse());
  const IterationState s2 = second_state();
  const ErrorProfile p2 = derive_profile(s2);
  const DecreasingVerdict dec[] = {
      verify_decreasing([&](const Real& x) { return e_total(x, s1, p1, true); }, s1.A, s1.A * 10000, 256),
      verify_decreasing([&](const Real& x) { return e_total(x, s2, p2, true); }, s2.A, s2.A * 10000, 256),
      verify_decreasing([&](const Real& x) { return (x + 1) / sinh(c_of(x, s1)) / sqrt(x); }, s1.A,
                        s1.A * 1000, 256),
      verify_decreasing([&](const Real& x) { return exp(Real("0.71") * sqrt(c_of(x, s1) * eps_of(x, s1))); },
                        s1.A, s1.A * 1000, 256),
      verify_decreasing([&](const Real& x) { return log(3 * c_of(x, s1)) / log(log(x)); }, s1.A,
                        s1.A * 1000, 256),
  };
  const char* dec_names[] = {"E(x) first", "E(x) second", "(x+1)/(sinh(c) sqrt x)", "exp(0.71 sqrt(c eps))",
                             "log(3c)/loglog x"};
  for (std::size_t i = 0; i < std::size(dec); ++i) {
    o.require(dec[i].pass, std::string(dec_names[i]) + " decreasing" + (dec[i].pass ? "" : ": " + dec[i].reason));
  }

  bool li_ok = true;
  for (const char* x : {"0.5", "1.5", "2", "10", "1000", "1e6", "1e10"}) {
    const long double q = oracle::li_quadrature(std::stold(x));
    li_ok = li_ok && oracle::rel_diff(li(R(x)).to_long_double(), q) <= 1e-12L;
  }
  o.require(li_ok, "li against quadrature to 12 digits");
  bool i1_ok = true;
  for (const char* c : {"0.001", "0.5", "1", "3", "10", "35.17", "60", "100", "500"}) {
    const long double cv = std::stold(c);
    const long double v = bessel_i1(R(c)).to_long_double();
    i1_ok = i1_ok && oracle::rel_diff(v, oracle::bessel_i1_series(cv)) <= 1e-12L &&
            oracle::rel_diff(v, oracle::bessel_i1_boost(cv)) <= 1e-12L;
  }
  o.require(i1_ok, "I1 against series and Boost to 12 digits");

  std::random_device rd;
  const fs::path dir = fs::temp_directory_path() / ("pb-accept-" + std::to_string(rd()));
  fs::create_directories(dir);
  bool identical = false;
  try {
    const SieveOptions opts{1 << 14, dir};
    const PrimeTables fresh = PrimeTables::build(200000, opts);
    const PrimeTables again = PrimeTables::build(200000, opts);
    identical = again.restored_segments() == again.checkpoints().size() &&
                fresh.checkpoints().size() == again.checkpoints().size();
    for (std::size_t i = 0; identical && i < fresh.checkpoints().size(); ++i) {
      const auto& a = fresh.checkpoints()[i];
      const auto& b = again.checkpoints()[i];
      identical = a.x == b.x && a.hash == b.hash && a.pi.exact_str() == b.pi.exact_str() &&
                  a.theta.exact_str() == b.theta.exact_str() && a.psi.exact_str() == b.psi.exact_str() &&
                  a.Pi.exact_str() == b.Pi.exact_str();
    }
  } catch (...) {
    fs::remove_all(dir);
    throw;
  }
  fs::remove_all(dir);
  o.require(identical, "sieve checkpoint restart is bit identical");
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;  // 0: no limit
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "threshold reproduction", 1, threshold_reproduction},
      {2, "aggregate error term", 1, aggregate_error},
      {3, "coefficient re-derivation", 1, coefficients},
      {4, "full iteration and tables", 300, full_iteration},
      {5, "sieve verification to 10^6", 120, sieve_verification},
      {6, "partial-summation constants", 10, partial_summation},
      {7, "zero-data check", 5, zero_data_check},
      {8, "Ramanujan stepping", 0, ramanujan_stepping},
      {9, "property suites", 60, property_suites},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char timing[96];
    if (c.limit_s > 0) {
      std::snprintf(timing, sizeof timing, "%.2f s (limit %.0f s)", secs, c.limit_s);
      if (secs >= c.limit_s) o.require(false, "runtime over the limit");
    } else {
      std::snprintf(timing, sizeof timing, "%.2f s", secs);
    }
    std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << " : " << c.name << " : "
              << timing << "\n";
    for (const auto& n : o.notes) std::cout << "    " << n << "\n";
    std::cout.flush();
    failed += !o.pass;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
