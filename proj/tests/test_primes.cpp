#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "primebounds/errors.hpp"
#include "primebounds/primes.hpp"
#include "primebounds/special.hpp"

using namespace primebounds;
namespace fs = std::filesystem;

namespace {

const PrimeTables& tables_1e5() {
  static const PrimeTables t = PrimeTables::build(100000, {1 << 12, std::nullopt});
  return t;
}

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("pb-test-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

Real strong_a() { return 1 / (8 * const_pi()); }

}  // namespace

TEST_SUITE("primes") {
  TEST_CASE("normalized counts at small arguments") {
    const PrimeTables& t = tables_1e5();
    CHECK(t.count(CountKind::pi, Real(100)) == 25);
    CHECK(t.count(CountKind::pi, Real(97)) == Real("24.5"));
    CHECK(t.count(CountKind::pi, Real("97.5")) == 25);
    CHECK(abs(t.count(CountKind::theta, Real(10)) - log(Real(210))) < Real("1e-40"));
    CHECK(abs(t.count(CountKind::psi, Real(8)) - (log(Real(840)) - log(Real(2)) / 2)) < Real("1e-40"));
    CHECK(t.count(CountKind::psi, Real("1.5")).is_zero());
    CHECK(t.count(CountKind::pi, Real(2)) == Real("0.5"));
    CHECK_THROWS_AS(t.count(CountKind::pi, Real(100001)), CoverageError);
  }

  TEST_CASE("build preconditions") {
    CHECK_THROWS_AS(PrimeTables::build(50), ParameterError);
    CHECK_THROWS_AS(PrimeTables::build(std::uint64_t{1} << 32), ParameterError);
  }

  TEST_CASE("primes agree with trial division") {
    const auto expected = oracle::primes_trial_division(100000);
    const auto& got = tables_1e5().primes();
    REQUIRE(got.size() == expected.size());
    CHECK(got == expected);
    CHECK(got.size() == 9592);
  }

  TEST_CASE("pi and theta at non-integer points against the oracle") {
    const auto ps = oracle::primes_trial_division(100000);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(2.5, 99999.5);
    for (int k = 0; k < 200; ++k) {
      double x = dist(rng);
      if (x == std::floor(x)) x += 0.25;
      long double theta = 0;
      std::size_t n = 0;
      for (auto p : ps) {
        if (p > x) break;
        ++n;
        theta += std::log(static_cast<long double>(p));
      }
      const Real rx(x);
      CAPTURE(x);
      CHECK(tables_1e5().count(CountKind::pi, rx) == static_cast<long>(n));
      CHECK(oracle::rel_diff(tables_1e5().count(CountKind::theta, rx).to_long_double(), theta) < 1e-15L);
    }
  }

  TEST_CASE("Pi is the sum of pi(x^(1/m))/m away from jumps") {
    const PrimeTables& t = tables_1e5();
    for (const char* xs : {"10.5", "1000.5", "65536.5", "99999.5"}) {
      const Real x{std::string_view(xs)};
      Real sum(0);
      for (int m = 1; pow(Real(2), Real(m)) <= x; ++m) {
        sum += t.count(CountKind::pi, pow(x, Real(1) / m)) / m;
      }
      CAPTURE(xs);
      CHECK(abs(t.count(CountKind::Pi, x) - sum) < Real("1e-40"));
    }
  }

  TEST_CASE("psi - theta is nondecreasing") {
    const PrimeTables& t = tables_1e5();
    Real prev = psi_theta_gap(Real(2), t);
    for (int k = 3; k <= 5000; ++k) {
      const Real g = psi_theta_gap(Real(k) + Real("0.5"), t);
      CHECK(g >= prev);
      prev = g;
    }
  }

  TEST_CASE("higher powers") {
    const auto& pw = tables_1e5().higher_powers();
    REQUIRE(pw.size() >= 3);
    CHECK(pw[0].n == 4);
    CHECK(pw[1].n == 8);
    CHECK(pw[2].n == 9);
    for (std::size_t i = 1; i < pw.size(); ++i) CHECK(pw[i].n > pw[i - 1].n);
  }

  TEST_CASE("checkpoint restart is bit identical") {
    TempDir dir;
    const SieveOptions opts{1 << 14, dir.path};
    const PrimeTables fresh = PrimeTables::build(200000, opts);
    CHECK(fresh.restored_segments() == 0);
    CHECK(fs::exists(cache_file_path(dir.path, 200000, 1 << 14)));
    const PrimeTables again = PrimeTables::build(200000, opts);
    CHECK(again.restored_segments() == again.checkpoints().size());
    REQUIRE(fresh.checkpoints().size() == again.checkpoints().size());
    for (std::size_t i = 0; i < fresh.checkpoints().size(); ++i) {
      const auto& a = fresh.checkpoints()[i];
      const auto& b = again.checkpoints()[i];
      CHECK(a.x == b.x);
      CHECK(a.hash == b.hash);
      CHECK(a.theta.exact_str() == b.theta.exact_str());
      CHECK(a.psi.exact_str() == b.psi.exact_str());
      CHECK(a.Pi.exact_str() == b.Pi.exact_str());
    }
    CHECK(fresh.count(CountKind::theta, Real(199999)).exact_str() ==
          again.count(CountKind::theta, Real(199999)).exact_str());
    // Without a cache the result is the same.
    const PrimeTables plain = PrimeTables::build(200000, {1 << 14, std::nullopt});
    CHECK(plain.checkpoints().back().psi.exact_str() == fresh.checkpoints().back().psi.exact_str());
  }

  TEST_CASE("corrupt cache is rebuilt with a warning") {
    TempDir dir;
    const SieveOptions opts{1 << 14, dir.path};
    const PrimeTables first = PrimeTables::build(100000, opts);
    {
      std::ofstream out(cache_file_path(dir.path, 100000, 1 << 14), std::ios::trunc);
      out << "garbage\n";
    }
    const PrimeTables second = PrimeTables::build(100000, opts);
    CHECK(second.restored_segments() == 0);
    CHECK_FALSE(second.warnings().empty());
    CHECK(second.checkpoints().back().theta.exact_str() == first.checkpoints().back().theta.exact_str());
  }

  TEST_CASE("prime_count_upto") {
    CHECK(prime_count_upto(1) == 0);
    CHECK(prime_count_upto(2) == 1);
    CHECK(prime_count_upto(100) == 25);
    CHECK(prime_count_upto(1000000) == 78498);
    CHECK(prime_count_upto(10000000) == 664579);
  }

  TEST_CASE("inequality names round-trip") {
    for (auto k : {InequalityKind::psi_sq, InequalityKind::theta_sq, InequalityKind::psi_shift,
                   InequalityKind::theta_shift, InequalityKind::Pi_li, InequalityKind::pi_li}) {
      CHECK(parse_inequality_kind(kind_name(k)) == k);
    }
    CHECK_THROWS_AS(parse_inequality_kind("zeta"), ParameterError);
  }

  TEST_CASE("strong inequalities hold above their small thresholds") {
    const Real a = strong_a();
    const std::vector<InequalitySpec> specs = {
        {InequalityKind::psi_sq, a, Real(0)},       {InequalityKind::theta_sq, a, Real(0)},
        {InequalityKind::psi_shift, a, Real(3)},    {InequalityKind::theta_shift, a, Real(2)},
        {InequalityKind::pi_li, a, Real(0)},
    };
    const auto reports = scan_inequalities(specs, Real(2), Real(100000), tables_1e5());
    REQUIRE(reports.size() == specs.size());
    CHECK(reports[0].holds_from(Real(59)));
    CHECK(reports[1].holds_from(Real(599)));
    CHECK(reports[2].holds_from(Real(5000)));
    CHECK(reports[3].holds_from(Real(5000)));
    CHECK(reports[4].holds_from(Real(2657)));
    for (const auto& r : reports) {
      CHECK(r.points > 100000);
      CHECK_FALSE(r.holds_everywhere);
    }
  }

  TEST_CASE("Pi - li is violated just below 97") {
    // Independent evaluation: Pi(97-) from trial division, li(97) by quadrature.
    const auto ps = oracle::primes_trial_division(96);
    long double Pi = 0;
    for (int m = 1; m <= 6; ++m) {
      const long double r = std::pow(96.999L, 1.0L / m);
      std::size_t n = 0;
      for (auto p : ps) n += p <= r;
      Pi += static_cast<long double>(n) / m;
    }
    const long double li97 = oracle::li_quadrature(97);
    const long double bound = std::sqrt(97.0L) * std::log(97.0L) / (8 * std::acos(-1.0L));
    CHECK(std::fabs(Pi - li97) > bound);

    const ScanReport r = scan_inequality({InequalityKind::Pi_li, strong_a(), Real(0)}, Real(2),
                                         Real(100000), tables_1e5());
    REQUIRE(r.last_violation.has_value());
    CHECK(r.last_violation->x == 97);
    CHECK(r.last_violation->side == -1);
    CHECK(r.holds_from(Real(97)));
    CHECK_FALSE(r.holds_from(Real(96)));
  }

  TEST_CASE("weak inequalities with a = 1") {
    const std::vector<InequalitySpec> specs = {
        {InequalityKind::psi_sq, Real(1), Real(0)}, {InequalityKind::theta_sq, Real(1), Real(0)},
        {InequalityKind::Pi_li, Real(1), Real(0)},  {InequalityKind::pi_li, Real(1), Real(0)},
    };
    const auto reports = scan_inequalities(specs, Real(2), Real(100000), tables_1e5());
    CHECK(reports[0].holds_from(Real(3)));
    CHECK(reports[1].holds_from(Real(3)));
    CHECK(reports[2].holds_from(Real(2)));
    CHECK(reports[3].holds_from(Real(2)));
  }

  TEST_CASE("holds_from semantics") {
    ScanReport r;
    CHECK(r.holds_from(Real(2)));
    r.last_violation = ScanPoint{Real(59), -1, Real(1), Real(0)};
    CHECK(r.holds_from(Real(59)));
    CHECK_FALSE(r.holds_from(Real(58)));
    r.last_violation->side = 0;
    CHECK_FALSE(r.holds_from(Real(59)));
    CHECK(r.holds_from(Real("59.1")));
  }
}
