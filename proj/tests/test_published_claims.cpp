// Printed values that the library re-derives independently. Each check states
// the printed claim as is; a failure here means the recomputation disagrees.

#include "doctest.h"
#include "primebounds/engine.hpp"
#include "primebounds/error_terms.hpp"
#include "primebounds/kernel.hpp"
#include "primebounds/primes.hpp"
#include "primebounds/published.hpp"
#include "primebounds/special.hpp"

using namespace primebounds;

TEST_SUITE("published_claims") {
  TEST_CASE("final strong state is admissible") {
    const IterationState s{Real("1.096e26"), Real("9.06"), Real("2.42"), Real("2.34"), Real("16.8"),
                           BoundVariant::strong()};
    const AdmissibilityVerdict v = check_admissible(s);
    INFO("E(A) = " << v.e_at_A.str(8) << ", needs < " << (-s.C * s.variant.a).str(8));
    INFO("c_limit = " << v.c_limit.str(8) << ", c_min = " << v.c_min.str(8));
    CHECK(v.pass);
  }

  TEST_CASE("second-round alpha bounds its exact value") {
    const IterationState s{Real("9.68e25"), Real("9.34"), Real("2.43"), Real(5), Real(16),
                           BoundVariant::strong()};
    const ErrorProfile p = derive_profile(s);
    INFO("exact alpha = " << p.exact.alpha3.str(10));
    CHECK(Real("2.751") >= p.exact.alpha3);
  }

  TEST_CASE("high-zero tail coefficients") {
    struct Case {
      IterationState s;
      const char* printed;
    };
    const Case cases[] = {
        {{Real("2.169e25"), Real("9.65"), Real("2.44"), Real(6), Real(16), BoundVariant::strong()}, "0.000032"},
        {{Real("9.68e25"), Real("9.34"), Real("2.43"), Real(5), Real(16), BoundVariant::strong()}, "0.0000839"},
    };
    for (const auto& c : cases) {
      const Real x = c.s.A;
      const Real L = log(x);
      const KernelParams kp{c_of(x, c.s), eps_of(x, c.s)};
      const Real ratio = tail_bound_high(x, kp) / (sqrt(x) * L * log(L));
      INFO("tail / (sqrt x log x loglog x) = " << ratio.str(8) << " vs printed " << std::string(c.printed));
      CHECK(ratio <= Real(std::string_view(c.printed)));
    }
  }

  TEST_CASE("middle-range tail ratio decreases above A") {
    const IterationState s{Real("2.169e25"), Real("9.65"), Real("2.44"), Real(6), Real(16),
                           BoundVariant::strong()};
    auto ratio = [&](const Real& x) {
      const KernelParams q{c_of(x, s), eps_of(x, s)};
      return tail_bound_mid(x, sqrt(2 / q.c), q) / (sqrt(x) * log(x));
    };
    const DecreasingVerdict v = verify_decreasing(ratio, s.A, 10 * s.A, 200);
    INFO(v.reason << "; ratio at A = " << ratio(s.A).str(8) << ", at 10A = " << ratio(10 * s.A).str(8));
    CHECK(v.pass);
  }

  TEST_CASE("strong prime-counting thresholds up to 10^6") {
    const auto& pt = published_values().at("prime_thresholds");
    const auto& strong = pt.at("strong");
    const PrimeTables tables = PrimeTables::build(1000000);
    const Real a = 1 / (8 * const_pi());
    for (const auto& [name, threshold] : strong.items()) {
      Real C(0);
      if (pt.at("shift_C").contains(name)) C = Real(pt.at("shift_C").at(name).get<std::string>());
      const InequalitySpec spec{parse_inequality_kind(name), a, C};
      const ScanReport r = scan_inequality(spec, Real(2), Real(1000000), tables);
      CAPTURE(name);
      const std::string where = r.last_violation ? r.last_violation->x.str(12) + " side " +
                                                       std::to_string(r.last_violation->side)
                                                 : "none";
      INFO("last violation at " << where);
      CHECK(r.holds_from(Real(threshold.get<long>())));
    }
  }
}
