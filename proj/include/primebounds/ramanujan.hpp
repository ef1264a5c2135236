#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "primebounds/real.hpp"

namespace primebounds {

class PrimeTables;

// f(z) = e^{z+1}/z li(e^{z-1}), evaluated from z without forming e^z as an
// integer. DomainError for z <= 1.
Real ramanujan_f(const Real& z);
// g(z) = a(z-1)/z e^{(3z+1)/2} + (li(e^z) + a z e^{z/2})^2.
Real ramanujan_g(const Real& z, const Real& a);

inline constexpr double kRamanujanZFloor = 43.0;

struct Regime {
  Real z_lo;
  Real z_hi;
  Real a;
  Real delta;
  Real floor_valid;       // largest x where the |pi - li| bound with this a is known
  std::string label;      // e.g. "a=1/8pi"
  bool delta_reconstructed = false;  // delta not taken from the publication

  // ParameterError unless z_lo >= 43, z_hi > z_lo, delta > 0, a > 0 and
  // e^{z_hi} <= floor_valid.
  void validate() const;
  // ceil((z_hi - z_lo) / delta)
  std::uint64_t total_steps() const;
};

struct StepReport {
  std::uint64_t steps_checked = 0;
  Real z_start;
  Real min_margin;           // smallest f(z_k) - g(z_k + delta)
  Real min_margin_at;        // z_k where it occurred
  Real min_relative_margin;  // margin / g(z_k + delta) at the same k
  std::optional<Real> first_failure;
  unsigned precision_bits = 0;

  bool pass() const { return !first_failure.has_value() && min_margin.sign() > 0; }
};

struct StepOptions {
  // Cap on the number of steps; the run starts at z_lo. Unset means the whole regime.
  std::optional<std::uint64_t> max_steps;
  // Working precision; 0 picks max(192, current default).
  unsigned precision_bits = 0;
};

// Checks f(z_lo + k delta) - g(z_lo + (k+1) delta) > 0 for consecutive k.
// Failures are recorded, not thrown.
StepReport step_verify(const Regime& regime, const StepOptions& options = {});

// Combines reports of adjacent sub-ranges: minimum margin, earliest failure.
StepReport merge_reports(const std::vector<StepReport>& parts);

// The last `steps` steps of a regime (ending exactly at z_hi).
Regime tail_of(const Regime& regime, std::uint64_t steps);

struct StabilityVerdict {
  StepReport base;
  StepReport doubled;
  Real relative_change;  // |m2 - m1| / |m1| for the min margins
  bool pass;             // both pass and relative_change < 1e-6
};

StabilityVerdict precision_stability(const Regime& regime, std::uint64_t steps,
                                     unsigned base_bits = 0);

struct RungSource {
  Real a;
  Real x_max;
  std::string label;
};

// Ladder from z = 43 to z = 103. Rung 0 uses a = 1/8pi with delta 5e-8 up to
// floor(log strong_x_max), rung 1 uses the first weak row with delta 2.5e-8,
// later rows delta_prev * sqrt(a_prev / a) but not below 1e-9. Every z_hi is
// floor(log x_max), the last one capped at 103.
std::vector<Regime> regime_schedule(const Real& strong_x_max,
                                    const std::vector<RungSource>& weak_rows);
// Same ladder built from the published table values.
std::vector<Regime> regime_schedule();

enum class InequalityOutcome { holds, fails, skipped };

struct CounterexampleVerdict {
  std::uint64_t x = 0;
  InequalityOutcome outcome = InequalityOutcome::skipped;
  std::uint64_t pi_x = 0;
  std::uint64_t pi_x_over_e = 0;  // pi(floor(x/e))
  Real lhs;                       // pi(x)^2
  Real rhs;                       // e x / log x * pi(x/e)
  std::string reason;             // set when skipped
};

// Exact check of pi(x)^2 < (e x / log x) pi(x/e) using the tables. Skipped
// with a reason when the tables do not reach x.
CounterexampleVerdict counterexample_check(std::uint64_t x, const PrimeTables& tables);
// Same, counting primes directly with a segmented sieve (any x >= 3).
CounterexampleVerdict counterexample_check(std::uint64_t x);

const char* outcome_name(InequalityOutcome o);

}  // namespace primebounds
