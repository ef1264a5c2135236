#include "primebounds/ramanujan.hpp"

#include <algorithm>

#include "primebounds/errors.hpp"
#include "primebounds/primes.hpp"
#include "primebounds/published.hpp"
#include "primebounds/special.hpp"

namespace primebounds {
namespace {

std::uint64_t to_u64(const Real& v) {
  return static_cast<std::uint64_t>(mpfr_get_uj(v.get(), MPFR_RNDZ));
}

unsigned working_bits(unsigned requested) {
  // 1e-30 relative rounding needs about 100 bits; 192 leaves room for the f - g cancellation.
  return requested != 0 ? std::max(requested, 100u) : std::max(192u, precision_bits());
}

CounterexampleVerdict evaluate(std::uint64_t x, std::uint64_t pi_x, std::uint64_t pi_xe) {
  CounterexampleVerdict v;
  v.x = x;
  v.pi_x = pi_x;
  v.pi_x_over_e = pi_xe;
  const Real px(static_cast<unsigned long long>(pi_x));
  v.lhs = px * px;
  const Real xr(static_cast<unsigned long long>(x));
  v.rhs = const_e() * xr / log(xr) * Real(static_cast<unsigned long long>(pi_xe));
  v.outcome = v.lhs < v.rhs ? InequalityOutcome::holds : InequalityOutcome::fails;
  return v;
}

std::uint64_t floor_over_e(std::uint64_t x) {
  return to_u64(floor(Real(static_cast<unsigned long long>(x)) / const_e()));
}

}  // namespace

Real ramanujan_f(const Real& z) {
  if (z == Real(1)) {
    // li(e^0) = li(1)
    return ei(z - 1);
  }
  if (!(z > 1)) throw DomainError("f(z) needs z > 1, got " + z.str(10));
  return exp(z + 1) / z * ei(z - 1);
}

Real ramanujan_g(const Real& z, const Real& a) {
  if (!(z > 1)) throw DomainError("g(z) needs z > 1, got " + z.str(10));
  if (!(a.sign() > 0)) throw ParameterError("g(z, a) needs a > 0, got " + a.str(10));
  const Real first = a * (z - 1) / z * exp((3 * z + 1) / 2);
  const Real inner = ei(z) + a * z * exp(z / 2);
  return first + inner * inner;
}

void Regime::validate() const {
  if (!(z_lo >= Real(43))) throw ParameterError("regime z_lo must be >= 43, got " + z_lo.str(10));
  if (!(z_hi > z_lo)) throw ParameterError("regime needs z_hi > z_lo");
  if (!(delta.sign() > 0)) throw ParameterError("regime delta must be positive");
  if (!(a.sign() > 0)) throw ParameterError("regime a must be positive");
  if (!(exp(z_hi) <= floor_valid)) {
    throw ParameterError("e^" + z_hi.str(8) + " exceeds the range " + floor_valid.str(6) +
                         " where the bound with a = " + a.str(6) + " is known");
  }
}

std::uint64_t Regime::total_steps() const {
  return to_u64(ceil((z_hi - z_lo) / delta));
}

StepReport step_verify(const Regime& regime, const StepOptions& options) {
  regime.validate();
  const unsigned bits = working_bits(options.precision_bits);
  ScopedPrecision scope(bits);
  const Real z0 = Real::with_precision(regime.z_lo, bits);
  const Real a = Real::with_precision(regime.a, bits);
  const Real delta = Real::with_precision(regime.delta, bits);

  std::uint64_t n = regime.total_steps();
  if (options.max_steps) n = std::min(n, *options.max_steps);

  StepReport r;
  r.z_start = z0;
  r.precision_bits = bits;
  bool have = false;
  for (std::uint64_t k = 0; k < n; ++k) {
    // z_k from k directly so rounding does not accumulate over the run.
    const Real zk = z0 + delta * Real(static_cast<unsigned long long>(k));
    const Real zn = z0 + delta * Real(static_cast<unsigned long long>(k + 1));
    const Real g = ramanujan_g(zn, a);
    const Real margin = ramanujan_f(zk) - g;
    if (!have || margin < r.min_margin) {
      r.min_margin = margin;
      r.min_margin_at = zk;
      r.min_relative_margin = margin / g;
      have = true;
    }
    if (margin.sign() <= 0 && !r.first_failure) r.first_failure = zk;
    ++r.steps_checked;
  }
  if (!have) throw ParameterError("regime contains no steps");
  return r;
}

StepReport merge_reports(const std::vector<StepReport>& parts) {
  if (parts.empty()) throw ParameterError("nothing to merge");
  StepReport out = parts.front();
  out.steps_checked = 0;
  for (const StepReport& p : parts) {
    out.steps_checked += p.steps_checked;
    if (p.z_start < out.z_start) out.z_start = p.z_start;
    if (p.min_margin < out.min_margin) {
      out.min_margin = p.min_margin;
      out.min_margin_at = p.min_margin_at;
      out.min_relative_margin = p.min_relative_margin;
    }
    if (p.first_failure && (!out.first_failure || *p.first_failure < *out.first_failure)) {
      out.first_failure = p.first_failure;
    }
    out.precision_bits = std::min(out.precision_bits, p.precision_bits);
  }
  return out;
}

Regime tail_of(const Regime& regime, std::uint64_t steps) {
  Regime t = regime;
  const Real start = regime.z_hi - regime.delta * Real(static_cast<unsigned long long>(steps));
  t.z_lo = max(regime.z_lo, start);
  return t;
}

StabilityVerdict precision_stability(const Regime& regime, std::uint64_t steps,
                                     unsigned base_bits) {
  const unsigned bits = working_bits(base_bits);
  StepOptions o;
  o.max_steps = steps;
  o.precision_bits = bits;
  StepReport base = step_verify(regime, o);
  o.precision_bits = 2 * bits;
  StepReport doubled = step_verify(regime, o);
  ScopedPrecision scope(2 * bits);
  Real change = abs(doubled.min_margin - base.min_margin) / abs(base.min_margin);
  const bool pass = base.pass() && doubled.pass() && change < Real("1e-6");
  return {std::move(base), std::move(doubled), std::move(change), pass};
}

std::vector<Regime> regime_schedule(const Real& strong_x_max,
                                    const std::vector<RungSource>& weak_rows) {
  const Real z_end(103);
  std::vector<Regime> out;
  Regime first;
  first.z_lo = Real(43);
  first.z_hi = min(floor(log(strong_x_max)), z_end);
  first.a = 1 / (8 * const_pi());
  first.delta = Real("5e-8");
  first.floor_valid = strong_x_max;
  first.label = "a=1/8pi";
  first.validate();
  out.push_back(first);

  const Real delta_floor("1e-9");
  for (std::size_t i = 0; i < weak_rows.size() && out.back().z_hi < z_end; ++i) {
    const RungSource& row = weak_rows[i];
    Regime r;
    r.z_lo = out.back().z_hi;
    r.z_hi = min(floor(log(row.x_max)), z_end);
    if (!(r.z_hi > r.z_lo)) continue;
    r.a = row.a;
    r.floor_valid = row.x_max;
    r.label = row.label.empty() ? "a=" + row.a.str(6) : row.label;
    if (out.size() == 1) {
      r.delta = Real("2.5e-8");
    } else {
      r.delta = max(out.back().delta * sqrt(out.back().a / r.a), delta_floor);
      r.delta_reconstructed = true;
    }
    r.validate();
    out.push_back(r);
  }
  return out;
}

std::vector<Regime> regime_schedule() {
  const auto& pv = published_values();
  const Real strong(std::string_view(pv["threshold"]["strong"]["x_max"].get<std::string>()));
  std::vector<RungSource> rows;
  for (const auto& row : pv["table2"]) {
    const std::string a = row["a"].get<std::string>();
    rows.push_back({Real(std::string_view(a)),
                    Real(std::string_view(row["x_max"].get<std::string>())), "a=" + a});
  }
  return regime_schedule(strong, rows);
}

CounterexampleVerdict counterexample_check(std::uint64_t x, const PrimeTables& tables) {
  if (x < 3) throw ParameterError("counterexample_check needs x >= 3");
  if (x > tables.limit()) {
    CounterexampleVerdict v;
    v.x = x;
    v.outcome = InequalityOutcome::skipped;
    v.reason = "prime tables reach " + std::to_string(tables.limit()) + ", need " +
               std::to_string(x);
    return v;
  }
  const std::uint64_t xe = floor_over_e(x);
  const auto& ps = tables.primes();
  const auto count = [&](std::uint64_t n) {
    return static_cast<std::uint64_t>(std::upper_bound(ps.begin(), ps.end(), n) - ps.begin());
  };
  return evaluate(x, count(x), count(xe));
}

CounterexampleVerdict counterexample_check(std::uint64_t x) {
  if (x < 3) throw ParameterError("counterexample_check needs x >= 3");
  const std::uint64_t xe = floor_over_e(x);
  return evaluate(x, prime_count_upto(x), prime_count_upto(xe));
}

const char* outcome_name(InequalityOutcome o) {
  switch (o) {
    case InequalityOutcome::holds: return "holds";
    case InequalityOutcome::fails: return "fails";
    case InequalityOutcome::skipped: return "skipped";
  }
  return "?";
}

}  // namespace primebounds
