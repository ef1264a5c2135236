#include "primebounds/special.hpp"

#include <mpfr.h>

#include <algorithm>
#include <string>

#include "primebounds/errors.hpp"

namespace primebounds {
namespace {

constexpr unsigned kGuardBits = 32;

unsigned goal_bits(const SpecialFunctionConfig& cfg) {
  cfg.validate();
  return cfg.target_bits == 0 ? precision_bits() : cfg.target_bits;
}

void check_terms(unsigned n, const SpecialFunctionConfig& cfg, const char* what) {
  if (n >= cfg.max_terms) {
    throw Error(std::string(what) + ": no convergence within " + std::to_string(cfg.max_terms) +
                " terms");
  }
}

// gamma + ln y + sum y^n / (n n!), y > 0. All terms positive.
Real ei_series_positive(const Real& y, const Real& eps, const SpecialFunctionConfig& cfg) {
  Real term = y;  // y^n / n!
  Real sum = y;
  for (unsigned n = 2;; ++n) {
    check_terms(n, cfg, "Ei series");
    term *= y;
    term /= static_cast<long>(n);
    Real add = term / static_cast<long>(n);
    sum += add;
    if (add <= sum * eps) break;
  }
  return const_euler_gamma() + log(y) + sum;
}

// e^y / y * sum k! / y^k, truncated before the terms stop shrinking.
Real ei_asymptotic(const Real& y, const Real& eps, const SpecialFunctionConfig& cfg) {
  Real term(1);
  Real sum(1);
  for (unsigned k = 1;; ++k) {
    check_terms(k, cfg, "Ei asymptotic");
    Real next = term * static_cast<long>(k) / y;
    if (next >= term) break;
    term = next;
    sum += term;
    if (term <= eps) break;
  }
  return exp(y) / y * sum;
}

// E1(t) for t > 0, so Ei(-t) = -E1(t).
Real e1(const Real& t, const Real& eps, const SpecialFunctionConfig& cfg) {
  if (t <= 2) {
    // -gamma - ln t - sum (-t)^n / (n n!)
    Real term = -t;
    Real sum = -t;
    for (unsigned n = 2;; ++n) {
      check_terms(n, cfg, "E1 series");
      term *= -t;
      term /= static_cast<long>(n);
      Real add = term / static_cast<long>(n);
      sum += add;
      if (abs(add) <= eps * abs(sum)) break;
    }
    return -const_euler_gamma() - log(t) - sum;
  }
  // Modified Lentz on e^{-t} / (t + 1 - 1/(t + 3 - 4/(t + 5 - ...))).
  const Real tiny = ldexp(Real(1), -static_cast<long>(precision_bits()) * 4);
  Real b = t + 1;
  Real c = 1 / tiny;
  Real d = 1 / b;
  Real h = d;
  for (unsigned i = 1;; ++i) {
    check_terms(i, cfg, "E1 continued fraction");
    const Real an = -Real(static_cast<long>(i)) * static_cast<long>(i);
    b += 2;
    d = an * d + b;
    if (d.is_zero()) d = tiny;
    c = b + an / c;
    if (c.is_zero()) c = tiny;
    d = 1 / d;
    Real delta = c * d;
    h *= delta;
    if (abs(delta - 1) <= eps) break;
  }
  return h * exp(-t);
}

Real bessel_i1_series(const Real& c, const Real& eps, const SpecialFunctionConfig& cfg) {
  const Real half = c / 2;
  const Real q = half * half;
  Real term = half;  // (c/2)^{2n+1} / (n! (n+1)!)
  Real sum = half;
  for (unsigned n = 1;; ++n) {
    check_terms(n, cfg, "I1 series");
    term *= q;
    term /= static_cast<long>(n);
    term /= static_cast<long>(n + 1);
    sum += term;
    if (term <= sum * eps) break;
  }
  return sum;
}

// e^c / sqrt(2 pi c) * sum (-1)^k a_k / c^k with mu = 4.
Real bessel_i1_asymptotic(const Real& c, const Real& eps, const SpecialFunctionConfig& cfg) {
  Real term(1);
  Real sum(1);
  for (unsigned k = 1;; ++k) {
    check_terms(k, cfg, "I1 asymptotic");
    const long odd = 2 * static_cast<long>(k) - 1;
    Real next = term * (4 - odd * odd) / (8 * static_cast<long>(k)) / c;
    next = -next;
    if (abs(next) >= abs(term)) break;
    term = next;
    sum += term;
    if (abs(term) <= eps) break;
  }
  return exp(c) / sqrt(2 * const_pi() * c) * sum;
}

}  // namespace

void SpecialFunctionConfig::validate() const {
  if (target_bits != 0 && target_bits < 64) {
    throw ParameterError("special function target error must be at most 2^-64, got 2^-" +
                         std::to_string(target_bits));
  }
  if (!(series_cutoff > 0)) throw ParameterError("series_cutoff must be positive");
  if (max_terms == 0) throw ParameterError("max_terms must be positive");
}

Real ei(const Real& y, const SpecialFunctionConfig& cfg) {
  if (y.is_zero()) throw DomainError("Ei is singular at 0");
  if (!y.is_finite()) throw DomainError("Ei of a non-finite argument");
  const unsigned bits = goal_bits(cfg);
  const unsigned out_prec = precision_bits();
  Real result;
  {
    ScopedPrecision scope(std::max(out_prec, bits) + kGuardBits);
    const Real yy = Real::with_precision(y, precision_bits());
    const Real eps = ldexp(Real(1), -static_cast<long>(bits) - 8);
    if (yy.sign() > 0) {
      // The asymptotic form is only used once its best truncation error,
      // about sqrt(2 pi y) e^{-y}, is below the goal.
      const bool asymptotic = yy >= Real(cfg.series_cutoff) &&
                              sqrt(2 * const_pi() * yy) * exp(-yy) <= eps;
      result = asymptotic ? ei_asymptotic(yy, eps, cfg) : ei_series_positive(yy, eps, cfg);
    } else {
      result = -e1(-yy, eps, cfg);
    }
  }
  return Real::with_precision(result, out_prec);
}

Real li(const Real& x, const SpecialFunctionConfig& cfg) {
  if (x.sign() < 0) throw DomainError("li is undefined for x < 0, got " + x.str(10));
  if (x.is_zero()) return Real(0);
  if (x == Real(1)) throw DomainError("li has a logarithmic singularity at x = 1");
  Real result;
  {
    ScopedPrecision scope(precision_bits() + kGuardBits);
    result = ei(log(x), cfg);
  }
  return Real::with_precision(result, precision_bits());
}

Real bessel_i1(const Real& c, const SpecialFunctionConfig& cfg) {
  if (c.sign() < 0) throw DomainError("bessel_i1 requires c >= 0, got " + c.str(10));
  if (c.is_zero()) return Real(0);
  const unsigned bits = goal_bits(cfg);
  const unsigned out_prec = precision_bits();
  Real result;
  {
    ScopedPrecision scope(std::max(out_prec, bits) + kGuardBits);
    const Real cc = Real::with_precision(c, precision_bits());
    mpfr_clear_overflow();
    const Real growth = exp(cc);
    if (!growth.is_finite() || mpfr_overflow_p()) {
      mpfr_clear_overflow();
      throw OverflowError("bessel_i1: e^c overflows for c = " + c.str(10));
    }
    const Real eps = ldexp(Real(1), -static_cast<long>(bits) - 8);
    // Exponentially small terms dropped by the asymptotic form are ~e^{-2c}.
    const bool asymptotic = cc >= Real(cfg.series_cutoff) && exp(-2 * cc) <= eps;
    result = asymptotic ? bessel_i1_asymptotic(cc, eps, cfg) : bessel_i1_series(cc, eps, cfg);
  }
  return Real::with_precision(result, out_prec);
}

Real d_of(const Real& c0, const SpecialFunctionConfig& cfg) {
  if (c0.sign() <= 0) throw DomainError("d_of requires c0 > 0, got " + c0.str(10));
  Real result;
  {
    ScopedPrecision scope(precision_bits() + kGuardBits);
    const Real c = Real::with_precision(c0, precision_bits());
    result = sqrt(const_pi() * c / 2) * bessel_i1(c, cfg) / sinh(c);
  }
  return Real::with_precision(result, precision_bits());
}

}  // namespace primebounds
