#pragma once

#include "primebounds/real.hpp"

namespace primebounds {

struct SpecialFunctionConfig {
  // Arguments below this always use the convergent series.
  double series_cutoff = 40.0;
  // Guard against runaway summation; exceeding it throws Error.
  unsigned max_terms = 200000;
  // Relative error goal in bits. 0 means the working precision.
  unsigned target_bits = 0;

  // Throws ParameterError when the goal is looser than 2^-64.
  void validate() const;
};

// Logarithmic integral, principal value for x > 1. li(0) = 0.
// DomainError for x < 0 and at x = 1.
Real li(const Real& x, const SpecialFunctionConfig& cfg = {});

// Exponential integral Ei(y) for y != 0 (principal value for y > 0).
Real ei(const Real& y, const SpecialFunctionConfig& cfg = {});

// Modified Bessel function I_1. OverflowError when e^c is not representable.
Real bessel_i1(const Real& c, const SpecialFunctionConfig& cfg = {});

// sqrt(pi c0 / 2) I_1(c0) / sinh(c0), for c0 > 0.
Real d_of(const Real& c0, const SpecialFunctionConfig& cfg = {});

}  // namespace primebounds
