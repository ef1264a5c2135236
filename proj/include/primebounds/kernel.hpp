#pragma once

#include <optional>

#include "primebounds/real.hpp"

namespace primebounds {

struct KernelParams {
  Real c;    // smoothing sharpness
  Real eps;  // smoothing width

  // Throws ParameterError unless c > 0 and eps > 0.
  void validate() const;
};

// l_{c,eps}(t) for real t >= 0, continued through the seam t*eps = c.
Real ell_real(const Real& t, const KernelParams& p);

// l_{c,eps}(i/2).
Real ell_normalizer(const KernelParams& p);

// l(gamma) / l(i/2) for a zero 1/2 + i gamma with 0 < gamma <= c/eps.
Real a_weight(const Real& gamma, const KernelParams& p);

// Bound for the sum over zeros with |Im rho| > c/eps.
// Requires x > 1, eps <= 1e-3, c >= 3.
Real tail_bound_high(const Real& x, const KernelParams& p);

// Bound for the zeros with a_frac*c/eps < |Im rho| <= c/eps.
// Requires 0 < a_frac < 1 and a_frac*c/eps >= 1e3. When rh_height is given,
// c/eps must not exceed it.
Real tail_bound_mid(const Real& x, const Real& a_frac, const KernelParams& p,
                    const std::optional<Real>& rh_height = std::nullopt);

// (1/2pi) log^2(t2/2pi), valid for t2 >= 4 pi e.
Real zero_sum_bound(const Real& t2);

// B0 = I_1(c) / (2 sinh c) * eps * x * e^{-eps}.
Real smoothing_b0(const Real& x, const KernelParams& p);

// Bound on |psi(x) - psi_{c,eps}(x)|. Requires x > 100, eps < 1e-2, B0 > 1.
Real psi_smoothing_bound(const Real& x, const KernelParams& p);

}  // namespace primebounds
