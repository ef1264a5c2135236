#include "primebounds/kernel.hpp"

#include <string>

#include "primebounds/errors.hpp"
#include "primebounds/special.hpp"

namespace primebounds {
namespace {

// sum w^k / (2k+1)!: equals sinh(sqrt w)/sqrt w for w > 0 and sin(sqrt(-w))/sqrt(-w) for w < 0.
Real sinhc_series(const Real& w) {
  const Real eps = ldexp(Real(1), -static_cast<long>(precision_bits()));
  Real term(1);
  Real sum(1);
  for (long k = 1; k < 10000; ++k) {
    term *= w;
    term /= (2 * k) * (2 * k + 1);
    sum += term;
    if (abs(term) <= eps * abs(sum)) break;
  }
  return sum;
}

// sinh(sqrt w)/sqrt w with the sign convention above, w = c^2 - (t eps)^2.
Real sinhc_of_square(const Real& w, const Real& c) {
  if (abs(w) < c * c * Real("1e-8")) return sinhc_series(w);
  if (w.sign() > 0) {
    const Real r = sqrt(w);
    return sinh(r) / r;
  }
  const Real r = sqrt(-w);
  return sin(r) / r;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

}  // namespace

void KernelParams::validate() const {
  require(c.sign() > 0, "kernel parameter c must be positive, got " + c.str(10));
  require(eps.sign() > 0, "kernel parameter eps must be positive, got " + eps.str(10));
}

Real ell_real(const Real& t, const KernelParams& p) {
  p.validate();
  require(t.sign() >= 0, "ell_real requires t >= 0");
  const Real te = t * p.eps;
  return p.c / sinh(p.c) * sinhc_of_square(p.c * p.c - te * te, p.c);
}

Real ell_normalizer(const KernelParams& p) {
  p.validate();
  return p.c / sinh(p.c) * sinhc_of_square(p.eps * p.eps / 4 + p.c * p.c, p.c);
}

Real a_weight(const Real& gamma, const KernelParams& p) {
  p.validate();
  require(gamma.sign() > 0, "a_weight requires gamma > 0");
  require(gamma <= p.c / p.eps,
          "a_weight: gamma = " + gamma.str(12) + " exceeds c/eps = " + (p.c / p.eps).str(12));
  return ell_real(gamma, p) / ell_normalizer(p);
}

Real tail_bound_high(const Real& x, const KernelParams& p) {
  p.validate();
  require(x > 1, "tail_bound_high requires x > 1");
  require(p.eps <= Real("1e-3"), "tail_bound_high requires eps <= 1e-3, got " + p.eps.str(10));
  require(p.c >= 3, "tail_bound_high requires c >= 3, got " + p.c.str(10));
  return Real("0.16") * (x + 1) / sinh(p.c) * exp(Real("0.71") * sqrt(p.c * p.eps)) *
         log(3 * p.c) * log(p.c / p.eps);
}

Real tail_bound_mid(const Real& x, const Real& a_frac, const KernelParams& p,
                    const std::optional<Real>& rh_height) {
  p.validate();
  require(x > 1, "tail_bound_mid requires x > 1");
  require(a_frac.sign() > 0 && a_frac < 1,
          "tail_bound_mid requires 0 < a < 1, got " + a_frac.str(10));
  require(a_frac * p.c / p.eps >= 1000, "tail_bound_mid requires a*c/eps >= 1e3");
  if (rh_height) {
    require(p.c / p.eps <= *rh_height,
            "tail_bound_mid: c/eps = " + (p.c / p.eps).str(10) +
                " is above the verified height " + rh_height->str(10));
  }
  const Real pi = const_pi();
  return (1 + 11 * p.c * p.eps) / (pi * p.c * a_frac * a_frac) * log(p.c / p.eps) *
         cosh(p.c * sqrt(1 - a_frac * a_frac)) / sinh(p.c) * sqrt(x);
}

Real zero_sum_bound(const Real& t2) {
  const Real two_pi = 2 * const_pi();
  require(t2 >= 2 * two_pi * const_e(), "zero_sum_bound requires t2 >= 4 pi e, got " + t2.str(10));
  const Real l = log(t2 / two_pi);
  return l * l / two_pi;
}

Real smoothing_b0(const Real& x, const KernelParams& p) {
  p.validate();
  return bessel_i1(p.c) / (2 * sinh(p.c)) * p.eps * x * exp(-p.eps);
}

Real psi_smoothing_bound(const Real& x, const KernelParams& p) {
  p.validate();
  require(x > 100, "psi_smoothing_bound requires x > 100");
  require(p.eps < Real("1e-2"), "psi_smoothing_bound requires eps < 1e-2");
  const Real b0 = smoothing_b0(x, p);
  require(b0 > 1, "psi_smoothing_bound requires B0 > 1, got B0 = " + b0.str(10));
  const Real ratio = bessel_i1(p.c) / sinh(p.c);
  return exp(2 * p.eps) * log(exp(p.eps) * x) *
         (p.eps * x / log(b0) * ratio + Real("2.01") * p.eps * sqrt(x) +
          log(log(2 * x * x)) / 2);
}

}  // namespace primebounds
