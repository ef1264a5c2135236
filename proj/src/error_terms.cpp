#include "primebounds/error_terms.hpp"

#include <string>

#include "primebounds/errors.hpp"
#include "primebounds/special.hpp"

namespace primebounds {

BoundVariant BoundVariant::strong() {
  return {VariantKind::strong, 1 / (8 * const_pi())};
}

BoundVariant BoundVariant::weak(const Real& a) {
  if (a.sign() <= 0) throw ParameterError("variant constant a must be positive");
  return {VariantKind::weak, a};
}

std::string BoundVariant::name() const {
  return is_weak() ? "weak(a=" + a.str(6) + ")" : "strong";
}

Real c_of(const Real& x, const IterationState& s) { return log(x) / 2 + s.D; }

Real eps_of(const Real& x, const IterationState& s) {
  const Real L = log(x);
  const Real num = s.variant.is_weak() ? L * L * sqrt(L) : L * sqrt(L) * log(L);
  return num / (s.E * sqrt(x));
}

std::vector<ProfileCheck> profile_checks(const IterationState& s) {
  std::vector<ProfileCheck> out;
  auto at_least = [&](std::string name, Real value, Real limit) {
    const bool ok = value >= limit;
    out.push_back({std::move(name), std::move(value), std::move(limit), ok});
  };
  auto at_most = [&](std::string name, Real value, Real limit) {
    const bool ok = value <= limit;
    out.push_back({std::move(name), std::move(value), std::move(limit), ok});
  };

  const bool weak = s.variant.is_weak();
  const Real& A = s.A;
  at_least("A", A, Real(weak ? "1e26" : "1e25"));
  if (s.D.sign() < 0) throw ParameterError("negative D is not supported");
  if (s.E.sign() <= 0) throw ParameterError("E must be positive");

  const Real L = log(A);
  const Real LL = log(L);
  const Real c = c_of(A, s);
  const Real eps = eps_of(A, s);
  at_least("c", c, Real(3));
  at_most("eps", eps, Real("1e-4"));
  at_least("sqrt(2c)/eps", sqrt(2 * c) / eps, Real(1000));
  at_most("log(c/eps)/log x", log(c / eps) / L, Real("0.5"));
  at_least("D(c)", d_of(c), Real("0.98"));
  // log B0 is at least this multiple of log x once D(c) >= 0.98.
  const Real lead = weak ? L * L * sqrt(L) : L * sqrt(L) * LL;
  at_least("B0 scale", Real("0.97") * lead / (s.E * sqrt(const_pi() * (L + 2 * s.D))), Real(1));
  const Real growth = exp(2 * eps) * (1 + eps / L);
  at_most("2 e^{2eps}(1+eps/log x)", 2 * growth, Real("2.0001"));
  at_most("2.01 e^{2eps}(1+eps/log x)", Real("2.01") * growth, Real("2.02"));
  at_most("e^{2eps}(1+eps/log x)/2", growth / 2, Real("0.51"));
  return out;
}

ErrorProfile derive_profile(const IterationState& s, const RoundingPolicy& rounding) {
  for (const auto& check : profile_checks(s)) {
    if (!check.ok) {
      throw ParameterError("profile precondition '" + check.name + "' fails at A = " +
                           s.A.str(6) + ": " + check.value.str(8) + " vs " + check.limit.str(8));
    }
  }
  const Real& A = s.A;
  const Real L = log(A);
  const Real c = c_of(A, s);
  const Real eps = eps_of(A, s);
  const Real pi = const_pi();

  ProfileCoefficients exact;
  exact.coef1 = Real("0.16") * ((A + 1) / sinh(c)) / sqrt(A) *
                exp(Real("0.71") * sqrt(c * eps)) * log(3 * c) / L / 2;
  const Real half_c = L / 2 + s.D;
  exact.coef2 = (1 + 11 * c * eps) / (4 * pi) *
                (1 / const_e() + 1 / exp(sqrt(half_c) * sqrt(half_c - 2) + half_c));
  exact.alpha3 = s.E * sqrt(1 + 2 * s.D / L) / (2 * pi);
  exact.coef4 = Real("4.0002") / (s.E * sqrt(pi));

  ErrorProfile p;
  p.coef1 = round_up_sig(exact.coef1, rounding.coef1);
  p.coef2 = round_up_sig(exact.coef2, rounding.coef2);
  p.alpha3 = round_up_sig(exact.alpha3, rounding.alpha3);
  p.coef4 = round_up_sig(exact.coef4, rounding.coef4);
  p.coef5a = Real("2.02") / s.E;
  p.coef5b = Real("0.51");
  p.exact = std::move(exact);
  return p;
}

ErrorTerms e_terms(const Real& x, const IterationState& s, const ErrorProfile& p,
                   bool allow_at_a) {
  if (allow_at_a ? x < s.A : x <= s.A) {
    throw ParameterError("error terms need x > A: x = " + x.str(8) + ", A = " + s.A.str(8));
  }
  const Real L = log(x);
  const Real LL = log(L);
  const Real rx = sqrt(x);
  const Real pi = const_pi();
  const Real tail = L * log(log(2 * x * x));

  ErrorTerms t;
  t.e1 = p.coef1 * rx * L * LL;
  t.e2 = p.coef2 * rx * L;
  if (s.variant.is_weak()) {
    const Real inner = L / 2 + log(p.alpha3) - 2 * LL;
    t.e3 = rx / (2 * pi) * inner * inner - s.variant.a * rx * L * L;
    t.e4 = p.coef4 * rx * L * L;
    t.e5 = p.coef5a * L * L * L * sqrt(L) + p.coef5b * tail + 2;
  } else {
    const Real inner = L / 2 + log(p.alpha3) - LL - log(LL);
    t.e3 = rx / (2 * pi) * inner * inner - s.variant.a * rx * L * L;
    t.e4 = p.coef4 * rx * L * sqrt(L) * LL / sqrt(L + 2 * s.D);
    t.e5 = p.coef5a * L * L * sqrt(L) * LL + p.coef5b * tail + 2;
  }
  return t;
}

Real e_total(const Real& x, const IterationState& s, const ErrorProfile& p, bool allow_at_a) {
  return e_terms(x, s, p, allow_at_a).sum() / (sqrt(x) * log(x));
}

DecreasingVerdict verify_decreasing(const std::function<Real(const Real&)>& f, const Real& x_lo,
                                    const Real& x_hi, std::size_t grid_points) {
  if (!(x_lo > 0) || !(x_lo < x_hi)) throw ParameterError("verify_decreasing needs 0 < x_lo < x_hi");
  if (grid_points < 64) throw ParameterError("verify_decreasing needs at least 64 grid points");
  const Real y0 = log(x_lo);
  const Real h = (log(x_hi) - y0) / static_cast<long>(grid_points - 1);
  std::vector<Real> xs;
  std::vector<Real> vs;
  xs.reserve(grid_points);
  vs.reserve(grid_points);
  for (std::size_t i = 0; i < grid_points; ++i) {
    // endpoints exactly; exp(log x) can land an ulp outside the range
    if (i == 0) {
      xs.push_back(x_lo);
    } else {
      xs.push_back(i + 1 == grid_points ? x_hi : exp(y0 + h * static_cast<long>(i)));
    }
    vs.push_back(f(xs.back()));
  }
  DecreasingVerdict v;
  v.points = grid_points;
  for (std::size_t i = 0; i + 1 < grid_points; ++i) {
    if (!(vs[i + 1] < vs[i])) {
      v.pass = false;
      v.first_offender = xs[i];
      v.reason = "not strictly decreasing between nodes " + std::to_string(i) + " and " +
                 std::to_string(i + 1);
      return v;
    }
    if (i > 0 && !((vs[i + 1] - vs[i - 1]) / (2 * h) < 0)) {
      v.pass = false;
      v.first_offender = xs[i];
      v.reason = "centered difference not negative at node " + std::to_string(i);
      return v;
    }
  }
  return v;
}

namespace {

Real psi_theta_lhs(const Real& x) {
  return Real("1.0000000193378") * sqrt(x) + Real("1.01718") * cbrt(x);
}

void require_broadbent_range(const Real& x) {
  if (x < exp(Real(50))) {
    throw ParameterError("psi - theta estimate needs x >= e^50, got " + x.str(8));
  }
}

}  // namespace

MarginVerdict psi_theta_margin(const Real& x, const Real& C, const Real& a) {
  require_broadbent_range(x);
  Real lhs = psi_theta_lhs(x);
  Real rhs = (C - 2) * a * sqrt(x) * log(x);
  const bool pass = lhs <= rhs;
  return {pass, std::move(lhs), std::move(rhs)};
}

Real c_min_for(const Real& x, const Real& a) {
  require_broadbent_range(x);
  return 2 + psi_theta_lhs(x) / (a * sqrt(x) * log(x));
}

}  // namespace primebounds
