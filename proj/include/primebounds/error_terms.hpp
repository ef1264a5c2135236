#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "primebounds/real.hpp"

namespace primebounds {

enum class VariantKind { strong, weak };

struct BoundVariant {
  VariantKind kind = VariantKind::strong;
  Real a;  // leading constant: 1/8pi for strong

  static BoundVariant strong();
  static BoundVariant weak(const Real& a);
  bool is_weak() const { return kind == VariantKind::weak; }
  std::string name() const;
};

struct IterationState {
  Real A, B, C, D, E;
  BoundVariant variant = BoundVariant::strong();
};

// c(x) = log(x)/2 + D.
Real c_of(const Real& x, const IterationState& s);
// Strong: log^{3/2}x loglog x / (E sqrt x). Weak: log^{5/2}x / (E sqrt x).
Real eps_of(const Real& x, const IterationState& s);

// Significant figures used when rounding each derived coefficient up.
struct RoundingPolicy {
  int coef1 = 3;
  int coef2 = 4;
  int alpha3 = 4;
  int coef4 = 4;

  // Digits printed for the first strong iteration.
  static RoundingPolicy coarse() { return {2, 3, 2, 3}; }
};

struct ProfileCoefficients {
  Real coef1, coef2, alpha3, coef4;
};

struct ErrorProfile {
  Real coef1, coef2, alpha3, coef4, coef5a, coef5b;
  ProfileCoefficients exact;  // before rounding up
};

struct ProfileCheck {
  std::string name;
  Real value;
  Real limit;
  bool ok;
};

// Coefficients of E_1 .. E_5 at x = A. Throws ParameterError when a bound's
// precondition fails at A (see profile_checks).
ErrorProfile derive_profile(const IterationState& s, const RoundingPolicy& rounding = {});

// Every precondition derive_profile relies on, evaluated at A.
std::vector<ProfileCheck> profile_checks(const IterationState& s);

struct ErrorTerms {
  Real e1, e2, e3, e4, e5;
  Real sum() const { return e1 + e2 + e3 + e4 + e5; }
};

// Requires x > A unless allow_at_a (used to evaluate E(A) itself).
ErrorTerms e_terms(const Real& x, const IterationState& s, const ErrorProfile& p,
                   bool allow_at_a = false);
Real e_total(const Real& x, const IterationState& s, const ErrorProfile& p,
             bool allow_at_a = false);

struct DecreasingVerdict {
  bool pass = true;
  std::optional<Real> first_offender;  // x of the first failing node
  std::string reason;
  std::size_t points = 0;
};

// Log-spaced grid in y = log x. Consecutive values must strictly decrease
// and the centered difference at every interior node must be negative.
// Requires x_lo < x_hi and grid_points >= 64.
DecreasingVerdict verify_decreasing(const std::function<Real(const Real&)>& f, const Real& x_lo,
                                    const Real& x_hi, std::size_t grid_points);

struct MarginVerdict {
  bool pass;
  Real lhs;  // a1 sqrt x + a2 x^{1/3}
  Real rhs;  // (C - 2) a sqrt x log x
};

// Checks a1 sqrt x + a2 x^{1/3} <= (C - 2) a sqrt x log x with
// a1 = 1 + 1.93378e-8, a2 = 1.01718. Requires x >= e^50.
MarginVerdict psi_theta_margin(const Real& x, const Real& C, const Real& a);

// Smallest C for which psi_theta_margin passes at x.
Real c_min_for(const Real& x, const Real& a);

}  // namespace primebounds
