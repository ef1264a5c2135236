#include "oracles.hpp"

#include <mpfr.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <stdexcept>

namespace oracle {

namespace {

// 1/log t - 1/(t - 1), smooth through t = 1.
long double h(long double t) {
  const long double u = t - 1;
  if (std::fabs(u) < 1e-3L) {
    return 0.5L - u / 12 + u * u / 24 - 19 * u * u * u / 720 + 3 * u * u * u * u / 160;
  }
  if (t == 0) return 1;
  return 1 / std::log(t) - 1 / u;
}

long double integrate(long double a, long double b) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<long double, 61>::integrate(h, a, b, 12, 1e-16L);
}

// h has a log-type endpoint singularity at 0; tanh-sinh copes with that.
long double integrate_from_zero(long double b) {
  static boost::math::quadrature::tanh_sinh<long double> ts;
  auto f = [](long double t) { return h(t); };
  return ts.integrate(f, 0.0L, b, 1e-16L);
}

std::string to_string(mpfr_t v, int digits) {
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*Re", digits - 1, v);
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

}  // namespace

long double li_quadrature(long double x) {
  if (x <= 0 || x == 1) throw std::domain_error("li oracle needs x > 0, x != 1");
  // PV of the 1/(t-1) part is log|x - 1|; the rest is a proper integral.
  long double sum = 0;
  if (x <= 2) {
    sum = integrate_from_zero(x);
  } else {
    sum = integrate_from_zero(2);
    // Split geometrically so each piece is gentle.
    long double lo = 2;
    while (lo < x) {
      const long double hi = std::min(x, lo * 4);
      sum += integrate(lo, hi);
      lo = hi;
    }
  }
  return sum + std::log(std::fabs(x - 1));
}

std::string ei_mpfr(const std::string& y, unsigned bits, int digits) {
  mpfr_t a, r;
  mpfr_init2(a, bits);
  mpfr_init2(r, bits);
  mpfr_set_str(a, y.c_str(), 10, MPFR_RNDN);
  mpfr_eint(r, a, MPFR_RNDN);
  std::string out = to_string(r, digits);
  mpfr_clear(a);
  mpfr_clear(r);
  return out;
}

std::string li_mpfr(const std::string& x, unsigned bits, int digits) {
  mpfr_t a, r;
  mpfr_init2(a, bits);
  mpfr_init2(r, bits);
  mpfr_set_str(a, x.c_str(), 10, MPFR_RNDN);
  mpfr_log(a, a, MPFR_RNDN);
  mpfr_eint(r, a, MPFR_RNDN);
  std::string out = to_string(r, digits);
  mpfr_clear(a);
  mpfr_clear(r);
  return out;
}

long double bessel_i1_series(long double c) {
  const long double half = c / 2;
  long double term = half;  // k = 0
  long double sum = term;
  for (int k = 1; k < 10000; ++k) {
    term *= half * half / (static_cast<long double>(k) * (k + 1));
    sum += term;
    if (term < sum * 1e-21L) break;
  }
  return sum;
}

long double bessel_i1_boost(long double c) { return boost::math::cyl_bessel_i(1, c); }

std::complex<long double> ell_complex(std::complex<long double> xi, long double c, long double eps) {
  const std::complex<long double> w = std::sqrt(xi * eps * xi * eps - c * c);
  const std::complex<long double> sinc = std::abs(w) == 0 ? std::complex<long double>(1) : std::sin(w) / w;
  return c / std::sinh(c) * sinc;
}

std::vector<std::uint32_t> primes_trial_division(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t k = 2; k <= n; ++k) {
    if (is_prime(k)) out.push_back(k);
  }
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

long double rel_diff(long double a, long double b) { return std::fabs(a - b) / std::fabs(b); }

}  // namespace oracle
