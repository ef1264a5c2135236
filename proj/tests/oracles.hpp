#pragma once

// Independent reference implementations used only by the tests. None of
// them calls into the library.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace oracle {

// li(x) as a principal-value integral, Gauss-Kronrod in long double.
long double li_quadrature(long double x);

// Ei(y) and li(x) straight from MPFR's eint at `bits` precision, as decimal strings.
std::string ei_mpfr(const std::string& y, unsigned bits, int digits);
std::string li_mpfr(const std::string& x, unsigned bits, int digits);

// I_1 by summing the power series term by term in long double.
long double bessel_i1_series(long double c);
// I_1 from Boost.Math.
long double bessel_i1_boost(long double c);

// The smoothing kernel evaluated with complex arithmetic at a complex point.
std::complex<long double> ell_complex(std::complex<long double> xi, long double c, long double eps);

// Primes up to n by trial division.
std::vector<std::uint32_t> primes_trial_division(std::uint32_t n);
bool is_prime(std::uint64_t n);

// Relative difference |a - b| / |b|.
long double rel_diff(long double a, long double b);

}  // namespace oracle
