#pragma once

// Extended-precision real numbers on top of MPFR.
//
// Every Real carries its own mantissa size. Values created by arithmetic take
// the thread's default precision (set_precision_bits / ScopedPrecision), so a
// computation run twice under the same setting gives bit-identical results.
// Copies keep the precision of their source.

// <cstdint> must precede <mpfr.h> for the intmax_t setters.
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <mpfr.h>

namespace primebounds {

inline constexpr unsigned kDefaultPrecisionBits = 192;
inline constexpr unsigned kMinimumPrecisionBits = 100;

// Current default mantissa size in bits for newly created values.
unsigned precision_bits();

// Sets the default mantissa size. Throws ParameterError below 100 bits.
void set_precision_bits(unsigned bits);

// Temporarily changes the default precision (guard bits, precision doubling).
class ScopedPrecision {
 public:
  explicit ScopedPrecision(unsigned bits);
  ~ScopedPrecision();
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  mpfr_prec_t saved_;
};

class Real {
 public:
  Real();
  Real(int v);                 // NOLINT(google-explicit-constructor)
  Real(long v);                // NOLINT(google-explicit-constructor)
  Real(long long v);           // NOLINT(google-explicit-constructor)
  Real(unsigned v);            // NOLINT(google-explicit-constructor)
  Real(unsigned long v);       // NOLINT(google-explicit-constructor)
  Real(unsigned long long v);  // NOLINT(google-explicit-constructor)
  explicit Real(double v);
  // Decimal or scientific notation, rounded to nearest. Throws ParameterError.
  explicit Real(std::string_view text);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  // Copy of `value` rounded to `bits`.
  static Real with_precision(const Real& value, unsigned bits);

  unsigned precision() const;
  double to_double() const;
  long double to_long_double() const;
  // `digits` significant digits in scientific notation.
  std::string str(int digits = 20) const;
  // Shortest decimal string that reads back to exactly this value at this precision.
  std::string exact_str() const;

  bool is_finite() const;
  bool is_nan() const;
  bool is_zero() const;
  bool is_integer() const;
  int sign() const;

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real& operator+=(long o);
  Real& operator-=(long o);
  Real& operator*=(long o);
  Real& operator/=(long o);

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

 private:
  mpfr_t value_;
};

Real operator-(const Real& a);
Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator+(const Real& a, long b);
Real operator+(long a, const Real& b);
Real operator-(const Real& a, long b);
Real operator-(long a, const Real& b);
Real operator*(const Real& a, long b);
Real operator*(long a, const Real& b);
Real operator/(const Real& a, long b);
Real operator/(long a, const Real& b);

bool operator==(const Real& a, const Real& b);
bool operator!=(const Real& a, const Real& b);
bool operator<(const Real& a, const Real& b);
bool operator<=(const Real& a, const Real& b);
bool operator>(const Real& a, const Real& b);
bool operator>=(const Real& a, const Real& b);

std::ostream& operator<<(std::ostream& os, const Real& r);

Real abs(const Real& x);
Real sqrt(const Real& x);
Real cbrt(const Real& x);
Real exp(const Real& x);
Real expm1(const Real& x);
Real log(const Real& x);
Real log1p(const Real& x);
Real log10(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real sinh(const Real& x);
Real cosh(const Real& x);
Real pow(const Real& base, const Real& exponent);
Real pow(const Real& base, long exponent);
Real floor(const Real& x);
Real ceil(const Real& x);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);
// x * 2^e, exact.
Real ldexp(const Real& x, long e);

// Smallest (largest) number with `sig` significant decimal digits that is >= v (<= v).
// Zero maps to zero. The result is the binary value nearest that decimal.
Real round_up_sig(const Real& v, int sig);
Real round_down_sig(const Real& v, int sig);

Real const_pi();
Real const_euler_gamma();
Real const_e();

inline namespace literals {
// 0.16_r style literals keep decimal constants exact up to rounding at the
// current precision (a double literal would be rounded at 53 bits first).
Real operator""_r(const char* text);
}  // namespace literals

}  // namespace primebounds
