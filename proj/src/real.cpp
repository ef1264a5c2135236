#include "primebounds/real.hpp"

#include <cmath>
#include <ostream>
#include <string>
#include <utility>

#include "primebounds/errors.hpp"

namespace primebounds {
namespace {

// MPFR starts at 53 bits; the library default is applied once per process.
const bool kDefaultPrecisionApplied = [] {
  mpfr_set_default_prec(kDefaultPrecisionBits);
  return true;
}();

constexpr mpfr_rnd_t kRound = MPFR_RNDN;

template <typename F>
Real unary(const Real& x, F f) {
  Real r;
  f(r.get(), x.get(), kRound);
  return r;
}

}  // namespace

unsigned precision_bits() {
  return static_cast<unsigned>(mpfr_get_default_prec());
}

void set_precision_bits(unsigned bits) {
  (void)kDefaultPrecisionApplied;
  if (bits < kMinimumPrecisionBits) {
    throw ParameterError("precision must be at least " +
                         std::to_string(kMinimumPrecisionBits) + " bits, got " +
                         std::to_string(bits));
  }
  mpfr_set_default_prec(static_cast<mpfr_prec_t>(bits));
}

ScopedPrecision::ScopedPrecision(unsigned bits) : saved_(mpfr_get_default_prec()) {
  mpfr_set_default_prec(static_cast<mpfr_prec_t>(bits < MPFR_PREC_MIN ? MPFR_PREC_MIN : bits));
}

ScopedPrecision::~ScopedPrecision() { mpfr_set_default_prec(saved_); }

Real::Real() {
  mpfr_init(value_);
  mpfr_set_zero(value_, 1);
}

Real::Real(int v) : Real(static_cast<long>(v)) {}

Real::Real(long v) {
  mpfr_init(value_);
  mpfr_set_si(value_, v, kRound);
}

Real::Real(long long v) {
  mpfr_init(value_);
  mpfr_set_sj(value_, static_cast<intmax_t>(v), kRound);
}

Real::Real(unsigned v) : Real(static_cast<unsigned long>(v)) {}

Real::Real(unsigned long v) {
  mpfr_init(value_);
  mpfr_set_ui(value_, v, kRound);
}

Real::Real(unsigned long long v) {
  mpfr_init(value_);
  mpfr_set_uj(value_, static_cast<uintmax_t>(v), kRound);
}

Real::Real(double v) {
  mpfr_init(value_);
  mpfr_set_d(value_, v, kRound);
}

Real::Real(std::string_view text) {
  mpfr_init(value_);
  const std::string s(text);
  char* end = nullptr;
  if (!s.empty()) mpfr_strtofr(value_, s.c_str(), &end, 10, kRound);
  if (s.empty() || end != s.c_str() + s.size()) {
    mpfr_clear(value_);
    throw ParameterError("not a decimal number: '" + s + "'");
  }
}

Real::Real(const Real& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, kRound);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    if (mpfr_get_prec(value_) != mpfr_get_prec(other.value_)) {
      mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    }
    mpfr_set(value_, other.value_, kRound);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::with_precision(const Real& value, unsigned bits) {
  ScopedPrecision scope(bits);
  Real r;
  mpfr_set(r.value_, value.value_, kRound);
  return r;
}

unsigned Real::precision() const { return static_cast<unsigned>(mpfr_get_prec(value_)); }

double Real::to_double() const { return mpfr_get_d(value_, kRound); }

long double Real::to_long_double() const { return mpfr_get_ld(value_, kRound); }

std::string Real::str(int digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", digits > 1 ? digits - 1 : 0, value_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

std::string Real::exact_str() const {
  if (!is_finite()) return str();
  const size_t digits = mpfr_get_str_ndigits(10, mpfr_get_prec(value_));
  mpfr_exp_t exponent = 0;
  char* raw = mpfr_get_str(nullptr, &exponent, 10, digits, value_, kRound);
  std::string mant(raw);
  mpfr_free_str(raw);
  if (is_zero()) return "0";
  std::string sign;
  if (mant.front() == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  // mant = d1 d2 ... dn, value = 0.d1d2...dn * 10^exponent
  return sign + mant.substr(0, 1) + "." + mant.substr(1) + "e" + std::to_string(exponent - 1);
}

bool Real::is_finite() const { return mpfr_number_p(value_) != 0; }
bool Real::is_nan() const { return mpfr_nan_p(value_) != 0; }
bool Real::is_zero() const { return mpfr_zero_p(value_) != 0; }
bool Real::is_integer() const { return mpfr_integer_p(value_) != 0; }
int Real::sign() const { return mpfr_sgn(value_); }

Real& Real::operator+=(const Real& o) {
  mpfr_add(value_, value_, o.value_, kRound);
  return *this;
}
Real& Real::operator-=(const Real& o) {
  mpfr_sub(value_, value_, o.value_, kRound);
  return *this;
}
Real& Real::operator*=(const Real& o) {
  mpfr_mul(value_, value_, o.value_, kRound);
  return *this;
}
Real& Real::operator/=(const Real& o) {
  mpfr_div(value_, value_, o.value_, kRound);
  return *this;
}
Real& Real::operator+=(long o) {
  mpfr_add_si(value_, value_, o, kRound);
  return *this;
}
Real& Real::operator-=(long o) {
  mpfr_sub_si(value_, value_, o, kRound);
  return *this;
}
Real& Real::operator*=(long o) {
  mpfr_mul_si(value_, value_, o, kRound);
  return *this;
}
Real& Real::operator/=(long o) {
  mpfr_div_si(value_, value_, o, kRound);
  return *this;
}

Real operator-(const Real& a) { return unary(a, mpfr_neg); }

Real operator+(const Real& a, const Real& b) {
  Real r;
  mpfr_add(r.get(), a.get(), b.get(), kRound);
  return r;
}
Real operator-(const Real& a, const Real& b) {
  Real r;
  mpfr_sub(r.get(), a.get(), b.get(), kRound);
  return r;
}
Real operator*(const Real& a, const Real& b) {
  Real r;
  mpfr_mul(r.get(), a.get(), b.get(), kRound);
  return r;
}
Real operator/(const Real& a, const Real& b) {
  Real r;
  mpfr_div(r.get(), a.get(), b.get(), kRound);
  return r;
}
Real operator+(const Real& a, long b) {
  Real r;
  mpfr_add_si(r.get(), a.get(), b, kRound);
  return r;
}
Real operator+(long a, const Real& b) { return b + a; }
Real operator-(const Real& a, long b) {
  Real r;
  mpfr_sub_si(r.get(), a.get(), b, kRound);
  return r;
}
Real operator-(long a, const Real& b) {
  Real r;
  mpfr_si_sub(r.get(), a, b.get(), kRound);
  return r;
}
Real operator*(const Real& a, long b) {
  Real r;
  mpfr_mul_si(r.get(), a.get(), b, kRound);
  return r;
}
Real operator*(long a, const Real& b) { return b * a; }
Real operator/(const Real& a, long b) {
  Real r;
  mpfr_div_si(r.get(), a.get(), b, kRound);
  return r;
}
Real operator/(long a, const Real& b) {
  Real r;
  mpfr_si_div(r.get(), a, b.get(), kRound);
  return r;
}

bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.get(), b.get()) != 0; }
bool operator!=(const Real& a, const Real& b) { return !(a == b); }
bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.get(), b.get()) != 0; }
bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.get(), b.get()) != 0; }
bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.get(), b.get()) != 0; }
bool operator>=(const Real& a, const Real& b) {
  return mpfr_greaterequal_p(a.get(), b.get()) != 0;
}

std::ostream& operator<<(std::ostream& os, const Real& r) {
  const auto digits = os.precision() > 0 ? static_cast<int>(os.precision()) : 20;
  return os << r.str(digits);
}

Real abs(const Real& x) { return unary(x, mpfr_abs); }
Real sqrt(const Real& x) { return unary(x, mpfr_sqrt); }
Real cbrt(const Real& x) { return unary(x, mpfr_cbrt); }
Real exp(const Real& x) { return unary(x, mpfr_exp); }
Real expm1(const Real& x) { return unary(x, mpfr_expm1); }
Real log(const Real& x) { return unary(x, mpfr_log); }
Real log1p(const Real& x) { return unary(x, mpfr_log1p); }
Real log10(const Real& x) { return unary(x, mpfr_log10); }
Real sin(const Real& x) { return unary(x, mpfr_sin); }
Real cos(const Real& x) { return unary(x, mpfr_cos); }
Real sinh(const Real& x) { return unary(x, mpfr_sinh); }
Real cosh(const Real& x) { return unary(x, mpfr_cosh); }

Real pow(const Real& base, const Real& exponent) {
  Real r;
  mpfr_pow(r.get(), base.get(), exponent.get(), kRound);
  return r;
}

Real pow(const Real& base, long exponent) {
  Real r;
  mpfr_pow_si(r.get(), base.get(), exponent, kRound);
  return r;
}

Real floor(const Real& x) {
  Real r;
  mpfr_floor(r.get(), x.get());
  return r;
}

Real ceil(const Real& x) {
  Real r;
  mpfr_ceil(r.get(), x.get());
  return r;
}

Real min(const Real& a, const Real& b) { return a <= b ? a : b; }
Real max(const Real& a, const Real& b) { return a >= b ? a : b; }

Real ldexp(const Real& x, long e) {
  Real r;
  mpfr_mul_2si(r.get(), x.get(), e, kRound);
  return r;
}

namespace {

Real round_sig(const Real& v, int sig, bool up) {
  if (sig < 1) throw ParameterError("significant figures must be positive");
  if (v.is_zero() || !v.is_finite()) return v;
  const Real mag = abs(v);
  long k = static_cast<long>(std::floor(log10(mag).to_double()));
  // log10 can land on the wrong side of an exact power of ten.
  if (pow(Real(10), k) > mag) --k;
  if (pow(Real(10), k + 1) <= mag) ++k;
  const long shift = sig - 1 - k;
  const Real scaled = v * pow(Real(10), shift);
  const Real r = up ? ceil(scaled) : floor(scaled);
  // r is an integer; dividing by an exact power of ten keeps one rounding.
  return shift >= 0 ? r / pow(Real(10), shift) : r * pow(Real(10), -shift);
}

}  // namespace

Real round_up_sig(const Real& v, int sig) { return round_sig(v, sig, true); }
Real round_down_sig(const Real& v, int sig) { return round_sig(v, sig, false); }

Real const_pi() {
  Real r;
  mpfr_const_pi(r.get(), kRound);
  return r;
}

Real const_euler_gamma() {
  Real r;
  mpfr_const_euler(r.get(), kRound);
  return r;
}

Real const_e() { return exp(Real(1)); }

inline namespace literals {
Real operator""_r(const char* text) { return Real(std::string_view(text)); }
}  // namespace literals

}  // namespace primebounds
