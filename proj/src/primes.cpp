#include "primebounds/primes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "primebounds/errors.hpp"
#include "primebounds/special.hpp"

namespace primebounds {
namespace {

constexpr const char* kCacheMagic = "primebounds-prime-cache";
constexpr int kCacheVersion = 1;

std::vector<std::uint32_t> small_primes(std::uint64_t n) {
  std::vector<char> composite(n + 1, 0);
  std::vector<std::uint32_t> out;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = 1;
  }
  return out;
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::uint64_t fnv1a(const std::uint32_t* data, std::size_t count, std::uint64_t seed) {
  std::uint64_t h = 1469598103934665603ULL ^ seed;
  for (std::size_t i = 0; i < count; ++i) {
    std::uint32_t v = data[i];
    for (int b = 0; b < 4; ++b) {
      h ^= (v >> (8 * b)) & 0xffU;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

Real log_of(std::uint64_t n) {
  Real r;
  mpfr_log_ui(r.get(), static_cast<unsigned long>(n), MPFR_RNDN);
  return r;
}

struct CachedRecord {
  std::uint64_t hi = 0;
  std::string pi, theta, psi, Pi;
  std::uint64_t hash = 0;
};

std::string header_line(std::uint64_t limit, std::uint64_t segment) {
  std::ostringstream os;
  os << kCacheMagic << ' ' << kCacheVersion << " limit " << limit << " segment " << segment
     << " bits " << PrimeTables::kAccumulatorBits;
  return os.str();
}

std::string record_line(std::size_t index, const Checkpoint& cp) {
  std::ostringstream os;
  os << index << ' ' << cp.x << ' ' << cp.pi.exact_str() << ' ' << cp.theta.exact_str() << ' '
     << cp.psi.exact_str() << ' ' << cp.Pi.exact_str() << ' ' << std::hex << cp.hash;
  return os.str();
}

// Reads the valid prefix of a cache file. Anything after the first bad line
// is dropped and reported.
std::vector<CachedRecord> read_cache(const std::filesystem::path& path, std::uint64_t limit,
                                     std::uint64_t segment, std::vector<std::string>& warnings) {
  std::vector<CachedRecord> out;
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  if (!std::getline(in, line) || line != header_line(limit, segment)) {
    warnings.push_back("prime cache " + path.string() + " has a foreign header; rebuilding");
    return out;
  }
  while (std::getline(in, line)) {
    std::istringstream is(line);
    std::size_t index = 0;
    CachedRecord rec;
    std::string hash;
    if (!(is >> index >> rec.hi >> rec.pi >> rec.theta >> rec.psi >> rec.Pi >> hash) ||
        index != out.size()) {
      warnings.push_back("prime cache " + path.string() + " is corrupt at segment " +
                         std::to_string(out.size()) + "; rebuilding from there");
      break;
    }
    try {
      rec.hash = std::stoull(hash, nullptr, 16);
    } catch (const std::exception&) {
      warnings.push_back("prime cache " + path.string() + " has a bad hash at segment " +
                         std::to_string(out.size()) + "; rebuilding from there");
      break;
    }
    out.push_back(std::move(rec));
  }
  return out;
}

Real parse_checkpoint_value(const std::string& s) {
  return Real(std::string_view(s));
}

}  // namespace

std::filesystem::path cache_file_path(const std::filesystem::path& cache_dir, std::uint64_t limit,
                                      std::uint64_t segment_size) {
  return cache_dir / ("primes-" + std::to_string(limit) + "-" + std::to_string(segment_size) +
                      ".v" + std::to_string(kCacheVersion) + ".txt");
}

PrimeTables PrimeTables::build(std::uint64_t limit, const SieveOptions& options) {
  if (limit < 100) throw ParameterError("prime tables need limit >= 100");
  if (limit >= (std::uint64_t{1} << 32)) throw ParameterError("prime tables need limit < 2^32");
  if (options.segment_size < 1024) throw ParameterError("segment size must be at least 1024");

  ScopedPrecision scope(kAccumulatorBits);
  PrimeTables t;
  t.limit_ = limit;
  t.segment_size_ = options.segment_size;

  const std::uint64_t root = isqrt(limit);
  const std::vector<std::uint32_t> base = small_primes(root);
  for (std::uint32_t p : base) {
    std::uint64_t q = std::uint64_t{p} * p;
    for (unsigned m = 2; q <= limit; ++m, q *= p) t.powers_.push_back({q, p, m});
  }
  std::sort(t.powers_.begin(), t.powers_.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.n < b.n; });

  std::vector<CachedRecord> cached;
  std::filesystem::path cache_path;
  std::ofstream cache_out;
  if (options.cache_dir) {
    std::error_code ec;
    std::filesystem::create_directories(*options.cache_dir, ec);
    if (ec) throw IoError("cannot create cache directory " + options.cache_dir->string());
    cache_path = cache_file_path(*options.cache_dir, limit, options.segment_size);
    cached = read_cache(cache_path, limit, options.segment_size, t.warnings_);
  }

  Real pi(0), theta(0), psi(0), Pi(0);
  std::vector<char> composite;
  std::size_t power_idx = 0;
  bool cache_valid = true;
  std::size_t segment_index = 0;
  for (std::uint64_t lo = 0; lo <= limit; lo += options.segment_size, ++segment_index) {
    const std::uint64_t hi = std::min(limit, lo + options.segment_size - 1);
    composite.assign(hi - lo + 1, 0);
    for (std::uint32_t p : base) {
      const std::uint64_t pp = std::uint64_t{p} * p;
      if (pp > hi) break;
      std::uint64_t start = std::max(pp, (lo + p - 1) / p * p);
      for (std::uint64_t j = start; j <= hi; j += p) composite[j - lo] = 1;
    }
    const std::size_t first = t.primes_.size();
    for (std::uint64_t n = std::max<std::uint64_t>(lo, 2); n <= hi; ++n) {
      if (!composite[n - lo]) t.primes_.push_back(static_cast<std::uint32_t>(n));
    }
    const std::size_t found = t.primes_.size() - first;
    const std::uint64_t hash = fnv1a(t.primes_.data() + first, found, hi);

    const std::size_t power_begin = power_idx;
    while (power_idx < t.powers_.size() && t.powers_[power_idx].n <= hi) ++power_idx;

    Checkpoint cp;
    cp.x = hi;
    cp.hash = hash;
    if (cache_valid && segment_index < cached.size()) {
      const CachedRecord& rec = cached[segment_index];
      if (rec.hi == hi && rec.hash == hash) {
        cp.pi = parse_checkpoint_value(rec.pi);
        cp.theta = parse_checkpoint_value(rec.theta);
        cp.psi = parse_checkpoint_value(rec.psi);
        cp.Pi = parse_checkpoint_value(rec.Pi);
        pi = cp.pi;
        theta = cp.theta;
        psi = cp.psi;
        Pi = cp.Pi;
        ++t.restored_;
        t.checkpoints_.push_back(std::move(cp));
        continue;
      }
      t.warnings_.push_back("prime cache segment " + std::to_string(segment_index) +
                            " does not match the sieve; rebuilding from there");
    }
    if (cache_valid && options.cache_dir) {
      // Rewrite the file with the verified prefix, then append from here on.
      cache_valid = false;
      cache_out.open(cache_path, std::ios::trunc);
      if (!cache_out) throw IoError("cannot write prime cache " + cache_path.string());
      cache_out << header_line(limit, options.segment_size) << '\n';
      for (std::size_t i = 0; i < t.checkpoints_.size(); ++i) {
        cache_out << record_line(i, t.checkpoints_[i]) << '\n';
      }
    }
    cache_valid = false;

    pi += static_cast<long>(found);
    Pi += static_cast<long>(found);
    Real seg_theta(0);
    for (std::size_t i = first; i < t.primes_.size(); ++i) seg_theta += log_of(t.primes_[i]);
    theta += seg_theta;
    psi += seg_theta;
    for (std::size_t i = power_begin; i < power_idx; ++i) {
      psi += log_of(t.powers_[i].p);
      Pi += Real(1) / static_cast<long>(t.powers_[i].m);
    }
    cp.pi = pi;
    cp.theta = theta;
    cp.psi = psi;
    cp.Pi = Pi;
    if (cache_out.is_open()) {
      cache_out << record_line(segment_index, cp) << '\n';
      cache_out.flush();
      if (!cache_out) throw IoError("write failed for prime cache " + cache_path.string());
    }
    t.checkpoints_.push_back(std::move(cp));
  }
  return t;
}

Real PrimeTables::plain_count(CountKind kind, std::uint64_t n) const {
  ScopedPrecision scope(kAccumulatorBits);
  const std::uint64_t seg = n / segment_size_;
  Real acc(0);
  std::uint64_t from = 0;
  if (seg > 0) {
    const Checkpoint& cp = checkpoints_[seg - 1];
    from = cp.x + 1;
    switch (kind) {
      case CountKind::pi: acc = cp.pi; break;
      case CountKind::theta: acc = cp.theta; break;
      case CountKind::psi: acc = cp.psi; break;
      case CountKind::Pi: acc = cp.Pi; break;
    }
  }
  auto lo = std::lower_bound(primes_.begin(), primes_.end(), from);
  auto hi = std::upper_bound(primes_.begin(), primes_.end(), n);
  if (kind == CountKind::pi || kind == CountKind::Pi) {
    acc += static_cast<long>(hi - lo);
  } else {
    for (auto it = lo; it != hi; ++it) acc += log_of(*it);
  }
  if (kind == CountKind::psi || kind == CountKind::Pi) {
    for (const auto& pp : powers_) {
      if (pp.n < from) continue;
      if (pp.n > n) break;
      if (kind == CountKind::psi) {
        acc += log_of(pp.p);
      } else {
        acc += Real(1) / static_cast<long>(pp.m);
      }
    }
  }
  return acc;
}

Real PrimeTables::count(CountKind kind, const Real& x) const {
  if (x > Real(static_cast<unsigned long>(limit_))) {
    throw CoverageError("count at x = " + x.str(12) + " is beyond the table limit " +
                        std::to_string(limit_));
  }
  if (x < 2) return Real(0);
  const auto n = static_cast<std::uint64_t>(mpfr_get_ui(floor(x).get(), MPFR_RNDZ));
  Real value = plain_count(kind, n);
  if (x.is_integer()) {
    ScopedPrecision scope(kAccumulatorBits);
    // Halve the final term when n itself is a prime power.
    const bool prime = std::binary_search(primes_.begin(), primes_.end(), n);
    if (prime) {
      if (kind == CountKind::theta || kind == CountKind::psi) {
        value -= log_of(n) / 2;
      } else {
        value -= Real(1) / 2;
      }
    } else if (kind == CountKind::psi || kind == CountKind::Pi) {
      auto it = std::lower_bound(powers_.begin(), powers_.end(), n,
                                 [](const PrimePower& a, std::uint64_t v) { return a.n < v; });
      if (it != powers_.end() && it->n == n) {
        if (kind == CountKind::psi) {
          value -= log_of(it->p) / 2;
        } else {
          value -= Real(1) / static_cast<long>(2 * it->m);
        }
      }
    }
  }
  return Real::with_precision(value, precision_bits());
}

Real psi_theta_gap(const Real& x, const PrimeTables& tables) {
  // Summed straight from the prime powers; differencing psi and theta leaves
  // rounding noise that breaks monotonicity.
  tables.count(CountKind::theta, x);  // coverage check
  Real gap(0);
  {
    ScopedPrecision scope(PrimeTables::kAccumulatorBits);
    for (const auto& pp : tables.higher_powers()) {
      const Real n(static_cast<unsigned long>(pp.n));
      if (n > x) break;
      gap += n == x ? log(Real(static_cast<unsigned long>(pp.p))) / 2
                    : log(Real(static_cast<unsigned long>(pp.p)));
    }
  }
  return Real::with_precision(gap, precision_bits());
}

std::uint64_t prime_count_upto(std::uint64_t n) {
  if (n < 2) return 0;
  const std::uint64_t root = isqrt(n);
  const std::vector<std::uint32_t> base = small_primes(root);
  // Odd numbers only; index i stands for lo + 2i.
  constexpr std::uint64_t kSpan = std::uint64_t{1} << 20;
  std::vector<char> composite(kSpan);
  std::uint64_t count = 1;  // the prime 2
  for (std::uint64_t lo = 3; lo <= n; lo += 2 * kSpan) {
    const std::uint64_t hi = std::min(n, lo + 2 * kSpan - 1);
    const std::uint64_t slots = (hi - lo) / 2 + 1;
    std::fill(composite.begin(), composite.begin() + static_cast<std::ptrdiff_t>(slots), 0);
    for (std::size_t k = 1; k < base.size(); ++k) {
      const std::uint64_t p = base[k];
      const std::uint64_t pp = p * p;
      if (pp > hi) break;
      std::uint64_t start = std::max(pp, (lo + p - 1) / p * p);
      if (start % 2 == 0) start += p;
      for (std::uint64_t j = start; j <= hi; j += 2 * p) composite[(j - lo) / 2] = 1;
    }
    for (std::uint64_t i = 0; i < slots; ++i) count += composite[i] == 0;
  }
  return count;
}

const char* kind_name(InequalityKind kind) {
  switch (kind) {
    case InequalityKind::psi_sq: return "psi_sq";
    case InequalityKind::theta_sq: return "theta_sq";
    case InequalityKind::psi_shift: return "psi_shift";
    case InequalityKind::theta_shift: return "theta_shift";
    case InequalityKind::Pi_li: return "Pi_li";
    case InequalityKind::pi_li: return "pi_li";
  }
  return "?";
}

InequalityKind parse_inequality_kind(const std::string& name) {
  for (auto k : {InequalityKind::psi_sq, InequalityKind::theta_sq, InequalityKind::psi_shift,
                 InequalityKind::theta_shift, InequalityKind::Pi_li, InequalityKind::pi_li}) {
    if (name == kind_name(k)) return k;
  }
  throw ParameterError("unknown inequality kind '" + name + "'");
}

std::string InequalitySpec::name() const {
  std::string out = std::string(kind_name(kind)) + "(a=" + a.str(6);
  if (kind == InequalityKind::psi_shift || kind == InequalityKind::theta_shift) {
    out += ",C=" + C.str(6);
  }
  return out + ")";
}

bool ScanReport::holds_from(const Real& t) const {
  if (!last_violation) return true;
  if (last_violation->x < t) return true;
  return last_violation->x == t && last_violation->side < 0;
}

namespace {

struct Sums {
  Real pi, theta, psi, Pi;
};

struct FastSums {
  long double pi, theta, psi, Pi;
};

FastSums fast(const Sums& s) {
  return {s.pi.to_long_double(), s.theta.to_long_double(), s.psi.to_long_double(),
          s.Pi.to_long_double()};
}

Real from_ld(long double v) {
  Real r;
  mpfr_set_ld(r.get(), v, MPFR_RNDN);
  return r;
}

// li(x) for 1 < x < 2^32 in long double: Ei(log x) by its positive series.
long double fast_li(long double x) {
  const long double y = std::log(x);
  long double term = y;
  long double sum = y;
  for (int n = 2; n < 400; ++n) {
    term *= y / n;
    const long double add = term / n;
    sum += add;
    if (add < sum * 1e-21L) break;
  }
  return 0.577215664901532860606512090082402431L + std::log(y) + sum;
}

// Each point is decided in long double unless the two sides are within a
// relative 1e-9 of each other; those close calls are redone in MPFR.
class Sweep {
 public:
  explicit Sweep(const std::vector<InequalitySpec>& specs) {
    for (const auto& s : specs) {
      if (s.a.sign() <= 0) throw ParameterError("inequality constant a must be positive");
      reports_.push_back(ScanReport{s, true, std::nullopt, 0, 0});
      a_.push_back(s.a.to_long_double());
      c_.push_back(s.C.to_long_double());
      if (s.kind == InequalityKind::Pi_li || s.kind == InequalityKind::pi_li) needs_li_ = true;
    }
  }

  void eval(long double x, int side, const Sums& f) { eval(x, side, f, fast(f)); }

  void eval(long double x, int side, const Sums& f, const FastSums& ff) {
    const long double L = std::log(x);
    const long double rx = std::sqrt(x);
    const long double li_x = needs_li_ ? fast_li(x) : 0.0L;
    for (std::size_t i = 0; i < reports_.size(); ++i) {
      ScanReport& r = reports_[i];
      long double value = 0;
      long double h = 0;
      long double ref = x;
      switch (r.spec.kind) {
        case InequalityKind::psi_sq: value = ff.psi; h = L * L; break;
        case InequalityKind::theta_sq: value = ff.theta; h = L * L; break;
        case InequalityKind::psi_shift: value = ff.psi; h = L * (L - c_[i]); break;
        case InequalityKind::theta_shift: value = ff.theta; h = L * (L - c_[i]); break;
        case InequalityKind::Pi_li: value = ff.Pi; h = L; ref = li_x; break;
        case InequalityKind::pi_li: value = ff.pi; h = L; ref = li_x; break;
      }
      const long double lhs = std::fabs(value - ref);
      const long double bound = a_[i] * rx * h;
      ++r.points;
      const long double scale = std::fabs(bound) + std::fabs(ref) + 1;
      if (std::fabs(bound - lhs) <= 1e-9L * scale) {
        ++exact_evaluations_;
        exact(r, from_ld(x), side, f);
      } else if (!(lhs < bound)) {
        record(r, from_ld(x), side, from_ld(lhs), from_ld(bound));
      }
    }
  }

  // Full-precision evaluation, used for close calls and scan endpoints.
  void exact(ScanReport& r, const Real& x, int side, const Sums& f) {
    const InequalitySpec& s = r.spec;
    const Real L = log(x);
    Real value;
    Real h;
    Real ref = x;
    switch (s.kind) {
      case InequalityKind::psi_sq: value = f.psi; h = L * L; break;
      case InequalityKind::theta_sq: value = f.theta; h = L * L; break;
      case InequalityKind::psi_shift: value = f.psi; h = L * (L - s.C); break;
      case InequalityKind::theta_shift: value = f.theta; h = L * (L - s.C); break;
      case InequalityKind::Pi_li: value = f.Pi; h = L; ref = li(x); break;
      case InequalityKind::pi_li: value = f.pi; h = L; ref = li(x); break;
    }
    Real lhs = abs(value - ref);
    Real bound = s.a * sqrt(x) * h;
    if (!(lhs < bound)) record(r, x, side, std::move(lhs), std::move(bound));
  }

  void exact_all(const Real& x, int side, const Sums& f) {
    for (auto& r : reports_) {
      ++r.points;
      exact(r, x, side, f);
    }
  }

  std::vector<ScanReport> take() { return std::move(reports_); }

 private:
  static void record(ScanReport& r, Real x, int side, Real lhs, Real bound) {
    ++r.violations;
    r.holds_everywhere = false;
    r.last_violation = ScanPoint{std::move(x), side, std::move(lhs), std::move(bound)};
  }

  std::vector<ScanReport> reports_;
  std::vector<long double> a_;
  std::vector<long double> c_;
  bool needs_li_ = false;
  std::uint64_t exact_evaluations_ = 0;
};

Sums add(const Sums& s, const Real& w_pi, const Real& w_theta, const Real& w_psi,
         const Real& w_Pi) {
  return {s.pi + w_pi, s.theta + w_theta, s.psi + w_psi, s.Pi + w_Pi};
}

}  // namespace

std::vector<ScanReport> scan_inequalities(const std::vector<InequalitySpec>& specs,
                                          const Real& x_lo, const Real& x_hi,
                                          const PrimeTables& tables, const ScanOptions& options) {
  if (!(x_lo > 1) || !(x_lo < x_hi)) throw ParameterError("scan needs 1 < x_lo < x_hi");
  if (x_hi > Real(static_cast<unsigned long>(tables.limit()))) {
    throw CoverageError("scan up to " + x_hi.str(10) + " is beyond the table limit " +
                        std::to_string(tables.limit()));
  }
  ScopedPrecision scope(std::max(precision_bits(), PrimeTables::kAccumulatorBits));
  Sweep sweep(specs);
  Sums f{Real(0), Real(0), Real(0), Real(0)};
  FastSums ff{0, 0, 0, 0};
  const auto& primes = tables.primes();
  const auto& powers = tables.higher_powers();
  const long double lo = x_lo.to_long_double();
  const long double hi = x_hi.to_long_double();
  std::size_t ip = 0;
  std::size_t iq = 0;
  long double prev = 0;  // last jump location
  bool lo_done = false;
  const unsigned samples = options.interior_samples;

  auto interior = [&](long double a, long double b) {
    for (unsigned k = 1; k <= samples; ++k) {
      const long double x = a + (b - a) * k / (samples + 1);
      if (x > lo && x < hi) sweep.eval(x, 0, f, ff);
    }
  };

  while (ip < primes.size() || iq < powers.size()) {
    const bool take_prime =
        iq >= powers.size() || (ip < primes.size() && primes[ip] < powers[iq].n);
    const std::uint64_t n_int = take_prime ? primes[ip] : powers[iq].n;
    const Real n(static_cast<unsigned long>(n_int));
    if (n > x_hi) break;
    const auto nl = static_cast<long double>(n_int);
    Real w_theta = take_prime ? log(n) : Real(0);
    Real w_psi = take_prime ? w_theta : log(Real(static_cast<unsigned long>(powers[iq].p)));
    Real w_pi = take_prime ? Real(1) : Real(0);
    Real w_Pi = take_prime ? Real(1) : Real(1) / static_cast<long>(powers[iq].m);
    if (take_prime) {
      ++ip;
    } else {
      ++iq;
    }

    if (n > x_lo) {
      if (!lo_done) {
        sweep.exact_all(x_lo, 0, f);
        lo_done = true;
      }
      interior(prev, nl);
      sweep.eval(nl, -1, f, ff);
    }
    if (n >= x_lo) {
      lo_done = true;
      sweep.eval(nl, 0, add(f, w_pi / 2, w_theta / 2, w_psi / 2, w_Pi / 2));
      f = add(f, w_pi, w_theta, w_psi, w_Pi);
      ff = fast(f);
      if (n < x_hi) sweep.eval(nl, 1, f, ff);
    } else {
      f = add(f, w_pi, w_theta, w_psi, w_Pi);
      ff = fast(f);
    }
    prev = nl;
  }
  if (!lo_done) sweep.exact_all(x_lo, 0, f);
  interior(prev, hi);
  if (!(Real(static_cast<unsigned long>(prev)) == x_hi)) sweep.exact_all(x_hi, 0, f);
  return sweep.take();
}

ScanReport scan_inequality(const InequalitySpec& spec, const Real& x_lo, const Real& x_hi,
                           const PrimeTables& tables, const ScanOptions& options) {
  return scan_inequalities({spec}, x_lo, x_hi, tables, options).front();
}

}  // namespace primebounds
