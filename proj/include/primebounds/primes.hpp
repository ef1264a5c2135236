#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "primebounds/real.hpp"

namespace primebounds {

enum class CountKind { pi, theta, psi, Pi };

// Plain (unhalved) cumulative sums over prime powers <= x.
struct Checkpoint {
  std::uint64_t x = 0;
  Real pi, theta, psi, Pi;
  std::uint64_t hash = 0;  // FNV-1a over the primes of the segment ending at x
};

struct SieveOptions {
  std::uint64_t segment_size = std::uint64_t{1} << 22;
  // When set, checkpoints are persisted under this directory and reused.
  std::optional<std::filesystem::path> cache_dir;
};

class PrimeTables {
 public:
  // Requires 100 <= limit < 2^32.
  static PrimeTables build(std::uint64_t limit, const SieveOptions& options = {});

  std::uint64_t limit() const { return limit_; }
  std::uint64_t segment_size() const { return segment_size_; }
  const std::vector<std::uint32_t>& primes() const { return primes_; }
  // One entry per segment, in order. The last one ends at limit().
  const std::vector<Checkpoint>& checkpoints() const { return checkpoints_; }
  // Segments restored from the cache instead of recomputed.
  std::size_t restored_segments() const { return restored_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  // Normalized count: at an integer prime power the final term is halved.
  // CoverageError when x > limit().
  Real count(CountKind kind, const Real& x) const;

  // Prime powers p^m <= limit with m >= 2, ascending, with their base prime.
  struct PrimePower {
    std::uint64_t n;
    std::uint32_t p;
    unsigned m;
  };
  const std::vector<PrimePower>& higher_powers() const { return powers_; }

  // Bits carried by the theta/psi accumulators.
  static constexpr unsigned kAccumulatorBits = 160;

 private:
  Real plain_count(CountKind kind, std::uint64_t n) const;

  std::uint64_t limit_ = 0;
  std::uint64_t segment_size_ = 0;
  std::vector<std::uint32_t> primes_;
  std::vector<PrimePower> powers_;
  std::vector<Checkpoint> checkpoints_;
  std::size_t restored_ = 0;
  std::vector<std::string> warnings_;
};

// Cache file used for a given limit and segment size inside cache_dir.
std::filesystem::path cache_file_path(const std::filesystem::path& cache_dir, std::uint64_t limit,
                                      std::uint64_t segment_size);

// Exact psi*(x) - theta*(x).
Real psi_theta_gap(const Real& x, const PrimeTables& tables);

// pi(n) for large n by a segmented counting sieve (nothing retained).
std::uint64_t prime_count_upto(std::uint64_t n);

enum class InequalityKind { psi_sq, theta_sq, psi_shift, theta_shift, Pi_li, pi_li };

struct InequalitySpec {
  InequalityKind kind;
  Real a;
  Real C;  // shift kinds only

  std::string name() const;
};

const char* kind_name(InequalityKind kind);
InequalityKind parse_inequality_kind(const std::string& name);

// Position of an evaluation point. side = -1 is the left limit at x,
// +1 the right limit, 0 the value at x itself.
struct ScanPoint {
  Real x;
  int side = 0;
  Real lhs;    // |F(x) - G(x)|
  Real bound;  // a sqrt(x) h(x)
};

struct ScanReport {
  InequalitySpec spec;
  bool holds_everywhere = true;
  std::optional<ScanPoint> last_violation;
  std::uint64_t points = 0;
  std::uint64_t violations = 0;

  // True when no violation was seen at any point >= t. A left limit at n
  // sits just below n.
  bool holds_from(const Real& t) const;
};

struct ScanOptions {
  unsigned interior_samples = 16;
};

// One sweep over every jump of the counting functions in [x_lo, x_hi]:
// left limit, value and right limit at each prime power, plus interior
// samples between consecutive jumps and both endpoints.
std::vector<ScanReport> scan_inequalities(const std::vector<InequalitySpec>& specs,
                                          const Real& x_lo, const Real& x_hi,
                                          const PrimeTables& tables,
                                          const ScanOptions& options = {});

ScanReport scan_inequality(const InequalitySpec& spec, const Real& x_lo, const Real& x_hi,
                           const PrimeTables& tables, const ScanOptions& options = {});

}  // namespace primebounds
