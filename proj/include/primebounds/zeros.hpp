#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "primebounds/kernel.hpp"
#include "primebounds/real.hpp"

namespace primebounds {

struct ZeroList {
  std::vector<Real> gammas;  // strictly ascending
  std::string source;
  int decimals = 0;  // fewest decimal places seen on any line

  std::size_t size() const { return gammas.size(); }
  bool empty() const { return gammas.empty(); }
  // First n ordinates (all of them if n >= size()).
  ZeroList first(std::size_t n) const;
};

inline constexpr int kMinZeroDecimals = 9;

// One ordinate per line, optionally preceded by an integer index column.
// Blank lines and lines starting with '#' are ignored. Entries above `limit`
// are dropped. ParseError (with line number) for malformed, short-precision
// or non-ascending lines, or a first ordinate outside (14.13, 14.14).
ZeroList load_zeros(const std::filesystem::path& path,
                    const std::optional<Real>& limit = std::nullopt);
ZeroList parse_zeros(const std::string& text, const std::string& source = "<memory>",
                     const std::optional<Real>& limit = std::nullopt);

struct ZeroSumVerdict {
  bool pass;
  Real t2;
  Real empirical;  // sum over zeros with 0 < |gamma| <= t2: 2/gamma per conjugate pair
  Real bound;      // (1/2pi) log^2(t2/2pi)
  Real margin;     // bound - empirical
  std::size_t zeros_used;
};

// CoverageError when the largest loaded ordinate is below t2.
ZeroSumVerdict check_zero_sum(const ZeroList& zeros, const Real& t2);

struct KernelWeightVerdict {
  bool pass;
  std::size_t checked;
  std::size_t skipped;  // ordinates above c/eps
  Real max_weight;
  Real min_weight;
  std::vector<std::string> warnings;
};

KernelWeightVerdict check_kernel_weights(const ZeroList& zeros, const KernelParams& params);

struct ZeroCountVerdict {
  bool pass;
  Real t;
  std::size_t count;  // loaded ordinates <= t
  Real expected;      // (t/2pi) log(t/2pi) - t/2pi + 7/8
  Real relative_error;
};

// Sanity check against the Riemann-von Mangoldt main term, tolerance 5%.
ZeroCountVerdict check_zero_count(const ZeroList& zeros, const Real& t);

}  // namespace primebounds
