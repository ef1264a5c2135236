#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "primebounds/error_terms.hpp"
#include "primebounds/real.hpp"

namespace primebounds {

class PrimeTables;

enum class ThresholdKind { strong, weak, buthe };

// strong: B / loglog x * sqrt(x / log x)
// weak:   K * sqrt(x / log^3 x)
// buthe:  K * sqrt(x / log x)
struct ThresholdEquation {
  ThresholdKind kind = ThresholdKind::strong;
  Real constant;
  Real T;

  Real lhs(const Real& x) const;
};

const char* threshold_kind_name(ThresholdKind kind);

// Unique x in [e^10, 1e60] with lhs(x) = T, to relative 1e-12. The bracket is
// widened once before giving up with ParameterError.
Real solve_x_max(const ThresholdEquation& eq);

// E/2 + D E / log A before rounding.
Real admissible_B_exact(const IterationState& s);
// admissible_B_exact rounded up to 3 significant figures.
Real admissible_B(const IterationState& s);

struct AdmissibilityVerdict {
  bool pass = true;
  std::vector<std::string> failures;  // in order of evaluation
  std::optional<ErrorProfile> profile;
  Real e_at_A;
  Real c_limit;  // -E(A)/a
  Real c_min;    // smallest C allowed by the psi - theta step
};

struct AdmissibilityOptions {
  RoundingPolicy rounding;
  // Evaluate the partial-summation slack at x0 = 5000 (strong variant only).
  bool partial_summation = true;
};

AdmissibilityVerdict check_admissible(const IterationState& s,
                                      const AdmissibilityOptions& options = {});

struct PartialSummation {
  std::uint64_t x0;
  Real offset;  // |pi(x0) - li(x0) - (theta(x0) - x0) / log x0|
  Real credit;  // 2 a sqrt(x0)
  Real slack;   // offset - credit; must be negative
};

// Uses exact pi(x0), theta(x0) from the tables. CoverageError when x0 > limit.
PartialSummation partial_summation_slack(std::uint64_t x0, const Real& a,
                                         const PrimeTables& tables);
// Builds its own table up to max(x0, 100).
PartialSummation partial_summation_slack(std::uint64_t x0, const Real& a);

struct SearchOptions {
  Real d_lo{0}, d_hi{8}, d_step{"0.02"};
  Real e_lo{10}, e_hi{20}, e_step{"0.02"};
  // Coarse stride of the E scan in grid steps; refined linearly afterwards.
  unsigned e_stride = 10;
  Real c_step{"0.005"};
  RoundingPolicy rounding;

  // The weak variant keeps D = 0 and scales the E grid [2, 3] by 1/a.
  static SearchOptions weak_defaults(const Real& a);
};

struct RoundRecord {
  IterationState state;
  ErrorProfile profile;
  Real e_at_A;
  Real c_min;
  Real B_exact;
  Real x_max;
};

struct DerivationReport {
  ThresholdKind equation = ThresholdKind::strong;
  Real T;
  std::vector<RoundRecord> rounds;  // x_max strictly increasing
  Real final_K;
  Real final_C;
  Real x_max;
  std::vector<std::string> notes;
};

struct IterateOptions {
  unsigned max_rounds = 4;  // the seed counts as the first round
  Real min_improvement{"0.005"};
  SearchOptions search;
};

// Best (D, E, C) at fixed A, minimising admissible_B_exact.
std::optional<IterationState> optimize_state(const Real& A, const BoundVariant& variant,
                                             const SearchOptions& options);

// Largest multiple of step strictly below -E(A)/a that is >= c_min, or the
// smallest admissible value on a 10x finer grid if none exists.
std::optional<Real> choose_C(const Real& c_limit, const Real& c_min, const Real& step);

// Runs the tightening loop from an admissible seed. The seed's C is replaced
// by the choose_C value. Throws ParameterError if the seed is not admissible.
DerivationReport iterate(const Real& T, const IterationState& seed,
                         const IterateOptions& options = {});

struct TableRow {
  Real key;  // T0 for Table 1, a for Table 2
  Real K;
  Real x_max;
  DerivationReport report;
};

// Seed for a strong derivation at height T: A is the Buthe range (K = 4.92)
// rounded down to 4 significant figures, D = 6, E = 16.
IterationState strong_seed(const Real& T);

std::vector<TableRow> table1(const std::vector<Real>& T0s, const IterateOptions& options = {});

// Weak rows at T = 3e12. The first row starts from the strong range at T
// (rounded down), later rows from the previous row's x_max, with D = 0 and
// E = 2.4 / a.
std::vector<TableRow> table2(const std::vector<Real>& as, const Real& T = Real("3e12"),
                             const IterateOptions& options = {});

// Full weak derivation for a single a, seeded like the first Table 2 row
// unless start_A is given.
DerivationReport derive_weak(const Real& a, const Real& T,
                             const std::optional<Real>& start_A = std::nullopt,
                             const IterateOptions& options = {});

}  // namespace primebounds
