#pragma once

// Certified checks of the degree lower bounds for the constructed towers,
// the inequalities used along the recursive construction, the thresholds
// where the asymptotic estimates take over, and the classical upper bounds.

#include <optional>
#include <string>
#include <vector>

#include "fano/bound_expr.hpp"
#include "fano/tower.hpp"

namespace fano {

/// 4^-(k^2 - k + 2).
Rational c_const(long k);

/// (3 n^2 / (10 log n))^n in the variable n.
BoundExpr prop1_bound();
/// (n^2 / (7 log n))^n.
BoundExpr index_variant_bound();
/// (c(k) n^k / (log n)^(k-1))^n in the variables n and k.
BoundExpr prop2_bound();

struct CheckResult {
  std::string check;
  long n = 0;
  long k = 0;
  BuildMode mode = BuildMode::Strict;
  std::optional<TowerSpec> spec;
  std::optional<FanoInvariants> invariants;
  std::string bound;
  Verdict verdict;

  /// Index variant only: whether r was capped at n / 2.
  bool clamped = false;
  /// Set when the tower could not be built; verdict is then Undecided.
  std::optional<std::string> construction_error;
  /// False when (n, k) is outside the hypothesis n >= 4, n / log n >= 2^{k-2}.
  bool hypothesis_ok = true;
  /// Prop-2 only: dim = n, picard = k, index = [n / (2^{k-2} log n)] + 1.
  bool structure_ok = true;
  long expected_index = 0;

  bool ok() const { return !construction_error && structure_ok && verdict.holds(); }
};

CheckResult check_prop1(long n, long precision_cap = kDefaultPrecisionCap);
CheckResult check_index_variant(long n, long precision_cap = kDefaultPrecisionCap);
CheckResult check_prop2(long n, long k, long precision_cap = kDefaultPrecisionCap,
                        BuildMode mode = BuildMode::Strict);

struct ChainRecord {
  std::string name;
  std::string branch;  // "all", "large" (n/log n >= 7 * 2^{p-2}) or "small"
  std::string statement;
  Verdict verdict;
  bool exact = false;  // decided by exact rational comparison
};

/// (1 + (iota_Y - r - 1)^s) / iota_Y^s >= 8^-n at one level of a tower.
struct LevelRatioCheck {
  std::size_t level = 0;
  long n = 0;
  long r = 0;
  long s = 0;
  long iota_y = 0;
  Rational lhs;
  Rational rhs;
  bool holds = false;
};

/// Inequalities of the recursive step, evaluated with the actual values
/// r, s, iota_Y of the top level of the strict Picard-k tower. `base_picard`
/// (= k - 1) is the Picard number of the base Y, which is the k that appears
/// in the inequalities as they are usually written.
struct ChainReport {
  long n = 0;
  long k = 0;
  long base_picard = 0;
  long r = 0;
  long s = 0;
  long iota_y = 0;
  bool large_branch = false;
  std::vector<ChainRecord> records;
  std::vector<LevelRatioCheck> level_ratios;

  bool level_ratios_hold() const;
};

/// Propagates InvalidConstruction / std::invalid_argument from the builder.
ChainReport check_chain(long n, long k, long precision_cap = 4096);

enum class ThresholdCondition {
  Prop1Chain,         // log n >= 10 / (10 - 3e)
  IndexVariantChain,  // log n >= 14 / (7 - e)
};

const char* to_string(ThresholdCondition c);

/// Smallest integer n satisfying the condition, certified at both n and n-1.
ExactInt threshold(ThresholdCondition condition, long precision_cap = kDefaultPrecisionCap,
                   long start_bits = kDefaultStartPrecision);

struct UpperBoundFlags {
  bool picard_one = false;
  bool semistable = false;
  bool kahler_einstein = false;
};

struct KnownBound {
  std::string name;
  std::string formula;
  bool applicable = false;
  /// The bound, or its natural logarithm when log_scale is set.
  RealInterval value{kDefaultStartPrecision};
  bool log_scale = false;
  std::optional<ExactInt> exact;
};

/// Exact value for the KMM bound is produced up to this dimension; above it
/// only a log-scale interval is returned.
constexpr long kKmmExactMaxDim = 20;

std::vector<KnownBound> known_upper_bounds(long n, long index, UpperBoundFlags flags,
                                           long precision_bits = kDefaultStartPrecision);

}  // namespace fano
