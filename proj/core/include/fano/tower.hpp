#pragma once

// Towers of projectivized split bundles
//
//   X_0 = P^{s0},  X_j = P(O^{r_j} (+) O(c_j H_{j-1})) over X_{j-1},
//
// where H_{j-1} is the primitive ample class with -K = index * H on X_{j-1}
// and P(E) parametrizes hyperplanes in the fibers of E. Each level is stored
// as (r, c); the bundle has rank r + 1.

#include <optional>
#include <string>
#include <vector>

#include "fano/interval.hpp"
#include "fano/numerics.hpp"

namespace fano {

struct Level {
  long r = 0;
  long c = 0;

  friend bool operator==(const Level&, const Level&) = default;
};

struct TowerSpec {
  long base_dim = 1;
  std::vector<Level> levels;

  long dim() const;
  std::string to_string() const;

  friend bool operator==(const TowerSpec&, const TowerSpec&) = default;
};

struct LevelCheck {
  std::size_t level = 0;
  long index_below = 0;
  bool fano = false;
  std::string reason;
};

struct ValidationReport {
  bool valid = true;
  std::vector<LevelCheck> levels;
};

struct FanoInvariants {
  long dim = 0;
  long picard = 0;
  long index = 0;
  ExactInt degree;      // (-K)^dim
  ExactInt gen_degree;  // H^dim with -K = index * H

  /// Interval for the dim-th root of the degree.
  RealInterval delta(long precision_bits = kDefaultStartPrecision) const;
};

/// Checks 0 <= c <= index_below - 1 at each level. Throws InvalidSpec only
/// for structurally malformed input (base_dim < 1 or negative r or c).
ValidationReport validate(const TowerSpec& spec);

/// Exact (-K)^n by the per-level closed form. Throws InvalidSpec if the spec
/// does not validate.
ExactInt degree(const TowerSpec& spec);

FanoInvariants invariants(const TowerSpec& spec);

/// Invariants of every sub-tower: element 0 is the base projective space,
/// element j the tower truncated after level j.
std::vector<FanoInvariants> stage_invariants(const TowerSpec& spec);

/// Index only, without computing degrees.
long index(const TowerSpec& spec);

RealInterval delta(const TowerSpec& spec, long precision_bits = kDefaultStartPrecision);

/// floor(n / (divisor * log n)), certified. n >= 2, divisor > 0.
long floor_n_over_log_n(long n, const Rational& divisor = Rational(1));

enum class BuildMode { Strict, Clamp };

const char* to_string(BuildMode mode);

/// P(O + O(n-1)) over P^{n-1}.
TowerSpec build_batyrev(long n);

/// r = [n / log n], a = s = n - r: index 1, Picard number 2.
TowerSpec build_prop1(long n);

/// r = [n / log n], a = n - 2r: index r + 1. With clamp, r is capped at
/// n / 2 so that a stays non-negative; strict mode throws
/// InvalidConstruction instead.
TowerSpec build_index_variant(long n, bool clamp);

/// Picard number k tower of dimension n built recursively: the k = 2 case is
/// the index variant, and each further level adds
/// r = [n / (2^{k-2} log n)] trivial summands twisted by iota_Y - r - 1.
/// Requires k >= 2, n >= 4 and n / log n >= 2^{k-2}; throws
/// std::invalid_argument when those fail and InvalidConstruction when a
/// recursive step does not yield a valid level.
TowerSpec build_prop2(long n, long k, BuildMode mode);

/// Smallest n in [4, max_n] for which build_prop2(n, k, mode) succeeds.
std::optional<long> prop2_min_valid_n(long k, long max_n, BuildMode mode = BuildMode::Strict);

}  // namespace fano
