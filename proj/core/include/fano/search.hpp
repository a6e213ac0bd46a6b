#pragma once

// Exhaustive exact maximization of the anticanonical degree over the
// single-level family P(O^r + O(a)) over P^{n-r}.

#include <span>
#include <vector>

#include "fano/tower.hpp"

namespace fano {

struct BestR {
  long r = 0;
  ExactInt degree;
};

struct BestRA {
  long r = 0;
  long a = 0;
  ExactInt degree;
};

/// Degree of P(O^r + O(a)) over P^{n-r}; requires 0 <= a <= n - r.
ExactInt single_level_degree(long n, long r, long a);

/// Maximizes over a = s = n - r for 0 <= r <= n - 1; ties go to the smaller r.
BestR best_r(long n);

/// Same maximization restricted to the r values in `candidates`, scanned in
/// the given order. The result does not depend on that order.
BestR best_r_over(long n, std::span<const long> candidates);

/// Maximizes over 0 <= r <= n - 1 and 0 <= a <= n - r; ties go to the
/// lexicographically smaller (r, a).
BestRA best_ra(long n);

struct SearchRow {
  long n = 0;
  long r_star = 0;
  long a_star = 0;
  ExactInt degree;
  RealInterval delta{kDefaultStartPrecision};
  /// delta * log n / n^2
  RealInterval ratio{kDefaultStartPrecision};
  /// r_star - n / log n
  RealInterval r_offset{kDefaultStartPrecision};
  /// Certified ratio >= 3/10.
  Verdict ratio_bound;
};

/// One row per entry of `ns` (each >= 3), in the given order.
std::vector<SearchRow> ratio_table(std::span<const long> ns, long precision_bits = kDefaultStartPrecision,
                                   long precision_cap = kDefaultPrecisionCap);

}  // namespace fano
