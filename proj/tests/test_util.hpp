#pragma once

#include <string>

#include "fano/interval.hpp"
#include "fano/numerics.hpp"

namespace fano::testing {

/// Parses a plain decimal such as "-12.345" into an exact rational.
inline Rational dec(const std::string& text) {
  std::string digits;
  long scale = 0;
  bool after_point = false;
  for (char ch : text) {
    if (ch == '.') {
      after_point = true;
      continue;
    }
    digits += ch;
    if (after_point) ++scale;
  }
  Rational q(ExactInt(digits), ExactInt(1) << 0);
  q /= ipow(10, static_cast<unsigned long>(scale));
  q.canonicalize();
  return q;
}

/// True if the interval meets [v - tol, v + tol], where v is a decimal
/// reference value truncated to the shown digits and tol is one unit in its
/// last place.
inline bool meets_reference(const RealInterval& iv, const std::string& reference) {
  const auto point = reference.find('.');
  const long scale = point == std::string::npos ? 0 : static_cast<long>(reference.size() - point - 1);
  const Rational v = dec(reference);
  const Rational tol(ExactInt(1), ipow(10, static_cast<unsigned long>(scale)));
  const Rational lo = v - tol, hi = v + tol;
  return mpfr_cmp_q(iv.lo().get(), hi.get_mpq_t()) <= 0 && mpfr_cmp_q(iv.hi().get(), lo.get_mpq_t()) >= 0;
}

inline double width(const RealInterval& iv) { return iv.width().to_double(MPFR_RNDU); }

}  // namespace fano::testing

#include <numeric>
#include <random>

#include "fano/tower.hpp"

namespace fano::testing {

/// Random valid tower with at most `max_levels` levels and dimension at most
/// `max_dim`. Levels with r = 0 appear with the same odds as the others.
inline TowerSpec random_valid_spec(std::mt19937_64& rng, int max_levels = 3, long max_dim = 10) {
  TowerSpec spec;
  spec.base_dim = std::uniform_int_distribution<long>(1, std::min<long>(4, max_dim))(rng);
  long iota = spec.base_dim + 1;
  long dim = spec.base_dim;
  const int levels = std::uniform_int_distribution<int>(0, max_levels)(rng);
  for (int j = 0; j < levels; ++j) {
    const long r = std::uniform_int_distribution<long>(0, std::min<long>(3, max_dim - dim))(rng);
    const long c = std::uniform_int_distribution<long>(0, iota - 1)(rng);
    spec.levels.push_back(Level{r, c});
    dim += r;
    if (r > 0) iota = std::gcd(r + 1, iota - c);
  }
  return spec;
}

}  // namespace fano::testing
