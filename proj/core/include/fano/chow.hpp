#pragma once

// Chow rings of split projective-bundle towers, by rewriting.
//
// Generators are H (hyperplane class of the base P^{s0}) and one xi_j per
// level (the O(1) class of that projectivization), all of degree 1. The
// relations are
//
//   H^{s0 + 1} = 0,    xi_j^{r_j + 1} = c_j * H_{j-1} * xi_j^{r_j},
//
// with H_{j-1} the ample generator of the sub-tower written as an integer
// linear form in the generators. The top-degree group is generated by the
// fundamental monomial xi_m^{r_m} ... xi_1^{r_1} H^{s0}, which integrates to 1.
//
// This module does not share code with the closed-form degree in tower.hpp;
// the two are checked against each other.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fano/numerics.hpp"
#include "fano/tower.hpp"

namespace fano::chow {

using Exponents = std::vector<int>;
using LinearForm = std::vector<ExactInt>;

/// Level-major lexicographic order: compares the exponent of the highest
/// level first and H last. Every rewrite rule moves a monomial strictly down
/// in this order at fixed total degree.
struct LevelMajorLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

class ChowPoly {
 public:
  using Terms = std::map<Exponents, ExactInt, LevelMajorLess>;

  explicit ChowPoly(std::size_t generators) : generators_(generators) {}

  static ChowPoly constant(std::size_t generators, const ExactInt& value);
  static ChowPoly monomial(const Exponents& exps, const ExactInt& coef);
  static ChowPoly linear(const LinearForm& form);

  std::size_t generators() const { return generators_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds coef * x^exps, dropping the entry if it cancels.
  void add_term(const Exponents& exps, const ExactInt& coef);
  ExactInt coefficient(const Exponents& exps) const;
  bool is_homogeneous(int degree) const;

  ChowPoly& operator+=(const ChowPoly& other);
  friend ChowPoly operator+(ChowPoly a, const ChowPoly& b) { return a += b; }
  friend ChowPoly operator*(const ChowPoly& a, const ChowPoly& b);
  friend ChowPoly operator*(const ExactInt& s, const ChowPoly& p);
  friend bool operator==(const ChowPoly& a, const ChowPoly& b) = default;

  std::string to_string() const;

 private:
  std::size_t generators_;
  Terms terms_;
};

int total_degree(const Exponents& exps);

struct Rule {
  std::size_t generator = 0;  // 0 = H, j = xi_j
  int power = 0;              // the rule fires on generator^power
  ExactInt factor;            // 0 for the H rule
  LinearForm multiplier;      // H_{j-1}; empty for the H rule

  std::string to_string() const;
};

struct ChowPresentation {
  long base_dim = 0;
  std::vector<Level> levels;
  int dim = 0;
  std::vector<Rule> rules;                // rules[0] is the H rule, rules[j] the xi_j rule
  std::vector<LinearForm> ample;          // ample[j] = H_j
  std::vector<long> indices;              // indices[j] = index of the sub-tower after level j
  LinearForm anticanonical;
  Exponents fundamental;

  std::size_t generators() const { return levels.size() + 1; }
  ChowPoly anticanonical_class() const { return ChowPoly::linear(anticanonical); }
  std::string generator_name(std::size_t g) const;
};

enum class RewriteOrder {
  HighestLevelFirst,  // always rewrite the largest monomial by its highest reducible generator
  LowestLevelFirst,   // smallest monomial first, lowest reducible generator
  Shuffled,           // random monomial, random reducible generator
};

/// Throws InvalidSpec for invalid specs and IntegralityViolation if an ample
/// generator fails to divide.
ChowPresentation presentation(const TowerSpec& spec);

ChowPoly reduce(const ChowPoly& p, const ChowPresentation& pres,
                RewriteOrder order = RewriteOrder::HighestLevelFirst, std::uint64_t seed = 0);

/// Top intersection number. Throws DegreeMismatch unless `p` is homogeneous
/// of degree dim.
ExactInt integrate(const ChowPoly& p, const ChowPresentation& pres);

/// (-K)^n computed by repeated multiplication and reduction.
ExactInt anticanonical_power(const TowerSpec& spec);

}  // namespace fano::chow
