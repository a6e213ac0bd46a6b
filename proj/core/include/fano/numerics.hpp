#pragma once

// Exact integer and rational types plus the error vocabulary shared by the
// whole library.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fano {

using ExactInt = mpz_class;
/// Always canonical (lowest terms, positive denominator) after construction
/// through `make_rational`.
using Rational = mpq_class;

inline Rational make_rational(const ExactInt& num, const ExactInt& den) {
  if (den == 0) {
    throw std::domain_error("rational with zero denominator");
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

ExactInt binomial(unsigned long n, unsigned long k);
ExactInt ipow(const ExactInt& base, unsigned long exp);

/// A log, root or division whose argument is not in its domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Precision escalation hit the configured cap without certifying a result.
class PrecisionCap : public std::runtime_error {
 public:
  PrecisionCap(const std::string& what, long bits)
      : std::runtime_error(what), bits_(bits) {}
  long bits() const { return bits_; }

 private:
  long bits_;
};

/// Raised inside interval evaluation when an interval straddles a domain
/// boundary only because it is too wide; the caller should retry at higher
/// precision.
class PrecisionInsufficient : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidSpec : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidConstruction : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A divisibility that the theory guarantees failed. Never expected to fire.
class IntegralityViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class DegreeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

constexpr long kDefaultStartPrecision = 128;
constexpr long kDefaultPrecisionCap = 1L << 20;

struct Verdict {
  enum class Kind { True, False, Undecided };

  Kind kind = Kind::Undecided;
  /// Precision at which the verdict was reached; 0 for the exact path.
  long precision_bits = 0;

  bool holds() const { return kind == Kind::True; }
  bool fails() const { return kind == Kind::False; }
  bool undecided() const { return kind == Kind::Undecided; }

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

const char* to_string(Verdict::Kind kind);

}  // namespace fano
