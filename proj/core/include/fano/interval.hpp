#pragma once

#include <mpfr.h>

#include <string>

#include "fano/numerics.hpp"

namespace fano {

/// Widens the MPFR exponent range of the calling thread to the maximum.
/// Evaluation entry points call this; it is idempotent.
void ensure_exponent_range();

/// Owning wrapper around an MPFR float. Copies keep the source precision.
class BigFloat {
 public:
  explicit BigFloat(long precision_bits);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  long precision() const { return static_cast<long>(mpfr_get_prec(value_)); }

  /// Decimal rendering with `digits` significant digits, rounded in `rnd`.
  std::string to_decimal(int digits, mpfr_rnd_t rnd) const;
  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(value_, rnd); }

 private:
  mpfr_t value_;
};

/// Closed interval [lo, hi] with MPFR endpoints. Every operation rounds the
/// lower endpoint toward -inf and the upper toward +inf, so the true value of
/// whatever produced the interval stays inside it.
class RealInterval {
 public:
  explicit RealInterval(long precision_bits);
  RealInterval(BigFloat lo, BigFloat hi);

  static RealInterval from_int(const ExactInt& v, long precision_bits);
  static RealInterval from_rational(const Rational& v, long precision_bits);
  static RealInterval euler_e(long precision_bits);

  const BigFloat& lo() const { return lo_; }
  const BigFloat& hi() const { return hi_; }
  long precision() const { return precision_; }

  bool is_point() const { return mpfr_equal_p(lo_.get(), hi_.get()) != 0; }
  bool contains(const ExactInt& v) const;
  bool contains(const Rational& v) const;
  bool contains(const RealInterval& other) const;
  bool contains_zero() const;
  bool strictly_positive() const { return mpfr_sgn(lo_.get()) > 0; }
  bool strictly_negative() const { return mpfr_sgn(hi_.get()) < 0; }

  /// hi - lo rounded up.
  BigFloat width() const;

  std::string to_string(int digits = 30) const;

 private:
  BigFloat lo_;
  BigFloat hi_;
  long precision_;
};

RealInterval operator+(const RealInterval& a, const RealInterval& b);
RealInterval operator-(const RealInterval& a, const RealInterval& b);
RealInterval operator-(const RealInterval& a);
RealInterval operator*(const RealInterval& a, const RealInterval& b);
/// Throws DomainError if `b` is exactly zero and PrecisionInsufficient if it
/// merely contains zero.
RealInterval operator/(const RealInterval& a, const RealInterval& b);

RealInterval log(const RealInterval& x);
RealInterval exp(const RealInterval& x);
/// x^k for any integer k; negative k requires x to exclude zero.
RealInterval pow_int(const RealInterval& x, const ExactInt& k);
/// Principal n-th root; x must be non-negative (n >= 1).
RealInterval root(const RealInterval& x, unsigned long n);

/// Interval containing N^(1/n); a point interval when N is a perfect n-th
/// power that fits in the precision.
RealInterval nth_root_interval(const ExactInt& value, unsigned long n, long precision_bits);

}  // namespace fano
