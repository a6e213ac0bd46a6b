#include "fano/interval.hpp"

#include <mpfr.h>

#include <algorithm>
#include <array>
#include <stdexcept>

namespace fano {

namespace {

void check_finite(const BigFloat& x) {
  if (!mpfr_number_p(x.get())) {
    throw std::overflow_error("interval endpoint left the MPFR exponent range");
  }
}

RealInterval make(BigFloat lo, BigFloat hi) {
  check_finite(lo);
  check_finite(hi);
  return RealInterval(std::move(lo), std::move(hi));
}

long common_precision(const RealInterval& a, const RealInterval& b) {
  return std::max(a.precision(), b.precision());
}

using BinaryOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

// Lower and upper envelopes of op over the four endpoint pairs. Valid for
// multiplication and for division by an interval excluding zero.
RealInterval corner_envelope(const RealInterval& a, const RealInterval& b, BinaryOp op) {
  const long prec = common_precision(a, b);
  const std::array<mpfr_srcptr, 2> xs{a.lo().get(), a.hi().get()};
  const std::array<mpfr_srcptr, 2> ys{b.lo().get(), b.hi().get()};
  BigFloat lo(prec), hi(prec), tmp(prec);
  bool first = true;
  for (auto x : xs) {
    for (auto y : ys) {
      op(tmp.get(), x, y, MPFR_RNDD);
      if (first || mpfr_less_p(tmp.get(), lo.get())) mpfr_set(lo.get(), tmp.get(), MPFR_RNDD);
      op(tmp.get(), x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(tmp.get(), hi.get())) mpfr_set(hi.get(), tmp.get(), MPFR_RNDU);
      first = false;
    }
  }
  return make(std::move(lo), std::move(hi));
}

}  // namespace

void ensure_exponent_range() {
  thread_local bool done = false;
  if (!done) {
    mpfr_set_emin(mpfr_get_emin_min());
    mpfr_set_emax(mpfr_get_emax_max());
    done = true;
  }
}

const char* to_string(Verdict::Kind kind) {
  switch (kind) {
    case Verdict::Kind::True: return "true";
    case Verdict::Kind::False: return "false";
    case Verdict::Kind::Undecided: return "undecided";
  }
  return "undecided";
}

ExactInt binomial(unsigned long n, unsigned long k) {
  ExactInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

ExactInt ipow(const ExactInt& base, unsigned long exp) {
  ExactInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

// ---------------------------------------------------------------- BigFloat

BigFloat::BigFloat(long precision_bits) {
  mpfr_init2(value_, static_cast<mpfr_prec_t>(precision_bits));
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

std::string BigFloat::to_decimal(int digits, mpfr_rnd_t rnd) const {
  char* buf = nullptr;
  const char* fmt = rnd == MPFR_RNDD ? "%.*RDe" : rnd == MPFR_RNDU ? "%.*RUe" : "%.*RNe";
  if (mpfr_asprintf(&buf, fmt, std::max(digits - 1, 0), value_) < 0) {
    throw std::runtime_error("mpfr_asprintf failed");
  }
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

// ------------------------------------------------------------ RealInterval

RealInterval::RealInterval(long precision_bits)
    : lo_(precision_bits), hi_(precision_bits), precision_(precision_bits) {}

RealInterval::RealInterval(BigFloat lo, BigFloat hi)
    : lo_(std::move(lo)), hi_(std::move(hi)), precision_(std::max(lo_.precision(), hi_.precision())) {
  if (mpfr_greater_p(lo_.get(), hi_.get())) {
    throw std::logic_error("interval with lo > hi");
  }
}

RealInterval RealInterval::from_int(const ExactInt& v, long precision_bits) {
  BigFloat lo(precision_bits), hi(precision_bits);
  mpfr_set_z(lo.get(), v.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi.get(), v.get_mpz_t(), MPFR_RNDU);
  return make(std::move(lo), std::move(hi));
}

RealInterval RealInterval::from_rational(const Rational& v, long precision_bits) {
  BigFloat lo(precision_bits), hi(precision_bits);
  mpfr_set_q(lo.get(), v.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi.get(), v.get_mpq_t(), MPFR_RNDU);
  return make(std::move(lo), std::move(hi));
}

RealInterval RealInterval::euler_e(long precision_bits) {
  BigFloat lo(precision_bits), hi(precision_bits);
  mpfr_set_ui(lo.get(), 1, MPFR_RNDN);
  mpfr_set_ui(hi.get(), 1, MPFR_RNDN);
  mpfr_exp(lo.get(), lo.get(), MPFR_RNDD);
  mpfr_exp(hi.get(), hi.get(), MPFR_RNDU);
  return make(std::move(lo), std::move(hi));
}

bool RealInterval::contains(const ExactInt& v) const {
  return mpfr_cmp_z(lo_.get(), v.get_mpz_t()) <= 0 && mpfr_cmp_z(hi_.get(), v.get_mpz_t()) >= 0;
}

bool RealInterval::contains(const Rational& v) const {
  return mpfr_cmp_q(lo_.get(), v.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), v.get_mpq_t()) >= 0;
}

bool RealInterval::contains(const RealInterval& other) const {
  return mpfr_lessequal_p(lo_.get(), other.lo_.get()) && mpfr_greaterequal_p(hi_.get(), other.hi_.get());
}

bool RealInterval::contains_zero() const {
  return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0;
}

BigFloat RealInterval::width() const {
  BigFloat w(precision_);
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return w;
}

std::string RealInterval::to_string(int digits) const {
  return "[" + lo_.to_decimal(digits, MPFR_RNDD) + ", " + hi_.to_decimal(digits, MPFR_RNDU) + "]";
}

// -------------------------------------------------------------- arithmetic

RealInterval operator+(const RealInterval& a, const RealInterval& b) {
  const long prec = common_precision(a, b);
  BigFloat lo(prec), hi(prec);
  mpfr_add(lo.get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
  mpfr_add(hi.get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
  return make(std::move(lo), std::move(hi));
}

RealInterval operator-(const RealInterval& a, const RealInterval& b) {
  const long prec = common_precision(a, b);
  BigFloat lo(prec), hi(prec);
  mpfr_sub(lo.get(), a.lo().get(), b.hi().get(), MPFR_RNDD);
  mpfr_sub(hi.get(), a.hi().get(), b.lo().get(), MPFR_RNDU);
  return make(std::move(lo), std::move(hi));
}

RealInterval operator-(const RealInterval& a) {
  BigFloat lo(a.precision()), hi(a.precision());
  mpfr_neg(lo.get(), a.hi().get(), MPFR_RNDD);
  mpfr_neg(hi.get(), a.lo().get(), MPFR_RNDU);
  return make(std::move(lo), std::move(hi));
}

RealInterval operator*(const RealInterval& a, const RealInterval& b) {
  return corner_envelope(a, b, mpfr_mul);
}

RealInterval operator/(const RealInterval& a, const RealInterval& b) {
  if (b.contains_zero()) {
    if (b.is_point()) throw DomainError("division by zero");
    throw PrecisionInsufficient("divisor interval contains zero");
  }
  return corner_envelope(a, b, mpfr_div);
}

RealInterval log(const RealInterval& x) {
  if (mpfr_sgn(x.hi().get()) <= 0) throw DomainError("log of a non-positive value");
  if (mpfr_sgn(x.lo().get()) <= 0) throw PrecisionInsufficient("log argument interval reaches zero");
  BigFloat lo(x.precision()), hi(x.precision());
  mpfr_log(lo.get(), x.lo().get(), MPFR_RNDD);
  mpfr_log(hi.get(), x.hi().get(), MPFR_RNDU);
  return make(std::move(lo), std::move(hi));
}

RealInterval exp(const RealInterval& x) {
  BigFloat lo(x.precision()), hi(x.precision());
  mpfr_exp(lo.get(), x.lo().get(), MPFR_RNDD);
  mpfr_exp(hi.get(), x.hi().get(), MPFR_RNDU);
  return make(std::move(lo), std::move(hi));
}

RealInterval pow_int(const RealInterval& x, const ExactInt& k) {
  const long prec = x.precision();
  if (k == 0) return RealInterval::from_int(1, prec);
  if (k < 0) {
    if (x.contains_zero()) {
      if (x.is_point()) throw DomainError("negative power of zero");
      throw PrecisionInsufficient("negative power of an interval containing zero");
    }
    return RealInterval::from_int(1, prec) / pow_int(x, -k);
  }
  const mpz_srcptr e = k.get_mpz_t();
  BigFloat lo(prec), hi(prec);
  const bool odd = mpz_odd_p(e) != 0;
  if (odd || mpfr_sgn(x.lo().get()) >= 0) {
    mpfr_pow_z(lo.get(), x.lo().get(), e, MPFR_RNDD);
    mpfr_pow_z(hi.get(), x.hi().get(), e, MPFR_RNDU);
  } else if (mpfr_sgn(x.hi().get()) <= 0) {
    mpfr_pow_z(lo.get(), x.hi().get(), e, MPFR_RNDD);
    mpfr_pow_z(hi.get(), x.lo().get(), e, MPFR_RNDU);
  } else {
    // even power of an interval straddling zero
    BigFloat other(prec);
    mpfr_pow_z(hi.get(), x.lo().get(), e, MPFR_RNDU);
    mpfr_pow_z(other.get(), x.hi().get(), e, MPFR_RNDU);
    mpfr_max(hi.get(), hi.get(), other.get(), MPFR_RNDU);
  }
  return make(std::move(lo), std::move(hi));
}

RealInterval root(const RealInterval& x, unsigned long n) {
  if (n == 0) throw DomainError("zeroth root");
  if (mpfr_sgn(x.hi().get()) < 0) throw DomainError("root of a negative value");
  if (mpfr_sgn(x.lo().get()) < 0) throw PrecisionInsufficient("root argument interval reaches below zero");
  BigFloat lo(x.precision()), hi(x.precision());
  mpfr_rootn_ui(lo.get(), x.lo().get(), n, MPFR_RNDD);
  mpfr_rootn_ui(hi.get(), x.hi().get(), n, MPFR_RNDU);
  return make(std::move(lo), std::move(hi));
}

RealInterval nth_root_interval(const ExactInt& value, unsigned long n, long precision_bits) {
  ensure_exponent_range();
  if (value < 0) throw DomainError("n-th root of a negative integer");
  if (n == 0) throw DomainError("zeroth root");
  ExactInt r;
  if (mpz_root(r.get_mpz_t(), value.get_mpz_t(), n) != 0) {
    BigFloat point(precision_bits);
    if (mpfr_set_z(point.get(), r.get_mpz_t(), MPFR_RNDN) == 0) {
      BigFloat copy = point;
      return make(std::move(point), std::move(copy));
    }
  }
  return root(RealInterval::from_int(value, precision_bits), n);
}

}  // namespace fano
