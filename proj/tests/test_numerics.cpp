#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fano/bound_expr.hpp"
#include "test_util.hpp"

using namespace fano;
using fano::testing::meets_reference;
using fano::testing::width;

namespace {

const BoundExpr n = BoundExpr::var("n");
Assignment at(long v) { return {{"n", ExactInt(v)}}; }

}  // namespace

TEST_CASE("integer arithmetic is exact") {
  const auto iv = interval_eval(n + 1, at(4), 64);
  CHECK(iv.is_point());
  CHECK(iv.contains(ExactInt(5)));
}

TEST_CASE("3n^2/(10 log n) at n = 3") {
  const auto iv = interval_eval(3 * n * n / (10 * log(n)), at(3), 128);
  // mpmath, 200 digits
  CHECK(meets_reference(iv, "2.4576459118924609627584484474874889016"));
  CHECK(width(iv) < 1e-35);
}

TEST_CASE("Kahler-Einstein expression at n = 1 is exactly 2") {
  const BoundExpr ke = (2 * n - 1) * root(pow(2, n + 1) * pow(factorial(n), 2) / factorial(2 * n), n);
  const auto iv = interval_eval(ke, at(1), 64);
  CHECK(iv.is_point());
  CHECK(iv.contains(ExactInt(2)));
  CHECK(ke.exact_value(at(1)) == Rational(2));
}

TEST_CASE("decide_ge") {
  const BoundExpr prop1 = pow(3 * n * n / (10 * log(n)), n);
  SUBCASE("interval path") {
    const Verdict v = decide_ge(ExactInt(54), prop1, at(3));
    CHECK(v.holds());
    CHECK(v.precision_bits == 128);
    CHECK(decide_ge(ExactInt(14), prop1, at(3)).fails());  // rhs ~ 14.844
    CHECK(decide_ge(ExactInt(15), prop1, at(3)).holds());
  }
  SUBCASE("exact path") {
    CHECK(decide_ge(ExactInt(5), n + 1, at(4)) == Verdict{Verdict::Kind::True, 0});
    CHECK(decide_ge(ExactInt(2), n + 1, at(4)) == Verdict{Verdict::Kind::False, 0});
  }
  SUBCASE("undecided at the cap") {
    const Verdict v = decide_ge(ExactInt(2), exp(log(BoundExpr(2))), {}, 512);
    CHECK(v.undecided());
    CHECK(v.precision_bits == 512);
  }
  SUBCASE("expression form") {
    CHECK(decide_ge_expr(BoundExpr(Rational(6, 7)), Rational(2, 3) + 4 * log(n) / (3 * n), at(200)).holds());
    CHECK(decide_ge_expr(log(n), BoundExpr(1), at(2)).fails());
  }
}

TEST_CASE("floor_expr") {
  CHECK(floor_expr(n / log(n), at(3)) == 2);  // 2.7307
  CHECK(floor_expr(n / log(n), at(4)) == 2);  // 2.885
  CHECK(floor_expr(n / (4 * log(n)), at(8)) == 0);  // 0.9618
  CHECK(floor_expr(n / (2 * log(n)), at(8)) == 1);  // 1.9236
  CHECK(floor_expr(BoundExpr(Rational(-7, 2)), {}) == -4);

  // [n / log n] for n = 2..29, mpmath
  const std::vector<long> expected{2, 2, 2, 3, 3, 3, 3, 4, 4, 4, 4, 5, 5, 5,
                                   5, 6, 6, 6, 6, 6, 7, 7, 7, 7, 7, 8, 8, 8};
  for (long v = 2; v <= 29; ++v) {
    CAPTURE(v);
    CHECK(floor_expr(n / log(n), at(v)) == expected[static_cast<std::size_t>(v - 2)]);
  }

  SUBCASE("integer value hidden behind transcendental functions hits the cap") {
    CHECK_THROWS_AS(floor_expr(exp(log(BoundExpr(3))), {}, 512), PrecisionCap);
  }
}

TEST_CASE("floor_expr result is certified by interval_eval") {
  for (long v = 2; v <= 200; v += 7) {
    const BoundExpr x = n / (3 * log(n));
    const ExactInt m = floor_expr(x, at(v));
    const auto iv = interval_eval(x, at(v), 256);
    CHECK(mpfr_cmp_z(iv.lo().get(), m.get_mpz_t()) >= 0);
    const ExactInt next = m + 1;
    CHECK(mpfr_cmp_z(iv.hi().get(), next.get_mpz_t()) < 0);
  }
}

TEST_CASE("nth_root_interval") {
  const auto cube = nth_root_interval(64, 3, 128);
  CHECK(cube.is_point());
  CHECK(cube.contains(ExactInt(4)));
  CHECK(meets_reference(nth_root_interval(8, 2, 128), "2.8284271247461900976033774484193961571"));
  CHECK(meets_reference(nth_root_interval(54, 3, 128), "3.7797631496846194943016318218346850517"));
  CHECK(nth_root_interval(0, 5, 64).contains(ExactInt(0)));
  CHECK_THROWS_AS(nth_root_interval(-1, 3, 64), DomainError);
  // 10^5-digit integers
  const ExactInt big = ipow(ExactInt(12345), 25000);
  const auto r = nth_root_interval(big, 25000, 128);
  CHECK(r.is_point());
  CHECK(r.contains(ExactInt(12345)));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(interval_eval(log(n - 2), at(2), 64), DomainError);
  CHECK_THROWS_AS(interval_eval(log(n - 3), at(2), 64), DomainError);
  CHECK_THROWS_AS(interval_eval(1 / (n - 2), at(2), 64), DomainError);
  CHECK_THROWS_AS(interval_eval(root(n - 3, 2), at(2), 64), DomainError);
  CHECK_THROWS_AS(interval_eval(n, at(2), 16), std::invalid_argument);
  CHECK_THROWS_AS(interval_eval(BoundExpr::var("k"), at(2), 64), std::invalid_argument);
  CHECK_THROWS_AS(interval_eval(pow(n, log(n)), at(2), 64), DomainError);
}

TEST_CASE("exact evaluation handles powers and roots") {
  CHECK(pow(BoundExpr(Rational(4, 9)), Rational(3, 2)).exact_value({}) == Rational(8, 27));
  CHECK(!pow(BoundExpr(2), Rational(1, 2)).exact_value({}).has_value());
  CHECK(pow(BoundExpr(8), -n).exact_value(at(2)) == Rational(1, 64));
  CHECK(pow(BoundExpr(4), -(n * n - n + 2)).exact_value(at(2)) == Rational(1, 256));
}

// ---------------------------------------------------------------- properties

namespace {

// Random expressions in n that are defined for every n >= 1.
BoundExpr random_expr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 10);
  std::uniform_int_distribution<long> small(1, 9);
  auto sub = [&] { return random_expr(rng, depth - 1); };
  switch (pick(rng)) {
    case 0: return BoundExpr(small(rng));
    case 1: return n;
    case 2: return BoundExpr::e();
    case 3: return sub() + sub();
    case 4: return sub() - sub();
    case 5: return sub() * sub();
    case 6: { auto d = sub(); return sub() / (1 + d * d); }
    case 7: { auto x = sub(); return log(1 + x * x); }
    case 8: { auto x = sub(); return exp(x / (1 + x * x)); }
    case 9: return pow(sub(), std::uniform_int_distribution<long>(0, 3)(rng));
    default: { auto x = sub(); return root(1 + x * x, small(rng)); }
  }
}

// Plain round-to-nearest MPFR evaluation, sharing nothing with the interval
// evaluator.
void point_eval(const BoundExpr& x, long v, mpfr_t out, mpfr_prec_t prec) {
  using Op = BoundExpr::Op;
  mpfr_t a, b;
  mpfr_init2(a, prec);
  mpfr_init2(b, prec);
  const auto& args = x.args();
  switch (x.op()) {
    case Op::Literal: mpfr_set_q(out, x.literal().get_mpq_t(), MPFR_RNDN); break;
    case Op::E: mpfr_set_ui(out, 1, MPFR_RNDN); mpfr_exp(out, out, MPFR_RNDN); break;
    case Op::Var: mpfr_set_si(out, v, MPFR_RNDN); break;
    case Op::Add: point_eval(args[0], v, a, prec); point_eval(args[1], v, b, prec); mpfr_add(out, a, b, MPFR_RNDN); break;
    case Op::Sub: point_eval(args[0], v, a, prec); point_eval(args[1], v, b, prec); mpfr_sub(out, a, b, MPFR_RNDN); break;
    case Op::Mul: point_eval(args[0], v, a, prec); point_eval(args[1], v, b, prec); mpfr_mul(out, a, b, MPFR_RNDN); break;
    case Op::Div: point_eval(args[0], v, a, prec); point_eval(args[1], v, b, prec); mpfr_div(out, a, b, MPFR_RNDN); break;
    case Op::Neg: point_eval(args[0], v, a, prec); mpfr_neg(out, a, MPFR_RNDN); break;
    case Op::Log: point_eval(args[0], v, a, prec); mpfr_log(out, a, MPFR_RNDN); break;
    case Op::Exp: point_eval(args[0], v, a, prec); mpfr_exp(out, a, MPFR_RNDN); break;
    case Op::Pow: {
      point_eval(args[0], v, a, prec);
      const auto e = args[1].exact_value({{"n", ExactInt(v)}});
      mpfr_pow_si(out, a, e->get_num().get_si(), MPFR_RNDN);
      break;
    }
    case Op::Root: {
      point_eval(args[0], v, a, prec);
      const auto q = args[1].exact_value({{"n", ExactInt(v)}});
      mpfr_rootn_ui(out, a, q->get_num().get_ui(), MPFR_RNDN);
      break;
    }
    case Op::Factorial: mpfr_fac_ui(out, static_cast<unsigned long>(v), MPFR_RNDN); break;
  }
  mpfr_clear(a);
  mpfr_clear(b);
}

}  // namespace

TEST_CASE("intervals nest as precision grows and contain a 4x precision point value") {
  std::mt19937_64 rng(20261015);
  int evaluated = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const BoundExpr x = random_expr(rng, 4);
    const long v = std::uniform_int_distribution<long>(1, 40)(rng);
    RealInterval coarse(64), fine(64);
    try {
      coarse = interval_eval(x, at(v), 64);
      fine = interval_eval(x, at(v), 256);
    } catch (const PrecisionInsufficient&) {
      continue;
    }
    ++evaluated;
    CAPTURE(x.to_string());
    CAPTURE(v);
    CHECK(coarse.contains(fine));
    mpfr_t ref;
    mpfr_init2(ref, 1024);
    point_eval(x, v, ref, 1024);
    CHECK(mpfr_lessequal_p(fine.lo().get(), ref));
    CHECK(mpfr_greaterequal_p(fine.hi().get(), ref));
    mpfr_clear(ref);
  }
  CHECK(evaluated > 300);
}

TEST_CASE("decide_ge agrees with exact rational comparison") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-5000, 5000), den(1, 97);
  for (int trial = 0; trial < 1000; ++trial) {
    const ExactInt lhs = num(rng) / 10;
    const Rational q = make_rational(num(rng), den(rng));
    const bool expected = Rational(lhs) >= q;
    CHECK(decide_ge(lhs, BoundExpr(q), {}).holds() == expected);
  }
  // same comparisons forced through the interval path
  for (int trial = 0; trial < 200; ++trial) {
    const ExactInt lhs = num(rng) / 10;
    Rational q = make_rational(num(rng), den(rng));
    if (q == Rational(lhs)) q += Rational(1, 3);
    const BoundExpr rhs = q < 0 ? -exp(log(BoundExpr(Rational(-q)))) : exp(log(BoundExpr(q)));
    if (q == 0) continue;
    const Verdict v = decide_ge(lhs, rhs, {}, 4096);
    REQUIRE(!v.undecided());
    CHECK(v.holds() == (Rational(lhs) >= q));
  }
}

TEST_CASE("transcendental functions enclose endpoint images") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> num(1, 1000);
  for (int trial = 0; trial < 100; ++trial) {
    Rational a = make_rational(num(rng), 37), b = make_rational(num(rng), 41);
    if (a > b) std::swap(a, b);
    const RealInterval ia = RealInterval::from_rational(a, 96), ib = RealInterval::from_rational(b, 96);
    const RealInterval x(ia.lo(), ib.hi());
    CHECK(exp(x).contains(exp(ia)));
    CHECK(exp(x).contains(exp(ib)));
    CHECK(log(x).contains(log(ia)));
    CHECK(log(x).contains(log(ib)));
    CHECK(root(x, 3).contains(root(ia, 3)));
    CHECK(root(x, 3).contains(root(ib, 3)));
  }
}

TEST_CASE("interval arithmetic corner cases") {
  const RealInterval straddle = RealInterval::from_int(-2, 64) + RealInterval::from_rational(Rational(0), 64) *
                                                                     RealInterval::from_int(1, 64);
  CHECK(straddle.contains(ExactInt(-2)));
  RealInterval x(BigFloat(64), BigFloat(64));
  mpfr_set_si(const_cast<mpfr_ptr>(x.lo().get()), -3, MPFR_RNDN);
  mpfr_set_si(const_cast<mpfr_ptr>(x.hi().get()), 2, MPFR_RNDN);
  const auto sq = pow_int(x, 2);
  CHECK(sq.contains(ExactInt(0)));
  CHECK(sq.contains(ExactInt(9)));
  CHECK(!sq.contains(ExactInt(-1)));
  const auto cube = pow_int(x, 3);
  CHECK(cube.contains(ExactInt(-27)));
  CHECK(cube.contains(ExactInt(8)));
  CHECK_THROWS_AS(RealInterval::from_int(1, 64) / x, PrecisionInsufficient);
  CHECK_THROWS_AS(log(x), PrecisionInsufficient);
  const auto prod = x * x;
  CHECK(prod.contains(ExactInt(-6)));
  CHECK(prod.contains(ExactInt(9)));
}
