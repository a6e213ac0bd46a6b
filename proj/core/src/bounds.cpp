#include "fano/bounds.hpp"

#include <algorithm>
#include <stdexcept>

namespace fano {

namespace {

const BoundExpr kN = BoundExpr::var("n");
const BoundExpr kK = BoundExpr::var("k");

Assignment at(long n) { return {{"n", ExactInt(n)}}; }
Assignment at(long n, long k) { return {{"n", ExactInt(n)}, {"k", ExactInt(k)}}; }

ExactInt pow2(long e) { return ExactInt(1) << e; }

}  // namespace

Rational c_const(long k) {
  if (k < 2) throw std::invalid_argument("c(k) needs k >= 2");
  return make_rational(1, ipow(4, static_cast<unsigned long>(k * k - k + 2)));
}

BoundExpr prop1_bound() { return pow(3 * kN * kN / (10 * log(kN)), kN); }

BoundExpr index_variant_bound() { return pow(kN * kN / (7 * log(kN)), kN); }

BoundExpr prop2_bound() {
  const BoundExpr c = pow(4, -(kK * kK - kK + 2));
  return pow(c * pow(kN, kK) / pow(log(kN), kK - 1), kN);
}

CheckResult check_prop1(long n, long precision_cap) {
  CheckResult res;
  res.check = "prop1";
  res.n = n;
  res.spec = build_prop1(n);
  res.invariants = invariants(*res.spec);
  const BoundExpr bound = prop1_bound();
  res.bound = bound.to_string();
  res.verdict = decide_ge(res.invariants->degree, bound, at(n), precision_cap);
  res.structure_ok = res.invariants->index == 1 && res.invariants->picard == 2 && res.invariants->dim == n;
  return res;
}

CheckResult check_index_variant(long n, long precision_cap) {
  CheckResult res;
  res.check = "index_variant";
  res.n = n;
  res.mode = BuildMode::Clamp;
  res.spec = build_index_variant(n, true);
  res.clamped = res.spec->levels.front().r != floor_n_over_log_n(n);
  res.invariants = invariants(*res.spec);
  const BoundExpr bound = index_variant_bound();
  res.bound = bound.to_string();
  res.verdict = decide_ge(res.invariants->degree, bound, at(n), precision_cap);
  res.structure_ok = res.invariants->index == res.spec->levels.front().r + 1;
  return res;
}

CheckResult check_prop2(long n, long k, long precision_cap, BuildMode mode) {
  CheckResult res;
  res.check = "prop2";
  res.n = n;
  res.k = k;
  res.mode = mode;
  const BoundExpr bound = prop2_bound();
  res.bound = bound.to_string();
  try {
    res.spec = build_prop2(n, k, mode);
  } catch (const InvalidConstruction& e) {
    res.construction_error = e.what();
    res.structure_ok = false;
    return res;
  } catch (const std::invalid_argument& e) {
    res.construction_error = e.what();
    res.hypothesis_ok = false;
    res.structure_ok = false;
    return res;
  }
  res.invariants = invariants(*res.spec);
  res.expected_index = floor_n_over_log_n(n, Rational(pow2(k - 2))) + 1;
  res.structure_ok = res.invariants->dim == n && res.invariants->picard == k &&
                     (mode == BuildMode::Clamp || res.invariants->index == res.expected_index);
  res.verdict = decide_ge(res.invariants->degree, bound, at(n, k), precision_cap);
  return res;
}

// -------------------------------------------------------------------- chain

bool ChainReport::level_ratios_hold() const {
  return std::all_of(level_ratios.begin(), level_ratios.end(), [](const auto& l) { return l.holds; });
}

ChainReport check_chain(long n, long k, long precision_cap) {
  const TowerSpec spec = build_prop2(n, k, BuildMode::Strict);
  const auto stages = stage_invariants(spec);

  ChainReport rep;
  rep.n = n;
  rep.k = k;
  const std::size_t top = spec.levels.size() - 1;
  rep.base_picard = stages[top].picard;
  rep.r = spec.levels[top].r;
  rep.s = stages[top].dim;
  rep.iota_y = stages[top].index;

  const BoundExpr n_ = BoundExpr::var("n"), s_ = BoundExpr::var("s"), r_ = BoundExpr::var("r");
  const BoundExpr iy = BoundExpr::var("iota_Y"), p_ = BoundExpr::var("p");
  const Assignment a{{"n", ExactInt(n)},
                     {"s", ExactInt(rep.s)},
                     {"r", ExactInt(rep.r)},
                     {"iota_Y", ExactInt(rep.iota_y)},
                     {"p", ExactInt(rep.base_picard)}};

  auto record = [&](std::string name, std::string branch, const BoundExpr& lhs, const BoundExpr& rhs) {
    ChainRecord rec;
    rec.name = std::move(name);
    rec.branch = std::move(branch);
    rec.statement = lhs.to_string() + " >= " + rhs.to_string();
    rec.verdict = decide_ge_expr(lhs, rhs, a, precision_cap);
    rec.exact = rec.verdict.precision_bits == 0;
    rep.records.push_back(std::move(rec));
  };

  const BoundExpr two_pm2 = pow(2, p_ - 2);
  const BoundExpr ln = log(n_);
  const BoundExpr s_ratio = s_ / (two_pm2 * ln);

  record("iota_lower", "all", iy, s_ratio);
  record("iota_lower_3n", "all", s_ratio, 3 * n_ / (pow(2, p_) * ln));

  const Verdict split = decide_ge_expr(n_ / ln, 7 * two_pm2, a, precision_cap);
  rep.large_branch = split.holds();
  if (rep.large_branch) {
    const BoundExpr mid = BoundExpr(Rational(2, 3)) + pow(2, p_) * ln / (3 * n_);
    record("ratio_upper", "large", mid, (r_ + 1) / iy);
    record("ratio_six_sevenths", "large", Rational(6, 7), mid);
  } else {
    const BoundExpr via_s = 1 / (s_ / (two_pm2 * log(s_)) + 1);
    const BoundExpr via_n = 1 / (n_ / (two_pm2 * ln) + 1);
    record("inverse_index_s", "small", 1 / iy, via_s);
    record("inverse_index_n", "small", via_s, via_n);
    record("inverse_index_eighth", "small", via_n, Rational(1, 8));
  }
  record("eight_power", "all", (1 + pow(iy - r_ - 1, s_)) / pow(iy, s_), pow(8, -n_));

  const BoundExpr c_p = pow(4, -(p_ * p_ - p_ + 2));
  const BoundExpr final_line = pow(n_, p_ + 1) / pow(ln, p_) * c_p * pow(3, p_) /
                               (BoundExpr::e() * pow(2, p_ + 2) * pow(4, p_));
  const ExactInt deg = stages.back().degree;
  record("final_delta", "all", deg, pow(final_line, n_));

  for (std::size_t j = 0; j < spec.levels.size(); ++j) {
    LevelRatioCheck lr;
    lr.level = j;
    lr.r = spec.levels[j].r;
    lr.s = stages[j].dim;
    lr.n = stages[j + 1].dim;
    lr.iota_y = stages[j].index;
    const ExactInt c = lr.iota_y - lr.r - 1;
    const ExactInt iota_pow = ipow(lr.iota_y, static_cast<unsigned long>(lr.s));
    lr.lhs = make_rational(1 + ipow(c, static_cast<unsigned long>(lr.s)), iota_pow);
    lr.rhs = make_rational(1, ipow(8, static_cast<unsigned long>(lr.n)));
    lr.holds = lr.lhs >= lr.rhs;
    rep.level_ratios.push_back(std::move(lr));
  }
  return rep;
}

// ---------------------------------------------------------------- threshold

const char* to_string(ThresholdCondition c) {
  return c == ThresholdCondition::Prop1Chain ? "prop1_chain" : "index_variant_chain";
}

ExactInt threshold(ThresholdCondition condition, long precision_cap, long start_bits) {
  const BoundExpr e = BoundExpr::e();
  const BoundExpr t =
      condition == ThresholdCondition::Prop1Chain ? 10 / (10 - 3 * e) : 14 / (7 - e);
  // log n >= t  <=>  n >= e^t, and e^t is not an integer for rational t != 0
  const ExactInt n_min = floor_expr(exp(t), {}, precision_cap, start_bits) + 1;
  const Verdict at_min = decide_ge_expr(log(BoundExpr(n_min)), t, {}, precision_cap, start_bits);
  const Verdict below = decide_ge_expr(log(BoundExpr(ExactInt(n_min - 1))), t, {}, precision_cap, start_bits);
  if (!at_min.holds() || !below.fails()) {
    throw PrecisionCap("threshold could not be certified", precision_cap);
  }
  return n_min;
}

// ------------------------------------------------------------- upper bounds

std::vector<KnownBound> known_upper_bounds(long n, long index, UpperBoundFlags flags, long precision_bits) {
  if (n < 1) throw std::invalid_argument("dimension must be at least 1");
  ensure_exponent_range();
  std::vector<KnownBound> out;
  const Assignment a = at(n);

  {
    KnownBound b;
    b.name = "kmm";
    b.formula = "3(2^n-1)(n+1)^((n+1)(2^n-1))";
    b.applicable = true;
    if (n <= kKmmExactMaxDim) {
      const ExactInt m = pow2(n) - 1;
      b.exact = 3 * m * ipow(n + 1, ExactInt((n + 1) * m).get_ui());
      b.value = RealInterval::from_int(*b.exact, precision_bits);
    } else {
      b.log_scale = true;
      const BoundExpr m = pow(2, kN) - 1;
      b.value = interval_eval(log(BoundExpr(3)) + log(m) + (kN + 1) * m * log(kN + 1), a, precision_bits);
    }
    out.push_back(std::move(b));
  }
  {
    KnownBound b;
    b.name = "ran";
    b.formula = "max(n*index, n+1)";
    b.applicable = flags.picard_one;
    b.exact = ExactInt(std::max(n * index, n + 1));
    b.value = RealInterval::from_int(*b.exact, precision_bits);
    out.push_back(std::move(b));
  }
  {
    KnownBound b;
    b.name = "ran_coarse";
    b.formula = "n(n+1)";
    b.applicable = flags.picard_one;
    b.exact = ExactInt(n) * (n + 1);
    b.value = RealInterval::from_int(*b.exact, precision_bits);
    out.push_back(std::move(b));
  }
  {
    KnownBound b;
    b.name = "semistable";
    b.formula = "2n";
    b.applicable = flags.picard_one && flags.semistable;
    b.exact = ExactInt(2 * n);
    b.value = RealInterval::from_int(*b.exact, precision_bits);
    out.push_back(std::move(b));
  }
  {
    KnownBound b;
    b.name = "kahler_einstein";
    b.formula = "(2n-1)(2^(n+1)(n!)^2/(2n)!)^(1/n)";
    b.applicable = flags.kahler_einstein;
    const BoundExpr ke = (2 * kN - 1) * root(pow(2, kN + 1) * pow(factorial(kN), 2) / factorial(2 * kN), kN);
    if (auto exact = ke.exact_value(a); exact && exact->get_den() == 1) b.exact = exact->get_num();
    b.value = interval_eval_adaptive(ke, a, kDefaultPrecisionCap, precision_bits);
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace fano
