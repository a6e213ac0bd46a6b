#include "fano/tower.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "fano/bound_expr.hpp"

namespace fano {

namespace {

void check_structure(const TowerSpec& spec) {
  if (spec.base_dim < 1) throw InvalidSpec("base_dim must be at least 1");
  for (std::size_t j = 0; j < spec.levels.size(); ++j) {
    if (spec.levels[j].r < 0 || spec.levels[j].c < 0) {
      throw InvalidSpec("level " + std::to_string(j) + " has a negative parameter");
    }
  }
}

void require_valid(const TowerSpec& spec) {
  const auto report = validate(spec);
  if (!report.valid) {
    for (const auto& l : report.levels) {
      if (!l.fano) throw InvalidSpec("level " + std::to_string(l.level) + ": " + l.reason);
    }
  }
}

// sum_{j=0}^{s} C(n, r+j) x^j y^{s-j} with n = r + s, by homogeneous Horner.
ExactInt level_sum(long r, long s, const ExactInt& x, const ExactInt& y) {
  const unsigned long n = static_cast<unsigned long>(r + s);
  ExactInt binom = 1;  // C(n, n)
  ExactInt acc = binom;
  ExactInt ypow = 1;
  for (long j = s - 1; j >= 0; --j) {
    // C(n, i-1) = C(n, i) * i / (n - i + 1) with i = r + j + 1
    const unsigned long i = static_cast<unsigned long>(r + j + 1);
    binom *= i;
    mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), n - i + 1);
    ypow *= y;
    acc *= x;
    if (y == 1) {
      acc += binom;
    } else {
      acc += binom * ypow;
    }
  }
  return acc;
}

FanoInvariants base_invariants(long s) {
  FanoInvariants inv;
  inv.dim = s;
  inv.picard = 1;
  inv.index = s + 1;
  inv.degree = ipow(s + 1, static_cast<unsigned long>(s));
  inv.gen_degree = 1;
  return inv;
}

FanoInvariants apply_level(const FanoInvariants& below, const Level& level) {
  const long r = level.r;
  const long c = level.c;
  const long s = below.dim;
  const long n = r + s;
  const long twist = below.index - c;  // coefficient of H in -K = (r+1)L + (index - c)H

  ExactInt degree = level_sum(r, s, ExactInt(r + 1) * c, ExactInt(twist));
  degree *= ipow(r + 1, static_cast<unsigned long>(r));
  degree *= below.gen_degree;

  FanoInvariants out;
  out.dim = n;
  if (r == 0) {
    // P(O(cH)) is the base itself
    out.picard = below.picard;
    out.index = below.index;
  } else {
    out.picard = below.picard + 1;
    out.index = std::gcd(r + 1, twist);
  }
  out.degree = std::move(degree);
  const ExactInt scale = ipow(out.index, static_cast<unsigned long>(n));
  if (!mpz_divisible_p(out.degree.get_mpz_t(), scale.get_mpz_t())) {
    throw IntegralityViolation("degree not divisible by index^dim");
  }
  mpz_divexact(out.gen_degree.get_mpz_t(), out.degree.get_mpz_t(), scale.get_mpz_t());
  return out;
}

ExactInt pow2(long e) { return ExactInt(1) << e; }

void require_builder_arg(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

TowerSpec index_variant_impl(long n, bool clamp) {
  const long r0 = floor_n_over_log_n(n);
  const long r = clamp ? std::min(r0, n / 2) : r0;
  if (n - 2 * r < 0) {
    throw InvalidConstruction("index variant at n = " + std::to_string(n) + ": r = " + std::to_string(r) +
                              " gives a = n - 2r < 0");
  }
  return TowerSpec{n - r, {Level{r, n - 2 * r}}};
}

TowerSpec prop2_impl(long n, long k, BuildMode mode) {
  if (n < 2) {
    throw InvalidConstruction("recursion reached dimension " + std::to_string(n) + " at Picard number " +
                              std::to_string(k));
  }
  if (k == 2) return index_variant_impl(n, mode == BuildMode::Clamp);
  const long r = floor_n_over_log_n(n, Rational(pow2(k - 2)));
  if (r < 1) {
    throw InvalidConstruction("r = 0 at (n, k) = (" + std::to_string(n) + ", " + std::to_string(k) + ")");
  }
  TowerSpec spec = prop2_impl(n - r, k - 1, mode);
  const long iota_y = index(spec);
  if (r >= iota_y) {
    throw InvalidConstruction("r = " + std::to_string(r) + " >= index " + std::to_string(iota_y) +
                              " of the base at (n, k) = (" + std::to_string(n) + ", " + std::to_string(k) + ")");
  }
  spec.levels.push_back(Level{r, iota_y - r - 1});
  return spec;
}

}  // namespace

long TowerSpec::dim() const {
  long d = base_dim;
  for (const auto& l : levels) d += l.r;
  return d;
}

std::string TowerSpec::to_string() const {
  std::ostringstream os;
  os << "{base_dim: " << base_dim << ", levels: [";
  for (std::size_t j = 0; j < levels.size(); ++j) {
    os << (j ? ", " : "") << "{r: " << levels[j].r << ", c: " << levels[j].c << "}";
  }
  os << "]}";
  return os.str();
}

const char* to_string(BuildMode mode) { return mode == BuildMode::Strict ? "strict" : "clamp"; }

ValidationReport validate(const TowerSpec& spec) {
  check_structure(spec);
  ValidationReport report;
  long iota = spec.base_dim + 1;
  for (std::size_t j = 0; j < spec.levels.size(); ++j) {
    const Level& l = spec.levels[j];
    LevelCheck check{j, iota, l.c <= iota - 1, {}};
    if (!check.fano) {
      check.reason = "twist c = " + std::to_string(l.c) + " exceeds index below minus one (" +
                     std::to_string(iota - 1) + ")";
      report.valid = false;
    }
    report.levels.push_back(std::move(check));
    if (l.r > 0) iota = std::gcd(l.r + 1, iota - l.c);
  }
  return report;
}

long index(const TowerSpec& spec) {
  require_valid(spec);
  long iota = spec.base_dim + 1;
  for (const auto& l : spec.levels) {
    if (l.r > 0) iota = std::gcd(l.r + 1, iota - l.c);
  }
  return iota;
}

std::vector<FanoInvariants> stage_invariants(const TowerSpec& spec) {
  require_valid(spec);
  std::vector<FanoInvariants> stages;
  stages.reserve(spec.levels.size() + 1);
  stages.push_back(base_invariants(spec.base_dim));
  for (const auto& l : spec.levels) stages.push_back(apply_level(stages.back(), l));
  return stages;
}

FanoInvariants invariants(const TowerSpec& spec) {
  require_valid(spec);
  FanoInvariants inv = base_invariants(spec.base_dim);
  for (const auto& l : spec.levels) inv = apply_level(inv, l);
  return inv;
}

ExactInt degree(const TowerSpec& spec) { return invariants(spec).degree; }

RealInterval FanoInvariants::delta(long precision_bits) const {
  return nth_root_interval(degree, static_cast<unsigned long>(dim), precision_bits);
}

RealInterval delta(const TowerSpec& spec, long precision_bits) { return invariants(spec).delta(precision_bits); }

long floor_n_over_log_n(long n, const Rational& divisor) {
  require_builder_arg(n >= 2, "n / log n needs n >= 2");
  require_builder_arg(divisor > 0, "divisor must be positive");
  const BoundExpr nv = BoundExpr::var("n");
  const ExactInt m = floor_expr(nv / (BoundExpr(divisor) * log(nv)), {{"n", ExactInt(n)}});
  return m.get_si();
}

TowerSpec build_batyrev(long n) {
  require_builder_arg(n >= 2, "Batyrev construction needs n >= 2");
  return TowerSpec{n - 1, {Level{1, n - 1}}};
}

TowerSpec build_prop1(long n) {
  require_builder_arg(n >= 3, "Prop-1 construction needs n >= 3");
  const long r = floor_n_over_log_n(n);
  return TowerSpec{n - r, {Level{r, n - r}}};
}

TowerSpec build_index_variant(long n, bool clamp) {
  require_builder_arg(n >= 4, "index variant needs n >= 4");
  return index_variant_impl(n, clamp);
}

TowerSpec build_prop2(long n, long k, BuildMode mode) {
  require_builder_arg(k >= 2, "Picard number k must be at least 2");
  require_builder_arg(n >= 4, "dimension n must be at least 4");
  require_builder_arg(k < 62, "Picard number k too large");
  const BoundExpr nv = BoundExpr::var("n");
  const Verdict hyp = decide_ge_expr(nv, BoundExpr(pow2(k - 2)) * log(nv), {{"n", ExactInt(n)}});
  require_builder_arg(hyp.holds(), "hypothesis n / log n >= 2^(k-2) fails");

  TowerSpec spec = prop2_impl(n, k, mode);
  if (mode == BuildMode::Strict) {
    const long expected_index = floor_n_over_log_n(n, Rational(pow2(k - 2))) + 1;
    const auto inv = invariants(spec);
    if (inv.picard != k || inv.index != expected_index || inv.dim != n) {
      throw InvalidConstruction("constructed tower misses the (dim, picard, index) postcondition");
    }
  }
  return spec;
}

std::optional<long> prop2_min_valid_n(long k, long max_n, BuildMode mode) {
  for (long n = 4; n <= max_n; ++n) {
    try {
      build_prop2(n, k, mode);
      return n;
    } catch (const std::invalid_argument&) {
    } catch (const InvalidConstruction&) {
    }
  }
  return std::nullopt;
}

}  // namespace fano
