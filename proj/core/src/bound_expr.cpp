#include "fano/bound_expr.hpp"

#include <stdexcept>
#include <utility>

namespace fano {

namespace {

bool is_integer(const Rational& q) { return q.get_den() == 1; }

unsigned long to_ulong(const ExactInt& v, const char* what) {
  if (v < 0 || !v.fits_ulong_p()) {
    throw DomainError(std::string(what) + " out of range");
  }
  return v.get_ui();
}

// Exact q-th root of a non-negative rational, if there is one.
std::optional<Rational> exact_root(const Rational& x, unsigned long q) {
  if (x < 0) throw DomainError("root of a negative value");
  ExactInt num, den;
  if (mpz_root(num.get_mpz_t(), x.get_num_mpz_t(), q) == 0) return std::nullopt;
  if (mpz_root(den.get_mpz_t(), x.get_den_mpz_t(), q) == 0) return std::nullopt;
  return make_rational(num, den);
}

Rational rational_pow(const Rational& base, const ExactInt& k) {
  const unsigned long mag = to_ulong(k < 0 ? ExactInt(-k) : k, "integer exponent");
  ExactInt num = ipow(base.get_num(), mag);
  ExactInt den = ipow(base.get_den(), mag);
  if (k < 0) {
    if (base == 0) throw DomainError("negative power of zero");
    return make_rational(den, num);
  }
  return make_rational(num, den);
}

ExactInt exact_exponent(const BoundExpr& e, const Assignment& a) {
  auto v = e.exact_value(a);
  if (!v || !is_integer(*v)) throw DomainError("exponent/index must be an exact integer");
  return v->get_num();
}

}  // namespace

BoundExpr::BoundExpr(long value) : BoundExpr(Rational(value)) {}
BoundExpr::BoundExpr(const ExactInt& value) : BoundExpr(Rational(value)) {}
BoundExpr::BoundExpr(const Rational& value) {
  auto n = std::make_shared<Node>();
  n->op = Op::Literal;
  n->literal = value;
  n->literal.canonicalize();
  node_ = std::move(n);
}

BoundExpr BoundExpr::e() {
  auto n = std::make_shared<Node>();
  n->op = Op::E;
  n->rational = false;
  return BoundExpr(std::shared_ptr<const Node>(std::move(n)));
}

BoundExpr BoundExpr::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->op = Op::Var;
  n->name = std::move(name);
  return BoundExpr(std::shared_ptr<const Node>(std::move(n)));
}

BoundExpr BoundExpr::make(Op op, std::vector<BoundExpr> args) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->rational = op != Op::Log && op != Op::Exp && op != Op::Root;
  for (const auto& a : args) n->rational = n->rational && a.node_->rational;
  n->args = std::move(args);
  return BoundExpr(std::shared_ptr<const Node>(std::move(n)));
}

bool BoundExpr::is_algebraic_rational() const { return node_->rational; }

BoundExpr operator+(const BoundExpr& a, const BoundExpr& b) { return BoundExpr::make(BoundExpr::Op::Add, {a, b}); }
BoundExpr operator-(const BoundExpr& a, const BoundExpr& b) { return BoundExpr::make(BoundExpr::Op::Sub, {a, b}); }
BoundExpr operator*(const BoundExpr& a, const BoundExpr& b) { return BoundExpr::make(BoundExpr::Op::Mul, {a, b}); }
BoundExpr operator/(const BoundExpr& a, const BoundExpr& b) { return BoundExpr::make(BoundExpr::Op::Div, {a, b}); }
BoundExpr operator-(const BoundExpr& a) { return BoundExpr::make(BoundExpr::Op::Neg, {a}); }
BoundExpr log(const BoundExpr& x) { return BoundExpr::make(BoundExpr::Op::Log, {x}); }
BoundExpr exp(const BoundExpr& x) { return BoundExpr::make(BoundExpr::Op::Exp, {x}); }
BoundExpr pow(const BoundExpr& base, const BoundExpr& exponent) {
  return BoundExpr::make(BoundExpr::Op::Pow, {base, exponent});
}
BoundExpr root(const BoundExpr& x, const BoundExpr& index) { return BoundExpr::make(BoundExpr::Op::Root, {x, index}); }
BoundExpr factorial(const BoundExpr& x) { return BoundExpr::make(BoundExpr::Op::Factorial, {x}); }

std::optional<Rational> BoundExpr::exact_value(const Assignment& a) const {
  const auto& args = node_->args;
  auto child = [&](std::size_t i) { return args[i].exact_value(a); };
  switch (node_->op) {
    case Op::Literal:
      return node_->literal;
    case Op::E:
    case Op::Log:
    case Op::Exp:
      return std::nullopt;
    case Op::Var: {
      auto it = a.find(node_->name);
      if (it == a.end()) throw std::invalid_argument("unassigned variable '" + node_->name + "'");
      return Rational(it->second);
    }
    case Op::Neg: {
      auto x = child(0);
      if (!x) return std::nullopt;
      return Rational(-*x);
    }
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: {
      auto x = child(0);
      if (!x) return std::nullopt;
      auto y = child(1);
      if (!y) return std::nullopt;
      switch (node_->op) {
        case Op::Add: return Rational(*x + *y);
        case Op::Sub: return Rational(*x - *y);
        case Op::Mul: return Rational(*x * *y);
        default:
          if (*y == 0) throw DomainError("division by zero");
          return Rational(*x / *y);
      }
    }
    case Op::Pow: {
      auto base = child(0);
      if (!base) return std::nullopt;
      auto e = child(1);
      if (!e) throw DomainError("exponent must be rational");
      if (is_integer(*e)) return rational_pow(*base, e->get_num());
      if (*base < 0) throw DomainError("fractional power of a negative value");
      auto r = exact_root(*base, to_ulong(e->get_den(), "root index"));
      if (!r) return std::nullopt;
      return rational_pow(*r, e->get_num());
    }
    case Op::Root: {
      auto x = child(0);
      if (!x) return std::nullopt;
      const ExactInt q = exact_exponent(args[1], a);
      if (q < 1) throw DomainError("root index must be positive");
      return exact_root(*x, to_ulong(q, "root index"));
    }
    case Op::Factorial: {
      auto x = child(0);
      if (!x) return std::nullopt;
      if (!is_integer(*x) || *x < 0) throw DomainError("factorial of a non-natural value");
      ExactInt out;
      mpz_fac_ui(out.get_mpz_t(), to_ulong(x->get_num(), "factorial argument"));
      return Rational(out);
    }
  }
  return std::nullopt;
}

std::string BoundExpr::to_string() const {
  const auto& args = node_->args;
  auto bin = [&](const char* op) { return "(" + args[0].to_string() + " " + op + " " + args[1].to_string() + ")"; };
  switch (node_->op) {
    case Op::Literal: return node_->literal.get_str();
    case Op::E: return "e";
    case Op::Var: return node_->name;
    case Op::Add: return bin("+");
    case Op::Sub: return bin("-");
    case Op::Mul: return bin("*");
    case Op::Div: return bin("/");
    case Op::Neg: return "-" + args[0].to_string();
    case Op::Log: return "log(" + args[0].to_string() + ")";
    case Op::Exp: return "exp(" + args[0].to_string() + ")";
    case Op::Pow: return args[0].to_string() + "^" + args[1].to_string();
    case Op::Root: return "root(" + args[0].to_string() + ", " + args[1].to_string() + ")";
    case Op::Factorial: return args[0].to_string() + "!";
  }
  return "?";
}

// --------------------------------------------------------------- evaluation

namespace {

RealInterval eval(const BoundExpr& x, const Assignment& a, long prec) {
  using Op = BoundExpr::Op;
  if (x.is_algebraic_rational() && x.op() != Op::Literal) {
    return RealInterval::from_rational(*x.exact_value(a), prec);
  }
  const auto& args = x.args();
  switch (x.op()) {
    case Op::Literal: return RealInterval::from_rational(x.literal(), prec);
    case Op::E: return RealInterval::euler_e(prec);
    case Op::Var: return RealInterval::from_rational(*x.exact_value(a), prec);
    case Op::Add: return eval(args[0], a, prec) + eval(args[1], a, prec);
    case Op::Sub: return eval(args[0], a, prec) - eval(args[1], a, prec);
    case Op::Mul: return eval(args[0], a, prec) * eval(args[1], a, prec);
    case Op::Div: return eval(args[0], a, prec) / eval(args[1], a, prec);
    case Op::Neg: return -eval(args[0], a, prec);
    case Op::Log: return log(eval(args[0], a, prec));
    case Op::Exp: return exp(eval(args[0], a, prec));
    case Op::Pow: {
      auto e = args[1].exact_value(a);
      if (!e) throw DomainError("exponent must be rational");
      RealInterval base = eval(args[0], a, prec);
      if (is_integer(*e)) return pow_int(base, e->get_num());
      return pow_int(root(base, to_ulong(e->get_den(), "root index")), e->get_num());
    }
    case Op::Root: {
      const ExactInt q = exact_exponent(args[1], a);
      if (q < 1) throw DomainError("root index must be positive");
      return root(eval(args[0], a, prec), to_ulong(q, "root index"));
    }
    case Op::Factorial:
      throw DomainError("factorial of a non-rational value");
  }
  throw std::logic_error("unreachable expression node");
}

}  // namespace

RealInterval interval_eval(const BoundExpr& expr, const Assignment& assignment, long precision_bits) {
  if (precision_bits < 32) throw std::invalid_argument("precision must be at least 32 bits");
  ensure_exponent_range();
  return eval(expr, assignment, precision_bits);
}

RealInterval interval_eval_adaptive(const BoundExpr& expr, const Assignment& assignment, long precision_cap,
                                    long start_bits) {
  for (long prec = start_bits; prec <= precision_cap; prec *= 2) {
    try {
      return interval_eval(expr, assignment, prec);
    } catch (const PrecisionInsufficient&) {
    }
  }
  throw PrecisionCap("interval evaluation of " + expr.to_string() + " needs more precision", precision_cap);
}

Verdict decide_ge(const ExactInt& lhs, const BoundExpr& rhs, const Assignment& assignment, long precision_cap,
                  long start_bits) {
  if (auto exact = rhs.exact_value(assignment)) {
    return {Rational(lhs) >= *exact ? Verdict::Kind::True : Verdict::Kind::False, 0};
  }
  long prec = start_bits;
  long reached = 0;
  for (; prec <= precision_cap; prec *= 2) {
    reached = prec;
    RealInterval iv(prec);
    try {
      iv = interval_eval(rhs, assignment, prec);
    } catch (const PrecisionInsufficient&) {
      continue;
    }
    if (mpfr_cmp_z(iv.hi().get(), lhs.get_mpz_t()) <= 0) return {Verdict::Kind::True, prec};
    if (mpfr_cmp_z(iv.lo().get(), lhs.get_mpz_t()) > 0) return {Verdict::Kind::False, prec};
  }
  return {Verdict::Kind::Undecided, reached};
}

Verdict decide_ge_expr(const BoundExpr& lhs, const BoundExpr& rhs, const Assignment& assignment,
                       long precision_cap, long start_bits) {
  const BoundExpr diff = lhs - rhs;
  if (auto exact = diff.exact_value(assignment)) {
    return {*exact >= 0 ? Verdict::Kind::True : Verdict::Kind::False, 0};
  }
  long reached = 0;
  for (long prec = start_bits; prec <= precision_cap; prec *= 2) {
    reached = prec;
    RealInterval iv(prec);
    try {
      iv = interval_eval(diff, assignment, prec);
    } catch (const PrecisionInsufficient&) {
      continue;
    }
    if (mpfr_sgn(iv.lo().get()) >= 0) return {Verdict::Kind::True, prec};
    if (mpfr_sgn(iv.hi().get()) < 0) return {Verdict::Kind::False, prec};
  }
  return {Verdict::Kind::Undecided, reached};
}

ExactInt floor_expr(const BoundExpr& expr, const Assignment& assignment, long precision_cap, long start_bits) {
  if (auto exact = expr.exact_value(assignment)) {
    ExactInt out;
    mpz_fdiv_q(out.get_mpz_t(), exact->get_num_mpz_t(), exact->get_den_mpz_t());
    return out;
  }
  for (long prec = start_bits; prec <= precision_cap; prec *= 2) {
    RealInterval iv(prec);
    try {
      iv = interval_eval(expr, assignment, prec);
    } catch (const PrecisionInsufficient&) {
      continue;
    }
    ExactInt m;
    mpfr_get_z(m.get_mpz_t(), iv.lo().get(), MPFR_RNDD);
    const ExactInt next = m + 1;
    if (mpfr_cmp_z(iv.hi().get(), next.get_mpz_t()) < 0) return m;
  }
  throw PrecisionCap("cannot certify floor of " + expr.to_string(), precision_cap);
}

}  // namespace fano
