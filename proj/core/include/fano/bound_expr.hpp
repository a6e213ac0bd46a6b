#pragma once

// Expression trees for the bound formulas (integer/rational literals, e,
// variables, field operations, log, exp, powers, roots, factorial) with
// rigorous interval evaluation and certified comparisons.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fano/interval.hpp"
#include "fano/numerics.hpp"

namespace fano {

using Assignment = std::map<std::string, ExactInt>;

class BoundExpr {
 public:
  enum class Op {
    Literal,    // rational constant
    E,          // Euler's number
    Var,        // free integer variable
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Log,        // natural logarithm
    Exp,
    Pow,        // base ^ exponent, exponent must evaluate to an exact rational
    Root,       // index-th root, index must evaluate to a positive integer
    Factorial,  // argument must evaluate to a non-negative integer
  };

  BoundExpr(long value);  // NOLINT(google-explicit-constructor)
  BoundExpr(const ExactInt& value);  // NOLINT(google-explicit-constructor)
  BoundExpr(const Rational& value);  // NOLINT(google-explicit-constructor)

  static BoundExpr e();
  static BoundExpr var(std::string name);

  Op op() const { return node_->op; }
  const std::vector<BoundExpr>& args() const { return node_->args; }
  const Rational& literal() const { return node_->literal; }
  const std::string& name() const { return node_->name; }

  /// True if the tree contains no log, exp, e or root, so that it evaluates
  /// to an exact rational at every assignment where it is defined.
  bool is_algebraic_rational() const;

  /// Exact value, or nullopt if the tree is not rational. Throws DomainError
  /// on division by zero and similar.
  std::optional<Rational> exact_value(const Assignment& assignment) const;

  std::string to_string() const;

  friend BoundExpr operator+(const BoundExpr& a, const BoundExpr& b);
  friend BoundExpr operator-(const BoundExpr& a, const BoundExpr& b);
  friend BoundExpr operator*(const BoundExpr& a, const BoundExpr& b);
  friend BoundExpr operator/(const BoundExpr& a, const BoundExpr& b);
  friend BoundExpr operator-(const BoundExpr& a);
  friend BoundExpr log(const BoundExpr& x);
  friend BoundExpr exp(const BoundExpr& x);
  friend BoundExpr pow(const BoundExpr& base, const BoundExpr& exponent);
  friend BoundExpr root(const BoundExpr& x, const BoundExpr& index);
  friend BoundExpr factorial(const BoundExpr& x);

 private:
  struct Node {
    Op op;
    std::vector<BoundExpr> args;
    Rational literal;
    std::string name;
    bool rational = true;  // see is_algebraic_rational
  };

  explicit BoundExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static BoundExpr make(Op op, std::vector<BoundExpr> args);

  std::shared_ptr<const Node> node_;
};

/// Interval enclosing the value of `expr` at `assignment`, evaluated at
/// `precision_bits` (>= 32). Throws DomainError for genuinely invalid input
/// and PrecisionInsufficient when the interval is too wide to decide a
/// domain condition.
RealInterval interval_eval(const BoundExpr& expr, const Assignment& assignment, long precision_bits);

/// Certified test of lhs >= rhs. Exact when rhs is rational; otherwise the
/// precision starts at `start_bits` and doubles until the rhs interval
/// separates from lhs or `precision_cap` is exceeded (-> Undecided).
Verdict decide_ge(const ExactInt& lhs, const BoundExpr& rhs, const Assignment& assignment,
                  long precision_cap = kDefaultPrecisionCap, long start_bits = kDefaultStartPrecision);

/// Certified test of lhs >= rhs for two expressions (sign of lhs - rhs).
Verdict decide_ge_expr(const BoundExpr& lhs, const BoundExpr& rhs, const Assignment& assignment,
                       long precision_cap = kDefaultPrecisionCap, long start_bits = kDefaultStartPrecision);

/// The unique m with m <= value < m + 1. For non-rational expressions this
/// relies on the value not being an integer (true for the n / (c log n)
/// family at integer n >= 2 since log n is transcendental); if it were, the
/// loop ends with PrecisionCap instead of spinning.
ExactInt floor_expr(const BoundExpr& expr, const Assignment& assignment,
                    long precision_cap = kDefaultPrecisionCap, long start_bits = kDefaultStartPrecision);

/// Interval for `expr` at the first precision (from `start_bits`, doubling)
/// where evaluation does not hit PrecisionInsufficient.
RealInterval interval_eval_adaptive(const BoundExpr& expr, const Assignment& assignment,
                                    long precision_cap = kDefaultPrecisionCap,
                                    long start_bits = kDefaultStartPrecision);

}  // namespace fano
