#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "quadbound/types.hpp"

namespace quadbound {
namespace expr {

// AST for the one-variable expression language:
//
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := unary ("^" factor)?          -- right associative
//   unary  := "-" unary | atom
//   atom   := NUMBER | "x" | "pi" | "e" | FUNC "(" expr ")" | "(" expr ")"
//   FUNC   := sin cos tan exp ln sqrt abs atan
//
// Whitespace is insignificant; NUMBER is decimal with an optional exponent.
// Note the grammar makes unary minus bind tighter than "^": "-x^2" is
// (-x)^2. `sign` exists only as a differentiation artifact (sign(0) = 0);
// the parser does not accept it.

enum class NodeKind { Number, Variable, ConstPi, ConstE, Negate, Binary, Call };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class Func { Sin, Cos, Tan, Exp, Ln, Sqrt, Abs, Atan, Sign };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    NodeKind kind;
    double number = 0.0;        // Number
    BinaryOp op = BinaryOp::Add;  // Binary
    Func func = Func::Sin;      // Call
    NodePtr left;               // Binary lhs, Negate/Call operand
    NodePtr right;              // Binary rhs
};

class Ast {
  public:
    Ast() = default;
    explicit Ast(NodePtr root) : root_(std::move(root)) {}

    bool empty() const { return root_ == nullptr; }
    const NodePtr& root() const { return root_; }

  private:
    NodePtr root_;
};

// Throws ParseError with the first offending 0-based offset.
Ast parse(std::string_view text);

// Standard double-precision semantics. Throws DomainError for ln of a
// non-positive value, sqrt of a negative, division by zero, 0^negative,
// a negative base with a non-integer exponent, or a non-finite result.
double evaluate(const Ast& f, double x);

// Symbolic derivative, constant-folded but otherwise unsimplified.
// d(abs(u)) = sign(u)*u' with sign(0) = 0.
Ast differentiate(const Ast& f);

// Text round-trip: parse(to_string(f)) evaluates identically to f.
std::string to_string(const Ast& f);

}  // namespace expr

// FunctionModel backed by a parsed expression and its symbolic derivative.
FunctionModel make_function_model(std::string_view text, const Interval& domain);

// Range estimate for g' by sampling at n Chebyshev-distributed points plus
// both endpoints, each side widened by inflation*(max-min) + 1e-12. The
// defaults are cheap and conservative at desk scale; callers needing
// exactness assert their own bounds. Provenance is SampledInflated unless
// the caller asserts the extremes are attained at sample points (monotone
// or piecewise-linear structure), in which case the result is labeled
// Exact.
DerivativeBounds derivative_range(const expr::Ast& fprime, const Interval& iv, int n = 1024,
                                  double inflation = 0.05, bool extremes_at_samples = false);

// Same estimator for an already-evaluable derivative.
DerivativeBounds derivative_range(const std::function<double(double)>& fprime,
                                  const Interval& iv, int n = 1024, double inflation = 0.05,
                                  bool extremes_at_samples = false);

}  // namespace quadbound
