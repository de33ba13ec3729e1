#pragma once

#include <array>
#include <memory>
#include <string>
#include <string_view>

#include "vortexcrit/errors.hpp"
#include "vortexcrit/jets.hpp"
#include "vortexcrit/vec.hpp"

namespace vortexcrit {

enum class UnaryFn { Neg, Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Log, Sqrt };
enum class BinOp { Add, Sub, Mul, Div };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

/// Immutable expression tree over the variables x, y, z.
/// '^' exponents are folded to a constant at parse time, so every tree is
/// twice differentiable wherever it evaluates finitely.
struct ExprNode {
    enum class Kind { Constant, Variable, Unary, Binary, Pow };

    Kind kind = Kind::Constant;
    double value = 0.0;   // Constant: the value; Pow: the exponent
    int axis = 0;         // Variable: 0 = x, 1 = y, 2 = z
    UnaryFn fn = UnaryFn::Neg;
    BinOp op = BinOp::Add;
    ExprPtr a, b;              // operands (Unary/Pow use `a` only)
    std::size_t pos = 0;       // byte offset in the source, for diagnostics
};

// Programmatic builders (used by the catalog and by tests).
ExprPtr expr_const(double v);
ExprPtr expr_var(int axis);
ExprPtr expr_unary(UnaryFn fn, ExprPtr a);
ExprPtr expr_bin(BinOp op, ExprPtr a, ExprPtr b);
ExprPtr expr_pow(ExprPtr a, double exponent);

/// Parse a single expression. Throws SyntaxError with a byte offset.
ExprPtr parse_expression(std::string_view src);

/// Parse three comma- or semicolon-separated expressions.
std::array<ExprPtr, 3> parse_components(std::string_view src);

/// Canonical fully-parenthesized form; re-parses to an identically-evaluating tree.
std::string to_string(const ExprNode& e);
inline std::string to_string(const ExprPtr& e) { return to_string(*e); }

double eval(const ExprNode& e, const Vec3& x);
Jet2 eval_jet2(const ExprNode& e, const Vec3& x);

/// Deepest subexpression whose value (or jet) is non-finite at x, or nullptr.
const ExprNode* find_nonfinite(const ExprNode& e, const Vec3& x, bool with_derivatives);

}  // namespace vortexcrit
