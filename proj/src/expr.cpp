#include "vortexcrit/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>

namespace vortexcrit {

namespace {

ExprPtr make_node(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

}  // namespace

ExprPtr expr_const(double v) {
    ExprNode n;
    n.kind = ExprNode::Kind::Constant;
    n.value = v;
    return make_node(std::move(n));
}

ExprPtr expr_var(int axis) {
    ExprNode n;
    n.kind = ExprNode::Kind::Variable;
    n.axis = axis;
    return make_node(std::move(n));
}

ExprPtr expr_unary(UnaryFn fn, ExprPtr a) {
    ExprNode n;
    n.kind = ExprNode::Kind::Unary;
    n.fn = fn;
    n.pos = a->pos;
    n.a = std::move(a);
    return make_node(std::move(n));
}

ExprPtr expr_bin(BinOp op, ExprPtr a, ExprPtr b) {
    ExprNode n;
    n.kind = ExprNode::Kind::Binary;
    n.op = op;
    n.pos = a->pos;
    n.a = std::move(a);
    n.b = std::move(b);
    return make_node(std::move(n));
}

ExprPtr expr_pow(ExprPtr a, double exponent) {
    ExprNode n;
    n.kind = ExprNode::Kind::Pow;
    n.value = exponent;
    n.pos = a->pos;
    n.a = std::move(a);
    return make_node(std::move(n));
}

// ---------------------------------------------------------------------------
// Parser: recursive descent over
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := base ("^" base)?          -- exponent folded to a constant
//   base   := number | "x"|"y"|"z" | "pi" | func "(" expr ")" | "(" expr ")" | "-" base
// ---------------------------------------------------------------------------

namespace {

struct Parser {
    std::string_view src;
    std::size_t i = 0;
    std::size_t end_pos;  // offset reported for errors at end of input

    explicit Parser(std::string_view s) : src(s) {
        std::size_t e = src.size();
        while (e > 0 && std::isspace(static_cast<unsigned char>(src[e - 1]))) --e;
        end_pos = e;
    }

    void skip_ws() {
        while (i < src.size() && std::isspace(static_cast<unsigned char>(src[i]))) ++i;
    }

    bool at_end() {
        skip_ws();
        return i >= src.size();
    }

    char peek() {
        skip_ws();
        return i < src.size() ? src[i] : '\0';
    }

    bool consume(char c) {
        if (peek() == c) {
            ++i;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& detail) {
        skip_ws();
        throw SyntaxError(i >= src.size() ? end_pos : i, detail);
    }

    ExprPtr parse_expr() {
        ExprPtr lhs = parse_term();
        for (;;) {
            char c = peek();
            if (c == '+' || c == '-') {
                ++i;
                lhs = expr_bin(c == '+' ? BinOp::Add : BinOp::Sub, lhs, parse_term());
            } else {
                return lhs;
            }
        }
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_factor();
        for (;;) {
            char c = peek();
            if (c == '*' || c == '/') {
                ++i;
                lhs = expr_bin(c == '*' ? BinOp::Mul : BinOp::Div, lhs, parse_factor());
            } else {
                return lhs;
            }
        }
    }

    ExprPtr parse_factor() {
        ExprPtr b = parse_base();
        if (peek() == '^') {
            ++i;
            skip_ws();
            std::size_t exp_pos = i;
            ExprPtr e = parse_base();
            std::optional<double> folded = fold_constant(*e);
            if (!folded)
                throw SyntaxError(exp_pos, "'^' exponent must be a constant expression");
            return expr_pow(std::move(b), *folded);
        }
        return b;
    }

    ExprPtr parse_base() {
        skip_ws();
        std::size_t start = i;
        if (i >= src.size()) fail("expected an operand");
        char c = src[i];

        if (c == '-') {
            ++i;
            ExprPtr inner = parse_base();
            ExprPtr n = expr_unary(UnaryFn::Neg, std::move(inner));
            const_cast<ExprNode*>(n.get())->pos = start;
            return n;
        }
        if (c == '(') {
            ++i;
            ExprPtr e = parse_expr();
            if (!consume(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number(start);
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident(start);
        fail("expected an operand");
    }

    ExprPtr parse_number(std::size_t start) {
        double v = 0.0;
        const char* first = src.data() + start;
        const char* last = src.data() + src.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || ptr == first) throw SyntaxError(start, "invalid number");
        i = static_cast<std::size_t>(ptr - src.data());
        ExprPtr n = expr_const(v);
        const_cast<ExprNode*>(n.get())->pos = start;
        return n;
    }

    ExprPtr parse_ident(std::size_t start) {
        std::size_t j = start;
        while (j < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
            ++j;
        std::string_view name = src.substr(start, j - start);
        i = j;

        auto var = [&](int axis) {
            ExprPtr n = expr_var(axis);
            const_cast<ExprNode*>(n.get())->pos = start;
            return n;
        };
        if (name == "x") return var(0);
        if (name == "y") return var(1);
        if (name == "z") return var(2);
        if (name == "pi") {
            ExprPtr n = expr_const(M_PI);
            const_cast<ExprNode*>(n.get())->pos = start;
            return n;
        }

        UnaryFn fn;
        if (name == "sin") fn = UnaryFn::Sin;
        else if (name == "cos") fn = UnaryFn::Cos;
        else if (name == "tan") fn = UnaryFn::Tan;
        else if (name == "sinh") fn = UnaryFn::Sinh;
        else if (name == "cosh") fn = UnaryFn::Cosh;
        else if (name == "tanh") fn = UnaryFn::Tanh;
        else if (name == "exp") fn = UnaryFn::Exp;
        else if (name == "log") fn = UnaryFn::Log;
        else if (name == "sqrt") fn = UnaryFn::Sqrt;
        else throw SyntaxError(start, "unknown identifier '" + std::string(name) + "'");

        if (!consume('(')) fail("expected '(' after function name");
        ExprPtr arg = parse_expr();
        if (!consume(')')) fail("expected ')'");
        ExprPtr n = expr_unary(fn, std::move(arg));
        const_cast<ExprNode*>(n.get())->pos = start;
        return n;
    }

    static std::optional<double> fold_constant(const ExprNode& e) {
        switch (e.kind) {
            case ExprNode::Kind::Constant: return e.value;
            case ExprNode::Kind::Variable: return std::nullopt;
            case ExprNode::Kind::Unary: {
                auto a = fold_constant(*e.a);
                if (!a) return std::nullopt;
                switch (e.fn) {
                    case UnaryFn::Neg: return -*a;
                    case UnaryFn::Sin: return std::sin(*a);
                    case UnaryFn::Cos: return std::cos(*a);
                    case UnaryFn::Tan: return std::tan(*a);
                    case UnaryFn::Sinh: return std::sinh(*a);
                    case UnaryFn::Cosh: return std::cosh(*a);
                    case UnaryFn::Tanh: return std::tanh(*a);
                    case UnaryFn::Exp: return std::exp(*a);
                    case UnaryFn::Log: return std::log(*a);
                    case UnaryFn::Sqrt: return std::sqrt(*a);
                }
                return std::nullopt;
            }
            case ExprNode::Kind::Binary: {
                auto a = fold_constant(*e.a);
                auto b = fold_constant(*e.b);
                if (!a || !b) return std::nullopt;
                switch (e.op) {
                    case BinOp::Add: return *a + *b;
                    case BinOp::Sub: return *a - *b;
                    case BinOp::Mul: return *a * *b;
                    case BinOp::Div: return *a / *b;
                }
                return std::nullopt;
            }
            case ExprNode::Kind::Pow: {
                auto a = fold_constant(*e.a);
                if (!a) return std::nullopt;
                return std::pow(*a, e.value);
            }
        }
        return std::nullopt;
    }
};

}  // namespace

ExprPtr parse_expression(std::string_view src) {
    Parser p(src);
    ExprPtr e = p.parse_expr();
    if (!p.at_end()) p.fail("unexpected trailing input");
    return e;
}

std::array<ExprPtr, 3> parse_components(std::string_view src) {
    Parser p(src);
    std::array<ExprPtr, 3> out;
    for (int k = 0; k < 3; ++k) {
        out[k] = p.parse_expr();
        if (k < 2) {
            char c = p.peek();
            if (c != ',' && c != ';') p.fail("expected ',' or ';'");
            ++p.i;
        }
    }
    if (!p.at_end()) p.fail("unexpected trailing input");
    return out;
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

std::string fmt_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* fn_name(UnaryFn fn) {
    switch (fn) {
        case UnaryFn::Neg: return "-";
        case UnaryFn::Sin: return "sin";
        case UnaryFn::Cos: return "cos";
        case UnaryFn::Tan: return "tan";
        case UnaryFn::Sinh: return "sinh";
        case UnaryFn::Cosh: return "cosh";
        case UnaryFn::Tanh: return "tanh";
        case UnaryFn::Exp: return "exp";
        case UnaryFn::Log: return "log";
        case UnaryFn::Sqrt: return "sqrt";
    }
    return "?";
}

}  // namespace

std::string to_string(const ExprNode& e) {
    switch (e.kind) {
        case ExprNode::Kind::Constant: {
            double v = e.value;
            if (v < 0.0 || (v == 0.0 && std::signbit(v))) return "(" + fmt_value(v) + ")";
            return fmt_value(v);
        }
        case ExprNode::Kind::Variable: return e.axis == 0 ? "x" : (e.axis == 1 ? "y" : "z");
        case ExprNode::Kind::Unary:
            if (e.fn == UnaryFn::Neg) return "(-" + to_string(*e.a) + ")";
            return std::string(fn_name(e.fn)) + "(" + to_string(*e.a) + ")";
        case ExprNode::Kind::Binary: {
            const char* op = e.op == BinOp::Add ? "+" : e.op == BinOp::Sub ? "-"
                             : e.op == BinOp::Mul ? "*" : "/";
            return "(" + to_string(*e.a) + " " + op + " " + to_string(*e.b) + ")";
        }
        case ExprNode::Kind::Pow:
            return "(" + to_string(*e.a) + "^(" + fmt_value(e.value) + "))";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

template <class S>
S eval_impl(const ExprNode& e, const S vars[3]) {
    switch (e.kind) {
        case ExprNode::Kind::Constant: return S(e.value);
        case ExprNode::Kind::Variable: return vars[e.axis];
        case ExprNode::Kind::Unary: {
            S a = eval_impl(*e.a, vars);
            switch (e.fn) {
                case UnaryFn::Neg: return -a;
                case UnaryFn::Sin: return sin(a);
                case UnaryFn::Cos: return cos(a);
                case UnaryFn::Tan: return tan(a);
                case UnaryFn::Sinh: return sinh(a);
                case UnaryFn::Cosh: return cosh(a);
                case UnaryFn::Tanh: return tanh(a);
                case UnaryFn::Exp: return exp(a);
                case UnaryFn::Log: return log(a);
                case UnaryFn::Sqrt: return sqrt(a);
            }
            return S(0.0);
        }
        case ExprNode::Kind::Binary: {
            S a = eval_impl(*e.a, vars);
            S b = eval_impl(*e.b, vars);
            switch (e.op) {
                case BinOp::Add: return a + b;
                case BinOp::Sub: return a - b;
                case BinOp::Mul: return a * b;
                case BinOp::Div: return a / b;
            }
            return S(0.0);
        }
        case ExprNode::Kind::Pow: return pow_const(eval_impl(*e.a, vars), e.value);
    }
    return S(0.0);
}

// Post-order search for the deepest node producing a non-finite result.
template <class S>
const ExprNode* find_nonfinite_impl(const ExprNode& e, const S vars[3]) {
    if (e.a) {
        if (const ExprNode* hit = find_nonfinite_impl(*e.a, vars)) return hit;
    }
    if (e.b) {
        if (const ExprNode* hit = find_nonfinite_impl(*e.b, vars)) return hit;
    }
    return is_finite(eval_impl(e, vars)) ? nullptr : &e;
}

}  // namespace

double eval(const ExprNode& e, const Vec3& x) {
    const double vars[3] = {x.x, x.y, x.z};
    return eval_impl(e, vars);
}

Jet2 eval_jet2(const ExprNode& e, const Vec3& x) {
    const Jet2 vars[3] = {Jet2::variable(0, x.x), Jet2::variable(1, x.y), Jet2::variable(2, x.z)};
    return eval_impl(e, vars);
}

const ExprNode* find_nonfinite(const ExprNode& e, const Vec3& x, bool with_derivatives) {
    if (with_derivatives) {
        const Jet2 vars[3] = {Jet2::variable(0, x.x), Jet2::variable(1, x.y),
                              Jet2::variable(2, x.z)};
        return find_nonfinite_impl(e, vars);
    }
    const double vars[3] = {x.x, x.y, x.z};
    return find_nonfinite_impl(e, vars);
}

}  // namespace vortexcrit
