#include "quadbound/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "quadbound/errors.hpp"

namespace quadbound {
namespace expr {
namespace {

NodePtr make_number(double v) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Number;
    n->number = v;
    return n;
}

NodePtr make_leaf(NodeKind kind) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    return n;
}

NodePtr make_negate(NodePtr operand) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Negate;
    n->left = std::move(operand);
    return n;
}

NodePtr make_binary(BinaryOp op, NodePtr lhs, NodePtr rhs) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Binary;
    n->op = op;
    n->left = std::move(lhs);
    n->right = std::move(rhs);
    return n;
}

NodePtr make_call(Func func, NodePtr operand) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Call;
    n->func = func;
    n->left = std::move(operand);
    return n;
}

// ---------------------------------------------------------------- lexer

enum class TokKind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    TokKind kind = TokKind::End;
    std::size_t pos = 0;
    double number = 0.0;
    std::string ident;
};

Token tok(TokKind kind, std::size_t pos) {
    Token t;
    t.kind = kind;
    t.pos = pos;
    return t;
}

std::vector<Token> lex(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
            const std::size_t start = i;
            while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (i < n && text[i] == '.') {
                ++i;
                while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            }
            // Exponent only if it is complete; otherwise leave 'e' for the
            // identifier lexer ("2e" is NUMBER(2) IDENT(e)).
            if (i < n && (text[i] == 'e' || text[i] == 'E')) {
                std::size_t j = i + 1;
                if (j < n && (text[j] == '+' || text[j] == '-')) ++j;
                if (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) {
                    while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
                    i = j;
                }
            }
            Token t = tok(TokKind::Number, start);
            t.number = std::stod(std::string(text.substr(start, i - start)));
            out.push_back(std::move(t));
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = i;
            while (i < n && std::isalpha(static_cast<unsigned char>(text[i]))) ++i;
            Token t = tok(TokKind::Ident, start);
            t.ident = std::string(text.substr(start, i - start));
            out.push_back(std::move(t));
            continue;
        }
        switch (c) {
            case '+': out.push_back(tok(TokKind::Plus, i)); break;
            case '-': out.push_back(tok(TokKind::Minus, i)); break;
            case '*':
                if (i + 1 < n && text[i + 1] == '*')
                    throw ParseError(i, "'**' is not an operator; use '^'");
                out.push_back(tok(TokKind::Star, i));
                break;
            case '/': out.push_back(tok(TokKind::Slash, i)); break;
            case '^': out.push_back(tok(TokKind::Caret, i)); break;
            case '(': out.push_back(tok(TokKind::LParen, i)); break;
            case ')': out.push_back(tok(TokKind::RParen, i)); break;
            default: throw ParseError(i, std::string("unexpected character '") + c + "'");
        }
        ++i;
    }
    out.push_back(tok(TokKind::End, n));
    return out;
}

// --------------------------------------------------------------- parser

struct Parser {
    std::vector<Token> toks;
    std::size_t at = 0;

    const Token& peek() const { return toks[at]; }
    const Token& advance() { return toks[at++]; }
    bool match(TokKind k) {
        if (peek().kind == k) {
            ++at;
            return true;
        }
        return false;
    }
    void expect(TokKind k, const char* what) {
        if (!match(k)) throw ParseError(peek().pos, std::string("expected ") + what);
    }

    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        for (;;) {
            if (match(TokKind::Plus))
                lhs = make_binary(BinaryOp::Add, std::move(lhs), parse_term());
            else if (match(TokKind::Minus))
                lhs = make_binary(BinaryOp::Sub, std::move(lhs), parse_term());
            else
                return lhs;
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_factor();
        for (;;) {
            if (match(TokKind::Star))
                lhs = make_binary(BinaryOp::Mul, std::move(lhs), parse_factor());
            else if (match(TokKind::Slash))
                lhs = make_binary(BinaryOp::Div, std::move(lhs), parse_factor());
            else
                return lhs;
        }
    }

    // factor := unary ("^" factor)?  -- right associative, and the unary
    // minus binds tighter: "-x^2" is (-x)^2.
    NodePtr parse_factor() {
        NodePtr base = parse_unary();
        if (match(TokKind::Caret)) return make_binary(BinaryOp::Pow, std::move(base), parse_factor());
        return base;
    }

    NodePtr parse_unary() {
        if (match(TokKind::Minus)) return make_negate(parse_unary());
        return parse_atom();
    }

    NodePtr parse_atom() {
        const Token& t = peek();
        switch (t.kind) {
            case TokKind::Number: {
                advance();
                return make_number(t.number);
            }
            case TokKind::Ident: {
                advance();
                if (t.ident == "x") return make_leaf(NodeKind::Variable);
                if (t.ident == "pi") return make_leaf(NodeKind::ConstPi);
                if (t.ident == "e") return make_leaf(NodeKind::ConstE);
                Func f;
                if (t.ident == "sin") f = Func::Sin;
                else if (t.ident == "cos") f = Func::Cos;
                else if (t.ident == "tan") f = Func::Tan;
                else if (t.ident == "exp") f = Func::Exp;
                else if (t.ident == "ln") f = Func::Ln;
                else if (t.ident == "sqrt") f = Func::Sqrt;
                else if (t.ident == "abs") f = Func::Abs;
                else if (t.ident == "atan") f = Func::Atan;
                else throw ParseError(t.pos, "unknown identifier '" + t.ident + "'");
                expect(TokKind::LParen, "'(' after function name");
                NodePtr arg = parse_expr();
                expect(TokKind::RParen, "')'");
                return make_call(f, std::move(arg));
            }
            case TokKind::LParen: {
                advance();
                NodePtr inner = parse_expr();
                expect(TokKind::RParen, "')'");
                return inner;
            }
            default:
                throw ParseError(t.pos, "expected a number, 'x', a constant, or '('");
        }
    }
};

// ------------------------------------------------------------ evaluation

bool integer_valued(double v) { return std::isfinite(v) && v == std::nearbyint(v); }

double eval_pow(double base, double expo) {
    if (base == 0.0 && expo < 0.0) throw DomainError("0 raised to a negative power");
    if (base < 0.0 && !integer_valued(expo))
        throw DomainError("negative base with non-integer exponent");
    return std::pow(base, expo);
}

double eval_node(const Node& n, double x) {
    switch (n.kind) {
        case NodeKind::Number: return n.number;
        case NodeKind::Variable: return x;
        case NodeKind::ConstPi: return M_PI;
        case NodeKind::ConstE: return M_E;
        case NodeKind::Negate: return -eval_node(*n.left, x);
        case NodeKind::Binary: {
            const double a = eval_node(*n.left, x);
            const double b = eval_node(*n.right, x);
            switch (n.op) {
                case BinaryOp::Add: return a + b;
                case BinaryOp::Sub: return a - b;
                case BinaryOp::Mul: return a * b;
                case BinaryOp::Div:
                    if (b == 0.0) throw DomainError("division by zero");
                    return a / b;
                case BinaryOp::Pow: return eval_pow(a, b);
            }
            break;
        }
        case NodeKind::Call: {
            const double a = eval_node(*n.left, x);
            switch (n.func) {
                case Func::Sin: return std::sin(a);
                case Func::Cos: return std::cos(a);
                case Func::Tan: return std::tan(a);
                case Func::Exp: return std::exp(a);
                case Func::Ln:
                    if (a <= 0.0) throw DomainError("ln of a non-positive value");
                    return std::log(a);
                case Func::Sqrt:
                    if (a < 0.0) throw DomainError("sqrt of a negative value");
                    return std::sqrt(a);
                case Func::Abs: return std::fabs(a);
                case Func::Atan: return std::atan(a);
                case Func::Sign: return a > 0.0 ? 1.0 : (a < 0.0 ? -1.0 : 0.0);
            }
            break;
        }
    }
    throw Error("malformed AST node");
}

// ------------------------------------------------------ differentiation

bool is_constant(const Node& n) {
    switch (n.kind) {
        case NodeKind::Number:
        case NodeKind::ConstPi:
        case NodeKind::ConstE: return true;
        case NodeKind::Variable: return false;
        case NodeKind::Negate: return is_constant(*n.left);
        case NodeKind::Binary: return is_constant(*n.left) && is_constant(*n.right);
        case NodeKind::Call: return is_constant(*n.left);
    }
    return false;
}

NodePtr fold(NodePtr n) {
    if (n->kind == NodeKind::Number) return n;
    if (is_constant(*n)) {
        try {
            return make_number(eval_node(*n, 0.0));
        } catch (const DomainError&) {
            return n;  // leave it; evaluation will report the domain issue
        }
    }
    return n;
}

NodePtr fold_binary(BinaryOp op, NodePtr a, NodePtr b) {
    return fold(make_binary(op, std::move(a), std::move(b)));
}

NodePtr diff_node(const NodePtr& n);

NodePtr diff_pow(const NodePtr& n) {
    const NodePtr& base = n->left;
    const NodePtr& expo = n->right;
    if (is_constant(*expo)) {
        // c * u^(c-1) * u'  (valid for negative bases with integer c)
        const double c = eval_node(*expo, 0.0);
        NodePtr power = fold_binary(BinaryOp::Pow, base, make_number(c - 1.0));
        NodePtr scaled = fold_binary(BinaryOp::Mul, make_number(c), std::move(power));
        return fold_binary(BinaryOp::Mul, std::move(scaled), diff_node(base));
    }
    // u^v = exp(v ln u):  u^v * (v' ln u + v u'/u)
    NodePtr term1 = fold_binary(BinaryOp::Mul, diff_node(expo), make_call(Func::Ln, base));
    NodePtr term2 = fold_binary(BinaryOp::Div, fold_binary(BinaryOp::Mul, expo, diff_node(base)),
                                base);
    NodePtr sum = fold_binary(BinaryOp::Add, std::move(term1), std::move(term2));
    return fold_binary(BinaryOp::Mul, n, std::move(sum));
}

NodePtr diff_call(const NodePtr& n) {
    const NodePtr& u = n->left;
    NodePtr du = diff_node(u);
    NodePtr outer;
    switch (n->func) {
        case Func::Sin: outer = make_call(Func::Cos, u); break;
        case Func::Cos: outer = make_negate(make_call(Func::Sin, u)); break;
        case Func::Tan: {
            NodePtr c = make_call(Func::Cos, u);
            outer = fold_binary(BinaryOp::Div, make_number(1.0),
                                fold_binary(BinaryOp::Mul, c, c));
            break;
        }
        case Func::Exp: outer = make_call(Func::Exp, u); break;
        case Func::Ln: outer = fold_binary(BinaryOp::Div, make_number(1.0), u); break;
        case Func::Sqrt:
            outer = fold_binary(BinaryOp::Div, make_number(1.0),
                                fold_binary(BinaryOp::Mul, make_number(2.0),
                                            make_call(Func::Sqrt, u)));
            break;
        case Func::Abs: outer = make_call(Func::Sign, u); break;
        case Func::Atan:
            outer = fold_binary(BinaryOp::Div, make_number(1.0),
                                fold_binary(BinaryOp::Add, make_number(1.0),
                                            fold_binary(BinaryOp::Mul, u, u)));
            break;
        case Func::Sign: return make_number(0.0);  // a.e.; jumps are measure zero
    }
    return fold_binary(BinaryOp::Mul, std::move(outer), std::move(du));
}

NodePtr diff_node(const NodePtr& n) {
    switch (n->kind) {
        case NodeKind::Number:
        case NodeKind::ConstPi:
        case NodeKind::ConstE: return make_number(0.0);
        case NodeKind::Variable: return make_number(1.0);
        case NodeKind::Negate: return fold(make_negate(diff_node(n->left)));
        case NodeKind::Binary:
            switch (n->op) {
                case BinaryOp::Add:
                    return fold_binary(BinaryOp::Add, diff_node(n->left), diff_node(n->right));
                case BinaryOp::Sub:
                    return fold_binary(BinaryOp::Sub, diff_node(n->left), diff_node(n->right));
                case BinaryOp::Mul: {
                    NodePtr t1 = fold_binary(BinaryOp::Mul, diff_node(n->left), n->right);
                    NodePtr t2 = fold_binary(BinaryOp::Mul, n->left, diff_node(n->right));
                    return fold_binary(BinaryOp::Add, std::move(t1), std::move(t2));
                }
                case BinaryOp::Div: {
                    NodePtr num = fold_binary(
                        BinaryOp::Sub, fold_binary(BinaryOp::Mul, diff_node(n->left), n->right),
                        fold_binary(BinaryOp::Mul, n->left, diff_node(n->right)));
                    NodePtr den = fold_binary(BinaryOp::Mul, n->right, n->right);
                    return fold_binary(BinaryOp::Div, std::move(num), std::move(den));
                }
                case BinaryOp::Pow: return diff_pow(n);
            }
            break;
        case NodeKind::Call: return diff_call(n);
    }
    throw Error("malformed AST node");
}

// -------------------------------------------------------------- printing

// Precedence levels used by the printer; higher binds tighter. The caret
// operand rules mirror the grammar: its base may be a unary chain over an
// atom, its exponent a full factor.
enum Prec { kPrecAdd = 1, kPrecMul = 2, kPrecUnary = 3, kPrecPow = 4, kPrecAtom = 5 };

int node_prec(const Node& n) {
    switch (n.kind) {
        case NodeKind::Number: return n.number < 0 ? kPrecUnary : kPrecAtom;
        case NodeKind::Variable:
        case NodeKind::ConstPi:
        case NodeKind::ConstE:
        case NodeKind::Call: return kPrecAtom;
        case NodeKind::Negate: return kPrecUnary;
        case NodeKind::Binary:
            switch (n.op) {
                case BinaryOp::Add:
                case BinaryOp::Sub: return kPrecAdd;
                case BinaryOp::Mul:
                case BinaryOp::Div: return kPrecMul;
                case BinaryOp::Pow: return kPrecPow;
            }
    }
    return kPrecAtom;
}

const char* func_name(Func f) {
    switch (f) {
        case Func::Sin: return "sin";
        case Func::Cos: return "cos";
        case Func::Tan: return "tan";
        case Func::Exp: return "exp";
        case Func::Ln: return "ln";
        case Func::Sqrt: return "sqrt";
        case Func::Abs: return "abs";
        case Func::Atan: return "atan";
        case Func::Sign: return "sign";
    }
    return "?";
}

void print_node(const Node& n, int min_prec, std::string& out) {
    const bool parens = node_prec(n) < min_prec;
    if (parens) out += '(';
    switch (n.kind) {
        case NodeKind::Number: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", n.number);
            out += buf;
            break;
        }
        case NodeKind::Variable: out += 'x'; break;
        case NodeKind::ConstPi: out += "pi"; break;
        case NodeKind::ConstE: out += 'e'; break;
        case NodeKind::Negate:
            out += '-';
            // A '^' under unary minus must be parenthesized: the grammar
            // reads "-u^v" as (-u)^v.
            if (n.left->kind == NodeKind::Binary && n.left->op == BinaryOp::Pow) {
                out += '(';
                print_node(*n.left, kPrecAdd, out);
                out += ')';
            } else {
                print_node(*n.left, kPrecUnary, out);
            }
            break;
        case NodeKind::Binary: {
            const char* sym = "+";
            int lhs_min = kPrecAdd, rhs_min = kPrecAdd;
            switch (n.op) {
                case BinaryOp::Add: sym = "+"; lhs_min = kPrecAdd; rhs_min = kPrecMul; break;
                case BinaryOp::Sub: sym = "-"; lhs_min = kPrecAdd; rhs_min = kPrecMul; break;
                case BinaryOp::Mul: sym = "*"; lhs_min = kPrecMul; rhs_min = kPrecUnary; break;
                case BinaryOp::Div: sym = "/"; lhs_min = kPrecMul; rhs_min = kPrecUnary; break;
                // Base must be unary-or-atom; exponent reparses as a factor.
                case BinaryOp::Pow: sym = "^"; lhs_min = kPrecUnary; rhs_min = kPrecUnary; break;
            }
            if (n.op == BinaryOp::Pow && node_prec(*n.left) == kPrecPow) {
                // "(a^b)^c" needs the parens; the grammar would re-associate.
                out += '(';
                print_node(*n.left, kPrecAdd, out);
                out += ')';
            } else {
                print_node(*n.left, lhs_min, out);
            }
            out += sym;
            print_node(*n.right, rhs_min, out);
            break;
        }
        case NodeKind::Call:
            out += func_name(n.func);
            out += '(';
            print_node(*n.left, kPrecAdd, out);
            out += ')';
            break;
    }
    if (parens) out += ')';
}

}  // namespace

Ast parse(std::string_view text) {
    Parser p{lex(text)};
    NodePtr root = p.parse_expr();
    if (p.peek().kind != TokKind::End)
        throw ParseError(p.peek().pos, "unexpected trailing input");
    return Ast(std::move(root));
}

double evaluate(const Ast& f, double x) {
    if (f.empty()) throw Error("empty AST");
    const double y = eval_node(*f.root(), x);
    if (!std::isfinite(y))
        throw DomainError("evaluation produced a non-finite value at x=" + std::to_string(x));
    return y;
}

Ast differentiate(const Ast& f) {
    if (f.empty()) throw Error("empty AST");
    return Ast(diff_node(f.root()));
}

std::string to_string(const Ast& f) {
    if (f.empty()) return "";
    std::string out;
    print_node(*f.root(), kPrecAdd, out);
    return out;
}

}  // namespace expr

FunctionModel make_function_model(std::string_view text, const Interval& domain) {
    expr::Ast f = expr::parse(text);
    expr::Ast fprime = expr::differentiate(f);
    FunctionModel m;
    m.eval = [f](double t) { return expr::evaluate(f, t); };
    m.deriv = [fprime](double t) { return expr::evaluate(fprime, t); };
    m.domain = domain;
    m.description = std::string(text);
    return m;
}

DerivativeBounds derivative_range(const std::function<double(double)>& fprime,
                                  const Interval& iv, int n, double inflation,
                                  bool extremes_at_samples) {
    if (n < 2) throw Error("derivative_range requires n >= 2");
    if (inflation < 0.0) throw Error("derivative_range requires inflation >= 0");
    double lo = std::min(fprime(iv.a), fprime(iv.b));
    double hi = std::max(fprime(iv.a), fprime(iv.b));
    const double mid = iv.midpoint();
    const double half = 0.5 * iv.width();
    for (int k = 0; k < n; ++k) {
        // Chebyshev points of the first kind: endpoint-dense.
        const double t = mid + half * std::cos((2.0 * k + 1.0) * M_PI / (2.0 * n));
        const double v = fprime(t);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double pad = inflation * (hi - lo) + 1e-12;
    DerivativeBounds db;
    db.lo = lo - pad;
    db.hi = hi + pad;
    db.provenance = extremes_at_samples ? Provenance::Exact : Provenance::SampledInflated;
    return db;
}

DerivativeBounds derivative_range(const expr::Ast& fprime, const Interval& iv, int n,
                                  double inflation, bool extremes_at_samples) {
    auto f = [&fprime](double t) { return expr::evaluate(fprime, t); };
    return derivative_range(f, iv, n, inflation, extremes_at_samples);
}

}  // namespace quadbound
