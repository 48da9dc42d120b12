#include "minsurf/expr.hpp"

#include "minsurf/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace minsurf {

ParseError::ParseError(const std::string& message, int line, int column, std::vector<std::string> expected)
    : Error([&] {
          std::ostringstream os;
          os << "parse error at " << line << ":" << column << ": " << message;
          if (!expected.empty()) {
              os << " (expected ";
              for (std::size_t k = 0; k < expected.size(); ++k) os << (k ? ", " : "") << expected[k];
              os << ")";
          }
          return os.str();
      }()),
      message_(message), line_(line), column_(column), expected_(std::move(expected)) {}

namespace {

using Op = ComplexExpr::Op;
using Func = ComplexExpr::Func;
using Node = ComplexExpr::Node;
using NodePtr = ComplexExpr::NodePtr;

constexpr Complex kI{0.0, 1.0};
constexpr double kSingularRadius = 1e-12;

struct FuncName {
    std::string_view name;
    Func func;
};
constexpr FuncName kFunctions[] = {{"exp", Func::Exp},   {"log", Func::Log},   {"sin", Func::Sin},
                                   {"cos", Func::Cos},   {"sinh", Func::Sinh}, {"cosh", Func::Cosh},
                                   {"sqrt", Func::Sqrt}};

std::string_view func_name(Func f) {
    for (const auto& entry : kFunctions)
        if (entry.func == f) return entry.name;
    return "?";
}

NodePtr leaf(Op op, Complex value = {}, int line = 0, int column = 0) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->value = value;
    n->line = line;
    n->column = column;
    return n;
}

NodePtr unary(Op op, NodePtr arg, int line = 0, int column = 0) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->lhs = std::move(arg);
    n->line = line;
    n->column = column;
    return n;
}

NodePtr binary(Op op, NodePtr a, NodePtr b, int line = 0, int column = 0) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    n->line = line;
    n->column = column;
    return n;
}

NodePtr power(NodePtr base, int exponent, int line = 0, int column = 0) {
    auto n = std::make_shared<Node>();
    n->op = Op::Pow;
    n->lhs = std::move(base);
    n->exponent = exponent;
    n->line = line;
    n->column = column;
    return n;
}

NodePtr function_call(Func f, NodePtr arg, int line = 0, int column = 0) {
    auto n = std::make_shared<Node>();
    n->op = Op::Call;
    n->func = f;
    n->lhs = std::move(arg);
    n->line = line;
    n->column = column;
    return n;
}

Complex integer_power(Complex base, int exponent) {
    Complex result{1.0, 0.0};
    unsigned n = exponent < 0 ? static_cast<unsigned>(-static_cast<long>(exponent)) : static_cast<unsigned>(exponent);
    Complex b = base;
    while (n) {
        if (n & 1u) result *= b;
        b *= b;
        n >>= 1u;
    }
    return exponent < 0 ? Complex(1.0, 0.0) / result : result;
}

Complex apply(Func f, Complex x) {
    switch (f) {
        case Func::Exp: return std::exp(x);
        case Func::Log: return std::log(x);
        case Func::Sin: return std::sin(x);
        case Func::Cos: return std::cos(x);
        case Func::Sinh: return std::sinh(x);
        case Func::Cosh: return std::cosh(x);
        case Func::Sqrt: return std::sqrt(x);
    }
    return {};
}

Complex evaluate(const Node& n, Complex z) {
    switch (n.op) {
        case Op::Number: return n.value;
        case Op::ImagUnit: return kI;
        case Op::Pi: return {kPi, 0.0};
        case Op::Var: return z;
        case Op::Add: return evaluate(*n.lhs, z) + evaluate(*n.rhs, z);
        case Op::Sub: return evaluate(*n.lhs, z) - evaluate(*n.rhs, z);
        case Op::Mul: return evaluate(*n.lhs, z) * evaluate(*n.rhs, z);
        case Op::Div: return evaluate(*n.lhs, z) / evaluate(*n.rhs, z);
        case Op::Neg: return -evaluate(*n.lhs, z);
        case Op::Pow: return integer_power(evaluate(*n.lhs, z), n.exponent);
        case Op::Call: return apply(n.func, evaluate(*n.lhs, z));
    }
    return {};
}

// ---------------------------------------------------------------- folding builders

bool is_const(const NodePtr& n) { return n->op == Op::Number || n->op == Op::ImagUnit || n->op == Op::Pi; }
Complex const_value(const NodePtr& n) { return evaluate(*n, {}); }
bool is_value(const NodePtr& n, Complex v) { return is_const(n) && const_value(n) == v; }
bool finite(Complex v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

NodePtr make_number(Complex v) {
    v += Complex(0.0, 0.0);  // drop signed zeros
    if (v == kI) return leaf(Op::ImagUnit);
    return leaf(Op::Number, v);
}

NodePtr fold_or(Complex v, NodePtr fallback) { return finite(v) ? make_number(v) : std::move(fallback); }

NodePtr make_neg(NodePtr a) {
    if (is_const(a)) return make_number(-const_value(a));
    if (a->op == Op::Neg) return a->lhs;
    return unary(Op::Neg, std::move(a));
}

NodePtr make_add(NodePtr a, NodePtr b) {
    if (is_const(a) && is_const(b)) return make_number(const_value(a) + const_value(b));
    if (is_value(a, 0.0)) return b;
    if (is_value(b, 0.0)) return a;
    return binary(Op::Add, std::move(a), std::move(b));
}

NodePtr make_sub(NodePtr a, NodePtr b) {
    if (is_const(a) && is_const(b)) return make_number(const_value(a) - const_value(b));
    if (is_value(b, 0.0)) return a;
    if (is_value(a, 0.0)) return make_neg(std::move(b));
    return binary(Op::Sub, std::move(a), std::move(b));
}

NodePtr make_mul(NodePtr a, NodePtr b) {
    if (is_const(a) && is_const(b)) return make_number(const_value(a) * const_value(b));
    if (is_value(a, 0.0) || is_value(b, 0.0)) return make_number(0.0);
    if (is_value(a, 1.0)) return b;
    if (is_value(b, 1.0)) return a;
    if (is_value(a, -1.0)) return make_neg(std::move(b));
    if (is_value(b, -1.0)) return make_neg(std::move(a));
    if (is_const(b)) std::swap(a, b);  // constants lead
    if (is_const(a) && b->op == Op::Mul && is_const(b->lhs)) {
        return make_mul(make_number(const_value(a) * const_value(b->lhs)), b->rhs);
    }
    if (is_const(a) && b->op == Op::Neg) return make_mul(make_number(-const_value(a)), b->lhs);
    return binary(Op::Mul, std::move(a), std::move(b));
}

NodePtr make_div(NodePtr a, NodePtr b) {
    if (is_const(a) && is_const(b) && const_value(b) != 0.0) return make_number(const_value(a) / const_value(b));
    if (is_value(b, 1.0)) return a;
    if (is_value(a, 0.0) && !is_value(b, 0.0)) return make_number(0.0);
    return binary(Op::Div, std::move(a), std::move(b));
}

NodePtr make_pow(NodePtr a, int n) {
    if (n == 0) return make_number(1.0);
    if (n == 1) return a;
    if (is_const(a)) return fold_or(integer_power(const_value(a), n), power(a, n));
    if (a->op == Op::Pow) return make_pow(a->lhs, a->exponent * n);
    return power(std::move(a), n);
}

NodePtr make_call(Func f, NodePtr a) {
    if (is_const(a)) return fold_or(apply(f, const_value(a)), function_call(f, a));
    return function_call(f, std::move(a));
}

NodePtr derive(const NodePtr& n) {
    switch (n->op) {
        case Op::Number:
        case Op::ImagUnit:
        case Op::Pi: return make_number(0.0);
        case Op::Var: return make_number(1.0);
        case Op::Add: return make_add(derive(n->lhs), derive(n->rhs));
        case Op::Sub: return make_sub(derive(n->lhs), derive(n->rhs));
        case Op::Mul:
            return make_add(make_mul(derive(n->lhs), n->rhs), make_mul(n->lhs, derive(n->rhs)));
        case Op::Div:
            return make_div(make_sub(make_mul(derive(n->lhs), n->rhs), make_mul(n->lhs, derive(n->rhs))),
                            make_pow(n->rhs, 2));
        case Op::Neg: return make_neg(derive(n->lhs));
        case Op::Pow:
            return make_mul(make_mul(make_number(static_cast<double>(n->exponent)), make_pow(n->lhs, n->exponent - 1)),
                            derive(n->lhs));
        case Op::Call: {
            const NodePtr& u = n->lhs;
            NodePtr du = derive(u);
            switch (n->func) {
                case Func::Exp: return make_mul(make_call(Func::Exp, u), du);
                case Func::Log: return make_div(du, u);
                case Func::Sin: return make_mul(make_call(Func::Cos, u), du);
                case Func::Cos: return make_neg(make_mul(make_call(Func::Sin, u), du));
                case Func::Sinh: return make_mul(make_call(Func::Cosh, u), du);
                case Func::Cosh: return make_mul(make_call(Func::Sinh, u), du);
                case Func::Sqrt:
                    return make_div(du, make_mul(make_number(2.0), make_call(Func::Sqrt, u)));
            }
        }
    }
    return make_number(0.0);
}

bool equal_trees(const NodePtr& a, const NodePtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->op != b->op) return false;
    switch (a->op) {
        case Op::Number: return a->value == b->value;
        case Op::ImagUnit:
        case Op::Pi:
        case Op::Var: return true;
        case Op::Pow: return a->exponent == b->exponent && equal_trees(a->lhs, b->lhs);
        case Op::Call: return a->func == b->func && equal_trees(a->lhs, b->lhs);
        case Op::Neg: return equal_trees(a->lhs, b->lhs);
        default: return equal_trees(a->lhs, b->lhs) && equal_trees(a->rhs, b->rhs);
    }
}

// Rebuilds a tree through the folding builders, so "2*i*z" and a folded 2i*z compare equal.
NodePtr canonical(const NodePtr& n) {
    switch (n->op) {
        case Op::Number:
        case Op::ImagUnit:
        case Op::Pi:
        case Op::Var: return n;
        case Op::Add: return make_add(canonical(n->lhs), canonical(n->rhs));
        case Op::Sub: return make_sub(canonical(n->lhs), canonical(n->rhs));
        case Op::Mul: return make_mul(canonical(n->lhs), canonical(n->rhs));
        case Op::Div: return make_div(canonical(n->lhs), canonical(n->rhs));
        case Op::Neg: return make_neg(canonical(n->lhs));
        case Op::Pow: return make_pow(canonical(n->lhs), n->exponent);
        case Op::Call: return make_call(n->func, canonical(n->lhs));
    }
    return n;
}

bool tree_is_constant(const NodePtr& n) {
    if (!n) return true;
    if (n->op == Op::Var) return false;
    return tree_is_constant(n->lhs) && tree_is_constant(n->rhs);
}

// ---------------------------------------------------------------- printing

constexpr int kPrecAdd = 1, kPrecMul = 2, kPrecNeg = 3, kPrecPow = 4, kPrecAtom = 5;

std::string format_real(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

// Complex literals print as the sum they parse back into.
NodePtr literal_shape(Complex v) {
    const double re = v.real(), im = v.imag();
    const auto real_part = [](double x) {
        return x < 0.0 ? unary(Op::Neg, leaf(Op::Number, -x)) : leaf(Op::Number, x + 0.0);
    };
    if (im == 0.0) return real_part(re);
    NodePtr imag = std::abs(im) == 1.0 ? leaf(Op::ImagUnit) : binary(Op::Mul, leaf(Op::Number, std::abs(im)), leaf(Op::ImagUnit));
    if (re == 0.0) return im < 0.0 ? unary(Op::Neg, imag) : imag;
    return binary(im < 0.0 ? Op::Sub : Op::Add, real_part(re), imag);
}

int precedence(const Node& n) {
    switch (n.op) {
        case Op::Add:
        case Op::Sub: return kPrecAdd;
        case Op::Mul:
        case Op::Div: return kPrecMul;
        case Op::Neg: return kPrecNeg;
        case Op::Pow: return kPrecPow;
        default: return kPrecAtom;
    }
}

void print(const NodePtr& n, std::string& out);

void print_child(const NodePtr& child, int parent_prec, bool right, std::string& out) {
    NodePtr shown = child->op == Op::Number && (child->value.imag() != 0.0 || child->value.real() < 0.0)
                        ? literal_shape(child->value)
                        : child;
    const int p = precedence(*shown);
    const bool parens = right ? p <= parent_prec : p < parent_prec;
    if (parens) out += '(';
    print(shown, out);
    if (parens) out += ')';
}

void print(const NodePtr& n, std::string& out) {
    switch (n->op) {
        case Op::Number:
            if (n->value.imag() != 0.0 || n->value.real() < 0.0) {
                print(literal_shape(n->value), out);
            } else {
                out += format_real(n->value.real());
            }
            return;
        case Op::ImagUnit: out += 'i'; return;
        case Op::Pi: out += "pi"; return;
        case Op::Var: out += 'z'; return;
        case Op::Add:
        case Op::Sub:
            print_child(n->lhs, kPrecAdd, false, out);
            out += n->op == Op::Add ? " + " : " - ";
            print_child(n->rhs, kPrecAdd, true, out);
            return;
        case Op::Mul:
        case Op::Div:
            print_child(n->lhs, kPrecMul, false, out);
            out += n->op == Op::Mul ? '*' : '/';
            print_child(n->rhs, kPrecMul, true, out);
            return;
        case Op::Neg:
            out += '-';
            print_child(n->lhs, kPrecNeg, false, out);
            return;
        case Op::Pow:
            // The base binds tighter than any operator, so only atoms print bare.
            print_child(n->lhs, kPrecPow, true, out);
            out += '^';
            out += n->exponent < 0 ? "(" + std::to_string(n->exponent) + ")" : std::to_string(n->exponent);
            return;
        case Op::Call:
            out += func_name(n->func);
            out += '(';
            print(n->lhs, out);
            out += ')';
            return;
    }
}

// ---------------------------------------------------------------- parsing

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    double number = 0.0;
    int line = 1;
    int column = 1;
};

std::string describe(const Token& t) {
    switch (t.kind) {
        case Tok::End: return "end of input";
        case Tok::Number:
        case Tok::Ident: return "'" + t.text + "'";
        default: return "'" + t.text + "'";
    }
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> tokens;
        for (;;) {
            skip_space();
            Token t{Tok::End, "", 0.0, line_, column_};
            if (pos_ >= src_.size()) {
                tokens.push_back(t);
                return tokens;
            }
            const char c = src_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                lex_number(t);
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                const std::size_t start = pos_;
                while (pos_ < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                    advance();
                t.kind = Tok::Ident;
                t.text = std::string(src_.substr(start, pos_ - start));
            } else {
                static constexpr std::pair<char, Tok> singles[] = {{'+', Tok::Plus},   {'-', Tok::Minus},
                                                                   {'*', Tok::Star},   {'/', Tok::Slash},
                                                                   {'^', Tok::Caret},  {'(', Tok::LParen},
                                                                   {')', Tok::RParen}};
                bool matched = false;
                for (const auto& [ch, kind] : singles) {
                    if (c == ch) {
                        t.kind = kind;
                        t.text = std::string(1, c);
                        advance();
                        matched = true;
                        break;
                    }
                }
                if (!matched) {
                    throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.column,
                                     {"number", "identifier", "operator", "'('", "')'"});
                }
            }
            tokens.push_back(std::move(t));
        }
    }

private:
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
    }

    bool digit_at(std::size_t p) const {
        return p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]));
    }

    void lex_number(Token& t) {
        const std::size_t start = pos_;
        while (digit_at(pos_)) advance();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            advance();
            while (digit_at(pos_)) advance();
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            const bool sign = pos_ + 1 < src_.size() && (src_[pos_ + 1] == '+' || src_[pos_ + 1] == '-');
            if (digit_at(pos_ + (sign ? 2 : 1))) {
                advance();
                if (sign) advance();
                while (digit_at(pos_)) advance();
            }
        }
        t.kind = Tok::Number;
        t.text = std::string(src_.substr(start, pos_ - start));
        const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.number);
        if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
            throw ParseError("malformed number '" + t.text + "'", t.line, t.column, {"number"});
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    NodePtr parse_all() {
        NodePtr e = expr();
        if (peek().kind != Tok::End) fail({"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"});
        return e;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& take() { return tokens_[pos_++]; }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        const Token& t = peek();
        throw ParseError("unexpected " + describe(t), t.line, t.column, std::move(expected));
    }

    void expect(Tok kind, const char* what) {
        if (peek().kind != kind) fail({what});
        take();
    }

    NodePtr expr() {
        NodePtr lhs = term();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const Token& op = take();
            NodePtr rhs = term();
            lhs = binary(op.kind == Tok::Plus ? Op::Add : Op::Sub, lhs, rhs, op.line, op.column);
        }
        return lhs;
    }

    NodePtr term() {
        NodePtr lhs = factor();
        while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
            const Token& op = take();
            NodePtr rhs = factor();
            lhs = binary(op.kind == Tok::Star ? Op::Mul : Op::Div, lhs, rhs, op.line, op.column);
        }
        return lhs;
    }

    NodePtr factor() {
        if (peek().kind == Tok::Minus) {
            const Token& op = take();
            return unary(Op::Neg, factor(), op.line, op.column);
        }
        NodePtr b = base();
        if (peek().kind == Tok::Caret) {
            const Token& op = take();
            return power(b, exponent(), op.line, op.column);
        }
        return b;
    }

    int exponent() {
        const bool parenthesized = peek().kind == Tok::LParen;
        if (parenthesized) take();
        const bool negative = peek().kind == Tok::Minus;
        if (negative) take();
        const Token& t = peek();
        if (t.kind != Tok::Number || t.text.find_first_not_of("0123456789") != std::string::npos) {
            fail({"integer exponent"});
        }
        take();
        if (t.number > 1e6) throw ParseError("exponent too large", t.line, t.column, {"integer exponent"});
        if (parenthesized) expect(Tok::RParen, "')'");
        const int n = static_cast<int>(t.number);
        return negative ? -n : n;
    }

    NodePtr base() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Number: take(); return leaf(Op::Number, t.number, t.line, t.column);
            case Tok::LParen: {
                take();
                NodePtr inner = expr();
                expect(Tok::RParen, "')'");
                return inner;
            }
            case Tok::Ident: {
                take();
                if (t.text == "i") return leaf(Op::ImagUnit, {}, t.line, t.column);
                if (t.text == "pi") return leaf(Op::Pi, {}, t.line, t.column);
                if (t.text == "z") return leaf(Op::Var, {}, t.line, t.column);
                for (const auto& entry : kFunctions) {
                    if (t.text == entry.name) {
                        expect(Tok::LParen, "'('");
                        NodePtr arg = expr();
                        expect(Tok::RParen, "')'");
                        return function_call(entry.func, arg, t.line, t.column);
                    }
                }
                throw ParseError("unknown identifier '" + t.text + "'", t.line, t.column,
                                 {"i", "pi", "z", "exp", "log", "sin", "cos", "sinh", "cosh", "sqrt"});
            }
            default: fail({"number", "'i'", "'pi'", "'z'", "function call", "'('", "'-'"});
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

std::vector<Complex> merged(std::vector<Complex> a, const std::vector<Complex>& b) {
    for (const Complex& p : b) {
        if (std::none_of(a.begin(), a.end(), [&](const Complex& q) { return std::abs(p - q) < kSingularRadius; }))
            a.push_back(p);
    }
    return a;
}

}  // namespace

// ---------------------------------------------------------------- ComplexExpr

ComplexExpr::ComplexExpr(NodePtr root, std::vector<Complex> singularities)
    : root_(std::move(root)), singularities_(std::move(singularities)) {}

ComplexExpr ComplexExpr::parse(std::string_view source, std::vector<Complex> singularities) {
    Parser parser(Lexer(source).run());
    return ComplexExpr(parser.parse_all(), std::move(singularities));
}

ComplexExpr ComplexExpr::number(Complex value) { return ComplexExpr(make_number(value), {}); }
ComplexExpr ComplexExpr::variable() { return ComplexExpr(leaf(Op::Var), {}); }

Complex ComplexExpr::eval(Complex z) const {
    for (const Complex& s : singularities_) {
        if (std::abs(z - s) < kSingularRadius) {
            throw SingularityHit("evaluation at declared singular point (" + std::to_string(s.real()) + ", " +
                                 std::to_string(s.imag()) + ")");
        }
    }
    const Complex v = evaluate(*root_, z);
    if (!finite(v)) {
        throw SingularityHit("non-finite value of " + str() + " at (" + std::to_string(z.real()) + ", " +
                             std::to_string(z.imag()) + ")");
    }
    return v;
}

ComplexExpr ComplexExpr::derivative() const { return ComplexExpr(derive(root_), singularities_); }

std::string ComplexExpr::str() const {
    std::string out;
    print(root_, out);
    return out;
}

ComplexExpr ComplexExpr::with_singularities(std::vector<Complex> points) const {
    return ComplexExpr(root_, std::move(points));
}

bool ComplexExpr::is_constant() const { return tree_is_constant(canonical(root_)); }

bool ComplexExpr::same_tree(const ComplexExpr& other) const {
    return equal_trees(canonical(root_), canonical(other.root_));
}

ComplexExpr operator+(const ComplexExpr& a, const ComplexExpr& b) {
    return ComplexExpr(make_add(a.root_, b.root_), merged(a.singularities_, b.singularities_));
}
ComplexExpr operator-(const ComplexExpr& a, const ComplexExpr& b) {
    return ComplexExpr(make_sub(a.root_, b.root_), merged(a.singularities_, b.singularities_));
}
ComplexExpr operator*(const ComplexExpr& a, const ComplexExpr& b) {
    return ComplexExpr(make_mul(a.root_, b.root_), merged(a.singularities_, b.singularities_));
}
ComplexExpr operator/(const ComplexExpr& a, const ComplexExpr& b) {
    return ComplexExpr(make_div(a.root_, b.root_), merged(a.singularities_, b.singularities_));
}
ComplexExpr operator-(const ComplexExpr& a) { return ComplexExpr(make_neg(a.root_), a.singularities_); }
ComplexExpr pow(const ComplexExpr& base, int exponent) {
    return ComplexExpr(make_pow(base.root_, exponent), base.singularities_);
}
ComplexExpr call(ComplexExpr::Func f, const ComplexExpr& arg) {
    return ComplexExpr(make_call(f, arg.root_), arg.singularities_);
}

// ---------------------------------------------------------------- ComplexExprVec

ComplexExprVec::ComplexExprVec(std::vector<ComplexExpr> components) : components_(std::move(components)) {
    if (components_.size() < 3) throw InvalidInput("expression vectors need at least 3 components");
    for (const auto& c : components_) singularities_ = merged(singularities_, c.singularities());
    for (auto& c : components_) c = c.with_singularities(singularities_);
}

ComplexExprVec ComplexExprVec::parse(std::span<const std::string> sources, std::vector<Complex> singularities) {
    std::vector<ComplexExpr> parts;
    parts.reserve(sources.size());
    for (const auto& s : sources) parts.push_back(ComplexExpr::parse(s, singularities));
    return ComplexExprVec(std::move(parts));
}

CVecN ComplexExprVec::eval(Complex z) const {
    CVecN out(static_cast<Eigen::Index>(components_.size()));
    for (std::size_t k = 0; k < components_.size(); ++k) out[static_cast<Eigen::Index>(k)] = components_[k].eval(z);
    return out;
}

ComplexExprVec ComplexExprVec::derivative() const {
    std::vector<ComplexExpr> parts;
    parts.reserve(components_.size());
    for (const auto& c : components_) parts.push_back(c.derivative());
    return ComplexExprVec(std::move(parts));
}

NullityResult nullity_check(const ComplexExprVec& f, std::span<const Complex> samples) {
    double worst = 0.0;
    for (const Complex& z : samples) {
        const CVecN v = f.eval(z);
        Complex sum{0.0, 0.0};
        for (Eigen::Index k = 0; k < v.size(); ++k) sum += v[k] * v[k];
        worst = std::max(worst, std::abs(sum));
    }
    return {worst < 1e-10, worst};
}

}  // namespace minsurf
