#pragma once

#include "minsurf/numeric.hpp"

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace minsurf {

/// Closed-form holomorphic expression in the single variable z.
///
/// Grammar (whitespace-insensitive):
///   expr     := term (('+' | '-') term)*
///   term     := factor (('*' | '/') factor)*
///   factor   := '-' factor | base ('^' exponent)?
///   exponent := ['-'] integer | '(' ['-'] integer ')'
///   base     := number | 'i' | 'pi' | 'z' | ident '(' expr ')' | '(' expr ')'
///   ident    := exp | log | sin | cos | sinh | cosh | sqrt
/// Multiplication is always explicit. log and sqrt use principal branches.
class ComplexExpr {
public:
    enum class Op { Number, ImagUnit, Pi, Var, Add, Sub, Mul, Div, Neg, Pow, Call };
    enum class Func { Exp, Log, Sin, Cos, Sinh, Cosh, Sqrt };

    struct Node {
        Op op;
        Complex value{};           // Number
        int exponent = 0;          // Pow
        Func func = Func::Exp;     // Call
        std::shared_ptr<const Node> lhs;  // operand of unary ops, left of binary ops
        std::shared_ptr<const Node> rhs;
        int line = 0;
        int column = 0;
    };
    using NodePtr = std::shared_ptr<const Node>;

    /// Throws ParseError with line/column and the expected-token set.
    static ComplexExpr parse(std::string_view source, std::vector<Complex> singularities = {});

    static ComplexExpr number(Complex value);
    static ComplexExpr variable();

    /// Value at z. Throws SingularityHit within 1e-12 of a declared singularity or on a
    /// non-finite result.
    Complex eval(Complex z) const;
    Complex operator()(Complex z) const { return eval(z); }

    /// Exact symbolic d/dz with constant folding.
    ComplexExpr derivative() const;

    /// Text form accepted by parse(); print(parse(print(e))) == print(e).
    std::string str() const;

    const std::vector<Complex>& singularities() const { return singularities_; }
    ComplexExpr with_singularities(std::vector<Complex> points) const;
    bool is_constant() const;
    const NodePtr& root() const { return root_; }

    /// Structural equality after constant folding, ignoring source positions and singularity lists.
    bool same_tree(const ComplexExpr& other) const;

    friend ComplexExpr operator+(const ComplexExpr& a, const ComplexExpr& b);
    friend ComplexExpr operator-(const ComplexExpr& a, const ComplexExpr& b);
    friend ComplexExpr operator*(const ComplexExpr& a, const ComplexExpr& b);
    friend ComplexExpr operator/(const ComplexExpr& a, const ComplexExpr& b);
    friend ComplexExpr operator-(const ComplexExpr& a);
    friend ComplexExpr pow(const ComplexExpr& base, int exponent);
    friend ComplexExpr call(ComplexExpr::Func f, const ComplexExpr& arg);

private:
    ComplexExpr(NodePtr root, std::vector<Complex> singularities);
    NodePtr root_;
    std::vector<Complex> singularities_;
};

ComplexExpr operator+(const ComplexExpr& a, const ComplexExpr& b);
ComplexExpr operator-(const ComplexExpr& a, const ComplexExpr& b);
ComplexExpr operator*(const ComplexExpr& a, const ComplexExpr& b);
ComplexExpr operator/(const ComplexExpr& a, const ComplexExpr& b);
ComplexExpr operator-(const ComplexExpr& a);
ComplexExpr pow(const ComplexExpr& base, int exponent);
ComplexExpr call(ComplexExpr::Func f, const ComplexExpr& arg);

inline ComplexExpr differentiate(const ComplexExpr& e) { return e.derivative(); }

/// C^n-valued expression with a shared variable and a shared singularity list.
class ComplexExprVec {
public:
    ComplexExprVec() = default;
    /// Requires at least 3 components; singularity lists are merged.
    explicit ComplexExprVec(std::vector<ComplexExpr> components);
    static ComplexExprVec parse(std::span<const std::string> sources, std::vector<Complex> singularities = {});

    std::size_t size() const { return components_.size(); }
    const ComplexExpr& operator[](std::size_t k) const { return components_[k]; }
    const std::vector<ComplexExpr>& components() const { return components_; }
    const std::vector<Complex>& singularities() const { return singularities_; }

    CVecN eval(Complex z) const;
    ComplexExprVec derivative() const;

private:
    std::vector<ComplexExpr> components_;
    std::vector<Complex> singularities_;
};

struct NullityResult {
    bool null;
    double residual;  ///< max |sum_j f_j(z)^2| over the samples
};

/// Null-quadric test: true iff max |sum f_j^2| < 1e-10 over the samples.
NullityResult nullity_check(const ComplexExprVec& f, std::span<const Complex> samples);

}  // namespace minsurf
