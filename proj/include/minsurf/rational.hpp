#pragma once

#include "minsurf/expr.hpp"

#include <vector>

namespace minsurf {

/// Polynomial in z with complex coefficients, lowest degree first.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Complex> coefficients);
    static Polynomial constant(Complex c) { return Polynomial({c}); }
    static Polynomial monomial(int degree, Complex c = 1.0);

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Complex>& coefficients() const { return coeffs_; }
    Complex leading() const { return coeffs_.empty() ? Complex{} : coeffs_.back(); }
    Complex operator()(Complex z) const;
    double max_abs_coefficient() const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

    /// Quotient and remainder; coefficients below tol*scale are dropped from the remainder.
    static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b, double tol = 1e-10);
    /// Monic greatest common divisor by the Euclidean algorithm with relative tolerance.
    static Polynomial gcd(Polynomial a, Polynomial b, double tol = 1e-9);

private:
    void trim(double tol = 0.0);
    std::vector<Complex> coeffs_;
};

Polynomial operator+(const Polynomial& a, const Polynomial& b);
Polynomial operator-(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);

/// numerator / denominator, kept in lowest terms by reduce().
struct RationalFunction {
    Polynomial numerator = Polynomial::constant(0.0);
    Polynomial denominator = Polynomial::constant(1.0);

    /// Cancels the common factor and makes the denominator monic.
    RationalFunction reduced() const;
    /// max(deg numerator, deg denominator) in lowest terms: the degree as a map of the sphere.
    int degree() const;
    Complex operator()(Complex z) const { return numerator(z) / denominator(z); }
};

/// Rational normal form of an expression. Throws NotRational when a transcendental
/// function is applied to a non-constant argument.
RationalFunction to_rational(const ComplexExpr& e);

}  // namespace minsurf
