#include "minsurf/rational.hpp"

#include "minsurf/errors.hpp"

#include <algorithm>
#include <cmath>

namespace minsurf {

Polynomial::Polynomial(std::vector<Complex> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

Polynomial Polynomial::monomial(int degree, Complex c) {
    std::vector<Complex> coeffs(static_cast<std::size_t>(degree) + 1, Complex{});
    coeffs.back() = c;
    return Polynomial(std::move(coeffs));
}

void Polynomial::trim(double tol) {
    while (!coeffs_.empty() && std::abs(coeffs_.back()) <= tol) coeffs_.pop_back();
}

Complex Polynomial::operator()(Complex z) const {
    Complex acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

double Polynomial::max_abs_coefficient() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Complex> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k) out[k] += a.coeffs_[k];
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) out[k] += b.coeffs_[k];
    return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Complex> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k) out[k] += a.coeffs_[k];
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) out[k] -= b.coeffs_[k];
    return Polynomial(std::move(out));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Complex> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(out));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& a, const Polynomial& b, double tol) {
    if (b.is_zero()) throw InvalidInput("polynomial division by zero");
    std::vector<Complex> rem = a.coeffs_;
    const int db = b.degree();
    if (a.degree() < db) return {Polynomial{}, a};
    std::vector<Complex> quot(static_cast<std::size_t>(a.degree() - db) + 1);
    for (int k = a.degree() - db; k >= 0; --k) {
        const Complex q = rem[static_cast<std::size_t>(k + db)] / b.leading();
        quot[static_cast<std::size_t>(k)] = q;
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= q * b.coeffs_[static_cast<std::size_t>(j)];
        rem[static_cast<std::size_t>(k + db)] = 0.0;
    }
    Polynomial r(std::move(rem));
    r.trim(tol * std::max(a.max_abs_coefficient(), 1e-300));
    return {Polynomial(std::move(quot)), r};
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b, double tol) {
    const auto monic = [](Polynomial p) {
        const Complex lead = p.leading();
        for (auto& c : p.coeffs_) c /= lead;
        return p;
    };
    if (a.is_zero()) return b.is_zero() ? Polynomial::constant(1.0) : monic(b);
    if (b.is_zero()) return monic(a);
    a = monic(a);
    b = monic(b);
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        auto [q, r] = divmod(a, b, tol);
        a = b;
        b = r.is_zero() ? r : monic(r);
    }
    return monic(a);
}

RationalFunction RationalFunction::reduced() const {
    if (numerator.is_zero()) return {Polynomial::constant(0.0), Polynomial::constant(1.0)};
    const Polynomial g = Polynomial::gcd(numerator, denominator);
    Polynomial num = Polynomial::divmod(numerator, g).first;
    Polynomial den = Polynomial::divmod(denominator, g).first;
    const Complex lead = den.leading();
    std::vector<Complex> nc = num.coefficients(), dc = den.coefficients();
    for (auto& c : nc) c /= lead;
    for (auto& c : dc) c /= lead;
    return {Polynomial(std::move(nc)), Polynomial(std::move(dc))};
}

int RationalFunction::degree() const {
    const RationalFunction r = reduced();
    return std::max(std::max(r.numerator.degree(), 0), r.denominator.degree());
}

namespace {

using Op = ComplexExpr::Op;

RationalFunction combine(const ComplexExpr::Node& n);

RationalFunction constant(Complex c) { return {Polynomial::constant(c), Polynomial::constant(1.0)}; }

bool is_constant(const RationalFunction& r) { return r.numerator.degree() <= 0 && r.denominator.degree() == 0; }

RationalFunction mul(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction{a.numerator * b.numerator, a.denominator * b.denominator}.reduced();
}

RationalFunction inverse(const RationalFunction& a) {
    if (a.numerator.is_zero()) throw NotRational("division by the zero function");
    return RationalFunction{a.denominator, a.numerator}.reduced();
}

RationalFunction combine(const ComplexExpr::Node& n) {
    switch (n.op) {
        case Op::Number: return constant(n.value);
        case Op::ImagUnit: return constant({0.0, 1.0});
        case Op::Pi: return constant(kPi);
        case Op::Var: return {Polynomial::monomial(1), Polynomial::constant(1.0)};
        case Op::Add:
        case Op::Sub: {
            const RationalFunction a = combine(*n.lhs), b = combine(*n.rhs);
            const Polynomial left = a.numerator * b.denominator, right = b.numerator * a.denominator;
            return RationalFunction{n.op == Op::Add ? left + right : left - right, a.denominator * b.denominator}
                .reduced();
        }
        case Op::Mul: return mul(combine(*n.lhs), combine(*n.rhs));
        case Op::Div: return mul(combine(*n.lhs), inverse(combine(*n.rhs)));
        case Op::Neg: {
            const RationalFunction a = combine(*n.lhs);
            return {Polynomial{} - a.numerator, a.denominator};
        }
        case Op::Pow: {
            const RationalFunction base = combine(*n.lhs);
            RationalFunction acc = constant(1.0);
            for (int k = 0; k < std::abs(n.exponent); ++k) acc = mul(acc, base);
            return n.exponent < 0 ? inverse(acc) : acc;
        }
        case Op::Call: {
            const RationalFunction arg = combine(*n.lhs);
            if (!is_constant(arg)) throw NotRational("transcendental function of z is not rational");
            return constant(call(n.func, ComplexExpr::number(arg(0.0))).eval(0.0));
        }
    }
    throw NotRational("unsupported expression node");
}

}  // namespace

RationalFunction to_rational(const ComplexExpr& e) { return combine(*e.root()).reduced(); }

}  // namespace minsurf
