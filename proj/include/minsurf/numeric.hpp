#pragma once

#include <Eigen/Dense>

#include <complex>

namespace minsurf {

using Complex = std::complex<double>;
using VecN = Eigen::VectorXd;
using CVecN = Eigen::VectorXcd;
using Vec2 = Eigen::Vector2d;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Symmetric 2x2 matrix [[a, b], [b, c]].
struct SymMat2 {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    double trace() const { return a + c; }
    double det() const { return a * c - b * b; }
    Vec2 apply(const Vec2& v) const { return {a * v.x() + b * v.y(), b * v.x() + c * v.y()}; }
    /// Quadratic form v^T M v.
    double form(const Vec2& v) const {
        return a * v.x() * v.x() + 2.0 * b * v.x() * v.y() + c * v.y() * v.y();
    }
};

struct SymEigen2 {
    double lambda1;  ///< larger eigenvalue
    double lambda2;
    Vec2 v1;
    Vec2 v2;
};

/// Closed-form eigen-decomposition. lambda1 >= lambda2; eigenvectors are unit,
/// orthogonal, and sign-normalized so their first nonzero component is positive.
/// Repeated eigenvalues return the axis vectors (1,0), (0,1).
SymEigen2 eig_sym2(const SymMat2& m);

}  // namespace minsurf
