#pragma once

#include "minsurf/errors.hpp"
#include "minsurf/numeric.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace minsurf {

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 0.0;
    int initial_panels = 1;
    int max_level = 16;  ///< number of panel doublings before NonConvergence
};

template <class T>
struct QuadEstimate {
    T value{};
    double error = 0.0;  ///< |difference| between the last two doubling levels
    int panels = 0;
};

namespace detail {

// 8-point Gauss-Legendre rule on [-1, 1].
inline constexpr std::array<double, 4> kGLNodes{0.1834346424956498049394761, 0.5255324099163289858177390,
                                                0.7966664774136267395915539, 0.9602898564975362316835609};
inline constexpr std::array<double, 4> kGLWeights{0.3626837833783619829651504, 0.3137066458778872873379622,
                                                  0.2223810344533744705443560, 0.1012285362903762591525314};

template <class F>
auto gauss_legendre_panels(const F& f, double a, double b, int panels) {
    using T = decltype(f(a));
    const double width = (b - a) / panels;
    const double half = 0.5 * width;
    const auto panel = [&](int p) {
        const double mid = a + (p + 0.5) * width;
        T s = kGLWeights[0] * (f(mid - half * kGLNodes[0]) + f(mid + half * kGLNodes[0]));
        for (std::size_t k = 1; k < kGLNodes.size(); ++k) {
            const double dx = half * kGLNodes[k];
            s += kGLWeights[k] * (f(mid - dx) + f(mid + dx));
        }
        return T(half * s);
    };
    T sum = panel(0);
    for (int p = 1; p < panels; ++p) sum += panel(p);
    return sum;
}

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const Complex& x) { return std::abs(x); }
template <class Derived>
double magnitude(const Eigen::MatrixBase<Derived>& x) {
    return x.norm();
}

}  // namespace detail

/// Composite 8-point Gauss-Legendre quadrature of f over [a, b]. The panel count
/// doubles until two successive estimates agree to max(abs_tol, rel_tol*|I|).
template <class F>
auto integrate_1d(const F& f, double a, double b, const QuadOptions& opts = {})
    -> QuadEstimate<decltype(f(a))> {
    using T = decltype(f(a));
    int panels = std::max(1, opts.initial_panels);
    T previous = detail::gauss_legendre_panels(f, a, b, panels);
    double diff = 0.0;
    for (int level = 0; level < opts.max_level; ++level) {
        panels *= 2;
        const T current = detail::gauss_legendre_panels(f, a, b, panels);
        diff = detail::magnitude(current - previous);
        if (!std::isfinite(diff)) {
            throw NonConvergence("quadrature produced a non-finite value", diff);
        }
        if (diff <= std::max(opts.abs_tol, opts.rel_tol * detail::magnitude(current))) {
            return {current, diff, panels};
        }
        previous = current;
    }
    throw NonConvergence("quadrature did not converge after " + std::to_string(opts.max_level) +
                             " panel doublings (last disagreement " + std::to_string(diff) + ")",
                         diff);
}

/// Closed contour in the complex plane, built from line and circular-arc pieces
/// traversed in order. Parameterized over [0, 1] with equal share per piece.
class Loop {
public:
    struct Piece {
        enum class Kind { Line, Arc } kind;
        Complex start;       // Line: start point; Arc: center
        Complex end;         // Line: end point
        double radius = 0;   // Arc
        double theta0 = 0;   // Arc: start angle
        double sweep = 0;    // Arc: signed angle swept

        Complex point(double s) const;
        Complex derivative(double s) const;  ///< d(point)/ds
        double distance_to(Complex p) const;
    };

    /// Full circle starting at center + radius (angle 0).
    static Loop circle(Complex center, double radius, bool counterclockwise = true, int samples = 16);
    /// Closed polygon through the vertices (the closing edge is added).
    static Loop polygon(std::vector<Complex> vertices, int samples = 16);
    /// a followed by b; both must start at the same base point.
    static Loop concat(const Loop& a, const Loop& b);

    Complex point(double t) const;
    Complex base_point() const { return pieces_.front().point(0.0); }
    bool counterclockwise() const { return counterclockwise_; }
    int samples() const { return samples_; }
    const std::vector<Piece>& pieces() const { return pieces_; }

    double distance_to(Complex p) const;
    /// Throws DomainViolation unless every point stays at least `margin` from each singularity.
    void require_clearance(std::span<const Complex> singularities, double margin) const;

private:
    Loop(std::vector<Piece> pieces, bool ccw, int samples);
    std::vector<Piece> pieces_;
    bool counterclockwise_ = true;
    int samples_ = 16;
};

/// Contour integral of g dz over the loop.
Complex quad_contour(const std::function<Complex(Complex)>& g, const Loop& loop, const QuadOptions& opts = {});
/// Componentwise contour integral of a C^n-valued g.
CVecN quad_contour(const std::function<CVecN(Complex)>& g, const Loop& loop, const QuadOptions& opts = {});

/// Axis-aligned parameter rectangle [u0, u1] x [v0, v1].
struct Rectangle {
    double u0, u1, v0, v1;
};

/// {inner <= |w - center| <= outer}; inner == 0 gives a disc.
struct Annulus {
    Complex center{0.0, 0.0};
    double inner = 0.0;
    double outer = 1.0;
};

using Region = std::variant<Rectangle, Annulus>;

/// Area integral of g(u, v) du dv by nested composite Gauss-Legendre. Annuli are
/// integrated in polar coordinates: log-radius from the inner radius, or from radius 1 for discs.
QuadEstimate<double> quad_area(const std::function<double(double, double)>& g, const Region& region,
                               const QuadOptions& opts = {});

}  // namespace minsurf
