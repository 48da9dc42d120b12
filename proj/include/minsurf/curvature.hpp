#pragma once

#include "minsurf/numeric.hpp"
#include "minsurf/surface.hpp"

#include <vector>

namespace minsurf {

/// Curvature of a plane curve y = f(x) with f(0) = f'(0) = 0.
struct CurveCurvature {
    double kappa;
    double radius;  ///< +inf when kappa == 0 (a circle of infinite radius)
    Vec2 center;    ///< osculating-circle center (0, 1/kappa); (0, +inf) for a line
    bool infinite_radius() const { return std::isinf(radius); }
};

CurveCurvature signed_curvature_1d(double f_second);

/// Second-order Taylor data of a graph z = f(x, y) at one point.
struct GraphJet2 {
    Vec2 point{0.0, 0.0};
    double value = 0.0;
    Vec2 gradient{0.0, 0.0};
    SymMat2 hessian;
};

/// Principal curvatures, mean curvature H = k1 + k2 and Gaussian curvature K = k1 k2.
struct CurvaturePacket {
    double k1 = 0.0;
    double k2 = 0.0;
    double H = 0.0;
    double K = 0.0;
    VecN dir1;  ///< unit principal directions in ambient coordinates
    VecN dir2;
    SymMat2 hessian;  ///< the tangent-adapted Hessian the packet was computed from
};

/// Av.v for a unit v; throws GradientNotZero when |grad f| > 1e-9.
double directional_curvature(const GraphJet2& jet, const Vec2& v);

/// Eigen-decomposition of the Hessian at a gradient-zero jet.
CurvaturePacket principal_curvatures(const GraphJet2& jet);

/// [(1+fy^2) fxx - 2 fx fy fxy + (1+fx^2) fyy] / (1+|grad f|^2)^(3/2); upward normal.
double graph_mean_curvature(const GraphJet2& jet);

/// The surface near one point written as a graph over its tangent plane: an orthonormal
/// frame (two tangent vectors, n-2 normals) and the Hessian of each normal coordinate
/// at the origin of the tangent plane.
struct TangentGraph {
    VecN base;
    VecN tangent1, tangent2;
    std::vector<VecN> normals;
    std::vector<SymMat2> hessians;  ///< one per normal
    double step = 0.0;              ///< spatial finite-difference step used

    /// Mean curvature vector: sum of trace(hessian_i) * normal_i.
    VecN mean_curvature_vector() const;
    /// Gaussian curvature by the Gauss equation: sum of det(hessian_i).
    double gaussian_curvature() const;
};

/// Rotates the tangent plane at (u, v) onto the first two axes and differentiates the
/// re-graphed normal coordinates numerically. Throws NotImmersed when the area element
/// is below 1e-10. In R^3 the single normal is Fu x Fv / |Fu x Fv|.
TangentGraph regraph(const SurfaceMap& s, double u, double v);

struct ParametricCurvature {
    CurvaturePacket packet;
    VecN normal;
};

/// Curvature of a surface in R^3; H has the sign of the normal Fu x Fv.
ParametricCurvature parametric_curvature(const SurfaceMap& s, double u, double v);

}  // namespace minsurf
