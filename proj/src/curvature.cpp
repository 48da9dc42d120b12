#include "minsurf/curvature.hpp"

#include "minsurf/errors.hpp"

#include <cmath>
#include <limits>

namespace minsurf {

CurveCurvature signed_curvature_1d(double f_second) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (f_second == 0.0) return {0.0, inf, Vec2(0.0, inf)};
    return {f_second, 1.0 / std::abs(f_second), Vec2(0.0, 1.0 / f_second)};
}

namespace {

void require_flat_gradient(const GraphJet2& jet) {
    if (jet.gradient.norm() > 1e-9) {
        throw GradientNotZero("jet gradient is not zero; adapt coordinates to the tangent plane first");
    }
}

VecN embed(const Vec2& v) {
    VecN out(3);
    out << v.x(), v.y(), 0.0;
    return out;
}

}  // namespace

double directional_curvature(const GraphJet2& jet, const Vec2& v) {
    require_flat_gradient(jet);
    if (std::abs(v.norm() - 1.0) > 1e-12) throw InvalidInput("direction must be a unit vector");
    return jet.hessian.form(v);
}

CurvaturePacket principal_curvatures(const GraphJet2& jet) {
    require_flat_gradient(jet);
    const SymEigen2 e = eig_sym2(jet.hessian);
    CurvaturePacket p;
    p.k1 = e.lambda1;
    p.k2 = e.lambda2;
    p.H = jet.hessian.trace();
    p.K = jet.hessian.det();
    p.dir1 = embed(e.v1);
    p.dir2 = embed(e.v2);
    p.hessian = jet.hessian;
    return p;
}

double graph_mean_curvature(const GraphJet2& jet) {
    const double fx = jet.gradient.x(), fy = jet.gradient.y();
    const SymMat2& A = jet.hessian;
    const double numerator = (1.0 + fy * fy) * A.a - 2.0 * fx * fy * A.b + (1.0 + fx * fx) * A.c;
    return numerator / std::pow(1.0 + fx * fx + fy * fy, 1.5);
}

VecN TangentGraph::mean_curvature_vector() const {
    VecN H = VecN::Zero(base.size());
    for (std::size_t k = 0; k < normals.size(); ++k) H += hessians[k].trace() * normals[k];
    return H;
}

double TangentGraph::gaussian_curvature() const {
    double K = 0.0;
    for (const auto& h : hessians) K += h.det();
    return K;
}

TangentGraph regraph(const SurfaceMap& s, double u, double v) {
    const SurfaceJet j = s.jet(u, v);
    const double dA = area_element(j.Fu, j.Fv);
    if (!(dA > 1e-10)) throw NotImmersed("surface is not immersed at the requested parameter point");

    const int n = s.dim();
    TangentGraph g;
    g.base = j.F;
    g.tangent1 = j.Fu.normalized();
    g.tangent2 = (j.Fv - j.Fv.dot(g.tangent1) * g.tangent1).normalized();
    if (n == 3) {
        const Eigen::Vector3d a = g.tangent1, b = g.tangent2;
        g.normals.emplace_back(VecN(a.cross(b)));
    } else {
        // Complete the frame with the standard basis by Gram-Schmidt.
        std::vector<VecN> frame{g.tangent1, g.tangent2};
        for (int k = 0; k < n && static_cast<int>(frame.size()) < n; ++k) {
            VecN e = VecN::Unit(n, k);
            for (const auto& f : frame) e -= e.dot(f) * f;
            if (e.norm() > 1e-6) {
                frame.push_back(e.normalized());
                g.normals.push_back(frame.back());
            }
        }
    }

    // Tangent-plane coordinates (x, y) -> parameters, by chord Newton with the Jacobian at p.
    Eigen::Matrix2d J;
    J << g.tangent1.dot(j.Fu), g.tangent1.dot(j.Fv), g.tangent2.dot(j.Fu), g.tangent2.dot(j.Fv);
    const Eigen::Matrix2d Jinv = J.inverse();
    const double scale = std::max(1.0, g.base.norm());
    g.step = 1e-3 * std::sqrt(j.Fu.norm() * j.Fv.norm());

    const auto normal_offsets = [&](double x, double y) {
        Vec2 param = Vec2(u, v) + Jinv * Vec2(x, y);
        VecN d;
        for (int it = 0; it < 60; ++it) {
            d = s(param.x(), param.y()) - g.base;
            const Vec2 r(g.tangent1.dot(d) - x, g.tangent2.dot(d) - y);
            param -= Jinv * r;
            if (r.norm() <= 1e-15 * scale) break;
        }
        d = s(param.x(), param.y()) - g.base;
        Eigen::VectorXd out(static_cast<Eigen::Index>(g.normals.size()));
        for (std::size_t k = 0; k < g.normals.size(); ++k) out[static_cast<Eigen::Index>(k)] = g.normals[k].dot(d);
        return out;
    };

    // Second-order stencils at steps h and 2h, combined by Richardson extrapolation.
    const auto stencil = [&](double h) {
        const auto xp = normal_offsets(h, 0), xm = normal_offsets(-h, 0);
        const auto yp = normal_offsets(0, h), ym = normal_offsets(0, -h);
        const auto pp = normal_offsets(h, h), pm = normal_offsets(h, -h);
        const auto mp = normal_offsets(-h, h), mm = normal_offsets(-h, -h);
        Eigen::MatrixXd H(static_cast<Eigen::Index>(g.normals.size()), 3);
        H.col(0) = (xp + xm) / (h * h);
        H.col(1) = (pp - pm - mp + mm) / (4.0 * h * h);
        H.col(2) = (yp + ym) / (h * h);
        return H;
    };
    const Eigen::MatrixXd fine = stencil(g.step);
    const Eigen::MatrixXd coarse = stencil(2.0 * g.step);
    const Eigen::MatrixXd hess = (4.0 * fine - coarse) / 3.0;
    for (Eigen::Index k = 0; k < hess.rows(); ++k) g.hessians.push_back({hess(k, 0), hess(k, 1), hess(k, 2)});
    return g;
}

ParametricCurvature parametric_curvature(const SurfaceMap& s, double u, double v) {
    if (s.dim() != 3) throw InvalidInput("parametric_curvature needs a surface in R^3");
    const TangentGraph g = regraph(s, u, v);
    GraphJet2 jet;
    jet.hessian = g.hessians.front();
    const SymEigen2 e = eig_sym2(jet.hessian);
    CurvaturePacket p;
    p.k1 = e.lambda1;
    p.k2 = e.lambda2;
    p.H = jet.hessian.trace();
    p.K = jet.hessian.det();
    p.dir1 = e.v1.x() * g.tangent1 + e.v1.y() * g.tangent2;
    p.dir2 = e.v2.x() * g.tangent1 + e.v2.y() * g.tangent2;
    p.hessian = jet.hessian;
    return {p, g.normals.front()};
}

}  // namespace minsurf
