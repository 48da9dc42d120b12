#include "doctest.h"

#include "minsurf/curvature.hpp"
#include "minsurf/errors.hpp"
#include "minsurf/minimal_graph.hpp"

#include <cmath>
#include <limits>
#include <random>

using namespace minsurf;

namespace {

VecN vec3(double a, double b, double c) {
    VecN v(3);
    v << a, b, c;
    return v;
}

SurfaceMap catenoid_map() {
    return SurfaceMap(3, ParamDomain::plane(), [](double u, double v) {
        return vec3(std::cosh(v) * std::cos(u), std::cosh(v) * std::sin(u), v);
    });
}

SurfaceMap helicoid_map() {
    return SurfaceMap(3, ParamDomain::plane(), [](double u, double v) {
        return vec3(std::sinh(v) * std::cos(u), std::sinh(v) * std::sin(u), u);
    });
}

SurfaceMap cylinder_map() {
    return SurfaceMap(3, ParamDomain::plane(), [](double u, double v) { return vec3(std::cos(u), std::sin(u), v); });
}

SurfaceMap enneper_map() {
    return SurfaceMap(3, ParamDomain::plane(), [](double u, double v) {
        return vec3(u / 3 * (3 * (1 + v * v) - u * u), v / 3 * (v * v - 3 * (1 + u * u)), u * u - v * v);
    });
}

Eigen::Matrix3d random_orthogonal(std::mt19937_64& rng) {
    std::normal_distribution<double> N;
    Eigen::Matrix3d A;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) A(r, c) = N(rng);
    Eigen::HouseholderQR<Eigen::Matrix3d> qr(A);
    return qr.householderQ();
}

}  // namespace

TEST_CASE("signed_curvature_1d") {
    const CurveCurvature a = signed_curvature_1d(2.0);
    CHECK(a.kappa == 2.0);
    CHECK(a.radius == 0.5);
    CHECK(a.center.y() == 0.5);
    const CurveCurvature b = signed_curvature_1d(0.0);
    CHECK(b.kappa == 0.0);
    CHECK(b.infinite_radius());
    const CurveCurvature c = signed_curvature_1d(1.0);  // lower arc of the unit circle
    CHECK(c.radius == 1.0);
    CHECK(signed_curvature_1d(-4.0).center.y() == -0.25);
}

TEST_CASE("directional_curvature") {
    GraphJet2 j;
    j.hessian = {3, 0, 1};
    CHECK(directional_curvature(j, {1, 0}) == doctest::Approx(3));
    const double s = 1 / std::sqrt(2.0);
    CHECK(directional_curvature(j, {s, s}) == doctest::Approx(2));
    j.hessian = {0, 1, 0};
    CHECK(directional_curvature(j, {s, s}) == doctest::Approx(1));
    CHECK_THROWS_AS(directional_curvature(j, {1, 1}), InvalidInput);
    j.gradient = {1e-6, 0};
    CHECK_THROWS_AS(directional_curvature(j, {1, 0}), GradientNotZero);
}

TEST_CASE("principal_curvatures of sphere and saddle") {
    GraphJet2 j;
    j.hessian = {1, 0, 1};
    CurvaturePacket p = principal_curvatures(j);
    CHECK(p.k1 == 1);
    CHECK(p.k2 == 1);
    CHECK(p.H == 2);
    CHECK(p.K == 1);
    j.hessian = {1, 0, -1};
    p = principal_curvatures(j);
    CHECK(p.k1 == 1);
    CHECK(p.k2 == -1);
    CHECK(p.H == 0);
    CHECK(p.K == -1);
    CHECK(std::abs(p.dir1.dot(p.dir2)) < 1e-15);
    j.gradient = {0.1, 0};
    CHECK_THROWS_AS(principal_curvatures(j), GradientNotZero);
}

TEST_CASE("trace identity H = fxx + fyy at gradient-zero jets") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> U(-3, 3);
    for (int k = 0; k < 200; ++k) {
        GraphJet2 j;
        j.hessian = {U(rng), U(rng), U(rng)};
        const CurvaturePacket p = principal_curvatures(j);
        CHECK(p.H == doctest::Approx(j.hessian.a + j.hessian.c).epsilon(1e-14));
        CHECK(p.k1 + p.k2 == doctest::Approx(p.H).epsilon(1e-12).scale(1));
        CHECK(p.k1 * p.k2 == doctest::Approx(p.K).epsilon(1e-12).scale(1));
    }
}

TEST_CASE("graph_mean_curvature") {
    GraphJet2 plane;
    plane.gradient = {2, 3};
    CHECK(graph_mean_curvature(plane) == 0.0);

    // catenoid graph arccosh(r) at (2, 0): f_r = 1/sqrt(r^2-1), f_rr = -r/(r^2-1)^(3/2),
    // fxx = f_rr, fyy = f_r/r, fxy = 0
    GraphJet2 cat;
    cat.gradient = {1 / std::sqrt(3.0), 0};
    cat.hessian = {-2.0 / std::pow(3.0, 1.5), 0, 1 / (2 * std::sqrt(3.0))};
    CHECK(std::abs(graph_mean_curvature(cat)) < 1e-15);

    // upper hemisphere of the unit sphere, upward normal: H = -2
    const double a = 0.3;
    GraphJet2 hemi;
    const double w = std::sqrt(1 - a * a);
    hemi.gradient = {-a / w, 0};
    hemi.hessian = {-1 / (w * w * w), 0, -1 / w};
    CHECK(graph_mean_curvature(hemi) == doctest::Approx(-2.0).epsilon(1e-14));
}

TEST_CASE("parametric_curvature of catenoid and helicoid vanishes") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> U(-1.5, 1.5);
    const SurfaceMap cat = catenoid_map(), hel = helicoid_map();
    for (int k = 0; k < 10; ++k) {
        const double u = U(rng), v = U(rng);
        const ParametricCurvature c = parametric_curvature(cat, u, v);
        CHECK(std::abs(c.packet.H) < 1e-6);
        CHECK(c.packet.K < 1e-10);
        // catenoid K = -1/cosh^4 v
        CHECK(c.packet.K == doctest::Approx(-1 / std::pow(std::cosh(v), 4)).epsilon(1e-6));
        const ParametricCurvature h = parametric_curvature(hel, u, v);
        CHECK(std::abs(h.packet.H) < 1e-6);
    }
}

TEST_CASE("parametric_curvature of the unit cylinder") {
    const ParametricCurvature c = parametric_curvature(cylinder_map(), 0.4, -0.2);
    // normal Fu x Fv points outward, so the surface bends away from it
    CHECK(c.packet.H == doctest::Approx(-1.0).epsilon(1e-7));
    CHECK(std::abs(c.packet.K) < 1e-7);
    CHECK(std::max(std::abs(c.packet.k1), std::abs(c.packet.k2)) == doctest::Approx(1.0).epsilon(1e-7));
    CHECK((c.normal - vec3(std::cos(0.4), std::sin(0.4), 0)).norm() < 1e-12);
}

TEST_CASE("Enneper at the origin: H = 0, K = -4") {
    const ParametricCurvature c = parametric_curvature(enneper_map(), 0, 0);
    CHECK(std::abs(c.packet.H) < 1e-7);
    CHECK(c.packet.K == doctest::Approx(-4.0).epsilon(1e-7));
}

TEST_CASE("NotImmersed at a degenerate point") {
    const SurfaceMap cone(3, ParamDomain::plane(), [](double u, double v) { return vec3(u * u, v, 0); });
    CHECK_THROWS_AS(parametric_curvature(cone, 0, 0), NotImmersed);
}

TEST_CASE("rigid-motion invariance of principal curvatures") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> U(-1, 1);
    const SurfaceMap base(3, ParamDomain::plane(), [](double u, double v) {
        return vec3(u, v, 0.3 * u * u - 0.7 * u * v + 0.2 * v * v * v + 0.5 * v * v);
    });
    for (int k = 0; k < 20; ++k) {
        const Eigen::Matrix3d R = random_orthogonal(rng);
        const VecN b = vec3(5 * U(rng), 5 * U(rng), 5 * U(rng));
        const double u = U(rng), v = U(rng);
        const CurvaturePacket p = parametric_curvature(base, u, v).packet;
        const CurvaturePacket q = parametric_curvature(base.rigid_motion(R, b), u, v).packet;
        // orientation-reversing R flips the normal and the signs
        const double sign = R.determinant() > 0 ? 1.0 : -1.0;
        const double k1 = sign > 0 ? q.k1 : -q.k2, k2 = sign > 0 ? q.k2 : -q.k1;
        CHECK(std::abs(k1 - p.k1) < 1e-8);
        CHECK(std::abs(k2 - p.k2) < 1e-8);
    }
}

TEST_CASE("re-graphing in R^4 gives the mean curvature vector") {
    // complex curve w = z^2 in C^2 = R^4 is minimal
    const SurfaceMap s(4, ParamDomain::plane(), [](double u, double v) {
        VecN x(4);
        x << u, v, u * u - v * v, 2 * u * v;
        return x;
    });
    const TangentGraph g = regraph(s, 0.3, -0.4);
    CHECK(g.normals.size() == 2);
    CHECK(g.mean_curvature_vector().norm() < 1e-7);
    CHECK(g.gaussian_curvature() < 0);
}

TEST_CASE("Meusnier equivalence on random graph jets") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> U(-2, 2);
    for (int k = 0; k < 500; ++k) {
        GraphJet2 j;
        j.gradient = {U(rng), U(rng)};
        j.hessian = {U(rng), U(rng), U(rng)};
        if (k % 2 == 0) {
            // force G(f) = 0 by solving for fyy
            const double fx = j.gradient.x(), fy = j.gradient.y();
            j.hessian.c = -((1 + fy * fy) * j.hessian.a - 2 * fx * fy * j.hessian.b) / (1 + fx * fx);
        }
        const double H = graph_mean_curvature(j);
        const double G = mge_operator(j);
        const double w = std::pow(1 + j.gradient.squaredNorm(), 1.5);
        CHECK(std::abs(H - G / w) <= 1e-14 * std::max(1.0, std::abs(G)));
        CHECK((std::abs(H) < 1e-12) == (std::abs(G) < 1e-12 * w));
    }
}
