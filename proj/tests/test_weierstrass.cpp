#include "doctest.h"

#include "minsurf/errors.hpp"
#include "minsurf/weierstrass.hpp"

#include <cmath>
#include <limits>
#include <random>

using namespace minsurf;

namespace {

constexpr Complex kI{0.0, 1.0};

VecN vec3(double a, double b, double c) {
    VecN v(3);
    v << a, b, c;
    return v;
}

CVecN cvec3(Complex a, Complex b, Complex c) {
    CVecN v(3);
    v << a, b, c;
    return v;
}

ComplexExprVec data(std::vector<std::string> src, std::vector<Complex> sing = {}) {
    return ComplexExprVec::parse(src, std::move(sing));
}

SurfaceMap catenoid_closed() {
    const auto pos = [](double u, double v) { return vec3(std::cos(u) * std::cosh(v), std::sin(u) * std::cosh(v), v); };
    const auto jet = [pos](double u, double v) {
        const double cu = std::cos(u), su = std::sin(u), ch = std::cosh(v), sh = std::sinh(v);
        SurfaceJet j;
        j.F = pos(u, v);
        j.Fu = vec3(-su * ch, cu * ch, 0);
        j.Fv = vec3(cu * sh, su * sh, 1);
        j.Fuu = vec3(-cu * ch, -su * ch, 0);
        j.Fuv = vec3(-su * sh, cu * sh, 0);
        j.Fvv = vec3(cu * ch, su * ch, 0);
        return j;
    };
    return SurfaceMap(3, ParamDomain::plane(), pos, jet);
}

SurfaceMap helicoid_closed() {
    return SurfaceMap(3, ParamDomain::plane(), [](double u, double v) {
        return vec3(std::sin(u) * std::sinh(v), -std::cos(u) * std::sinh(v), u);
    });
}

VecN enneper_closed(double u, double v) {
    return vec3(u / 3 * (3 * (1 + v * v) - u * u), v / 3 * (v * v - 3 * (1 + u * u)), u * u - v * v);
}

// inverse stereographic projection onto the unit sphere
SurfaceMap sphere_map() {
    return SurfaceMap(3, ParamDomain::plane(), [](double u, double v) {
        const double d = 1 + u * u + v * v;
        return vec3(2 * u / d, 2 * v / d, (u * u + v * v - 1) / d);
    });
}

ComplexExprVec catenoid_data() { return data({"-(1/z-z)/(2*z)", "-i*(1/z+z)/(2*z)", "-1/z"}, {0.0}); }
ComplexExprVec enneper_data() { return data({"1-z^2", "i*(1+z^2)", "2*z"}); }
ComplexExprVec helicatenoid_data() { return data({"-sin(z)", "cos(z)", "-i"}); }

std::vector<Complex> box_samples(int n, double lo, double hi, std::uint64_t seed = 42) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(lo, hi);
    std::vector<Complex> out;
    for (int k = 0; k < n; ++k) {
        const double a = U(rng);
        out.emplace_back(a, U(rng));
    }
    return out;
}

}  // namespace

TEST_CASE("conformality_check") {
    const auto samples = box_samples(30, -1.5, 1.5);
    CHECK(conformality_check(catenoid_closed(), samples) < 1e-12);
    const SurfaceMap stretch(3, ParamDomain::plane(), [](double u, double v) { return vec3(u, 2 * v, 0); });
    CHECK(conformality_check(stretch, samples) == doctest::Approx(3.0).epsilon(1e-9));
    const SurfaceMap enneper(3, ParamDomain::plane(), enneper_closed);
    CHECK(conformality_check(enneper, samples) < 1e-10);
    const SurfaceMap fold(3, ParamDomain::plane(), [](double u, double v) { return vec3(u * u, v, 0); });
    const std::vector<Complex> origin{{0.0, 0.3}};
    CHECK_THROWS_AS(conformality_check(fold, origin), NotImmersed);
}

TEST_CASE("harmonicity_check") {
    const auto samples = box_samples(30, -1.5, 1.5);
    CHECK(harmonicity_check(helicoid_closed(), samples) < 1e-8);
    const SurfaceMap square(3, ParamDomain::plane(), [](double u, double v) { return vec3(u * u, v, 0); });
    CHECK(harmonicity_check(square, samples) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("laplace_orthogonality_check") {
    const auto samples = box_samples(30, -1.5, 1.5);
    CHECK(laplace_orthogonality_check(sphere_map(), samples) < 1e-6);
    CHECK(harmonicity_check(sphere_map(), samples) > 0.1);
    CHECK(laplace_orthogonality_check(catenoid_closed(), samples) < 1e-10);
    const SurfaceMap stretch(3, ParamDomain::plane(), [](double u, double v) { return vec3(u, 2 * v, 0); });
    CHECK_THROWS_AS(laplace_orthogonality_check(stretch, samples), NotConformal);
}

TEST_CASE("mean_curvature_vector_check: sphere |H| = 2, minimal surfaces H = 0") {
    const auto samples = box_samples(20, -1.2, 1.2);
    const MeanCurvatureCheck s = mean_curvature_vector_check(sphere_map(), samples);
    CHECK(s.residual < 1e-5);
    CHECK(s.max_norm == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(s.min_norm == doctest::Approx(2.0).epsilon(1e-6));
    const MeanCurvatureCheck c = mean_curvature_vector_check(catenoid_closed(), samples);
    CHECK(c.residual < 1e-6);
    CHECK(c.max_norm < 1e-6);
    const SurfaceMap stretch(3, ParamDomain::plane(), [](double u, double v) { return vec3(u, 2 * v, 0); });
    CHECK_THROWS_AS(mean_curvature_vector_check(stretch, samples), NotConformal);
}

TEST_CASE("periods: residue oracles") {
    // catenoid: only -1/z has a residue, so the period is (0, 0, -2 pi i)
    const std::vector<Loop> unit{Loop::circle(0.0, 1.0)};
    const PeriodResult c = periods(catenoid_data(), unit).front();
    CHECK((c.period - cvec3(0, 0, Complex(0, -2 * kPi))).norm() < 1e-10);
    CHECK(c.real.norm() < 1e-10);
    CHECK((c.flux - vec3(0, 0, -2 * kPi)).norm() < 1e-10);

    const std::vector<Loop> loops{Loop::circle({0.3, -0.2}, 2.0), Loop::polygon({{-1, -1}, {3, 0}, {0, 2}})};
    for (const auto& r : periods(enneper_data(), loops)) CHECK(r.period.norm() < 1e-10);

    // residues (1, i, 0)
    const PeriodResult t = periods(data({"1/z", "i/z", "0*z"}, {0.0}), unit).front();
    CHECK((t.period - cvec3(Complex(0, 2 * kPi), -2 * kPi, 0)).norm() < 1e-10);
}

TEST_CASE("periods: homology invariance and the flux homomorphism") {
    const ComplexExprVec f = data({"1/z + 1/(z-2)^2 + z", "i/(z-2) + 3/z", "exp(z)/z"}, {0.0, 2.0});
    const std::vector<Loop> homotopic{Loop::circle(0.0, 0.5), Loop::circle(0.0, 1.5),
                                      Loop::polygon({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}})};
    const auto p = periods(f, homotopic);
    CHECK((p[0].period - p[1].period).norm() < 1e-9);
    CHECK((p[0].period - p[2].period).norm() < 1e-9);

    // build loops sharing the base point 1 + 0i
    const Loop l1 = Loop::polygon({{1, 0}, {1, 1}, {-1, 1}, {-1, -1}, {1, -1}});  // encloses 0
    const Loop l2 = Loop::polygon({{1, 0}, {1, -1}, {3, -1}, {3, 1}, {1, 1}});  // encloses 2
    const std::vector<Loop> parts{l1, l2, Loop::concat(l1, l2)};
    const auto q = periods(f, parts);
    CHECK((q[2].flux - q[0].flux - q[1].flux).norm() < 1e-9);
    CHECK((q[2].period - q[0].period - q[1].period).norm() < 1e-9);
    CHECK(q[0].flux.norm() > 1.0);
}

TEST_CASE("homology_generators per domain kind") {
    CHECK(homology_generators(ParamDomain::disc(0.0, 1.0)).empty());
    CHECK(homology_generators(ParamDomain::rectangle({0, 1, 0, 1})).empty());
    CHECK(homology_generators(ParamDomain::plane()).empty());
    const auto ann = homology_generators(ParamDomain::annulus(0.0, 0.5, 2.0));
    REQUIRE(ann.size() == 1);
    CHECK(std::abs(ann[0].base_point() - Complex(1.0, 0.0)) < 1e-15);
    const auto punct = homology_generators(ParamDomain::punctured_plane({0.0, 1.0}));
    REQUIRE(punct.size() == 2);
    CHECK(punct[0].distance_to(1.0) > 0.5);
    const std::vector<Complex> extra{{0.0, 0.0}, {1.0, 0.0}, {-1.0, 0.0}};
    CHECK(homology_generators(ParamDomain::punctured_plane({0.0}), extra).size() == 3);
}

TEST_CASE("Enneper data integrates to the parametric equations") {
    const SurfaceMap s = integrate_minimal_surface(enneper_data(), ParamDomain::plane(), 0.0, VecN::Zero(3));
    CHECK(s.provenance() == SurfaceMap::Provenance::IntegratedFromWeierstrass);
    for (const Complex& z : box_samples(40, -2, 2)) {
        CHECK((s(z.real(), z.imag()) - enneper_closed(z.real(), z.imag())).norm() < 1e-10);
    }
    CHECK(s(0, 0).norm() == 0.0);
}

TEST_CASE("helicatenoid null curve is (cos z, sin z, -iz)") {
    const NullCurve Z(helicatenoid_data(), ParamDomain::plane(), 0.0, cvec3(1, 0, 0));
    for (const Complex& z : box_samples(30, -3, 3)) {
        CHECK((Z(z) - cvec3(std::cos(z), std::sin(z), -kI * z)).norm() < 1e-10);
    }
}

TEST_CASE("catenoid data: real part integrates, full complex is obstructed") {
    const ParamDomain dom = ParamDomain::punctured_plane({0.0});
    const SurfaceMap s = integrate_minimal_surface(catenoid_data(), dom, 1.0, vec3(1, 0, 0));
    // X(r e^{i theta}) = (cosh v cos theta, cosh v sin theta, v), v = -log r
    for (const Complex& z : sample_domain(dom, 30, 7, 0.05)) {
        const double v = -std::log(std::abs(z)), th = std::arg(z);
        CHECK((s(z.real(), z.imag()) - vec3(std::cosh(v) * std::cos(th), std::cosh(v) * std::sin(th), v)).norm() <
              1e-9);
    }
    try {
        const NullCurve z(catenoid_data(), dom, 1.0, cvec3(1, 0, 0));
        FAIL("expected PeriodObstruction");
    } catch (const PeriodObstruction& e) {
        CHECK(e.generator() == 0);
        CHECK(e.real_magnitude() < 1e-9);
        CHECK(e.imag_magnitude() == doctest::Approx(2 * kPi).epsilon(1e-9));
    }
    // the same data on an annulus
    const SurfaceMap a = integrate_minimal_surface(catenoid_data(), ParamDomain::annulus(0.0, 0.5, 2.0), 1.0, vec3(1, 0, 0));
    CHECK((a(0.0, -1.5) - vec3(0, -std::cosh(std::log(1.5)), -std::log(1.5))).norm() < 1e-9);
}

TEST_CASE("real periods must vanish") {
    // Re of the residue 1 of 1/z in the first component gives a real period 2 pi i * 1 -> Re 0; use i/z instead
    const ComplexExprVec f = data({"i/z", "1/z", "0*z+1"}, {0.0});
    try {
        integrate_minimal_surface(f, ParamDomain::punctured_plane({0.0}), 1.0, VecN::Zero(3));
        FAIL("expected PeriodObstruction");
    } catch (const PeriodObstruction& e) {
        CHECK(e.real_magnitude() == doctest::Approx(2 * kPi).epsilon(1e-9));
    }
}

TEST_CASE("common zero is rejected") {
    const ComplexExprVec f = data({"z", "i*z", "0*z"});
    IntegrationOptions o;
    o.samples = {Complex(0.5, 0.5), Complex(0.0, 0.0)};
    CHECK_THROWS_AS(integrate_minimal_surface(f, ParamDomain::plane(), 1.0, VecN::Zero(3), o), CommonZero);
}

TEST_CASE("derivative round trip: 2 dF/dz reproduces f") {
    const ParamDomain dom = ParamDomain::punctured_plane({0.0});
    const ComplexExprVec f = catenoid_data();
    const SurfaceMap s = integrate_minimal_surface(f, dom, 1.0, vec3(1, 0, 0)).without_analytic_partials();
    double worst = 0.0;
    for (const Complex& z : sample_domain(dom, 100, 42, 0.2)) {
        const SurfaceJet j = s.jet(z.real(), z.imag());
        const CVecN fd = j.Fu.cast<Complex>() - kI * j.Fv.cast<Complex>();
        worst = std::max(worst, (fd - f.eval(z)).cwiseAbs().maxCoeff());
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("nullity implies conformality of the integrated map") {
    for (const ComplexExprVec& f : {enneper_data(), helicatenoid_data()}) {
        CHECK(nullity_check(f, box_samples(20, -1, 1)).null);
        const SurfaceMap s = integrate_minimal_surface(f, ParamDomain::plane(), 0.0, VecN::Zero(3));
        CHECK(conformality_check(s, box_samples(20, -1, 1)) < 1e-8);
        CHECK(conformality_check(s.without_analytic_partials(), box_samples(20, -1, 1)) < 1e-8);
    }
}

TEST_CASE("path independence across the puncture") {
    // Re-periods vanish, so F_{z0}(z) - F_{z0}(z1) = F_{z1}(z) for any base points
    const ParamDomain dom = ParamDomain::punctured_plane({0.0});
    const ComplexExprVec f = catenoid_data();
    const PathIntegrator from1(f, dom, 1.0, IntegrationOptions{}.quad);
    const PathIntegrator fromm(f, dom, Complex(-0.3, -0.4), IntegrationOptions{}.quad);
    for (const Complex& z : sample_domain(dom, 20, 3, 0.05)) {
        const VecN lhs = (from1(z) - from1(Complex(-0.3, -0.4))).real();
        CHECK((lhs - fromm(z).real()).norm() < 1e-9);
    }
}

TEST_CASE("associated family of the helicatenoid") {
    const NullCurve Z(helicatenoid_data(), ParamDomain::plane(), 0.0, cvec3(1, 0, 0));
    const SurfaceMap x0 = associated_family(Z, 0.0), x1 = associated_family(Z, kPi / 2);
    const SurfaceMap cat = catenoid_closed(), hel = helicoid_closed();
    const auto samples = box_samples(30, -2, 2);
    for (const Complex& z : samples) {
        CHECK((x0(z.real(), z.imag()) - cat(z.real(), z.imag())).norm() < 1e-10);
        CHECK((x1(z.real(), z.imag()) - hel(z.real(), z.imag())).norm() < 1e-10);
        // X^{pi/2} = -Im Z, so Cauchy-Riemann reads X0_u = -X1_v, X0_v = X1_u
        const SurfaceJet a = x0.jet(z.real(), z.imag()), b = x1.jet(z.real(), z.imag());
        CHECK((a.Fu + b.Fv).norm() < 1e-8);
        CHECK((a.Fv - b.Fu).norm() < 1e-8);
    }
    for (double t : {0.3, 1.0, 2.5, -0.7}) {
        const SurfaceMap xt = associated_family(Z, t);
        CHECK(conformality_check(xt, samples) < 1e-8);
        CHECK(harmonicity_check(xt, samples) < 1e-8);
        CHECK(harmonicity_check(xt.without_analytic_partials(), samples) < 1e-6);
    }
}

TEST_CASE("Weierstrass data in R^3: catenoid from g = z, phi3 = -1/z") {
    WeierstrassDataR3 w;
    w.g = ComplexExpr::parse("z");
    w.phi3 = ComplexExpr::parse("-1/z", {0.0});
    w.domain = ParamDomain::punctured_plane({0.0});
    w.z0 = 1.0;
    w.c = vec3(1, 0, 0);
    const ComplexExprVec f = w.assemble();
    for (const Complex& z : sample_domain(w.domain, 20, 5, 0.1)) CHECK((f.eval(z) - catenoid_data().eval(z)).norm() < 1e-12);
    CHECK_NOTHROW(w.validate({}));
    const SurfaceMap s = w.surface();
    CHECK((s(1.0, 0.0) - vec3(1, 0, 0)).norm() < 1e-14);
    const double v = -std::log(2.0);
    CHECK((s(0.0, 2.0) - vec3(0, std::cosh(v), v)).norm() < 1e-9);

    WeierstrassDataR3 bad;
    bad.g = ComplexExpr::parse("1");
    bad.phi3 = ComplexExpr::parse("z-0.5");
    bad.domain = ParamDomain::plane();
    const std::vector<Complex> at{{0.5, 0.0}};
    CHECK_THROWS_AS(bad.validate(at), CommonZero);
}

TEST_CASE("complex Gauss map agrees with the classical one") {
    const ParamDomain dom = ParamDomain::punctured_plane({0.0});
    const SurfaceMap cat = integrate_minimal_surface(catenoid_data(), dom, 1.0, vec3(1, 0, 0));
    const SurfaceMap enn = integrate_minimal_surface(enneper_data(), ParamDomain::plane(), 0.0, VecN::Zero(3));
    const SurfaceMap hel = integrate_minimal_surface(helicatenoid_data(), ParamDomain::plane(), 0.0, vec3(1, 0, 0));
    const auto samples = sample_domain(dom, 30, 11, 0.1);
    const ComplexExpr gc = complex_gauss_map(cat, samples), ge = complex_gauss_map(enn, samples),
                      gh = complex_gauss_map(hel, samples);
    for (const Complex& z : samples) {
        CHECK(std::abs(gc(z) - z) < 1e-12 * std::max(1.0, std::abs(z)));
        CHECK(std::abs(ge(z) - z) < 1e-12 * std::max(1.0, std::abs(z)));
        CHECK(std::abs(gh(z) - std::exp(kI * z)) < 1e-12 * std::max(1.0, std::abs(std::exp(kI * z))));
        for (const SurfaceMap* s : {&cat, &enn, &hel}) {
            const Complex a = stereographic(classical_gauss_map(*s, z.real(), z.imag()));
            const Complex b = gauss_map_value(*s, z.real(), z.imag());
            const Complex c = complex_gauss_map(*s->generator())(z);
            CHECK(std::abs(a - b) < 1e-8 * std::max(1.0, std::abs(b)));
            CHECK(std::abs(a - c) < 1e-8 * std::max(1.0, std::abs(c)));
        }
    }
}

TEST_CASE("classical Gauss map oracles") {
    CHECK((classical_gauss_map(catenoid_closed(), 0, 0) - vec3(1, 0, 0)).norm() < 1e-12);
    const SurfaceMap plane(3, ParamDomain::plane(), [](double u, double v) { return vec3(u, v, 2 * u - v); });
    const VecN n0 = classical_gauss_map(plane, 0, 0);
    CHECK((classical_gauss_map(plane, 3, -1) - n0).norm() < 1e-12);
    CHECK((n0 - vec3(-2, 1, 1) / std::sqrt(6.0)).norm() < 1e-10);
    for (const Complex& z : box_samples(10, -2, 2)) {
        const VecN n = classical_gauss_map(sphere_map(), z.real(), z.imag());
        CHECK(std::abs(std::abs(n.dot(sphere_map()(z.real(), z.imag()))) - 1.0) < 1e-9);
    }
    const SurfaceMap fold(3, ParamDomain::plane(), [](double u, double v) { return vec3(u * u, v, 0); });
    CHECK_THROWS_AS(classical_gauss_map(fold, 0, 0.2), NotImmersed);
}

TEST_CASE("Gauss map errors") {
    // f1 - i f2 = 0: the plane (u, v, 0) has its normal at the north pole
    const SurfaceMap flat = integrate_minimal_surface(data({"1+0*z", "-i+0*z", "0*z"}), ParamDomain::plane(), 0.0,
                                                      VecN::Zero(3));
    const std::vector<Complex> at{{0.2, 0.1}};
    CHECK_THROWS_AS(complex_gauss_map(flat, at), DegenerateDenominator);
    CHECK_THROWS_AS(gauss_map_value(flat, 0.2, 0.1), DegenerateDenominator);
    CHECK_THROWS_AS(complex_gauss_map(catenoid_closed()), InvalidInput);
}

TEST_CASE("total_curvature_spherical closed forms") {
    // -4 pi (1/(1+a^2) - 1/(1+b^2)) from the polar antiderivative -2/(1+r^2)
    const ComplexExpr w = ComplexExpr::parse("z");
    QuadOptions o;
    o.abs_tol = 1e-9;
    for (auto [a, b] : {std::pair{0.5, 2.0}, std::pair{0.1, 10.0}, std::pair{1e-3, 1e3}}) {
        const double exact = -4 * kPi * (1 / (1 + a * a) - 1 / (1 + b * b));
        CHECK(total_curvature_spherical(w, Annulus{0.0, a, b}, o) == doctest::Approx(exact).epsilon(1e-8));
    }
    CHECK(total_curvature_spherical(ComplexExpr::parse("3+2*i"), Rectangle{-1, 1, -1, 1}, o) == 0.0);
    // Enneper over |z| <= R: -4 pi R^2/(1+R^2)
    const double R = 20.0;
    CHECK(total_curvature_spherical(w, Annulus{0.0, 0.0, R}, o) ==
          doctest::Approx(-4 * kPi * R * R / (1 + R * R)).epsilon(1e-8));
}

TEST_CASE("total_curvature_degree") {
    CHECK(total_curvature_degree(ComplexExpr::parse("z")) == doctest::Approx(-4 * kPi));
    CHECK(total_curvature_degree(ComplexExpr::parse("(z+1)*z^2/(z-1)")) == doctest::Approx(-12 * kPi));
    CHECK(total_curvature_degree(ComplexExpr::parse("2-i")) == 0.0);
    CHECK_THROWS_AS(total_curvature_degree(ComplexExpr::parse("exp(i*z)")), NotRational);
    CHECK(total_curvature_degree(ComplexExpr::parse("exp(i*z)"), true) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("two routes to total curvature agree") {
    QuadOptions o;
    o.abs_tol = 1e-7;
    struct Case {
        const char* g;
        std::vector<Complex> sing;
    };
    for (const Case& c : {Case{"z", {}}, Case{"(z+1)*z^2/(z-1)", {1.0}}, Case{"-1/z", {0.0}}}) {
        const ComplexExpr g = ComplexExpr::parse(c.g, c.sing);
        const double degree = total_curvature_degree(g);
        const double spherical = total_curvature_spherical(g, Annulus{0.0, 0.01, 100.0}, o);
        CHECK(std::abs(spherical - degree) < 0.01 * std::abs(degree));
    }
}
