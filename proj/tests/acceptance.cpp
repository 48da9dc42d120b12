// One line per acceptance criterion: PASS or FAIL, the measured quantities and the runtime.

#include "minsurf/catalog.hpp"
#include "minsurf/minimal_graph.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>

using namespace minsurf;

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = limit_s <= 0 || secs < limit_s;
    const bool ok = o.passed && in_time;
    failures += !ok;
    std::ostringstream line;
    line << (ok ? "PASS" : "FAIL") << " [" << id << "] " << title << ": " << o.detail << "; " << secs << " s";
    if (limit_s > 0) line << " (limit " << limit_s << " s" << (in_time ? "" : ", exceeded") << ")";
    std::puts(line.str().c_str());
    std::fflush(stdout);
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

double catenoid_graph(double x, double y) { return std::acosh(std::hypot(x, y)); }

ScalarGrid catenoid_square(std::size_t n) {
    const double h = 0.8 / static_cast<double>(n - 1), eps = 1e-9;
    return ScalarGrid::sample(
        {1.2, 1.2}, h, n, n,
        [&](double x, double y) { return x > 1.2 + eps && x < 2 - eps && y > 1.2 + eps && y < 2 - eps; },
        catenoid_graph);
}

double max_interior_error(const ScalarGrid& f) {
    double e = 0;
    for (std::size_t i = 0; i < f.rows(); ++i)
        for (std::size_t j = 0; j < f.cols(); ++j)
            if (f.interior(i, j)) e = std::max(e, std::abs(f(i, j) - catenoid_graph(f.x(j), f.y(i))));
    return e;
}

VariationField random_variation(const ScalarGrid& like, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(-1, 1);
    ScalarGrid h = like;
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j < h.cols(); ++j) h(i, j) = h.interior(i, j) ? U(rng) : 0.0;
    return VariationField(h);
}

}  // namespace

int main() {
    criterion(1, "catenoid Plateau threshold", 1.0, [] {
        const PlateauResult two = catenoid_plateau(2.0), none = catenoid_plateau(1.0);
        const double err = std::abs(two.threshold - 1.50887954);
        const bool ok = err <= 1e-7 && two.solutions.size() == 2 && none.solutions.empty();
        return Outcome{ok, "r0 = " + std::to_string(two.threshold) + " (|r0 - 1.50887954| = " + fmt(err) +
                               "), r = 2: " + std::to_string(two.solutions.size()) +
                               " roots, r = 1: " + std::to_string(none.solutions.size()) + " roots"};
    });

    criterion(2, "total curvature, degree route", 1.0, [] {
        struct Want {
            const char* name;
            double value;
        };
        bool ok = true;
        std::string d;
        for (const Want& w : {Want{"catenoid", -4 * kPi}, Want{"enneper", -4 * kPi}, Want{"meeks-mobius", -12 * kPi},
                              Want{"helicoid", -std::numeric_limits<double>::infinity()}}) {
            const double tc = total_curvature_degree(*catalog_lookup(w.name).tc_gauss_map, true);
            const bool hit = std::isinf(w.value) ? tc == w.value : std::abs(tc - w.value) <= 1e-14 * std::abs(w.value);
            ok = ok && hit;
            d += std::string(d.empty() ? "" : ", ") + w.name + " " +
                 (std::isinf(tc) ? std::string("-inf") : fmt(tc / kPi) + "pi");
        }
        return Outcome{ok, d};
    });

    criterion(3, "total curvature, spherical route", 10.0, [] {
        QuadOptions o;
        o.abs_tol = 1e-7;
        const ComplexExpr z = ComplexExpr::variable();
        const double cat = total_curvature_spherical(z, Annulus{0.0, 0.01, 100.0}, o);
        const double cat_gap = std::abs(cat + 4 * kPi) / (4 * kPi);
        const CatalogEntry e = make_enneper();
        const double sph = total_curvature_spherical(*e.tc_gauss_map, Annulus{0.0, 0.0, 100.0}, o);
        const double deg = total_curvature_degree(*e.tc_gauss_map, true);
        const double en_gap = std::abs(sph - deg) / std::abs(deg);
        return Outcome{cat_gap < 0.01 && en_gap < 0.01, "catenoid annulus " + fmt(cat) + " (rel " + fmt(cat_gap) +
                                                            "), Enneper spherical " + fmt(sph) + " vs degree " +
                                                            fmt(deg) + " (rel " + fmt(en_gap) + ")"};
    });

    criterion(4, "periods and flux", 1.0, [] {
        const CatalogEntry cat = make_catenoid();
        const ComplexExprVec f = cat.weierstrass->assemble();
        const Loop unit = Loop::circle(0.0, 1.0);
        const PeriodResult p = periods(f, std::span<const Loop>(&unit, 1)).front();
        VecN want(3);
        want << 0, 0, -2 * kPi;
        const double re = p.real.norm(), flux_err = (p.flux - want).cwiseAbs().maxCoeff();
        const std::vector<Loop> loops{Loop::circle(0.0, 1.0), Loop::circle({0.5, -0.3}, 2.5),
                                      Loop::polygon({{-1, -1}, {2, -1}, {2, 1.5}, {-1, 1.5}})};
        double enn = 0.0;
        for (const PeriodResult& q : periods(*make_enneper().data, loops)) enn = std::max(enn, q.period.norm());
        return Outcome{re < 1e-10 && flux_err <= 1e-8 && enn < 1e-12,
                       "catenoid |Re period| " + fmt(re) + ", flux (" + fmt(p.flux[0]) + ", " + fmt(p.flux[1]) + ", " +
                           fmt(p.flux[2]) + "), max flux error " + fmt(flux_err) + "; Enneper max |period| " + fmt(enn)};
    });

    criterion(5, "Weierstrass round trip", 5.0, [] {
        const SurfaceMap x = integrate_minimal_surface(*make_enneper().data, ParamDomain::plane(), 0.0, VecN::Zero(3));
        const auto samples = sample_domain(ParamDomain::plane(), 100, 42, 0.0);
        double enn = 0.0;
        for (const Complex& z : samples) {
            const double u = z.real(), v = z.imag();
            VecN expect(3);
            expect << u / 3 * (3 * (1 + v * v) - u * u), v / 3 * (v * v - 3 * (1 + u * u)), u * u - v * v;
            enn = std::max(enn, (x(u, v) - expect).norm());
        }
        CVecN c0(3);
        c0 << 1.0, 0.0, 0.0;
        const NullCurve hc(*make_helicatenoid().data, ParamDomain::plane(), 0.0, c0);
        double hel = 0.0;
        for (const Complex& z : samples) {
            CVecN expect(3);
            expect << std::cos(z), std::sin(z), Complex(0, -1) * z;
            hel = std::max(hel, (hc(z) - expect).norm());
        }
        return Outcome{enn < 1e-10 && hel < 1e-10, "Enneper max error " + fmt(enn) + " at 100 samples, helicatenoid " +
                                                       fmt(hel)};
    });

    criterion(6, "minimal-graph solver convergence", 30.0, [] {
        const GraphSolution coarse = solve_minimal_graph({catenoid_square(33), {}});
        const GraphSolution fine = solve_minimal_graph({catenoid_square(65), {}});
        const double e1 = max_interior_error(coarse.f), e2 = max_interior_error(fine.f);
        const double ratio = e1 / e2;
        const bool ok = coarse.report.converged && fine.report.converged && ratio >= 3.5 && ratio <= 4.5;
        return Outcome{ok, "max error 33^2 " + fmt(e1) + ", 65^2 " + fmt(e2) + ", ratio " + fmt(ratio)};
    });

    criterion(7, "first variation", 0.0, [] {
        std::mt19937_64 rng(42);
        std::uniform_real_distribution<double> U(-1, 1);
        double worst = 0.0;
        for (int k = 0; k < 50; ++k) {
            const double a = U(rng), b = 1 + 2 * std::abs(U(rng)), c = U(rng), d = U(rng), q = U(rng);
            const ScalarGrid f = ScalarGrid::sample(
                {0, 0}, 1.0 / 15, 16, 16, [](double x, double y) { return x > 1e-9 && x < 1 - 1e-9 && y > 1e-9 && y < 1 - 1e-9; },
                [&](double x, double y) { return a * std::sin(b * x + c) * std::cosh(d * y) + q * x * y; });
            const VariationField h = random_variation(f, rng);
            const double an = first_variation_analytic(f, h), fd = first_variation_fd(f, h);
            worst = std::max(worst, std::abs(an - fd) / std::max(1.0, std::abs(fd)));
        }
        const GraphSolution s = solve_minimal_graph({catenoid_square(33), {}});
        double stat = 0.0;
        for (int k = 0; k < 50; ++k) {
            const VariationField h = random_variation(s.f, rng);
            stat = std::max(stat, std::abs(first_variation_analytic(s.f, h)) / h.norm());
        }
        return Outcome{worst < 1e-5 && stat < 1e-6, "max relative gap " + fmt(worst) +
                                                        " over 50 pairs; at the solver output max |dA|/|h| " + fmt(stat)};
    });

    criterion(8, "conformal-harmonic-minimal suite", 0.0, [] {
        bool ok = true;
        std::string failed;
        std::size_t count = 0;
        for (const std::string& name : catalog_names()) {
            for (const CheckResult& c : run_entry_checks(catalog_lookup(name))) {
                ++count;
                if (!c.passed) {
                    ok = false;
                    failed += " " + name + "/" + c.name + "=" + fmt(c.value);
                }
            }
        }
        const CatalogEntry sphere = make_sphere();
        const MeanCurvatureCheck h = mean_curvature_vector_check(sphere.surface, default_samples(sphere));
        const double gap = std::max(std::abs(h.max_norm - 2), std::abs(h.min_norm - 2));
        ok = ok && gap <= 1e-4 && h.residual < 1e-5;
        return Outcome{ok, std::to_string(count) + " catalog checks" + (failed.empty() ? " all pass" : ", failed:" + failed) +
                               "; sphere ||H| - 2| " + fmt(gap) + ", Laplacian identity residual " + fmt(h.residual)};
    });

    criterion(9, "Meusnier equivalence", 0.0, [] {
        std::mt19937_64 rng(42);
        std::uniform_real_distribution<double> U(-2, 2);
        double worst = 0.0;
        int agree = 0, zeros = 0;
        for (int k = 0; k < 500; ++k) {
            GraphJet2 j;
            j.gradient = {U(rng), U(rng)};
            j.hessian = {U(rng), U(rng), U(rng)};
            if (k % 2 == 0) {
                const double fx = j.gradient.x(), fy = j.gradient.y();
                j.hessian.c = -((1 + fy * fy) * j.hessian.a - 2 * fx * fy * j.hessian.b) / (1 + fx * fx);
            }
            const double H = graph_mean_curvature(j), G = mge_operator(j);
            const double w = std::pow(1 + j.gradient.squaredNorm(), 1.5);
            worst = std::max(worst, std::abs(H - G / w) / std::max(1.0, std::abs(G)));
            const bool hz = std::abs(H) < 1e-12, gz = std::abs(G) < 1e-12 * w;
            agree += hz == gz;
            zeros += hz;
        }
        return Outcome{worst < 1e-14 && agree == 500, "max |H - G/W^3| " + fmt(worst) + ", zero sets agree on " +
                                                          std::to_string(agree) + "/500 (" + std::to_string(zeros) +
                                                          " minimal jets)"};
    });

    criterion(10, "involution invariance", 0.0, [] {
        std::string d;
        bool ok = true;
        for (const CatalogEntry& e : {make_meeks_mobius(), make_afl_mobius_r4()}) {
            double worst = 0.0;
            for (const Complex& z : default_samples(e, 50, 42)) {
                const Complex w = e.involution(z);
                worst = std::max(worst, (e.surface(w.real(), w.imag()) - e.surface(z.real(), z.imag())).norm());
            }
            ok = ok && worst < 1e-8;
            d += (d.empty() ? "" : ", ") + e.name + " " + fmt(worst);
        }
        return Outcome{ok, "max |X(-1/conj z) - X(z)| at 50 samples: " + d};
    });

    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
