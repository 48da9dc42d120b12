#include "minsurf/catalog.hpp"

#include "minsurf/curvature.hpp"
#include "minsurf/errors.hpp"
#include "minsurf/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace minsurf {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kInf = std::numeric_limits<double>::infinity();

VecN vec3(double a, double b, double c) {
    VecN v(3);
    v << a, b, c;
    return v;
}

ComplexExprVec parse_data(std::vector<std::string> src, std::vector<Complex> singular = {}) {
    return ComplexExprVec::parse(src, std::move(singular));
}

Complex deck(Complex z) { return -1.0 / std::conj(z); }

// Closed-form null primitive Z with the exact derivative data f; F = Re Z.
SurfaceMap closed_real_part(std::function<CVecN(Complex)> Z, const ComplexExprVec& f, const ParamDomain& domain) {
    return real_part_surface(std::move(Z), f, domain, 1.0, SurfaceMap::Provenance::ClosedForm);
}

CVecN helicatenoid_Z(Complex z) {
    CVecN out(3);
    out << std::cos(z), std::sin(z), -kI * z;
    return out;
}

CVecN meeks_primitive(Complex z) {
    const Complex laurent = -1.0 / z + 1.0 / (z * z) - 1.0 / (3.0 * z * z * z);
    const Complex cube = (z + 1.0) * (z + 1.0) * (z + 1.0) / 3.0;
    CVecN out(3);
    out << 0.5 * kI * (laurent - cube), -0.5 * (laurent + cube), kI * (z + 1.0 / z);
    return out;
}

CheckResult make_check(std::string name, double value, double tol, std::string detail = {}) {
    CheckResult r{std::move(name), value, tol, value <= tol, std::move(detail)};
    return r;
}

double relative_gap(double a, double b) {
    if (std::isinf(a) || std::isinf(b)) return a == b ? 0.0 : kInf;
    return std::abs(a - b) / std::max(1.0, std::abs(b));
}

}  // namespace

CatalogEntry::CatalogEntry(std::string n, std::string d, SurfaceMap s)
    : name(std::move(n)), description(std::move(d)), surface(std::move(s)) {}

// ---------------------------------------------------------------- constructors

CatalogEntry make_catenoid(double c) {
    if (!(c > 0.0) || !std::isfinite(c)) throw NonPositiveScale("catenoid scale c must be positive");
    const ComplexExprVec f = parse_data({"-sin(z)", "cos(z)", "-i"});
    const ComplexExprVec fc(std::vector<ComplexExpr>{ComplexExpr::number(1.0 / c) * f[0],
                                                     ComplexExpr::number(1.0 / c) * f[1],
                                                     ComplexExpr::number(1.0 / c) * f[2]});
    SurfaceMap s = closed_real_part([c](Complex z) -> CVecN { return helicatenoid_Z(z) / c; }, fc, ParamDomain::plane());
    std::ostringstream d;
    d << "catenoid x^2 + y^2 = cosh^2(" << c << " z) / " << c * c << ", X = (cos u cosh v, sin u cosh v, v) / " << c;
    CatalogEntry e("catenoid", d.str(), std::move(s));
    e.data = fc;
    WeierstrassDataR3 w;
    w.g = ComplexExpr::parse("z");
    w.phi3 = ComplexExpr::number(-1.0 / c) / ComplexExpr::parse("z", {0.0});
    w.domain = ParamDomain::punctured_plane({0.0});
    w.z0 = 1.0;
    w.c = vec3(1.0 / c, 0.0, 0.0);
    e.weierstrass = w;
    e.tc_gauss_map = ComplexExpr::parse("z");
    e.tc_region = Annulus{0.0, 0.01, 100.0};
    e.expect.total_curvature = -4.0 * kPi;
    e.implicit_residual = [c](const VecN& x) {
        const double ch = std::cosh(c * x[2]);
        return std::abs(x[0] * x[0] + x[1] * x[1] - ch * ch / (c * c));
    };
    return e;
}

CatalogEntry make_helicoid() {
    const ComplexExprVec f = parse_data({"-i*sin(z)", "i*cos(z)", "1"});
    SurfaceMap s = closed_real_part([](Complex z) -> CVecN { return kI * helicatenoid_Z(z); }, f, ParamDomain::plane());
    CatalogEntry e("helicoid", "helicoid Y = (sin u sinh v, -cos u sinh v, u) = Re(i Z) for the helicatenoid Z",
                   std::move(s));
    e.data = f;
    e.tc_gauss_map = ComplexExpr::parse("exp(i*z)");
    e.expect.total_curvature = -kInf;
    return e;
}

CatalogEntry make_helicatenoid() {
    const ComplexExprVec f = parse_data({"-sin(z)", "cos(z)", "-i"});
    SurfaceMap s = closed_real_part(helicatenoid_Z, f, ParamDomain::plane());
    CatalogEntry e("helicatenoid", "null curve Z = (cos z, sin z, -i z); surface Re Z, associated family Re(e^{it} Z)",
                   std::move(s));
    e.data = f;
    CVecN c(3);
    c << 1.0, 0.0, 0.0;
    e.null_curve.emplace(f, ParamDomain::plane(), 0.0, c);
    e.tc_gauss_map = ComplexExpr::parse("exp(i*z)");
    e.expect.total_curvature = -kInf;
    return e;
}

CatalogEntry make_enneper() {
    const ComplexExprVec f = parse_data({"1-z^2", "i*(1+z^2)", "2*z"});
    const auto Z = [](Complex z) -> CVecN {
        CVecN out(3);
        out << z - z * z * z / 3.0, kI * (z + z * z * z / 3.0), z * z;
        return out;
    };
    SurfaceMap s = closed_real_part(Z, f, ParamDomain::plane());
    CatalogEntry e("enneper", "Enneper surface, data (1 - z^2, i (1 + z^2), 2 z), Gauss map z", std::move(s));
    e.data = f;
    e.null_curve.emplace(f, ParamDomain::plane(), 0.0, CVecN::Zero(3));
    WeierstrassDataR3 w;
    w.g = ComplexExpr::parse("z", {0.0});
    w.phi3 = ComplexExpr::parse("2*z");
    w.domain = ParamDomain::plane();
    w.z0 = 0.5;
    w.c = Z(0.5).real();
    e.weierstrass = w;
    e.tc_gauss_map = ComplexExpr::parse("z");
    e.tc_region = Annulus{0.0, 0.0, 100.0};
    e.expect.total_curvature = -4.0 * kPi;
    return e;
}

CatalogEntry make_meeks_mobius() {
    // The literal data (1/g - g, i (g + 1/g), 2) * i (z^2 - 1) / (2 z^2) reduces to Laurent polynomials.
    const ComplexExprVec f =
        parse_data({"i/2*((z-1)^2/z^4 - (z+1)^2)", "-1/2*((z-1)^2/z^4 + (z+1)^2)", "i*(1 - 1/z^2)"}, {0.0});
    const CVecN base = meeks_primitive(1.0);
    const ParamDomain dom = ParamDomain::punctured_plane({0.0});
    SurfaceMap s = closed_real_part([base](Complex z) -> CVecN { return meeks_primitive(z) - base; }, f, dom);
    CatalogEntry e("meeks-mobius", "orientable double cover of the Meeks minimal Mobius strip, Gauss map (z+1) z^2/(z-1)",
                   std::move(s));
    e.data = f;
    WeierstrassDataR3 w;
    const std::vector<Complex> singular{0.0, 1.0, -1.0};
    w.g = ComplexExpr::parse("(z+1)*z^2/(z-1)", singular);
    w.phi3 = ComplexExpr::parse("i*(z^2-1)/z^2", {0.0});
    w.domain = dom;
    // z = 1 is a removable singularity of the literal formula; start from i instead.
    w.z0 = kI;
    w.c = (meeks_primitive(kI) - base).real();
    e.weierstrass = w;
    e.tc_gauss_map = w.g;
    e.tc_region = Annulus{0.0, 0.01, 100.0};
    e.expect.total_curvature = -12.0 * kPi;
    e.expect.quotient_total_curvature = -6.0 * kPi;
    e.involution = deck;
    e.sample_region = ParamDomain::annulus(0.0, 0.5, 2.0);
    e.singular_points = singular;
    return e;
}

CatalogEntry make_afl_mobius_r4() {
    const ComplexExprVec f = parse_data({"i*(1-1/z^2)", "1+1/z^2", "i*(z+1/z^3)", "z-1/z^3"}, {0.0});
    const auto Z = [](Complex z) -> CVecN {
        const Complex w = 1.0 / z;
        CVecN out(4);
        out << kI * (z + w), z - w, 0.5 * kI * (z * z - w * w), 0.5 * (z * z + w * w);
        return out;
    };
    CatalogEntry e("afl-mobius-r4", "double cover of the properly embedded minimal Mobius strip in R^4",
                   closed_real_part(Z, f, ParamDomain::punctured_plane({0.0})));
    e.data = f;
    e.expect.total_curvature = -8.0 * kPi;
    e.expect.quotient_total_curvature = -4.0 * kPi;
    e.involution = deck;
    e.sample_region = ParamDomain::annulus(0.0, 0.5, 2.0);
    e.singular_points = {0.0};
    return e;
}

CatalogEntry make_sphere() {
    const auto pos = [](double u, double v) {
        const double d = 1 + u * u + v * v;
        return vec3(2 * u / d, 2 * v / d, (u * u + v * v - 1) / d);
    };
    const auto jet = [pos](double u, double v) {
        const double d = 1 + u * u + v * v, d2 = d * d, d3 = d2 * d;
        SurfaceJet j;
        j.F = pos(u, v);
        j.Fu = vec3(2 * (d - 2 * u * u) / d2, -4 * u * v / d2, 4 * u / d2);
        j.Fv = vec3(-4 * u * v / d2, 2 * (d - 2 * v * v) / d2, 4 * v / d2);
        j.Fuu = vec3(-12 * u / d2 + 16 * u * u * u / d3, -4 * v / d2 + 16 * u * u * v / d3, 4 / d2 - 16 * u * u / d3);
        j.Fuv = vec3(-4 * v / d2 + 16 * u * u * v / d3, -4 * u / d2 + 16 * u * v * v / d3, -16 * u * v / d3);
        j.Fvv = vec3(-4 * u / d2 + 16 * u * v * v / d3, -12 * v / d2 + 16 * v * v * v / d3, 4 / d2 - 16 * v * v / d3);
        return j;
    };
    CatalogEntry e("sphere", "unit sphere by inverse stereographic projection (conformal, not minimal)",
                   SurfaceMap(3, ParamDomain::plane(), pos, jet));
    e.expect.harmonic = false;
    e.expect.minimal = false;
    e.expect.mean_curvature_norm = 2.0;
    e.implicit_residual = [](const VecN& x) { return std::abs(x.squaredNorm() - 1.0); };
    return e;
}

std::vector<std::string> catalog_names() {
    return {"catenoid", "helicoid", "helicatenoid", "enneper", "meeks-mobius", "afl-mobius-r4", "sphere"};
}

CatalogEntry catalog_lookup(const std::string& name) {
    if (name == "catenoid") return make_catenoid();
    if (name == "helicoid") return make_helicoid();
    if (name == "helicatenoid") return make_helicatenoid();
    if (name == "enneper") return make_enneper();
    if (name == "meeks-mobius") return make_meeks_mobius();
    if (name == "afl-mobius-r4") return make_afl_mobius_r4();
    if (name == "sphere") return make_sphere();
    throw InvalidInput("unknown catalog entry '" + name + "'");
}

std::vector<Complex> default_samples(const CatalogEntry& entry, std::size_t count, std::uint64_t seed) {
    return sample_domain(entry.sample_region, count, seed, 1e-3, entry.singular_points);
}

// ---------------------------------------------------------------- checks

double numerical_total_curvature(const SurfaceMap& s, const Region& region, const QuadOptions& opts) {
    const auto density = [&](double u, double v) {
        const SurfaceJet j = s.jet(u, v);
        return regraph(s, u, v).gaussian_curvature() * area_element(j.Fu, j.Fv);
    };
    return quad_area(density, region, opts).value;
}

std::vector<CheckResult> run_entry_checks(const CatalogEntry& entry, std::size_t count, std::uint64_t seed) {
    const std::vector<Complex> samples = default_samples(entry, count, seed);
    const SurfaceMap& s = entry.surface;
    const SurfaceMap fd = s.without_analytic_partials();
    std::vector<CheckResult> out;

    if (entry.expect.conformal) {
        out.push_back(make_check("conformality", conformality_check(s, samples), 1e-8));
        out.push_back(make_check("laplace-orthogonality", laplace_orthogonality_check(s, samples), 1e-6));
    }
    if (entry.expect.harmonic) {
        out.push_back(make_check("harmonicity", harmonicity_check(s, samples), 1e-10, "analytic partials"));
        out.push_back(make_check("harmonicity-fd", harmonicity_check(fd, samples), 1e-6, "finite differences"));
    }
    if (entry.data) {
        const ComplexExprVec& f = *entry.data;
        // scale-free: |sum f_j^2| / |f|^2
        double nullity = 0.0, round_trip = 0.0;
        for (const Complex& z : samples) {
            const CVecN v = f.eval(z);
            nullity = std::max(nullity, std::abs((v.array() * v.array()).sum()) / v.squaredNorm());
            const SurfaceJet j = fd.jet(z.real(), z.imag());
            const CVecN w = j.Fu.cast<Complex>() - kI * j.Fv.cast<Complex>();
            round_trip = std::max(round_trip, (w - v).norm() / std::max(1.0, v.norm()));
        }
        out.push_back(make_check("nullity", nullity, 1e-10, "max |sum f_j^2| / |f|^2"));
        out.push_back(make_check("derivative-round-trip", round_trip, 1e-8, "Fu - i Fv against f"));
    }
    if (entry.expect.minimal) {
        const MeanCurvatureCheck h = mean_curvature_vector_check(s, samples);
        out.push_back(make_check("mean-curvature", h.max_norm, 1e-5, "max |H|"));
        out.push_back(make_check("laplacian-identity", h.residual, 1e-5, "max |Laplacian F - |grad F|^2 H / 2|"));
        double kmax = -kInf;
        for (const Complex& z : samples) kmax = std::max(kmax, regraph(s, z.real(), z.imag()).gaussian_curvature());
        out.push_back(make_check("gaussian-curvature-sign", std::max(0.0, kmax), 1e-8, "max(0, max K)"));
    } else if (entry.expect.mean_curvature_norm) {
        const MeanCurvatureCheck h = mean_curvature_vector_check(s, samples);
        const double target = *entry.expect.mean_curvature_norm;
        const double gap = std::max(std::abs(h.max_norm - target), std::abs(h.min_norm - target));
        out.push_back(make_check("mean-curvature-norm", gap, 1e-4, "max | |H| - expected |"));
        out.push_back(make_check("laplacian-identity", h.residual, 1e-5, "max |Laplacian F - |grad F|^2 H / 2|"));
    }
    if (entry.implicit_residual) {
        double worst = 0.0;
        for (const Complex& z : samples) worst = std::max(worst, entry.implicit_residual(s(z.real(), z.imag())));
        out.push_back(make_check("implicit-equation", worst, 1e-10));
    }
    if (entry.involution) {
        double worst = 0.0;
        for (const Complex& z : samples) {
            const Complex w = entry.involution(z);
            worst = std::max(worst, (s(w.real(), w.imag()) - s(z.real(), z.imag())).norm());
        }
        out.push_back(make_check("involution-invariance", worst, 1e-8, "max |X(-1/conj z) - X(z)|"));
    }
    if (entry.data && s.dim() == 3) {
        const ComplexExpr g = complex_gauss_map(*entry.data);
        double worst = 0.0;
        for (const Complex& z : samples) {
            const Complex a = g(z), b = stereographic(classical_gauss_map(s, z.real(), z.imag()));
            worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
        }
        out.push_back(make_check("gauss-map", worst, 1e-8, "f3/(f1 - i f2) against the projected normal"));
    }
    if (entry.weierstrass) {
        const ComplexExprVec phi = entry.weierstrass->assemble();
        const ParamDomain& wd = entry.weierstrass->domain;
        std::vector<Complex> avoid = phi.singularities();
        const ParamDomain region =
            wd.kind == ParamDomain::Kind::PuncturedPlane ? ParamDomain::annulus(0.0, 0.5, 2.0) : wd;
        const auto ws = sample_domain(region, 20, seed, 1e-3, avoid);
        entry.weierstrass->validate(ws);
        const SurfaceMap x = entry.weierstrass->surface();
        double worst = 0.0;
        for (const Complex& z : ws) {
            const VecN a = x(z.real(), z.imag());
            // the catenoid data lives on C*; compare through w = e^{i zeta}, zeta = (arg w, -log|w|)
            const Complex p = entry.name == "catenoid" ? Complex(std::arg(z), -std::log(std::abs(z))) : z;
            worst = std::max(worst, (a - s(p.real(), p.imag())).norm() / std::max(1.0, a.norm()));
        }
        out.push_back(make_check("weierstrass-integration", worst, 1e-8, "integrated data against the closed form"));
    }
    if (entry.tc_gauss_map && entry.expect.total_curvature) {
        double tc;
        try {
            tc = total_curvature_degree(*entry.tc_gauss_map, true);
        } catch (const NotRational&) {
            tc = kInf;
        }
        const double expected = *entry.expect.total_curvature;
        out.push_back(make_check("total-curvature-degree", relative_gap(tc, expected), 1e-12,
                                 "value " + std::to_string(tc)));
        if (entry.tc_region && std::isfinite(expected)) {
            QuadOptions o;
            o.abs_tol = 1e-7;
            const double sph = total_curvature_spherical(*entry.tc_gauss_map, *entry.tc_region, o);
            out.push_back(make_check("total-curvature-spherical", std::abs(sph - expected) / std::abs(expected), 0.01,
                                     "value " + std::to_string(sph)));
        }
    }
    return out;
}

// ---------------------------------------------------------------- Plateau problem

PlateauResult catenoid_plateau(double r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw NonPositiveRadius("circle radius r must be positive");
    PlateauResult out;
    // r0 = min cosh(c)/c, attained where c tanh c = 1
    const auto stationary = find_roots_1d([](double c) { return c * std::tanh(c) - 1.0; }, 0.5, 2.0);
    if (stationary.size() != 1) throw NonConvergence("could not isolate the critical point of cosh(c)/c", 0.0);
    out.critical_c = stationary.front().x;
    out.threshold = std::cosh(out.critical_c) / out.critical_c;

    const auto g = [r](double c) { return std::cosh(c) - r * c; };
    const double gap = r - out.threshold;
    if (std::abs(gap) <= 1e-14 * out.threshold) {
        out.classification = PlateauClass::Tangent;
        out.solutions = {out.critical_c};
        return out;
    }
    if (gap < 0.0) {
        out.classification = PlateauClass::None;
        return out;
    }
    // g < 0 at the critical point, so each side of it holds exactly one root.
    double hi = 2.0 * out.critical_c;
    while (g(hi) <= 0.0) hi *= 2.0;
    RootOptions o;
    o.detect_tangency = false;
    for (auto [a, b] : {std::pair{1e-6, out.critical_c}, std::pair{out.critical_c, hi}}) {
        const auto roots = find_roots_1d(g, a, b, o);
        for (const Root& root : roots) out.solutions.push_back(root.x);
    }
    std::sort(out.solutions.begin(), out.solutions.end());
    out.classification = out.solutions.size() >= 2 ? PlateauClass::Two : PlateauClass::Tangent;
    return out;
}

std::string to_string(PlateauClass c) {
    switch (c) {
        case PlateauClass::Two: return "two";
        case PlateauClass::Tangent: return "tangent";
        case PlateauClass::None: return "none";
    }
    return "none";
}

}  // namespace minsurf
