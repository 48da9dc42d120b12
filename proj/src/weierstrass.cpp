#include "minsurf/weierstrass.hpp"

#include "minsurf/errors.hpp"
#include "minsurf/rational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>

namespace minsurf {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kImmersionTol = 1e-10;

SurfaceJet checked_jet(const SurfaceMap& s, Complex p) {
    SurfaceJet j = s.jet(p.real(), p.imag());
    if (!(area_element(j.Fu, j.Fv) > kImmersionTol)) {
        std::ostringstream os;
        os << "surface is not immersed at " << p;
        throw NotImmersed(os.str());
    }
    return j;
}

double conformality_violation(const SurfaceJet& j) {
    const double E = j.Fu.squaredNorm(), G = j.Fv.squaredNorm(), F = j.Fu.dot(j.Fv);
    return (std::abs(E - G) + std::abs(F)) / E;
}

CVecN complexify(const VecN& c) { return c.cast<Complex>(); }

double distance_to_set(Complex z, std::span<const Complex> points) {
    double d = std::numeric_limits<double>::infinity();
    for (const Complex& p : points) d = std::min(d, std::abs(z - p));
    return d;
}

Loop::Piece line(Complex a, Complex b) { return {Loop::Piece::Kind::Line, a, b}; }

Loop::Piece arc(Complex center, double radius, double theta0, double sweep) {
    Loop::Piece p{Loop::Piece::Kind::Arc, center, center};
    p.radius = radius;
    p.theta0 = theta0;
    p.sweep = sweep;
    return p;
}

// a -> radius rho about center along the ray, around by the principal angle, out to b.
std::vector<Loop::Piece> radial_angular(Complex center, Complex a, Complex b, double rho) {
    std::vector<Loop::Piece> out;
    const double ta = std::arg(a - center), tb = std::arg(b - center);
    const double sweep = std::remainder(tb - ta, 2.0 * kPi);
    const Complex a1 = center + std::polar(rho, ta), b1 = center + std::polar(rho, tb);
    if (std::abs(a1 - a) > 0.0) out.push_back(line(a, a1));
    if (sweep != 0.0) out.push_back(arc(center, rho, ta, sweep));
    if (std::abs(b - b1) > 0.0) out.push_back(line(b1, b));
    return out;
}

ComplexExprVec scaled(const ComplexExprVec& f, Complex scale) {
    if (scale == Complex(1.0, 0.0)) return f;
    std::vector<ComplexExpr> parts;
    parts.reserve(f.size());
    for (const auto& c : f.components()) parts.push_back(ComplexExpr::number(scale) * c);
    return ComplexExprVec(std::move(parts));
}

std::vector<Complex> default_samples(const ComplexExprVec& f, const ParamDomain& domain,
                                     const IntegrationOptions& opts) {
    if (!opts.samples.empty()) return opts.samples;
    return sample_domain(domain, 64, opts.seed, 1e-3, f.singularities());
}

void require_no_common_zero(const ComplexExprVec& f, std::span<const Complex> samples) {
    for (const Complex& z : samples) {
        if (f.eval(z).norm() < 1e-12) {
            std::ostringstream os;
            os << "data vanishes at " << z << ": the surface is not immersed there";
            throw CommonZero(os.str());
        }
    }
}

// Period test on every homology generator; `full` also requires the flux to vanish.
void require_periods(const ComplexExprVec& f, const ParamDomain& domain, const IntegrationOptions& opts, bool full) {
    const auto loops = homology_generators(domain, f.singularities());
    const auto result = periods(f, loops, opts.quad);
    for (std::size_t k = 0; k < result.size(); ++k) {
        const double re = result[k].real.norm(), im = result[k].flux.norm();
        const double bad = full ? std::hypot(re, im) : re;
        if (bad > opts.period_tol) {
            std::ostringstream os;
            os << (full ? "period" : "real period") << " of generator " << k << " is nonzero (|Re| = " << re
               << ", |Im| = " << im << ")";
            throw PeriodObstruction(os.str(), k, re, im);
        }
    }
}

}  // namespace

// ---------------------------------------------------------------- checks

double conformality_check(const SurfaceMap& s, std::span<const Complex> samples) {
    double worst = 0.0;
    for (const Complex& p : samples) worst = std::max(worst, conformality_violation(checked_jet(s, p)));
    return worst;
}

double harmonicity_check(const SurfaceMap& s, std::span<const Complex> samples) {
    double worst = 0.0;
    for (const Complex& p : samples) {
        const SurfaceJet j = s.jet(p.real(), p.imag());
        worst = std::max(worst, (j.Fuu + j.Fvv).norm());
    }
    return worst;
}

double laplace_orthogonality_check(const SurfaceMap& s, std::span<const Complex> samples) {
    double worst = 0.0;
    for (const Complex& p : samples) {
        const SurfaceJet j = checked_jet(s, p);
        const double c = conformality_violation(j);
        if (c > 1e-6) {
            std::ostringstream os;
            os << "map is not conformal at " << p << " (violation " << c << ")";
            throw NotConformal(os.str());
        }
        const VecN lap = j.Fuu + j.Fvv;
        const double mu = j.Fu.norm();
        worst = std::max(worst, (std::abs(lap.dot(j.Fu)) + std::abs(lap.dot(j.Fv))) / (mu * mu * mu));
    }
    return worst;
}

MeanCurvatureCheck mean_curvature_vector_check(const SurfaceMap& s, std::span<const Complex> samples) {
    MeanCurvatureCheck out;
    out.min_norm = samples.empty() ? 0.0 : std::numeric_limits<double>::infinity();
    for (const Complex& p : samples) {
        const SurfaceJet j = checked_jet(s, p);
        const double c = conformality_violation(j);
        if (c > 1e-6) {
            std::ostringstream os;
            os << "map is not conformal at " << p << " (violation " << c << ")";
            throw NotConformal(os.str());
        }
        const VecN H = regraph(s, p.real(), p.imag()).mean_curvature_vector();
        const double grad2 = j.Fu.squaredNorm() + j.Fv.squaredNorm();
        out.residual = std::max(out.residual, (j.Fuu + j.Fvv - 0.5 * grad2 * H).norm());
        out.max_norm = std::max(out.max_norm, H.norm());
        out.min_norm = std::min(out.min_norm, H.norm());
    }
    return out;
}

// ---------------------------------------------------------------- periods

std::vector<PeriodResult> periods(const ComplexExprVec& f, std::span<const Loop> loops, const QuadOptions& opts) {
    std::vector<PeriodResult> out;
    out.reserve(loops.size());
    const std::function<CVecN(Complex)> g = [&f](Complex z) { return f.eval(z); };
    for (const Loop& loop : loops) {
        PeriodResult r;
        r.period = quad_contour(g, loop, opts);
        r.real = r.period.real();
        r.flux = r.period.imag();
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<Loop> homology_generators(const ParamDomain& domain, std::span<const Complex> extra_points) {
    std::vector<Loop> out;
    std::vector<Complex> holes;
    if (domain.kind == ParamDomain::Kind::Annulus) {
        out.push_back(Loop::circle(domain.center, std::sqrt(domain.inner * domain.outer)));
    }
    if (domain.kind == ParamDomain::Kind::PuncturedPlane) holes = domain.punctures;
    for (const Complex& p : extra_points) {
        if (domain.contains(p) && std::find(holes.begin(), holes.end(), p) == holes.end()) holes.push_back(p);
    }
    for (std::size_t k = 0; k < holes.size(); ++k) {
        double radius = 0.5;
        for (std::size_t m = 0; m < holes.size(); ++m) {
            if (m != k) radius = std::min(radius, 0.4 * std::abs(holes[k] - holes[m]));
        }
        const Complex h = holes[k];
        switch (domain.kind) {
            case ParamDomain::Kind::Disc: radius = std::min(radius, 0.4 * (domain.outer - std::abs(h - domain.center))); break;
            case ParamDomain::Kind::Annulus: {
                const double r = std::abs(h - domain.center);
                radius = std::min({radius, 0.4 * (r - domain.inner), 0.4 * (domain.outer - r)});
                break;
            }
            case ParamDomain::Kind::Rectangle: {
                const auto& b = domain.rect;
                radius = std::min({radius, 0.4 * (h.real() - b.u0), 0.4 * (b.u1 - h.real()), 0.4 * (h.imag() - b.v0),
                                   0.4 * (b.v1 - h.imag())});
                break;
            }
            default: break;
        }
        out.push_back(Loop::circle(h, radius));
    }
    return out;
}

// ---------------------------------------------------------------- path integration

struct PathIntegrator::Cache {
    std::mutex mutex;
    std::map<std::pair<double, double>, CVecN> values;
};

PathIntegrator::PathIntegrator(ComplexExprVec f, ParamDomain domain, Complex z0, QuadOptions quad)
    : f_(std::move(f)), domain_(std::move(domain)), z0_(z0), quad_(quad), cache_(std::make_shared<Cache>()) {
    if (f_.size() < 3) throw InvalidInput("integrand needs at least 3 components");
    avoid_ = domain_.punctures;
    for (const Complex& p : f_.singularities()) {
        if (std::find(avoid_.begin(), avoid_.end(), p) == avoid_.end()) avoid_.push_back(p);
    }
    if (!domain_.contains(z0_) || !(distance_to_set(z0_, avoid_) > 0.0)) {
        std::ostringstream os;
        os << "base point " << z0_ << " is not in the domain " << domain_.describe() << " or hits a singularity";
        throw DomainViolation(os.str());
    }
}

std::vector<Loop::Piece> PathIntegrator::path_to(Complex z) const {
    // Smallest distance from the path to the avoided points; negative when it leaves the domain.
    const auto clearance = [&](const std::vector<Loop::Piece>& path) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& piece : path) {
            for (const Complex& p : avoid_) best = std::min(best, piece.distance_to(p));
            for (int k = 1; k < 32; ++k)
                if (!domain_.contains(piece.point(k / 32.0))) return -1.0;
        }
        return best;
    };
    const std::vector<Loop::Piece> straight{line(z0_, z)};
    const bool convex = domain_.kind == ParamDomain::Kind::Plane || domain_.kind == ParamDomain::Kind::Rectangle ||
                        domain_.kind == ParamDomain::Kind::Disc;
    if (convex && avoid_.empty()) return straight;

    std::vector<std::vector<Loop::Piece>> candidates;
    if (domain_.kind == ParamDomain::Kind::Annulus) {
        candidates.push_back(radial_angular(domain_.center, z0_, z, std::sqrt(domain_.inner * domain_.outer)));
    }
    if (convex) candidates.push_back(straight);
    for (const Complex& p : avoid_) {
        candidates.push_back(radial_angular(p, z0_, z, std::sqrt(std::abs(z0_ - p) * std::abs(z - p))));
    }
    if (!convex) candidates.push_back(straight);

    // First candidate keeping half the endpoint clearance, else the one with the most room.
    const double wanted = 0.5 * std::min(distance_to_set(z0_, avoid_), distance_to_set(z, avoid_));
    const std::vector<Loop::Piece>* best = nullptr;
    double best_clearance = 0.0;
    for (const auto& path : candidates) {
        const double c = clearance(path);
        if (c >= wanted) return path;
        if (c > best_clearance) {
            best_clearance = c;
            best = &path;
        }
    }
    if (best && best_clearance > 1e-3 * wanted) return *best;
    std::ostringstream os;
    os << "no admissible integration path from " << z0_ << " to " << z << " in " << domain_.describe();
    throw DomainViolation(os.str());
}

CVecN PathIntegrator::operator()(Complex z) const {
    const std::pair<double, double> key{z.real(), z.imag()};
    {
        std::lock_guard<std::mutex> lock(cache_->mutex);
        const auto it = cache_->values.find(key);
        if (it != cache_->values.end()) return it->second;
    }
    if (!domain_.contains(z)) {
        std::ostringstream os;
        os << "point " << z << " is outside the domain " << domain_.describe();
        throw DomainViolation(os.str());
    }
    CVecN total = CVecN::Zero(static_cast<Eigen::Index>(f_.size()));
    if (z != z0_) {
        for (const auto& piece : path_to(z)) {
            const auto integrand = [&](double s) -> CVecN { return f_.eval(piece.point(s)) * piece.derivative(s); };
            total += integrate_1d(integrand, 0.0, 1.0, quad_).value;
        }
    }
    std::lock_guard<std::mutex> lock(cache_->mutex);
    if (cache_->values.size() > 100000) cache_->values.clear();
    cache_->values.emplace(key, total);
    return total;
}

NullCurve::NullCurve(ComplexExprVec f, ParamDomain domain, Complex z0, CVecN c, const IntegrationOptions& opts)
    : c_(std::move(c)) {
    if (static_cast<std::size_t>(c_.size()) != f.size()) throw InvalidInput("base value and data differ in dimension");
    require_no_common_zero(f, default_samples(f, domain, opts));
    require_periods(f, domain, opts, true);
    integrator_ = std::make_shared<const PathIntegrator>(std::move(f), std::move(domain), z0, opts.quad);
}

SurfaceMap real_part_surface(std::function<CVecN(Complex)> Z, const ComplexExprVec& f, const ParamDomain& domain,
                             Complex scale, SurfaceMap::Provenance provenance) {
    const ComplexExprVec fs = scaled(f, scale);
    const ComplexExprVec d = fs.derivative();
    SurfaceMap::Position pos = [Z, scale](double u, double v) -> VecN { return (scale * Z(Complex(u, v))).real(); };
    SurfaceMap::JetFn jet = [Z, scale, fs, d](double u, double v) {
        const Complex z(u, v);
        const CVecN a = fs.eval(z), b = d.eval(z);
        SurfaceJet j;
        j.F = (scale * Z(z)).real();
        j.Fu = a.real();
        j.Fv = -a.imag();
        j.Fuu = b.real();
        j.Fuv = -b.imag();
        j.Fvv = -b.real();
        return j;
    };
    return SurfaceMap(static_cast<int>(f.size()), domain, std::move(pos), std::move(jet), provenance).with_generator(fs);
}

SurfaceMap integrate_minimal_surface(const ComplexExprVec& f, const ParamDomain& domain, Complex z0, const VecN& c,
                                     const IntegrationOptions& opts) {
    if (static_cast<std::size_t>(c.size()) != f.size()) throw InvalidInput("base value and data differ in dimension");
    require_no_common_zero(f, default_samples(f, domain, opts));
    require_periods(f, domain, opts, false);
    const auto integrator = std::make_shared<const PathIntegrator>(f, domain, z0, opts.quad);
    const CVecN base = complexify(c);
    return real_part_surface([integrator, base](Complex z) -> CVecN { return base + (*integrator)(z); }, f, domain,
                             1.0, SurfaceMap::Provenance::IntegratedFromWeierstrass);
}

SurfaceMap associated_family(const NullCurve& z, double t) {
    return real_part_surface([z](Complex w) { return z(w); }, z.derivative(), z.domain(), std::polar(1.0, t),
                             SurfaceMap::Provenance::IntegratedFromWeierstrass);
}

// ---------------------------------------------------------------- Weierstrass data

ComplexExprVec WeierstrassDataR3::assemble() const {
    const ComplexExpr one = ComplexExpr::number(1.0);
    const ComplexExpr half = ComplexExpr::number(0.5);
    const ComplexExpr ihalf = ComplexExpr::number(Complex(0.0, 0.5));
    return ComplexExprVec({half * (one / g - g) * phi3, ihalf * (one / g + g) * phi3, phi3});
}

void WeierstrassDataR3::validate(std::span<const Complex> samples) const {
    const ComplexExprVec f = assemble();
    std::vector<Complex> fallback;
    if (samples.empty()) {
        fallback = sample_domain(domain, 50, 42, 1e-3, f.singularities());
        samples = fallback;
    }
    for (const Complex& z : samples) {
        const CVecN value = f.eval(z);
        if (!value.allFinite()) {
            std::ostringstream os;
            os << "Weierstrass data is not finite at " << z;
            throw SingularityHit(os.str());
        }
        if (value.norm() < 1e-12) {
            std::ostringstream os;
            os << "Weierstrass data vanishes at " << z;
            throw CommonZero(os.str());
        }
    }
}

SurfaceMap WeierstrassDataR3::surface(const IntegrationOptions& opts) const {
    if (c.size() != 3) throw InvalidInput("Weierstrass data in R^3 needs a 3-vector base value");
    validate(opts.samples);
    return integrate_minimal_surface(assemble(), domain, z0, c, opts);
}

// ---------------------------------------------------------------- Gauss maps

ComplexExpr complex_gauss_map(const ComplexExprVec& f) {
    if (f.size() != 3) throw InvalidInput("the complex Gauss map needs data in C^3");
    const ComplexExpr i = ComplexExpr::number(kI);
    return f[2] / (f[0] - i * f[1]);
}

ComplexExpr complex_gauss_map(const SurfaceMap& s, std::span<const Complex> samples) {
    if (!s.generator()) throw InvalidInput("surface carries no Weierstrass data to read the Gauss map from");
    const ComplexExprVec& f = *s.generator();
    const ComplexExpr g = complex_gauss_map(f);
    for (const Complex& z : samples) {
        const CVecN v = f.eval(z);
        const Complex den = v[0] - kI * v[1];
        if (!(std::abs(den) > 1e-12 * std::max(1.0, v.norm()))) {
            std::ostringstream os;
            os << "f1 - i f2 vanishes at " << z << ": the normal points to the north pole";
            throw DegenerateDenominator(os.str());
        }
    }
    return g;
}

Complex gauss_map_value(const SurfaceMap& s, double u, double v) {
    if (s.dim() != 3) throw InvalidInput("Gauss map needs a surface in R^3");
    const SurfaceJet j = checked_jet(s, Complex(u, v));
    const CVecN f = j.Fu.cast<Complex>() - kI * j.Fv.cast<Complex>();
    const Complex den = f[0] - kI * f[1];
    if (!(std::abs(den) > 1e-12 * f.norm())) {
        std::ostringstream os;
        os << "f1 - i f2 vanishes at (" << u << ", " << v << ")";
        throw DegenerateDenominator(os.str());
    }
    return f[2] / den;
}

VecN classical_gauss_map(const SurfaceMap& s, double u, double v) {
    if (s.dim() != 3) throw InvalidInput("classical Gauss map needs a surface in R^3");
    const SurfaceJet j = checked_jet(s, Complex(u, v));
    const Eigen::Vector3d n = Eigen::Vector3d(j.Fu).cross(Eigen::Vector3d(j.Fv));
    return VecN(n.normalized());
}

Complex stereographic(const VecN& n) {
    if (n.size() != 3) throw InvalidInput("stereographic projection needs a point of S^2");
    const double den = 1.0 - n[2];
    if (!(std::abs(den) > 1e-14)) throw DegenerateDenominator("stereographic projection of the north pole");
    return Complex(n[0], n[1]) / den;
}

// ---------------------------------------------------------------- total curvature

double total_curvature_spherical(const ComplexExpr& g, const Region& region, const QuadOptions& opts) {
    const ComplexExpr dg = g.derivative();
    const auto density = [&](double u, double v) {
        const Complex z(u, v);
        const double a = std::norm(dg(z));
        const double b = 1.0 + std::norm(g(z));
        return 4.0 * a / (b * b);
    };
    return -quad_area(density, region, opts).value;
}

double total_curvature_degree(const ComplexExpr& g, bool assert_complete) {
    try {
        return -4.0 * kPi * to_rational(g).degree();
    } catch (const NotRational&) {
        if (assert_complete) return -std::numeric_limits<double>::infinity();
        throw;
    }
}

}  // namespace minsurf
