#include "minsurf/surface.hpp"

#include "minsurf/errors.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace minsurf {

ParamDomain ParamDomain::rectangle(Rectangle r) {
    if (!(r.u0 < r.u1 && r.v0 < r.v1)) throw InvalidInput("rectangle domain needs u0 < u1 and v0 < v1");
    ParamDomain d;
    d.kind = Kind::Rectangle;
    d.rect = r;
    return d;
}

ParamDomain ParamDomain::disc(Complex center, double radius) {
    if (!(radius > 0.0)) throw InvalidInput("disc radius must be positive");
    ParamDomain d;
    d.kind = Kind::Disc;
    d.center = center;
    d.outer = radius;
    return d;
}

ParamDomain ParamDomain::annulus(Complex center, double inner, double outer) {
    if (!(inner > 0.0 && outer > inner)) throw InvalidInput("annulus needs 0 < inner < outer");
    ParamDomain d;
    d.kind = Kind::Annulus;
    d.center = center;
    d.inner = inner;
    d.outer = outer;
    return d;
}

ParamDomain ParamDomain::punctured_plane(std::vector<Complex> punctures) {
    ParamDomain d;
    d.kind = punctures.empty() ? Kind::Plane : Kind::PuncturedPlane;
    d.punctures = std::move(punctures);
    return d;
}

bool ParamDomain::contains(Complex z, double margin) const {
    switch (kind) {
        case Kind::Plane: return true;
        case Kind::Rectangle:
            return z.real() > rect.u0 + margin && z.real() < rect.u1 - margin && z.imag() > rect.v0 + margin &&
                   z.imag() < rect.v1 - margin;
        case Kind::Disc: return std::abs(z - center) < outer - margin;
        case Kind::Annulus: {
            const double r = std::abs(z - center);
            return r > inner + margin && r < outer - margin;
        }
        case Kind::PuncturedPlane:
            for (const Complex& p : punctures)
                if (!(std::abs(z - p) > margin) || z == p) return false;
            return true;
    }
    return false;
}

std::string ParamDomain::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Plane: os << "plane"; break;
        case Kind::Rectangle:
            os << "rectangle [" << rect.u0 << ", " << rect.u1 << "] x [" << rect.v0 << ", " << rect.v1 << "]";
            break;
        case Kind::Disc: os << "disc |z - " << center << "| < " << outer; break;
        case Kind::Annulus: os << "annulus " << inner << " < |z - " << center << "| < " << outer; break;
        case Kind::PuncturedPlane:
            os << "plane minus {";
            for (std::size_t k = 0; k < punctures.size(); ++k) os << (k ? ", " : "") << punctures[k];
            os << "}";
            break;
    }
    return os.str();
}

SurfaceMap::SurfaceMap(int dim, ParamDomain domain, Position position, JetFn jet, Provenance provenance)
    : dim_(dim), domain_(std::move(domain)), position_(std::move(position)), jet_(std::move(jet)),
      provenance_(provenance) {
    if (dim_ < 3) throw InvalidInput("surfaces must live in R^n with n >= 3");
    if (!position_) throw InvalidInput("surface needs a position evaluator");
}

SurfaceJet SurfaceMap::jet(double u, double v) const {
    if (jet_) return jet_(u, v);
    // Fourth-order stencils: first partials from +-h, +-2h; second partials by
    // Richardson extrapolation of the three-point and four-corner stencils.
    constexpr double h = 1e-3;
    const auto F = [&](double a, double b) { return position_(u + a, v + b); };
    SurfaceJet j;
    j.F = F(0, 0);
    const VecN up = F(h, 0), um = F(-h, 0), up2 = F(2 * h, 0), um2 = F(-2 * h, 0);
    const VecN vp = F(0, h), vm = F(0, -h), vp2 = F(0, 2 * h), vm2 = F(0, -2 * h);
    j.Fu = (8.0 * (up - um) - (up2 - um2)) / (12.0 * h);
    j.Fv = (8.0 * (vp - vm) - (vp2 - vm2)) / (12.0 * h);
    j.Fuu = (-up2 + 16.0 * up - 30.0 * j.F + 16.0 * um - um2) / (12.0 * h * h);
    j.Fvv = (-vp2 + 16.0 * vp - 30.0 * j.F + 16.0 * vm - vm2) / (12.0 * h * h);
    const VecN mixed1 = (F(h, h) - F(h, -h) - F(-h, h) + F(-h, -h)) / (4.0 * h * h);
    const VecN mixed2 = (F(2 * h, 2 * h) - F(2 * h, -2 * h) - F(-2 * h, 2 * h) + F(-2 * h, -2 * h)) / (16.0 * h * h);
    j.Fuv = (4.0 * mixed1 - mixed2) / 3.0;
    return j;
}

SurfaceMap SurfaceMap::with_generator(ComplexExprVec f) const {
    SurfaceMap copy = *this;
    copy.generator_ = std::make_shared<const ComplexExprVec>(std::move(f));
    return copy;
}

SurfaceMap SurfaceMap::rigid_motion(const Eigen::MatrixXd& rotation, const VecN& shift) const {
    if (rotation.rows() != dim_ || rotation.cols() != dim_ || shift.size() != dim_) {
        throw InvalidInput("rigid motion has the wrong dimension");
    }
    Position pos = [p = position_, rotation, shift](double u, double v) -> VecN { return rotation * p(u, v) + shift; };
    JetFn jet;
    if (jet_) {
        jet = [j = jet_, rotation, shift](double u, double v) {
            SurfaceJet s = j(u, v);
            s.F = rotation * s.F + shift;
            s.Fu = rotation * s.Fu;
            s.Fv = rotation * s.Fv;
            s.Fuu = rotation * s.Fuu;
            s.Fuv = rotation * s.Fuv;
            s.Fvv = rotation * s.Fvv;
            return s;
        };
    }
    SurfaceMap out(dim_, domain_, std::move(pos), std::move(jet), provenance_);
    return out;
}

SurfaceMap SurfaceMap::without_analytic_partials() const {
    SurfaceMap copy = *this;
    copy.jet_ = nullptr;
    return copy;
}

double area_element(const VecN& Fu, const VecN& Fv) {
    const double E = Fu.squaredNorm(), G = Fv.squaredNorm(), F = Fu.dot(Fv);
    return std::sqrt(std::max(0.0, E * G - F * F));
}

std::vector<Complex> sample_domain(const ParamDomain& domain, std::size_t count, std::uint64_t seed, double margin,
                                   std::span<const Complex> avoid, double extent) {
    double u0 = -extent, u1 = extent, v0 = -extent, v1 = extent;
    switch (domain.kind) {
        case ParamDomain::Kind::Rectangle:
            u0 = domain.rect.u0, u1 = domain.rect.u1, v0 = domain.rect.v0, v1 = domain.rect.v1;
            break;
        case ParamDomain::Kind::Disc:
        case ParamDomain::Kind::Annulus:
            u0 = domain.center.real() - domain.outer, u1 = domain.center.real() + domain.outer;
            v0 = domain.center.imag() - domain.outer, v1 = domain.center.imag() + domain.outer;
            break;
        default: break;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(u0, u1), V(v0, v1);
    std::vector<Complex> out;
    out.reserve(count);
    for (std::size_t attempts = 0; out.size() < count; ++attempts) {
        if (attempts > 1000 * count + 1000) throw InvalidInput("could not place samples in " + domain.describe());
        const double a = U(rng);
        const Complex z(a, V(rng));
        if (!domain.contains(z, margin)) continue;
        if (std::any_of(avoid.begin(), avoid.end(), [&](const Complex& p) { return std::abs(z - p) <= margin; })) continue;
        out.push_back(z);
    }
    return out;
}

}  // namespace minsurf
