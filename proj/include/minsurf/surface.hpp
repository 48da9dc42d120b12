#pragma once

#include "minsurf/expr.hpp"
#include "minsurf/numeric.hpp"
#include "minsurf/quadrature.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace minsurf {

/// Parameter domain of an immersion, as a subset of C = R^2.
struct ParamDomain {
    enum class Kind { Plane, Rectangle, Disc, Annulus, PuncturedPlane };

    Kind kind = Kind::Plane;
    Rectangle rect{0.0, 1.0, 0.0, 1.0};
    Complex center{0.0, 0.0};  ///< Disc and Annulus
    double inner = 0.0;        ///< Annulus inner radius
    double outer = 1.0;        ///< Disc radius or Annulus outer radius
    std::vector<Complex> punctures;

    static ParamDomain plane() { return {}; }
    static ParamDomain rectangle(Rectangle r);
    static ParamDomain disc(Complex center, double radius);
    static ParamDomain annulus(Complex center, double inner, double outer);
    static ParamDomain punctured_plane(std::vector<Complex> punctures);

    /// True when z lies in the open domain at least `margin` away from its boundary and punctures.
    bool contains(Complex z, double margin = 0.0) const;
    bool simply_connected() const { return kind == Kind::Plane || kind == Kind::Rectangle || kind == Kind::Disc; }
    std::string describe() const;
};

/// Position and partials at one parameter point.
struct SurfaceJet {
    VecN F, Fu, Fv, Fuu, Fuv, Fvv;
};

/// Parametric immersion D -> R^n with optional closed-form partials. Without them,
/// partials come from fourth-order central differences with parameter step 1e-3.
class SurfaceMap {
public:
    enum class Provenance { ClosedForm, IntegratedFromWeierstrass, Grid };
    using Position = std::function<VecN(double, double)>;
    using JetFn = std::function<SurfaceJet(double, double)>;

    SurfaceMap(int dim, ParamDomain domain, Position position, JetFn jet = nullptr,
               Provenance provenance = Provenance::ClosedForm);

    int dim() const { return dim_; }
    const ParamDomain& domain() const { return domain_; }
    Provenance provenance() const { return provenance_; }
    bool has_analytic_partials() const { return static_cast<bool>(jet_); }

    VecN operator()(double u, double v) const { return position_(u, v); }
    /// Position with first and second partials.
    SurfaceJet jet(double u, double v) const;

    /// The holomorphic data f = 2 dF/dz this map was integrated from, when known.
    const std::shared_ptr<const ComplexExprVec>& generator() const { return generator_; }
    SurfaceMap with_generator(ComplexExprVec f) const;

    /// x -> rotation * x + shift applied to the image.
    SurfaceMap rigid_motion(const Eigen::MatrixXd& rotation, const VecN& shift) const;
    /// Same map with numerical partials only.
    SurfaceMap without_analytic_partials() const;

private:
    int dim_;
    ParamDomain domain_;
    Position position_;
    JetFn jet_;
    Provenance provenance_;
    std::shared_ptr<const ComplexExprVec> generator_;
};

/// sqrt(|Fu|^2 |Fv|^2 - (Fu.Fv)^2), the area element.
double area_element(const VecN& Fu, const VecN& Fv);

/// Deterministic pseudo-random parameter points in the domain, at least `margin` from
/// its boundary, its punctures and the extra `avoid` points. Unbounded domains are
/// sampled in the box of half-width `extent` around the origin.
std::vector<Complex> sample_domain(const ParamDomain& domain, std::size_t count, std::uint64_t seed, double margin,
                                   std::span<const Complex> avoid = {}, double extent = 2.0);

}  // namespace minsurf
