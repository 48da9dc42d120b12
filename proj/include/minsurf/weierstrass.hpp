#pragma once

#include "minsurf/curvature.hpp"
#include "minsurf/expr.hpp"
#include "minsurf/quadrature.hpp"
#include "minsurf/surface.hpp"

#include <memory>
#include <span>
#include <vector>

namespace minsurf {

// Convention: a conformal minimal immersion is F = c + Re(integral of f dz) with
// f = Fu - i Fv = 2 dF/dz holomorphic and null.

// ---------------------------------------------------------------- pointwise checks
// Samples are parameter points u + i v.

/// max (| |Fu|^2 - |Fv|^2 | + |Fu.Fv|) / |Fu|^2. Throws NotImmersed at a degenerate sample.
double conformality_check(const SurfaceMap& s, std::span<const Complex> samples);
/// max |Fuu + Fvv|.
double harmonicity_check(const SurfaceMap& s, std::span<const Complex> samples);
/// max (|dF.Fu| + |dF.Fv|) / |Fu|^3 with dF the Laplacian; throws NotConformal when the
/// conformality violation at a sample exceeds 1e-6.
double laplace_orthogonality_check(const SurfaceMap& s, std::span<const Complex> samples);

struct MeanCurvatureCheck {
    double residual = 0.0;  ///< max |Laplacian F - (1/2)|grad F|^2 H|
    double max_norm = 0.0;  ///< max |H|
    double min_norm = 0.0;  ///< min |H|
};
/// Mean curvature vector from re-graphing against the Laplacian identity for conformal maps.
/// Throws NotImmersed, NotConformal.
MeanCurvatureCheck mean_curvature_vector_check(const SurfaceMap& s, std::span<const Complex> samples);

// ---------------------------------------------------------------- periods and flux

struct PeriodResult {
    CVecN period;  ///< contour integral of f dz
    VecN real;     ///< Re period; must vanish for F = Re(integral f) to be well defined
    VecN flux;     ///< Im period
};

std::vector<PeriodResult> periods(const ComplexExprVec& f, std::span<const Loop> loops, const QuadOptions& opts = {});

/// One counterclockwise circle per hole: the middle circle of an annulus; small circles about
/// punctures and about any extra singular points that lie in the domain.
std::vector<Loop> homology_generators(const ParamDomain& domain, std::span<const Complex> extra_points = {});

// ---------------------------------------------------------------- integration

struct IntegrationOptions {
    double period_tol = 1e-9;
    QuadOptions quad{1e-12, 1e-13, 2, 22};
    std::vector<Complex> samples;  ///< where to check for a common zero; empty = 64 seeded samples
    std::uint64_t seed = 42;
};

/// Integrates f from z0 along a canonical path: a straight segment in convex domains,
/// radial then angular then radial elsewhere. Values are memoized per evaluation point.
class PathIntegrator {
public:
    PathIntegrator(ComplexExprVec f, ParamDomain domain, Complex z0, QuadOptions quad);
    /// Integral of f from z0 to z.
    CVecN operator()(Complex z) const;
    const ComplexExprVec& integrand() const { return f_; }
    const ParamDomain& domain() const { return domain_; }
    Complex base_point() const { return z0_; }
    /// Points every path keeps clear of: domain punctures and declared singularities.
    const std::vector<Complex>& avoided() const { return avoid_; }

    struct Cache;

private:
    std::vector<Loop::Piece> path_to(Complex z) const;

    ComplexExprVec f_;
    ParamDomain domain_;
    Complex z0_;
    QuadOptions quad_;
    std::vector<Complex> avoid_;
    std::shared_ptr<Cache> cache_;
};

/// Holomorphic null curve Z = c + integral of f.
class NullCurve {
public:
    /// Throws PeriodObstruction when a full period is nonzero and CommonZero when f vanishes at a sample.
    NullCurve(ComplexExprVec f, ParamDomain domain, Complex z0, CVecN c, const IntegrationOptions& opts = {});

    CVecN operator()(Complex z) const { return c_ + (*integrator_)(z); }
    const ComplexExprVec& derivative() const { return integrator_->integrand(); }
    const ParamDomain& domain() const { return integrator_->domain(); }
    Complex base_point() const { return integrator_->base_point(); }
    const CVecN& base_value() const { return c_; }
    std::size_t dim() const { return static_cast<std::size_t>(c_.size()); }

private:
    std::shared_ptr<const PathIntegrator> integrator_;
    CVecN c_;
};

/// F = c + Re(integral of f dz) with analytic partials from f and f'. Throws PeriodObstruction
/// when a real period is nonzero and CommonZero when f vanishes at a sample.
SurfaceMap integrate_minimal_surface(const ComplexExprVec& f, const ParamDomain& domain, Complex z0, const VecN& c,
                                     const IntegrationOptions& opts = {});

/// X^t = Re(e^{it} Z); t = pi/2 gives the conjugate surface -Im Z.
SurfaceMap associated_family(const NullCurve& z, double t);

/// Jet of Re(scale * Z) given Z and its derivative data.
SurfaceMap real_part_surface(std::function<CVecN(Complex)> Z, const ComplexExprVec& f, const ParamDomain& domain,
                             Complex scale, SurfaceMap::Provenance provenance);

// ---------------------------------------------------------------- Weierstrass data in R^3

struct WeierstrassDataR3 {
    ComplexExpr g = ComplexExpr::variable();      ///< complex Gauss map
    ComplexExpr phi3 = ComplexExpr::number(1.0);  ///< coefficient of dX3
    ParamDomain domain;
    Complex z0{0.0, 0.0};
    VecN c = VecN::Zero(3);

    /// (1/2 (1/g - g), i/2 (1/g + g), 1) * phi3.
    ComplexExprVec assemble() const;
    /// Throws CommonZero or SingularityHit unless the assembled data is finite and nonzero at every sample.
    void validate(std::span<const Complex> samples) const;
    SurfaceMap surface(const IntegrationOptions& opts = {}) const;
};

// ---------------------------------------------------------------- Gauss maps

/// f3 / (f1 - i f2) as an expression.
ComplexExpr complex_gauss_map(const ComplexExprVec& f);
/// Gauss map of a surface integrated from data; throws InvalidInput without generating data and
/// DegenerateDenominator where f1 - i f2 vanishes at a sample.
ComplexExpr complex_gauss_map(const SurfaceMap& s, std::span<const Complex> samples = {});
/// Gauss map value from the partials, f = Fu - i Fv.
Complex gauss_map_value(const SurfaceMap& s, double u, double v);
/// Fu x Fv / |Fu x Fv|; throws NotImmersed.
VecN classical_gauss_map(const SurfaceMap& s, double u, double v);
/// Stereographic projection from the north pole (0, 0, 1): (x + i y) / (1 - z).
Complex stereographic(const VecN& n);

// ---------------------------------------------------------------- total curvature

/// -(integral of 4|g'|^2 / (1 + |g|^2)^2) over the parameter region.
double total_curvature_spherical(const ComplexExpr& g, const Region& region, const QuadOptions& opts = {});
/// -4 pi deg(g) for rational g. A transcendental g throws NotRational, or gives -infinity
/// when the caller asserts the surface is complete.
double total_curvature_degree(const ComplexExpr& g, bool assert_complete = false);

}  // namespace minsurf
