#pragma once

#include "minsurf/weierstrass.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace minsurf {

/// One named verification: value compared against a tolerance.
struct CheckResult {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string detail;
};

struct Expectations {
    bool conformal = true;
    bool harmonic = true;
    bool minimal = true;
    /// Total curvature of the parameterized surface (a cover, for the Mobius strips); -inf for
    /// transcendental Gauss maps. Empty when not declared.
    std::optional<double> total_curvature;
    /// Total curvature of the nonorientable quotient, when the entry is a double cover.
    std::optional<double> quotient_total_curvature;
    /// |H| for non-minimal controls.
    std::optional<double> mean_curvature_norm;
};

struct CatalogEntry {
    CatalogEntry(std::string name, std::string description, SurfaceMap surface);

    std::string name;
    std::string description;
    SurfaceMap surface;                     ///< closed form with analytic partials
    std::optional<ComplexExprVec> data;     ///< f = 2 dF/dz
    std::optional<NullCurve> null_curve;
    std::optional<WeierstrassDataR3> weierstrass;
    /// Gauss map used for total curvature (the single-sheeted one for the catenoid).
    std::optional<ComplexExpr> tc_gauss_map;
    std::optional<Region> tc_region;        ///< desk-scale truncation for the spherical route
    Expectations expect;
    std::function<Complex(Complex)> involution;  ///< deck transformation of a double cover
    ParamDomain sample_region = ParamDomain::plane();
    std::vector<Complex> singular_points;   ///< kept 1e-3 away from by default samples
    std::function<double(const VecN&)> implicit_residual;
};

/// Catenoid x^2 + y^2 = cosh^2(c z) / c^2. Throws NonPositiveScale unless c > 0.
CatalogEntry make_catenoid(double c = 1.0);
CatalogEntry make_helicoid();
/// Null curve (cos z, sin z, -i z); the surface is its real part.
CatalogEntry make_helicatenoid();
CatalogEntry make_enneper();
/// Orientable double cover of the Meeks Mobius strip, on C*.
CatalogEntry make_meeks_mobius();
/// Double cover of the properly embedded Mobius strip in R^4, on C*.
CatalogEntry make_afl_mobius_r4();
/// Inverse stereographic parameterization of the unit sphere: conformal, not minimal.
CatalogEntry make_sphere();

std::vector<std::string> catalog_names();
/// Throws InvalidInput for an unknown name.
CatalogEntry catalog_lookup(const std::string& name);

/// Seeded samples in the entry's sample region, 1e-3 clear of its singular points.
std::vector<Complex> default_samples(const CatalogEntry& entry, std::size_t count = 100, std::uint64_t seed = 42);

/// Conformality, harmonicity, nullity, mean curvature, curvature sign, Gauss map, involution
/// and total-curvature checks declared by the entry.
std::vector<CheckResult> run_entry_checks(const CatalogEntry& entry, std::size_t count = 100, std::uint64_t seed = 42);

/// Integral of K dA with K from re-graphing (sum of normal-Hessian determinants).
double numerical_total_curvature(const SurfaceMap& s, const Region& region, const QuadOptions& opts = {});

enum class PlateauClass { Two, Tangent, None };

struct PlateauResult {
    std::vector<double> solutions;  ///< positive roots of cosh c = r c, ascending
    PlateauClass classification = PlateauClass::None;
    double threshold = 0.0;         ///< r0 = min cosh(c)/c
    double critical_c = 0.0;        ///< c tanh c = 1
};

/// Catenoids spanning the circles of radius r in the planes z = +-1. Throws NonPositiveRadius.
PlateauResult catenoid_plateau(double r);

std::string to_string(PlateauClass c);

}  // namespace minsurf
