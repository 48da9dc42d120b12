#pragma once

#include "minsurf/catalog.hpp"
#include "minsurf/minimal_graph.hpp"

#include "json.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace minsurf {

using Json = nlohmann::ordered_json;

/// Whole file as bytes. Throws IoError.
std::string read_file(const std::string& path);
/// Throws IoError.
void write_file(const std::string& path, const std::string& contents);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);
/// "fnv1a64:" followed by 16 lowercase hex digits.
std::string input_hash(std::string_view bytes);

/// Parses JSON text; syntax errors become InvalidInput with the byte offset.
Json parse_json(const std::string& text, const std::string& source);

// ---------------------------------------------------------------- graph problems
//
// {"grid": {"origin": [x0, y0], "spacing": h, "dims": [nx, ny]},
//  "mask": [[value, count], ...]      row-major runs, x fastest, value 0 or 1 (interior)
//  "boundary": [[ix, iy, f], ...]     one entry per boundary node
//  "solver": {"tol": 1e-9, "max_iter": 50}}

GraphProblem graph_problem_from_json(const Json& j);
Json graph_problem_to_json(const GraphProblem& p);
/// Header "x,y,f" then one row per interior or boundary node, row-major.
std::string solution_csv(const ScalarGrid& f);

// ---------------------------------------------------------------- surface specs
//
// {"kind": "null-data", "components": ["...", ...]} or
// {"kind": "weierstrass-r3", "g": "...", "phi3": "..."},
// plus "domain", "base_point": [re, im], "base_value": [x1, ...], "singularities": [[re, im], ...].
// Domains: {"kind": "plane"}, {"kind": "disc", "center", "radius"},
// {"kind": "rectangle", "u": [u0, u1], "v": [v0, v1]},
// {"kind": "annulus", "r": R} for 1/R < |z| < R, or {"kind": "annulus", "inner", "outer", "center"},
// {"kind": "punctured-plane", "punctures": [[re, im], ...]}.

struct SurfaceSpec {
    std::string name = "surface";
    std::string kind;
    ComplexExprVec data;                        ///< f = 2 dF/dz
    std::optional<WeierstrassDataR3> weierstrass;
    ParamDomain domain;
    Complex base_point{0.0, 0.0};
    VecN base_value;
    std::vector<Complex> singularities;
};

ParamDomain domain_from_json(const Json& j);
Json domain_to_json(const ParamDomain& d);
SurfaceSpec surface_spec_from_json(const Json& j);
/// F = c + Re of the integral of f from the base point.
SurfaceMap build_surface(const SurfaceSpec& spec, const IntegrationOptions& opts = {});
/// Entry wrapper so the catalog check suite applies to user surfaces.
CatalogEntry spec_entry(const SurfaceSpec& spec, const SurfaceMap& surface);
/// Region for the spherical total-curvature route: the annulus itself, or |z| in [0.01, 100]
/// about the origin for punctured and unbounded domains.
Region default_tc_region(const ParamDomain& d);

// ---------------------------------------------------------------- reports

struct RunReport {
    std::string tool = "minsurf";
    std::string version;
    std::vector<std::string> command;
    std::string input;
    std::string input_hash;
    std::uint64_t seed = 42;
    std::vector<CheckResult> checks;
    Json results = Json::object();
    std::vector<std::string> warnings;
    std::vector<std::pair<std::string, double>> timings;
    int exit_code = 0;
    std::optional<Json> error;

    bool all_passed() const;
    /// Key order is fixed; timings appear only when requested.
    Json to_json(bool with_timings) const;
    std::string to_text(bool with_timings) const;
};

/// Finite doubles as numbers, infinities and NaN as the strings "inf", "-inf", "nan".
Json number_json(double x);
Json complex_json(Complex z);
Json vector_json(const VecN& v);
Json complex_vector_json(const CVecN& v);

}  // namespace minsurf
