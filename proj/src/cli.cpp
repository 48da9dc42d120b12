#include "minsurf/cli.hpp"

#include "minsurf/catalog.hpp"
#include "minsurf/errors.hpp"
#include "minsurf/io.hpp"
#include "minsurf/mesh.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

namespace minsurf {

namespace {

struct Context {
    RunReport report;
    bool json = false;
    bool timings = false;
    std::string report_path;
    std::ostream* err = nullptr;
};

/// A catalog entry ("catalog:name") or a surface spec file.
struct Target {
    std::optional<CatalogEntry> entry;
    std::optional<SurfaceSpec> spec;
};

Target load_target(const std::string& t, RunReport& r) {
    r.input = t;
    Target out;
    if (t.rfind("catalog:", 0) == 0) {
        r.input_hash = input_hash(t);
        out.entry = catalog_lookup(t.substr(8));
        return out;
    }
    const std::string text = read_file(t);
    r.input_hash = input_hash(text);
    out.spec = surface_spec_from_json(parse_json(text, t));
    return out;
}

class Timer {
public:
    Timer(RunReport& r, std::string name) : r_(r), name_(std::move(name)), t0_(std::chrono::steady_clock::now()) {}
    ~Timer() {
        r_.timings.emplace_back(name_,
                                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count());
    }

private:
    RunReport& r_;
    std::string name_;
    std::chrono::steady_clock::time_point t0_;
};

CheckResult check(std::string name, double value, double tol, std::string detail = {}) {
    return {std::move(name), value, tol, value <= tol, std::move(detail)};
}

std::string error_type(const std::exception& e) {
    // most derived first
    if (dynamic_cast<const NonPositiveScale*>(&e)) return "NonPositiveScale";
    if (dynamic_cast<const NonPositiveRadius*>(&e)) return "NonPositiveRadius";
    if (dynamic_cast<const DomainViolation*>(&e)) return "DomainViolation";
    if (dynamic_cast<const MaskNotConnected*>(&e)) return "MaskNotConnected";
    if (dynamic_cast<const BracketInvalid*>(&e)) return "BracketInvalid";
    if (dynamic_cast<const InvalidInput*>(&e)) return "InvalidInput";
    if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
    if (dynamic_cast<const IoError*>(&e)) return "IoError";
    if (dynamic_cast<const NonConvergence*>(&e)) return "NonConvergence";
    if (dynamic_cast<const SingularityHit*>(&e)) return "SingularityHit";
    if (dynamic_cast<const GradientNotZero*>(&e)) return "GradientNotZero";
    if (dynamic_cast<const NotImmersed*>(&e)) return "NotImmersed";
    if (dynamic_cast<const NotConformal*>(&e)) return "NotConformal";
    if (dynamic_cast<const PeriodObstruction*>(&e)) return "PeriodObstruction";
    if (dynamic_cast<const CommonZero*>(&e)) return "CommonZero";
    if (dynamic_cast<const DegenerateDenominator*>(&e)) return "DegenerateDenominator";
    if (dynamic_cast<const NotRational*>(&e)) return "NotRational";
    if (dynamic_cast<const Error*>(&e)) return "Error";
    return "InternalError";
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const InvalidInput*>(&e) || dynamic_cast<const ParseError*>(&e) ||
        dynamic_cast<const IoError*>(&e))
        return kExitInputError;
    return kExitCheckFailure;
}

Json error_json(const std::exception& e) {
    Json j{{"type", error_type(e)}, {"message", e.what()}};
    if (const auto* p = dynamic_cast<const ParseError*>(&e)) {
        j["line"] = p->line();
        j["column"] = p->column();
        j["expected"] = p->expected();
    } else if (const auto* p = dynamic_cast<const PeriodObstruction*>(&e)) {
        j["generator"] = p->generator();
        j["real_magnitude"] = number_json(p->real_magnitude());
        j["imag_magnitude"] = number_json(p->imag_magnitude());
    } else if (const auto* p = dynamic_cast<const NonConvergence*>(&e)) {
        j["last_value"] = number_json(p->last_value());
    }
    return j;
}

Rectangle parse_rect(const std::string& s) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw InvalidInput("--rect expects u0,u1,v0,v1 but got '" + s + "'");
        }
    }
    if (v.size() != 4) throw InvalidInput("--rect expects u0,u1,v0,v1 but got '" + s + "'");
    return {v[0], v[1], v[2], v[3]};
}

std::pair<std::size_t, std::size_t> parse_res(const std::string& s) {
    const auto x = s.find_first_of("xX");
    try {
        if (x == std::string::npos) throw std::invalid_argument(s);
        std::size_t a = 0, b = 0;
        const long nu = std::stol(s.substr(0, x), &a), nv = std::stol(s.substr(x + 1), &b);
        if (a != x || b != s.size() - x - 1 || nu < 0 || nv < 0) throw std::invalid_argument(s);
        return {static_cast<std::size_t>(nu), static_cast<std::size_t>(nv)};
    } catch (const std::invalid_argument&) {
        throw InvalidInput("--res expects NUxNV but got '" + s + "'");
    } catch (const std::out_of_range&) {
        throw InvalidInput("--res value out of range: '" + s + "'");
    }
}

Rectangle default_mesh_rect(const Target& t) {
    if (t.entry) {
        const std::string& n = t.entry->name;
        if (n == "catenoid" || n == "helicatenoid") return {0.0, 2 * kPi, -1.0, 1.0};
        if (n == "helicoid") return {-kPi, kPi, -1.0, 1.0};
        if (n == "enneper") return {-1.0, 1.0, -1.0, 1.0};
        if (n == "sphere") return {-2.0, 2.0, -2.0, 2.0};
        return {0.25, 2.0, -1.0, 1.0};
    }
    const ParamDomain& d = t.spec->domain;
    switch (d.kind) {
        case ParamDomain::Kind::Plane: return {-1.0, 1.0, -1.0, 1.0};
        case ParamDomain::Kind::Rectangle: return d.rect;
        case ParamDomain::Kind::Disc: {
            const double h = d.outer / std::sqrt(2.0) * (1 - 1e-9);
            return {d.center.real() - h, d.center.real() + h, d.center.imag() - h, d.center.imag() + h};
        }
        default: throw InvalidInput("mesh over " + d.describe() + " needs --rect u0,u1,v0,v1");
    }
}

Json loop_json(const Loop& l) {
    const auto& p = l.pieces();
    if (p.size() == 1 && p.front().kind == Loop::Piece::Kind::Arc)
        return {{"center", complex_json(p.front().start)}, {"radius", p.front().radius}};
    return {{"base_point", complex_json(l.base_point())}, {"pieces", p.size()}};
}

// ---------------------------------------------------------------- subcommands

struct SolveArgs {
    std::string problem;
    std::string csv = "solution.csv";
};

void cmd_solve_graph(Context& c, const SolveArgs& a) {
    RunReport& r = c.report;
    r.input = a.problem;
    const std::string text = read_file(a.problem);
    r.input_hash = input_hash(text);
    const GraphProblem p = graph_problem_from_json(parse_json(text, a.problem));
    r.results["nodes"] = {p.grid.cols(), p.grid.rows()};
    r.results["interior_nodes"] = p.grid.interior_count();
    r.results["spacing"] = p.grid.spacing();
    if (!mask_is_row_column_convex(p.grid)) r.warnings.push_back("mask is not row/column convex");
    GraphSolution s;
    {
        Timer t(r, "solve");
        s = solve_minimal_graph(p);
    }
    const SolveReport& rep = s.report;
    r.results["converged"] = rep.converged;
    r.results["iterations"] = rep.iterations;
    r.results["residual"] = number_json(rep.residual);
    r.results["mge_residual"] = number_json(rep.mge_residual);
    r.results["area"] = number_json(area_graph(s.f));
    r.results["csv"] = a.csv;
    for (const std::string& w : rep.warnings) r.warnings.push_back(w);
    r.checks.push_back(check("solver-residual", rep.residual, p.solver.tol, "scaled discrete area gradient"));
    write_file(a.csv, solution_csv(s.f));
}

struct CheckArgs {
    std::string target;
    std::size_t samples = 100;
};

void cmd_check(Context& c, const CheckArgs& a) {
    RunReport& r = c.report;
    Target t = load_target(a.target, r);
    if (t.spec) {
        IntegrationOptions o;
        o.seed = r.seed;
        SurfaceMap s = [&] {
            Timer tm(r, "integrate");
            return build_surface(*t.spec, o);
        }();
        t.entry = spec_entry(*t.spec, s);
    }
    r.results["surface"] = t.entry->name;
    r.results["dim"] = t.entry->surface.dim();
    r.results["domain"] = t.entry->sample_region.describe();
    r.results["samples"] = a.samples;
    Timer tm(r, "checks");
    r.checks = run_entry_checks(*t.entry, a.samples, r.seed);
}

struct PeriodArgs {
    std::string target;
    std::vector<std::string> circles;
};

void cmd_periods(Context& c, const PeriodArgs& a) {
    RunReport& r = c.report;
    const Target t = load_target(a.target, r);
    ComplexExprVec f;
    ParamDomain domain;
    std::vector<Complex> extra;
    if (t.spec) {
        f = t.spec->data;
        domain = t.spec->domain;
        extra = t.spec->singularities;
    } else {
        if (!t.entry->data) throw InvalidInput(t.entry->name + " has no holomorphic data");
        f = *t.entry->data;
        domain = t.entry->surface.domain();
    }
    for (const Complex& z : f.singularities()) extra.push_back(z);
    std::vector<Loop> loops = homology_generators(domain, extra);
    for (const std::string& s : a.circles) {
        std::vector<double> v;
        std::stringstream ss(s);
        std::string tok;
        try {
            while (std::getline(ss, tok, ',')) v.push_back(std::stod(tok));
        } catch (const std::exception&) {
            v.clear();
        }
        if (v.size() != 3 || !(v[2] > 0)) throw InvalidInput("--circle expects cx,cy,r but got '" + s + "'");
        loops.push_back(Loop::circle({v[0], v[1]}, v[2]));
    }
    std::vector<PeriodResult> res;
    {
        Timer tm(r, "periods");
        res = periods(f, loops);
    }
    Json table = Json::array();
    for (std::size_t k = 0; k < res.size(); ++k) {
        Json row = loop_json(loops[k]);
        row["period"] = complex_vector_json(res[k].period);
        row["real"] = vector_json(res[k].real);
        row["flux"] = vector_json(res[k].flux);
        table.push_back(row);
        r.checks.push_back(check("real-period[" + std::to_string(k) + "]", res[k].real.norm(), 1e-10,
                                 "|Re of the period| must vanish"));
    }
    r.results["domain"] = domain.describe();
    r.results["loops"] = table;
    if (loops.empty()) r.results["note"] = "domain is simply connected and f has no singular points in it";
}

struct CurvatureArgs {
    std::string target;
    std::string method = "degree";
    std::optional<double> inner, outer;
    bool complete = false;
};

void cmd_total_curvature(Context& c, const CurvatureArgs& a) {
    RunReport& r = c.report;
    const Target t = load_target(a.target, r);
    ComplexExpr g = ComplexExpr::variable();
    Region region = Annulus{};
    std::optional<double> expected;
    bool complete = a.complete;
    if (t.entry) {
        if (!t.entry->tc_gauss_map) throw InvalidInput(t.entry->name + " has no complex Gauss map");
        g = *t.entry->tc_gauss_map;
        if (t.entry->tc_region) region = *t.entry->tc_region;
        else region = Annulus{0.0, 0.0, 100.0};
        expected = t.entry->expect.total_curvature;
        complete = true;
        if (t.entry->expect.quotient_total_curvature)
            r.results["quotient_total_curvature"] = number_json(*t.entry->expect.quotient_total_curvature);
    } else {
        if (t.spec->weierstrass) g = t.spec->weierstrass->g;
        else if (t.spec->data.size() == 3) g = complex_gauss_map(t.spec->data);
        else throw InvalidInput("total curvature needs a surface in R^3");
        region = default_tc_region(t.spec->domain);
    }
    if (a.inner || a.outer) {
        Annulus* an = std::get_if<Annulus>(&region);
        if (!an) throw InvalidInput("--inner/--outer apply to annular regions only");
        if (a.inner) an->inner = *a.inner;
        if (a.outer) an->outer = *a.outer;
        if (!(an->inner >= 0) || !(an->outer > an->inner)) throw InvalidInput("need 0 <= inner < outer");
    }
    r.results["gauss_map"] = g.str();
    r.results["method"] = a.method;
    double tc = 0.0;
    Timer tm(r, "total-curvature");
    if (a.method == "degree") {
        tc = total_curvature_degree(g, complete);
        if (std::isfinite(tc)) r.results["degree"] = static_cast<long>(std::lround(tc / (-4 * kPi)));
    } else {
        if (const auto* an = std::get_if<Annulus>(&region)) {
            r.results["region"] = {{"center", complex_json(an->center)}, {"inner", an->inner}, {"outer", an->outer}};
        } else {
            const auto& re = std::get<Rectangle>(region);
            r.results["region"] = {{"u", {re.u0, re.u1}}, {"v", {re.v0, re.v1}}};
        }
        QuadOptions o;
        o.abs_tol = 1e-7;
        tc = total_curvature_spherical(g, region, o);
    }
    r.results["total_curvature"] = number_json(tc);
    r.results["over_minus_4pi"] = number_json(tc / (-4 * kPi));
    if (expected) {
        r.results["expected"] = number_json(*expected);
        if (a.method == "degree") {
            const double gap = tc == *expected ? 0.0 : std::abs(tc - *expected) / std::abs(*expected);
            r.checks.push_back(check("total-curvature-degree", std::isnan(gap) ? 1.0 : gap, 1e-12, "relative gap"));
        } else if (std::isfinite(*expected)) {
            r.checks.push_back(
                check("total-curvature-spherical", std::abs(tc - *expected) / std::abs(*expected), 0.01, "relative gap"));
        }
    }
}

struct MeshArgs {
    std::string target;
    std::string res = "64x64";
    std::string output;
    std::string rect;
    std::string project;
};

void cmd_mesh(Context& c, const MeshArgs& a) {
    RunReport& r = c.report;
    Target t = load_target(a.target, r);
    const auto [nu, nv] = parse_res(a.res);
    const Rectangle rect = a.rect.empty() ? default_mesh_rect(t) : parse_rect(a.rect);
    std::optional<SurfaceMap> s;
    if (t.entry) s = t.entry->surface;
    else {
        IntegrationOptions o;
        o.seed = r.seed;
        s = build_surface(*t.spec, o);
    }
    Projection proj = Projection::XYZ;
    if (!a.project.empty()) proj = parse_projection(a.project);
    if (s->dim() == 4 && a.project.empty()) {
        r.warnings.push_back("R^4 surface projected onto xyz; pass --project to choose the coordinate 3-plane");
        if (c.err) *c.err << "warning: " << r.warnings.back() << '\n';
    }
    Mesh m;
    {
        Timer tm(r, "mesh");
        m = sample_mesh(*s, nu, nv, rect, proj);
    }
    export_obj(m, a.output);
    r.results["output"] = a.output;
    r.results["resolution"] = {nu, nv};
    r.results["rect"] = {rect.u0, rect.u1, rect.v0, rect.v1};
    r.results["projection"] = s->dim() == 4 ? to_string(proj) : "none";
    r.results["vertices"] = m.vertices.size();
    r.results["triangles"] = m.triangles.size();
}

void cmd_plateau(Context& c, double radius) {
    RunReport& r = c.report;
    r.input_hash = input_hash("");
    const PlateauResult p = catenoid_plateau(radius);
    r.results["radius"] = radius;
    Json sols = Json::array();
    double worst = 0.0;
    for (double x : p.solutions) {
        sols.push_back(x);
        worst = std::max(worst, std::abs(std::cosh(x) - radius * x) / (radius * x));
    }
    r.results["solutions"] = sols;
    r.results["classification"] = to_string(p.classification);
    r.results["threshold"] = p.threshold;
    r.results["critical_c"] = p.critical_c;
    if (!p.solutions.empty())
        r.checks.push_back(check("root-residual", worst, 1e-12, "max |cosh c - r c| / (r c)"));
}

void cmd_catalog_list(Context& c) {
    RunReport& r = c.report;
    r.input_hash = input_hash("");
    Json list = Json::array();
    for (const std::string& n : catalog_names()) {
        const CatalogEntry e = catalog_lookup(n);
        list.push_back({{"name", e.name}, {"dim", e.surface.dim()}, {"description", e.description}});
    }
    r.results["entries"] = list;
}

void cmd_catalog_info(Context& c, const std::string& name) {
    RunReport& r = c.report;
    r.input = "catalog:" + name;
    r.input_hash = input_hash(r.input);
    const CatalogEntry e = catalog_lookup(name);
    r.results["name"] = e.name;
    r.results["description"] = e.description;
    r.results["dim"] = e.surface.dim();
    r.results["domain"] = domain_to_json(e.surface.domain());
    if (e.data) {
        Json comps = Json::array();
        for (std::size_t k = 0; k < e.data->size(); ++k) comps.push_back((*e.data)[k].str());
        r.results["data"] = comps;
    }
    if (e.weierstrass)
        r.results["weierstrass"] = {{"g", e.weierstrass->g.str()},
                                    {"phi3", e.weierstrass->phi3.str()},
                                    {"domain", domain_to_json(e.weierstrass->domain)},
                                    {"base_point", complex_json(e.weierstrass->z0)},
                                    {"base_value", vector_json(e.weierstrass->c)}};
    if (e.tc_gauss_map) r.results["gauss_map"] = e.tc_gauss_map->str();
    Json ex = {{"conformal", e.expect.conformal}, {"harmonic", e.expect.harmonic}, {"minimal", e.expect.minimal}};
    if (e.expect.total_curvature) ex["total_curvature"] = number_json(*e.expect.total_curvature);
    if (e.expect.quotient_total_curvature) ex["quotient_total_curvature"] = number_json(*e.expect.quotient_total_curvature);
    if (e.expect.mean_curvature_norm) ex["mean_curvature_norm"] = number_json(*e.expect.mean_curvature_norm);
    r.results["expectations"] = ex;
    r.results["double_cover"] = static_cast<bool>(e.involution);
}

void emit(const Context& c, std::ostream& out) {
    if (c.json) out << c.report.to_json(c.timings).dump(2) << '\n';
    else out << c.report.to_text(c.timings);
    if (!c.report_path.empty()) write_file(c.report_path, c.report.to_json(c.timings).dump(2) + "\n");
}

}  // namespace

int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    Context c;
    c.err = &err;
    c.report.version = kVersion;
    c.report.command = argv;
    if (!c.report.command.empty()) c.report.command[0] = "minsurf";

    CLI::App app{"Minimal surface toolkit: graph solver, Weierstrass data, curvature checks, meshes", "minsurf"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", c.json, "Print the report as JSON");
    app.add_flag("--timings", c.timings, "Include wall-clock timings in the report");
    app.add_option("--seed", c.report.seed, "Seed for sampled checks")->capture_default_str();
    app.add_option("--report", c.report_path, "Also write the JSON report to this file");
    app.set_version_flag("--version", kVersion);

    std::function<void()> action;

    SolveArgs solve;
    auto* s1 = app.add_subcommand("solve-graph", "Solve the minimal graph equation; write CSV and a report");
    s1->add_option("problem", solve.problem, "Problem JSON")->required();
    s1->add_option("-o,--output", solve.csv, "CSV output path")->capture_default_str();
    s1->callback([&] { action = [&] { cmd_solve_graph(c, solve); }; });

    CheckArgs chk;
    auto* s2 = app.add_subcommand("check", "Conformality, harmonicity, nullity and mean curvature checks");
    s2->add_option("target", chk.target, "Surface JSON or catalog:<name>")->required();
    s2->add_option("--samples", chk.samples, "Number of sample points")->capture_default_str()->check(CLI::PositiveNumber);
    s2->callback([&] { action = [&] { cmd_check(c, chk); }; });

    PeriodArgs per;
    auto* s3 = app.add_subcommand("periods", "Period and flux of the data around each homology generator");
    s3->add_option("target", per.target, "Surface JSON or catalog:<name>")->required();
    s3->add_option("--circle", per.circles, "Extra loop cx,cy,r (repeatable)");
    s3->callback([&] { action = [&] { cmd_periods(c, per); }; });

    CurvatureArgs tc;
    auto* s4 = app.add_subcommand("total-curvature", "Total curvature from the complex Gauss map");
    s4->add_option("target", tc.target, "Surface JSON or catalog:<name>")->required();
    s4->add_option("--method", tc.method, "degree or spherical")
        ->capture_default_str()
        ->check(CLI::IsMember({"degree", "spherical"}));
    s4->add_option("--inner", tc.inner, "Inner radius of the spherical-route annulus");
    s4->add_option("--outer", tc.outer, "Outer radius of the spherical-route annulus");
    s4->add_flag("--complete", tc.complete, "Assert completeness: a transcendental Gauss map gives -inf");
    s4->callback([&] { action = [&] { cmd_total_curvature(c, tc); }; });

    MeshArgs mesh;
    auto* s5 = app.add_subcommand("mesh", "Triangulate a parameter rectangle and write OBJ");
    s5->add_option("target", mesh.target, "Surface JSON or catalog:<name>")->required();
    s5->add_option("--res", mesh.res, "Grid resolution NUxNV")->capture_default_str();
    s5->add_option("-o,--output", mesh.output, "OBJ output path")->required();
    s5->add_option("--rect", mesh.rect, "Parameter rectangle u0,u1,v0,v1");
    s5->add_option("--project", mesh.project, "Coordinate 3-plane for R^4 surfaces: xyz, xyw, xzw, yzw");
    s5->callback([&] { action = [&] { cmd_mesh(c, mesh); }; });

    double radius = 0.0;
    auto* s6 = app.add_subcommand("plateau-catenoid", "Catenoids spanning two coaxial circles at z = +-1");
    s6->add_option("--radius", radius, "Circle radius r")->required();
    s6->callback([&] { action = [&] { cmd_plateau(c, radius); }; });

    std::string info_name;
    auto* s7 = app.add_subcommand("catalog", "Built-in surfaces");
    s7->require_subcommand(1);
    auto* list = s7->add_subcommand("list", "List catalog entries");
    list->callback([&] { action = [&] { cmd_catalog_list(c); }; });
    auto* info = s7->add_subcommand("info", "Describe one entry");
    info->add_option("name", info_name, "Entry name")->required();
    info->callback([&] { action = [&] { cmd_catalog_info(c, info_name); }; });

    std::vector<const char*> cargv;
    for (const std::string& a : argv) cargv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::Success& e) {
        // --help and --version
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        if (c.json) {
            c.report.exit_code = kExitInputError;
            c.report.error = Json{{"type", "UsageError"}, {"message", e.what()}};
            out << c.report.to_json(c.timings).dump(2) << '\n';
        } else {
            app.exit(e, out, err);
        }
        return kExitInputError;
    }

    try {
        action();
        c.report.exit_code = c.report.all_passed() ? kExitPass : kExitCheckFailure;
    } catch (const std::exception& e) {
        c.report.exit_code = exit_code_for(e);
        c.report.error = error_json(e);
    }
    try {
        emit(c, out);
    } catch (const std::exception& e) {
        err << "minsurf: " << e.what() << '\n';
        return kExitInputError;
    }
    return c.report.exit_code;
}

}  // namespace minsurf
