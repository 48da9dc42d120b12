#include "minsurf/io.hpp"

#include "minsurf/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace minsurf {

namespace {

[[noreturn]] void bad(const std::string& what) { throw InvalidInput(what); }

const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) bad(where + " must be an object");
    auto it = j.find(key);
    if (it == j.end()) bad(where + " is missing \"" + key + "\"");
    return *it;
}

double number(const Json& j, const std::string& where) {
    if (!j.is_number()) bad(where + " must be a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) bad(where + " must be finite");
    return x;
}

long integer(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) bad(where + " must be an integer");
    return j.get<long>();
}

Complex complex_from(const Json& j, const std::string& where) {
    if (j.is_number()) return {number(j, where), 0.0};
    if (!j.is_array() || j.size() != 2) bad(where + " must be [re, im]");
    return {number(j[0], where), number(j[1], where)};
}

std::vector<Complex> complex_list(const Json& j, const std::string& where) {
    if (!j.is_array()) bad(where + " must be a list of [re, im]");
    std::vector<Complex> out;
    for (const Json& e : j) out.push_back(complex_from(e, where));
    return out;
}

std::string string_of(const Json& j, const std::string& where) {
    if (!j.is_string()) bad(where + " must be a string");
    return j.get<std::string>();
}

std::string format_g(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "'");
    std::ostringstream os;
    os << f.rdbuf();
    if (f.bad()) throw IoError("read from '" + path + "' failed");
    return os.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    f.flush();
    if (!f) throw IoError("write to '" + path + "' failed");
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string input_hash(std::string_view bytes) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

Json parse_json(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInput(source + ": invalid JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

// ---------------------------------------------------------------- graph problems

GraphProblem graph_problem_from_json(const Json& j) {
    try {
        const Json& grid = field(j, "grid", "problem");
        const Json& origin = field(grid, "origin", "grid");
        if (!origin.is_array() || origin.size() != 2) bad("grid.origin must be [x, y]");
        const Vec2 o(number(origin[0], "grid.origin"), number(origin[1], "grid.origin"));
        const double h = number(field(grid, "spacing", "grid"), "grid.spacing");
        const Json& dims = field(grid, "dims", "grid");
        if (!dims.is_array() || dims.size() != 2) bad("grid.dims must be [nx, ny]");
        const long nx = integer(dims[0], "grid.dims"), ny = integer(dims[1], "grid.dims");
        if (nx < 3 || ny < 3) bad("grid.dims must be at least [3, 3]");
        const std::size_t cols = static_cast<std::size_t>(nx), rows = static_cast<std::size_t>(ny);

        const Json& mask_j = field(j, "mask", "problem");
        if (!mask_j.is_array()) bad("mask must be a list of [value, count] runs");
        std::vector<bool> mask;
        mask.reserve(rows * cols);
        for (const Json& run : mask_j) {
            if (!run.is_array() || run.size() != 2) bad("mask run must be [value, count]");
            const long value = integer(run[0], "mask value"), count = integer(run[1], "mask count");
            if ((value != 0 && value != 1) || count < 0) bad("mask run must have value 0 or 1 and count >= 0");
            if (mask.size() + static_cast<std::size_t>(count) > rows * cols) bad("mask runs exceed the grid size");
            mask.insert(mask.end(), static_cast<std::size_t>(count), value == 1);
        }
        if (mask.size() != rows * cols)
            bad("mask runs cover " + std::to_string(mask.size()) + " of " + std::to_string(rows * cols) + " nodes");

        GraphProblem p{ScalarGrid(o, h, rows, cols, std::move(mask)), {}};
        std::vector<bool> seen(rows * cols, false);
        const Json& bnd = field(j, "boundary", "problem");
        if (!bnd.is_array()) bad("boundary must be a list of [ix, iy, value]");
        for (const Json& e : bnd) {
            if (!e.is_array() || e.size() != 3) bad("boundary entry must be [ix, iy, value]");
            const long ix = integer(e[0], "boundary ix"), iy = integer(e[1], "boundary iy");
            if (ix < 0 || iy < 0 || ix >= nx || iy >= ny) bad("boundary node out of range");
            const auto i = static_cast<std::size_t>(iy), jj = static_cast<std::size_t>(ix);
            if (p.grid.kind(i, jj) != NodeKind::Boundary)
                bad("node [" + std::to_string(ix) + ", " + std::to_string(iy) + "] is not a boundary node");
            p.grid(i, jj) = number(e[2], "boundary value");
            seen[p.grid.index(i, jj)] = true;
        }
        std::size_t missing = 0;
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t c = 0; c < cols; ++c)
                missing += p.grid.kind(i, c) == NodeKind::Boundary && !seen[p.grid.index(i, c)];
        if (missing) bad(std::to_string(missing) + " boundary nodes have no value");

        if (auto it = j.find("solver"); it != j.end()) {
            if (!it->is_object()) bad("solver must be an object");
            if (it->contains("tol")) {
                p.solver.tol = number((*it)["tol"], "solver.tol");
                if (!(p.solver.tol > 0)) bad("solver.tol must be positive");
            }
            if (it->contains("max_iter")) {
                const long m = integer((*it)["max_iter"], "solver.max_iter");
                if (m < 1) bad("solver.max_iter must be positive");
                p.solver.max_iter = static_cast<int>(m);
            }
        }
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("malformed problem: ") + e.what());
    }
}

Json graph_problem_to_json(const GraphProblem& p) {
    const ScalarGrid& g = p.grid;
    Json j;
    j["grid"] = {{"origin", {g.origin().x(), g.origin().y()}},
                 {"spacing", g.spacing()},
                 {"dims", {g.cols(), g.rows()}}};
    Json runs = Json::array();
    const auto& m = g.mask();
    for (std::size_t k = 0; k < m.size();) {
        std::size_t n = 0;
        while (k + n < m.size() && m[k + n] == m[k]) ++n;
        runs.push_back({m[k] ? 1 : 0, n});
        k += n;
    }
    j["mask"] = runs;
    Json bnd = Json::array();
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t c = 0; c < g.cols(); ++c)
            if (g.kind(i, c) == NodeKind::Boundary) bnd.push_back({c, i, g(i, c)});
    j["boundary"] = bnd;
    j["solver"] = {{"tol", p.solver.tol}, {"max_iter", p.solver.max_iter}};
    return j;
}

std::string solution_csv(const ScalarGrid& f) {
    std::string out = "x,y,f\n";
    for (std::size_t i = 0; i < f.rows(); ++i)
        for (std::size_t c = 0; c < f.cols(); ++c)
            if (f.in_closure(i, c)) out += format_g(f.x(c)) + "," + format_g(f.y(i)) + "," + format_g(f(i, c)) + "\n";
    return out;
}

// ---------------------------------------------------------------- surface specs

ParamDomain domain_from_json(const Json& j) {
    const std::string kind = string_of(field(j, "kind", "domain"), "domain.kind");
    if (kind == "plane") return ParamDomain::plane();
    if (kind == "disc") {
        const Complex c = j.contains("center") ? complex_from(j["center"], "domain.center") : Complex{};
        const double r = number(field(j, "radius", "domain"), "domain.radius");
        if (!(r > 0)) bad("domain.radius must be positive");
        return ParamDomain::disc(c, r);
    }
    if (kind == "rectangle") {
        const Json& u = field(j, "u", "domain");
        const Json& v = field(j, "v", "domain");
        if (!u.is_array() || u.size() != 2 || !v.is_array() || v.size() != 2) bad("domain.u and domain.v must be [lo, hi]");
        const Rectangle r{number(u[0], "domain.u"), number(u[1], "domain.u"), number(v[0], "domain.v"),
                          number(v[1], "domain.v")};
        if (!(r.u0 < r.u1) || !(r.v0 < r.v1)) bad("rectangle domain is empty");
        return ParamDomain::rectangle(r);
    }
    if (kind == "annulus") {
        const Complex c = j.contains("center") ? complex_from(j["center"], "domain.center") : Complex{};
        if (j.contains("r")) {
            const double r = number(j["r"], "domain.r");
            if (!(r > 1)) bad("annulus \"r\" must exceed 1 (the domain is 1/r < |z| < r)");
            return ParamDomain::annulus(c, 1.0 / r, r);
        }
        const double a = number(field(j, "inner", "domain"), "domain.inner");
        const double b = number(field(j, "outer", "domain"), "domain.outer");
        if (!(a >= 0) || !(b > a)) bad("annulus needs 0 <= inner < outer");
        return ParamDomain::annulus(c, a, b);
    }
    if (kind == "punctured-plane") {
        auto p = complex_list(field(j, "punctures", "domain"), "domain.punctures");
        if (p.empty()) bad("punctured-plane needs at least one puncture");
        return ParamDomain::punctured_plane(std::move(p));
    }
    bad("unknown domain kind '" + kind + "'");
}

Json domain_to_json(const ParamDomain& d) {
    switch (d.kind) {
        case ParamDomain::Kind::Plane: return {{"kind", "plane"}};
        case ParamDomain::Kind::Rectangle:
            return {{"kind", "rectangle"}, {"u", {d.rect.u0, d.rect.u1}}, {"v", {d.rect.v0, d.rect.v1}}};
        case ParamDomain::Kind::Disc: return {{"kind", "disc"}, {"center", complex_json(d.center)}, {"radius", d.outer}};
        case ParamDomain::Kind::Annulus:
            return {{"kind", "annulus"}, {"center", complex_json(d.center)}, {"inner", d.inner}, {"outer", d.outer}};
        case ParamDomain::Kind::PuncturedPlane: {
            Json p = Json::array();
            for (const Complex& z : d.punctures) p.push_back(complex_json(z));
            return {{"kind", "punctured-plane"}, {"punctures", p}};
        }
    }
    return {};
}

SurfaceSpec surface_spec_from_json(const Json& j) {
    try {
        SurfaceSpec s;
        s.kind = string_of(field(j, "kind", "surface"), "kind");
        if (j.contains("name")) s.name = string_of(j["name"], "name");
        s.domain = domain_from_json(field(j, "domain", "surface"));
        if (j.contains("singularities")) s.singularities = complex_list(j["singularities"], "singularities");
        if (j.contains("base_point")) s.base_point = complex_from(j["base_point"], "base_point");
        if (!s.domain.contains(s.base_point)) bad("base_point lies outside " + s.domain.describe());

        if (s.kind == "null-data") {
            const Json& comps = field(j, "components", "surface");
            if (!comps.is_array() || comps.size() < 2) bad("components must list at least two expressions");
            std::vector<std::string> src;
            for (const Json& c : comps) src.push_back(string_of(c, "components"));
            s.data = ComplexExprVec::parse(src, s.singularities);
        } else if (s.kind == "weierstrass-r3") {
            WeierstrassDataR3 w;
            w.g = ComplexExpr::parse(string_of(field(j, "g", "surface"), "g"), s.singularities);
            w.phi3 = ComplexExpr::parse(string_of(field(j, "phi3", "surface"), "phi3"), s.singularities);
            w.domain = s.domain;
            w.z0 = s.base_point;
            s.data = w.assemble();
            s.weierstrass = w;
        } else {
            bad("unknown surface kind '" + s.kind + "' (expected null-data or weierstrass-r3)");
        }

        const auto n = static_cast<Eigen::Index>(s.data.size());
        s.base_value = VecN::Zero(n);
        if (j.contains("base_value")) {
            const Json& b = j["base_value"];
            if (!b.is_array() || static_cast<Eigen::Index>(b.size()) != n)
                bad("base_value must list " + std::to_string(n) + " numbers");
            for (Eigen::Index k = 0; k < n; ++k) s.base_value[k] = number(b[static_cast<std::size_t>(k)], "base_value");
        }
        if (s.weierstrass) s.weierstrass->c = s.base_value;
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("malformed surface spec: ") + e.what());
    }
}

SurfaceMap build_surface(const SurfaceSpec& spec, const IntegrationOptions& opts) {
    if (spec.weierstrass) return spec.weierstrass->surface(opts);
    return integrate_minimal_surface(spec.data, spec.domain, spec.base_point, spec.base_value, opts);
}

CatalogEntry spec_entry(const SurfaceSpec& spec, const SurfaceMap& surface) {
    CatalogEntry e(spec.name, "user surface (" + spec.kind + ")", surface);
    e.data = spec.data;
    e.sample_region = spec.domain;
    // finite-difference checks near a pole lose accuracy; stay in a unit-scale annulus
    if (spec.domain.kind == ParamDomain::Kind::PuncturedPlane && spec.domain.punctures.size() == 1)
        e.sample_region = ParamDomain::annulus(spec.domain.punctures.front(), 0.5, 2.0);
    e.singular_points = spec.singularities;
    for (const Complex& z : spec.data.singularities()) e.singular_points.push_back(z);
    return e;
}

Region default_tc_region(const ParamDomain& d) {
    switch (d.kind) {
        case ParamDomain::Kind::Annulus: return Annulus{d.center, d.inner, d.outer};
        case ParamDomain::Kind::Disc: return Annulus{d.center, 0.0, d.outer};
        case ParamDomain::Kind::Rectangle: return d.rect;
        case ParamDomain::Kind::PuncturedPlane: return Annulus{0.0, 0.01, 100.0};
        case ParamDomain::Kind::Plane: return Annulus{0.0, 0.0, 100.0};
    }
    return Annulus{};
}

// ---------------------------------------------------------------- reports

Json number_json(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

Json complex_json(Complex z) { return Json::array({number_json(z.real()), number_json(z.imag())}); }

Json vector_json(const VecN& v) {
    Json a = Json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(number_json(v[k]));
    return a;
}

Json complex_vector_json(const CVecN& v) {
    Json a = Json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(complex_json(v[k]));
    return a;
}

bool RunReport::all_passed() const {
    for (const CheckResult& c : checks)
        if (!c.passed) return false;
    return !error;
}

Json RunReport::to_json(bool with_timings) const {
    Json j;
    j["tool"] = tool;
    j["version"] = version;
    j["command"] = command;
    j["input"] = input;
    j["input_hash"] = input_hash;
    j["seed"] = seed;
    j["status"] = error ? "error" : (all_passed() ? "pass" : "fail");
    j["exit_code"] = exit_code;
    Json cs = Json::array();
    for (const CheckResult& c : checks)
        cs.push_back({{"name", c.name},
                      {"value", number_json(c.value)},
                      {"tolerance", number_json(c.tolerance)},
                      {"passed", c.passed},
                      {"detail", c.detail}});
    j["checks"] = cs;
    j["results"] = results;
    j["warnings"] = warnings;
    if (error) j["error"] = *error;
    if (with_timings) {
        Json t = Json::object();
        for (const auto& [k, v] : timings) t[k] = v;
        j["timings"] = t;
    }
    return j;
}

std::string RunReport::to_text(bool with_timings) const {
    std::ostringstream os;
    os << "minsurf";
    for (std::size_t k = 1; k < command.size(); ++k) os << ' ' << command[k];
    os << '\n';
    if (!input.empty()) os << "input: " << input << " (" << input_hash << ")\n";
    if (!checks.empty()) {
        os << "checks:\n";
        for (const CheckResult& c : checks) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.3e <= %.1e", c.value, c.tolerance);
            os << "  " << (c.passed ? "PASS " : "FAIL ") << c.name << "  " << buf;
            if (!c.detail.empty()) os << "  (" << c.detail << ")";
            os << '\n';
        }
    }
    if (!results.empty()) {
        os << "results:\n";
        for (const auto& [k, v] : results.items()) os << "  " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
    for (const std::string& w : warnings) os << "warning: " << w << '\n';
    if (error) os << "error: " << (*error)["type"].get<std::string>() << ": " << (*error)["message"].get<std::string>() << '\n';
    if (with_timings)
        for (const auto& [k, v] : timings) os << "time " << k << ": " << v << " s\n";
    os << "status: " << (error ? "error" : (all_passed() ? "pass" : "fail")) << '\n';
    return os.str();
}

}  // namespace minsurf
