#include "minsurf/mesh.hpp"

#include "minsurf/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace minsurf {

namespace {

std::array<int, 3> axes(Projection p) {
    switch (p) {
        case Projection::XYZ: return {0, 1, 2};
        case Projection::XYW: return {0, 1, 3};
        case Projection::XZW: return {0, 2, 3};
        case Projection::YZW: return {1, 2, 3};
    }
    return {0, 1, 2};
}

double dist_to_rect(Complex p, const Rectangle& r) {
    const double dx = std::max({r.u0 - p.real(), 0.0, p.real() - r.u1});
    const double dy = std::max({r.v0 - p.imag(), 0.0, p.imag() - r.v1});
    return std::hypot(dx, dy);
}

void require_inside(const ParamDomain& d, const Rectangle& r) {
    constexpr double slack = 1e-12;
    const Complex corners[4] = {{r.u0, r.v0}, {r.u1, r.v0}, {r.u1, r.v1}, {r.u0, r.v1}};
    auto fail = [&](const std::string& why) {
        std::ostringstream os;
        os << "rectangle [" << r.u0 << ", " << r.u1 << "] x [" << r.v0 << ", " << r.v1 << "] " << why << " of "
           << d.describe();
        throw DomainViolation(os.str());
    };
    switch (d.kind) {
        case ParamDomain::Kind::Plane: break;
        case ParamDomain::Kind::Rectangle:
            if (r.u0 < d.rect.u0 - slack || r.u1 > d.rect.u1 + slack || r.v0 < d.rect.v0 - slack ||
                r.v1 > d.rect.v1 + slack)
                fail("leaves the domain");
            break;
        case ParamDomain::Kind::Disc:
        case ParamDomain::Kind::Annulus:
            for (const Complex& c : corners)
                if (std::abs(c - d.center) > d.outer * (1 + slack)) fail("leaves the domain");
            if (d.kind == ParamDomain::Kind::Annulus && dist_to_rect(d.center, r) < d.inner * (1 - slack))
                fail("meets the hole");
            break;
        case ParamDomain::Kind::PuncturedPlane:
            for (const Complex& p : d.punctures)
                if (dist_to_rect(p, r) == 0.0) fail("contains a puncture");
            break;
    }
}

Vec3 face_normal(const Mesh& m, const std::array<std::size_t, 3>& t) {
    return (m.vertices[t[1]] - m.vertices[t[0]]).cross(m.vertices[t[2]] - m.vertices[t[0]]);
}

}  // namespace

Projection parse_projection(const std::string& name) {
    if (name == "xyz") return Projection::XYZ;
    if (name == "xyw") return Projection::XYW;
    if (name == "xzw") return Projection::XZW;
    if (name == "yzw") return Projection::YZW;
    throw InvalidInput("unknown projection '" + name + "' (expected xyz, xyw, xzw or yzw)");
}

std::string to_string(Projection p) {
    switch (p) {
        case Projection::XYZ: return "xyz";
        case Projection::XYW: return "xyw";
        case Projection::XZW: return "xzw";
        case Projection::YZW: return "yzw";
    }
    return "xyz";
}

void Mesh::validate() const {
    for (const auto& t : triangles) {
        for (std::size_t k : t)
            if (k >= vertices.size()) throw InvalidInput("triangle index out of range");
        if (0.5 * face_normal(*this, t).norm() <= 1e-14) throw InvalidInput("degenerate triangle");
    }
    if (!normals.empty() && normals.size() != vertices.size())
        throw InvalidInput("normal count does not match vertex count");
}

Mesh sample_mesh(const SurfaceMap& s, std::size_t nu, std::size_t nv, const Rectangle& rect, Projection projection) {
    if (nu < 2 || nv < 2) throw InvalidInput("mesh resolution must be at least 2x2");
    if (!(rect.u0 < rect.u1) || !(rect.v0 < rect.v1)) throw InvalidInput("empty mesh rectangle");
    if (s.dim() < 3) throw InvalidInput("mesh needs a surface in R^3 or R^4");
    if (s.dim() == 3 && projection != Projection::XYZ) throw InvalidInput("projection applies to R^4 surfaces only");
    if (s.dim() > 4) throw InvalidInput("mesh export supports R^3 and R^4 surfaces");
    require_inside(s.domain(), rect);

    const auto ax = axes(projection);
    Mesh m;
    m.nu = nu;
    m.nv = nv;
    m.vertices.reserve(nu * nv);
    const double du = (rect.u1 - rect.u0) / static_cast<double>(nu - 1);
    const double dv = (rect.v1 - rect.v0) / static_cast<double>(nv - 1);
    // endpoints exact, interior nodes by index to keep the grid reproducible
    auto u_at = [&](std::size_t i) { return i + 1 == nu ? rect.u1 : rect.u0 + static_cast<double>(i) * du; };
    auto v_at = [&](std::size_t j) { return j + 1 == nv ? rect.v1 : rect.v0 + static_cast<double>(j) * dv; };
    for (std::size_t j = 0; j < nv; ++j) {
        for (std::size_t i = 0; i < nu; ++i) {
            const VecN x = s(u_at(i), v_at(j));
            if (!x.allFinite()) throw DomainViolation("surface is not finite at a mesh vertex");
            m.vertices.emplace_back(x[ax[0]], x[ax[1]], x[ax[2]]);
        }
    }
    for (std::size_t j = 0; j + 1 < nv; ++j) {
        for (std::size_t i = 0; i + 1 < nu; ++i) {
            const std::size_t a = j * nu + i, b = a + 1, c = a + nu + 1, d = a + nu;
            m.triangles.push_back({a, b, c});
            m.triangles.push_back({a, c, d});
        }
    }
    if (s.dim() == 3) {
        std::vector<Vec3> accum(m.vertices.size(), Vec3::Zero());
        for (const auto& t : m.triangles) {
            const Vec3 n = face_normal(m, t);
            for (std::size_t k : t) accum[k] += n;
        }
        m.normals.resize(m.vertices.size());
        for (std::size_t j = 0; j < nv; ++j) {
            for (std::size_t i = 0; i < nu; ++i) {
                const std::size_t k = j * nu + i;
                Vec3 n = Vec3::Zero();
                try {
                    const SurfaceJet jet = s.jet(u_at(i), v_at(j));
                    n = Vec3(jet.Fu[0], jet.Fu[1], jet.Fu[2]).cross(Vec3(jet.Fv[0], jet.Fv[1], jet.Fv[2]));
                } catch (const Error&) {
                }
                if (!(n.norm() > 1e-12) || !n.allFinite()) n = accum[k];
                m.normals[k] = n.norm() > 0 ? Vec3(n.normalized()) : Vec3::UnitZ();
            }
        }
    }
    m.validate();
    return m;
}

double mesh_mean_curvature(const Mesh& m, std::size_t i, std::size_t j, double du, double dv) {
    if (i == 0 || j == 0 || i + 1 >= m.nu || j + 1 >= m.nv) throw InvalidInput("vertex is not interior");
    auto P = [&](std::size_t a, std::size_t b) -> const Vec3& { return m.vertices[b * m.nu + a]; };
    const Vec3 Fu = (P(i + 1, j) - P(i - 1, j)) / (2 * du);
    const Vec3 Fv = (P(i, j + 1) - P(i, j - 1)) / (2 * dv);
    const Vec3 Fuu = (P(i + 1, j) - 2 * P(i, j) + P(i - 1, j)) / (du * du);
    const Vec3 Fvv = (P(i, j + 1) - 2 * P(i, j) + P(i, j - 1)) / (dv * dv);
    const Vec3 Fuv = (P(i + 1, j + 1) - P(i + 1, j - 1) - P(i - 1, j + 1) + P(i - 1, j - 1)) / (4 * du * dv);
    const Vec3 n = Fu.cross(Fv);
    const double w2 = n.squaredNorm();
    if (!(w2 > 0)) throw NotImmersed("mesh tangent vectors are parallel");
    const Vec3 N = n / std::sqrt(w2);
    const double E = Fu.dot(Fu), F = Fu.dot(Fv), G = Fv.dot(Fv);
    const double L = N.dot(Fuu), M = N.dot(Fuv), Nn = N.dot(Fvv);
    return (L * G - 2 * M * F + Nn * E) / (E * G - F * F);
}

std::string to_obj(const Mesh& m) {
    std::string out;
    out.reserve(64 * (m.vertices.size() * 2 + m.triangles.size()));
    char buf[128];
    out += "# minsurf mesh\n";
    for (const Vec3& v : m.vertices) {
        std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.x(), v.y(), v.z());
        out += buf;
    }
    for (const Vec3& n : m.normals) {
        std::snprintf(buf, sizeof buf, "vn %.17g %.17g %.17g\n", n.x(), n.y(), n.z());
        out += buf;
    }
    for (const auto& t : m.triangles) {
        std::snprintf(buf, sizeof buf, "f %zu %zu %zu\n", t[0] + 1, t[1] + 1, t[2] + 1);
        out += buf;
    }
    return out;
}

void export_obj(const Mesh& m, const std::string& path) {
    m.validate();
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    const std::string text = to_obj(m);
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    f.flush();
    if (!f) throw IoError("write to '" + path + "' failed");
}

Mesh read_obj(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "'");
    Mesh m;
    std::string line;
    std::size_t lineno = 0;
    auto bad = [&](const std::string& why) {
        throw InvalidInput(path + ":" + std::to_string(lineno) + ": " + why);
    };
    while (std::getline(f, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        if (tag == "v" || tag == "vn") {
            std::string a, b, c;
            if (!(ls >> a >> b >> c)) bad("expected three coordinates");
            Vec3 p(std::strtod(a.c_str(), nullptr), std::strtod(b.c_str(), nullptr), std::strtod(c.c_str(), nullptr));
            (tag == "v" ? m.vertices : m.normals).push_back(p);
        } else if (tag == "f") {
            std::array<std::size_t, 3> t{};
            for (auto& k : t) {
                std::string tok;
                if (!(ls >> tok)) bad("expected three face indices");
                const long idx = std::strtol(tok.c_str(), nullptr, 10);
                if (idx < 1) bad("face index must be positive");
                k = static_cast<std::size_t>(idx - 1);
            }
            m.triangles.push_back(t);
        }
    }
    m.validate();
    return m;
}

}  // namespace minsurf
