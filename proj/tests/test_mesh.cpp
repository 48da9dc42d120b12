#include "doctest.h"

#include "minsurf/catalog.hpp"
#include "minsurf/errors.hpp"
#include "minsurf/io.hpp"
#include "minsurf/mesh.hpp"

#include <cmath>
#include <filesystem>

using namespace minsurf;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("minsurf_test_" + name)).string();
}

}  // namespace

TEST_CASE("catenoid 64x64 mesh counts") {
    const Mesh m = sample_mesh(make_catenoid().surface, 64, 64, {0.0, 2 * kPi, -1.0, 1.0});
    CHECK(m.vertices.size() == 4096);
    CHECK(m.triangles.size() == 2 * 63 * 63);
    CHECK(m.normals.size() == 4096);
    // seam vertices coincide, grid corner is the sampled point
    CHECK((m.vertices[0] - m.vertices[63]).norm() < 1e-12);
    const VecN x = make_catenoid().surface(0.0, -1.0);
    CHECK(m.vertices[0] == Vec3(x[0], x[1], x[2]));
    // normals agree with the closed-form unit normal and with face orientation
    for (std::size_t k = 0; k < m.vertices.size(); k += 97) {
        CHECK(std::abs(m.normals[k].norm() - 1.0) < 1e-14);
    }
    const auto& t = m.triangles[500];
    const Vec3 fn = (m.vertices[t[1]] - m.vertices[t[0]]).cross(m.vertices[t[2]] - m.vertices[t[0]]);
    CHECK(fn.dot(m.normals[t[0]]) > 0);
}

TEST_CASE("mesh resolution and domain errors") {
    const SurfaceMap cat = make_catenoid().surface;
    CHECK_THROWS_AS(sample_mesh(cat, 1, 5, {0, 1, 0, 1}), InvalidInput);
    CHECK_THROWS_AS(sample_mesh(cat, 5, 1, {0, 1, 0, 1}), InvalidInput);
    CHECK_THROWS_AS(sample_mesh(cat, 5, 5, {1, 0, 0, 1}), InvalidInput);
    CHECK_THROWS_AS(sample_mesh(cat, 4, 4, {0, 1, 0, 1}, Projection::XYW), InvalidInput);

    const CatalogEntry meeks = make_meeks_mobius();
    CHECK_THROWS_AS(sample_mesh(meeks.surface, 8, 8, {-1, 1, -1, 1}), DomainViolation);
    CHECK_NOTHROW(sample_mesh(meeks.surface, 8, 8, {0.25, 2, -1, 1}));
    // a puncture on the rectangle's edge is still inside the closed rectangle
    CHECK_THROWS_AS(sample_mesh(meeks.surface, 8, 8, {0.0, 1, -1, 1}), DomainViolation);

    const auto flat = [](double u, double v) {
        VecN x(3);
        x << u, v, 0;
        return x;
    };
    const SurfaceMap disc(3, ParamDomain::disc(0.0, 1.0), flat);
    CHECK_THROWS_AS(sample_mesh(disc, 4, 4, {-1, 1, -1, 1}), DomainViolation);
    CHECK_NOTHROW(sample_mesh(disc, 4, 4, {-0.7, 0.7, -0.7, 0.7}));
    const SurfaceMap ring(3, ParamDomain::annulus(0.0, 0.5, 2.0), flat);
    CHECK_THROWS_AS(sample_mesh(ring, 4, 4, {-1, 1, -1, 1}), DomainViolation);
    CHECK_NOTHROW(sample_mesh(ring, 4, 4, {0.6, 1.2, -0.5, 0.5}));
}

TEST_CASE("Enneper 32x32 mesh is minimal to finite-difference accuracy") {
    // second-order central differences of the vertex positions; error O(h^2)
    auto worst_h = [](const Mesh& m, double h) {
        double worst = 0.0;
        for (std::size_t j = 1; j + 1 < m.nv; ++j)
            for (std::size_t i = 1; i + 1 < m.nu; ++i)
                worst = std::max(worst, std::abs(mesh_mean_curvature(m, i, j, h, h)));
        return worst;
    };
    const SurfaceMap enneper = make_enneper().surface;
    // square inscribed in the unit disc
    const double a = 1.0 / std::sqrt(2.0);
    const double w32 = worst_h(sample_mesh(enneper, 32, 32, {-a, a, -a, a}), 2 * a / 31);
    MESSAGE("max |H| at interior vertices, 32x32 over the unit-disc square: " << w32);
    CHECK(w32 < 1e-3);
    // over [-1, 1]^2 the error quarters when h halves
    const double c32 = worst_h(sample_mesh(enneper, 32, 32, {-1, 1, -1, 1}), 2.0 / 31);
    const double c64 = worst_h(sample_mesh(enneper, 64, 64, {-1, 1, -1, 1}), 2.0 / 63);
    MESSAGE("[-1, 1]^2: 32x32 " << c32 << ", 64x64 " << c64);
    CHECK(c64 < 1e-3);
    CHECK(c32 / c64 == doctest::Approx(std::pow(63.0 / 31.0, 2)).epsilon(0.05));

    // the same stencil sees the sphere's curvature
    const double h = 2.0 / 31;
    const Mesh s = sample_mesh(make_sphere().surface, 32, 32, {-1, 1, -1, 1});
    for (std::size_t j = 8; j + 8 < s.nv; j += 4)
        for (std::size_t i = 8; i + 8 < s.nu; i += 4)
            CHECK(std::abs(std::abs(mesh_mean_curvature(s, i, j, h, h)) - 2.0) < 1e-2);
}

TEST_CASE("R^4 meshes project onto a coordinate 3-plane") {
    const CatalogEntry afl = make_afl_mobius_r4();
    const Rectangle r{0.5, 1.5, -0.5, 0.5};
    for (Projection p : {Projection::XYZ, Projection::XYW, Projection::XZW, Projection::YZW}) {
        const Mesh m = sample_mesh(afl.surface, 6, 5, r, p);
        CHECK(m.normals.empty());
        CHECK(m.vertices.size() == 30);
        const VecN x = afl.surface(r.u1, r.v1);
        const Vec3& last = m.vertices.back();
        const std::string name = to_string(p);
        auto coord = [&](char c) { return x[c == 'x' ? 0 : c == 'y' ? 1 : c == 'z' ? 2 : 3]; };
        CHECK(last == Vec3(coord(name[0]), coord(name[1]), coord(name[2])));
        CHECK(parse_projection(name) == p);
    }
    CHECK_THROWS_AS(parse_projection("xy"), InvalidInput);
}

TEST_CASE("OBJ export of one triangle") {
    Mesh m;
    m.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0.1)};
    m.triangles = {{0, 1, 2}};
    const std::string text = to_obj(m);
    CHECK(text == "# minsurf mesh\nv 0 0 0\nv 1 0 0\nv 0 1 0.10000000000000001\nf 1 2 3\n");
    CHECK(text.find('\r') == std::string::npos);
}

TEST_CASE("OBJ round trip is bit exact") {
    const Mesh m = sample_mesh(make_enneper().surface, 17, 9, {-1.3, 0.7, -0.2, 1.1});
    const std::string path = temp_path("enneper.obj");
    export_obj(m, path);
    const Mesh back = read_obj(path);
    REQUIRE(back.vertices.size() == m.vertices.size());
    for (std::size_t k = 0; k < m.vertices.size(); ++k) CHECK(back.vertices[k] == m.vertices[k]);
    CHECK(back.normals == m.normals);
    CHECK(back.triangles == m.triangles);
    // deterministic bytes
    export_obj(m, path + "2");
    CHECK(read_file(path) == read_file(path + "2"));
    std::filesystem::remove(path);
    std::filesystem::remove(path + "2");
}

TEST_CASE("OBJ errors") {
    Mesh m;
    m.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(2, 0, 0)};
    m.triangles = {{0, 1, 2}};
    CHECK_THROWS_AS(m.validate(), InvalidInput);  // collinear
    m.vertices[2] = Vec3(0, 1, 0);
    m.triangles = {{0, 1, 3}};
    CHECK_THROWS_AS(m.validate(), InvalidInput);
    m.triangles = {{0, 1, 2}};
    CHECK_THROWS_AS(export_obj(m, "/nonexistent-dir/x.obj"), IoError);
    CHECK_THROWS_AS(read_obj("/nonexistent-dir/x.obj"), IoError);
}
