#pragma once

#include "minsurf/surface.hpp"

#include <array>
#include <string>
#include <vector>

namespace minsurf {

using Vec3 = Eigen::Vector3d;

/// Coordinate 3-plane that an R^4 surface is projected onto.
enum class Projection { XYZ, XYW, XZW, YZW };

/// Throws InvalidInput for anything but xyz, xyw, xzw, yzw.
Projection parse_projection(const std::string& name);
std::string to_string(Projection p);

struct Mesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<std::size_t, 3>> triangles;
    std::vector<Vec3> normals;  ///< per vertex; empty for projected R^4 meshes
    std::size_t nu = 0, nv = 0; ///< grid shape when sampled, vertex (i, j) at j * nu + i

    /// Throws InvalidInput on out-of-range indices, degenerate triangles or a normal count mismatch.
    void validate() const;
};

/// Regular nu x nv grid over `rect`, two triangles per cell oriented along Fu x Fv. The
/// rectangle must lie in the closure of the surface domain and avoid its punctures
/// (DomainViolation); nu, nv >= 2 (InvalidInput).
Mesh sample_mesh(const SurfaceMap& s, std::size_t nu, std::size_t nv, const Rectangle& rect,
                 Projection projection = Projection::XYZ);

/// Mean curvature k1 + k2 at interior grid vertex (i, j) from central differences of the
/// vertex positions alone.
double mesh_mean_curvature(const Mesh& m, std::size_t i, std::size_t j, double du, double dv);

std::string to_obj(const Mesh& m);
/// Throws IoError when the file cannot be written.
void export_obj(const Mesh& m, const std::string& path);
/// Reads v, vn and f records written by export_obj. Throws IoError or InvalidInput.
Mesh read_obj(const std::string& path);

}  // namespace minsurf
