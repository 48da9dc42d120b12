#pragma once

#include "minsurf/curvature.hpp"
#include "minsurf/grid.hpp"
#include "minsurf/quadrature.hpp"
#include "minsurf/surface.hpp"

#include <string>
#include <vector>

namespace minsurf {

// Grid functionals integrate over the cells whose four corners lie in the closure of
// the mask. Each cell is split both ways into two linear triangles and the two splits
// are averaged, so every functional is exact for affine data and second order otherwise.

/// Area of the graph of f: the integral of sqrt(1 + |grad f|^2).
double area_graph(const ScalarGrid& f);

/// (1+fy^2) fxx - 2 fx fy fxy + (1+fx^2) fyy from central differences on interior nodes;
/// zero elsewhere.
ScalarGrid mge_residual(const ScalarGrid& f);

/// Pointwise minimal-graph expression of a jet.
double mge_operator(const GraphJet2& jet);

/// Admissible variation: a grid field that vanishes off the interior nodes.
class VariationField {
public:
    explicit VariationField(ScalarGrid h);
    const ScalarGrid& field() const { return h_; }
    /// Discrete L2 norm sqrt(sum h_k^2 * spacing^2).
    double norm() const;

private:
    ScalarGrid h_;
};

/// The integral of (fx hx + fy hy) / sqrt(1 + |grad f|^2) with the area discretization.
double first_variation_analytic(const ScalarGrid& f, const VariationField& h);
/// (area_graph(f + s h) - area_graph(f - s h)) / (2 s).
double first_variation_fd(const ScalarGrid& f, const VariationField& h, double s = 1e-5);

/// Integral of |Fu|^2 + |Fv|^2 on the grid.
double dirichlet_energy(const VectorGrid& F);
/// Integral of sqrt(|Fu|^2 |Fv|^2 - (Fu.Fv)^2) on the grid.
double area_parametric(const VectorGrid& F);
/// Same functionals for a parametric map with exact partials, by adaptive quadrature.
double dirichlet_energy(const SurfaceMap& F, const Region& region, const QuadOptions& opts = {});
double area_parametric(const SurfaceMap& F, const Region& region, const QuadOptions& opts = {});

struct SolverOptions {
    double tol = 1e-9;           ///< on max |discrete area gradient| / spacing^2
    int max_iter = 50;
    int picard_iterations = 3;   ///< frozen-coefficient steps before Newton
    double armijo = 1e-4;
    int max_halvings = 30;
};

/// Dirichlet problem for the minimal graph equation. The grid mask is the domain;
/// grid values on boundary nodes are the boundary data.
struct GraphProblem {
    ScalarGrid grid;
    SolverOptions solver;
};

struct SolveReport {
    bool converged = false;
    int iterations = 0;
    double residual = 0.0;       ///< scaled area gradient at the returned iterate
    double mge_residual = 0.0;   ///< max |mge_residual| over interior nodes
    std::vector<double> area_history;
    std::vector<std::string> warnings;
};

struct GraphSolution {
    ScalarGrid f;
    SolveReport report;
};

/// Newton iteration on the discrete area functional, from the discrete harmonic
/// extension of the boundary data, with Armijo backtracking on area. Throws
/// MaskNotConnected for a disconnected interior and NonConvergence after max_iter.
GraphSolution solve_minimal_graph(const GraphProblem& p);

/// True when every row and every column of the interior mask is one contiguous run.
bool mask_is_row_column_convex(const ScalarGrid& grid);

}  // namespace minsurf
