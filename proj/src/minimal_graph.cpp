#include "minsurf/minimal_graph.hpp"

#include "minsurf/errors.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <array>
#include <cmath>
#include <queue>
#include <sstream>

namespace minsurf {

namespace {

// Corner order within a cell: (i,j), (i,j+1), (i+1,j), (i+1,j+1).
// Per triangle, the corner weights of h*fx and h*fy.
struct Triangle {
    std::array<double, 4> gx, gy;
};
constexpr std::array<Triangle, 4> kTriangles{{
    {{-1, 1, 0, 0}, {-1, 0, 1, 0}},
    {{-1, 1, 0, 0}, {0, -1, 0, 1}},
    {{0, 0, -1, 1}, {-1, 0, 1, 0}},
    {{0, 0, -1, 1}, {0, -1, 0, 1}},
}};

template <class T>
bool cell_complete(const GridField<T>& g, std::size_t i, std::size_t j) {
    return g.in_closure(i, j) && g.in_closure(i, j + 1) && g.in_closure(i + 1, j) && g.in_closure(i + 1, j + 1);
}

template <class T>
std::array<std::size_t, 4> cell_nodes(const GridField<T>& g, std::size_t i, std::size_t j) {
    return {g.index(i, j), g.index(i, j + 1), g.index(i + 1, j), g.index(i + 1, j + 1)};
}

// Calls fn(nodes, triangle, gx, gy) for every triangle of every complete cell, with the
// exact gradients of the linear interpolant.
template <class T, class Fn>
void for_each_triangle(const GridField<T>& g, Fn&& fn) {
    const double h = g.spacing();
    const auto& vals = g.values();
    for (std::size_t i = 0; i + 1 < g.rows(); ++i) {
        for (std::size_t j = 0; j + 1 < g.cols(); ++j) {
            if (!cell_complete(g, i, j)) continue;
            const auto nodes = cell_nodes(g, i, j);
            for (const Triangle& t : kTriangles) {
                T gx = t.gx[0] * vals[nodes[0]], gy = t.gy[0] * vals[nodes[0]];
                for (int c = 1; c < 4; ++c) {
                    gx = gx + t.gx[c] * vals[nodes[c]];
                    gy = gy + t.gy[c] * vals[nodes[c]];
                }
                fn(nodes, t, gx / h, gy / h);
            }
        }
    }
}

double graph_density(double gx, double gy) { return std::sqrt(1.0 + gx * gx + gy * gy); }

// Gradient of the discrete area with respect to every node value.
std::vector<double> area_gradient(const ScalarGrid& f) {
    std::vector<double> grad(f.size(), 0.0);
    const double h = f.spacing();
    for_each_triangle(f, [&](const auto& nodes, const Triangle& t, double gx, double gy) {
        const double W = graph_density(gx, gy);
        for (int c = 0; c < 4; ++c) grad[nodes[c]] += 0.25 * h * (gx * t.gx[c] + gy * t.gy[c]) / W;
    });
    return grad;
}

void require_finite_closure(const ScalarGrid& f) {
    for (std::size_t i = 0; i < f.rows(); ++i)
        for (std::size_t j = 0; j < f.cols(); ++j)
            if (f.in_closure(i, j) && !std::isfinite(f(i, j))) throw InvalidInput("grid values must be finite");
}

bool interior_connected(const ScalarGrid& g) {
    const std::size_t total = g.interior_count();
    if (total == 0) return false;
    std::vector<char> seen(g.size(), 0);
    std::queue<std::pair<std::size_t, std::size_t>> q;
    for (std::size_t k = 0; k < g.size() && q.empty(); ++k) {
        if (g.interior(k / g.cols(), k % g.cols())) {
            q.emplace(k / g.cols(), k % g.cols());
            seen[k] = 1;
        }
    }
    std::size_t reached = 0;
    while (!q.empty()) {
        const auto [i, j] = q.front();
        q.pop();
        ++reached;
        const std::array<std::pair<std::size_t, std::size_t>, 4> nbrs{{{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}}};
        for (const auto& [a, b] : nbrs) {
            if (g.interior(a, b) && !seen[g.index(a, b)]) {
                seen[g.index(a, b)] = 1;
                q.emplace(a, b);
            }
        }
    }
    return reached == total;
}

}  // namespace

double area_graph(const ScalarGrid& f) {
    const double w = 0.25 * f.spacing() * f.spacing();
    double area = 0.0;
    for_each_triangle(f, [&](const auto&, const Triangle&, double gx, double gy) { area += w * graph_density(gx, gy); });
    return area;
}

double mge_operator(const GraphJet2& jet) {
    const double fx = jet.gradient.x(), fy = jet.gradient.y();
    const SymMat2& A = jet.hessian;
    return (1.0 + fy * fy) * A.a - 2.0 * fx * fy * A.b + (1.0 + fx * fx) * A.c;
}

ScalarGrid mge_residual(const ScalarGrid& f) {
    ScalarGrid out(f.origin(), f.spacing(), f.rows(), f.cols(), f.mask());
    const double h = f.spacing();
    for (std::size_t i = 1; i + 1 < f.rows(); ++i) {
        for (std::size_t j = 1; j + 1 < f.cols(); ++j) {
            if (!f.interior(i, j)) continue;
            GraphJet2 jet;
            jet.gradient = {(f(i, j + 1) - f(i, j - 1)) / (2 * h), (f(i + 1, j) - f(i - 1, j)) / (2 * h)};
            jet.hessian.a = (f(i, j + 1) - 2 * f(i, j) + f(i, j - 1)) / (h * h);
            jet.hessian.c = (f(i + 1, j) - 2 * f(i, j) + f(i - 1, j)) / (h * h);
            jet.hessian.b = (f(i + 1, j + 1) - f(i + 1, j - 1) - f(i - 1, j + 1) + f(i - 1, j - 1)) / (4 * h * h);
            out(i, j) = mge_operator(jet);
        }
    }
    return out;
}

VariationField::VariationField(ScalarGrid h) : h_(std::move(h)) {
    for (std::size_t i = 0; i < h_.rows(); ++i) {
        for (std::size_t j = 0; j < h_.cols(); ++j) {
            if (h_.interior(i, j)) {
                if (!std::isfinite(h_(i, j))) throw InvalidInput("variation field must be finite");
            } else if (h_(i, j) != 0.0) {
                throw InvalidInput("variation field must vanish off the interior nodes");
            }
        }
    }
}

double VariationField::norm() const {
    double s = 0.0;
    for (double v : h_.values()) s += v * v;
    return std::sqrt(s) * h_.spacing();
}

namespace {

void require_same_layout(const ScalarGrid& f, const ScalarGrid& h) {
    if (f.rows() != h.rows() || f.cols() != h.cols() || f.mask() != h.mask() || f.spacing() != h.spacing()) {
        throw InvalidInput("variation field and graph use different grids");
    }
}

}  // namespace

double first_variation_analytic(const ScalarGrid& f, const VariationField& var) {
    require_same_layout(f, var.field());
    const std::vector<double> grad = area_gradient(f);
    double s = 0.0;
    for (std::size_t k = 0; k < grad.size(); ++k) s += grad[k] * var.field().values()[k];
    return s;
}

double first_variation_fd(const ScalarGrid& f, const VariationField& var, double s) {
    require_same_layout(f, var.field());
    if (!(s > 0.0)) throw InvalidInput("finite-difference step must be positive");
    ScalarGrid plus = f, minus = f;
    for (std::size_t k = 0; k < f.size(); ++k) {
        plus.values()[k] += s * var.field().values()[k];
        minus.values()[k] -= s * var.field().values()[k];
    }
    return (area_graph(plus) - area_graph(minus)) / (2.0 * s);
}

double dirichlet_energy(const VectorGrid& F) {
    const double w = 0.25 * F.spacing() * F.spacing();
    double e = 0.0;
    for_each_triangle(F, [&](const auto&, const Triangle&, const VecN& gx, const VecN& gy) {
        e += w * (gx.squaredNorm() + gy.squaredNorm());
    });
    return e;
}

double area_parametric(const VectorGrid& F) {
    const double w = 0.25 * F.spacing() * F.spacing();
    double a = 0.0;
    for_each_triangle(F, [&](const auto&, const Triangle&, const VecN& gx, const VecN& gy) {
        a += w * area_element(gx, gy);
    });
    return a;
}

double dirichlet_energy(const SurfaceMap& F, const Region& region, const QuadOptions& opts) {
    return quad_area(
               [&](double u, double v) {
                   const SurfaceJet j = F.jet(u, v);
                   return j.Fu.squaredNorm() + j.Fv.squaredNorm();
               },
               region, opts)
        .value;
}

double area_parametric(const SurfaceMap& F, const Region& region, const QuadOptions& opts) {
    return quad_area(
               [&](double u, double v) {
                   const SurfaceJet j = F.jet(u, v);
                   return area_element(j.Fu, j.Fv);
               },
               region, opts)
        .value;
}

bool mask_is_row_column_convex(const ScalarGrid& g) {
    const auto contiguous = [&](std::size_t n, auto&& at) {
        int runs = 0;
        bool prev = false;
        for (std::size_t k = 0; k < n; ++k) {
            const bool cur = at(k);
            if (cur && !prev) ++runs;
            prev = cur;
        }
        return runs <= 1;
    };
    for (std::size_t i = 0; i < g.rows(); ++i)
        if (!contiguous(g.cols(), [&](std::size_t j) { return g.interior(i, j); })) return false;
    for (std::size_t j = 0; j < g.cols(); ++j)
        if (!contiguous(g.rows(), [&](std::size_t i) { return g.interior(i, j); })) return false;
    return true;
}

GraphSolution solve_minimal_graph(const GraphProblem& p) {
    const ScalarGrid& g0 = p.grid;
    const SolverOptions& opt = p.solver;
    if (g0.interior_count() == 0) throw InvalidInput("domain mask has no interior nodes");
    if (!interior_connected(g0)) throw MaskNotConnected("interior nodes are not 4-connected");
    require_finite_closure(g0);
    if (!(opt.tol > 0.0) || opt.max_iter < 1) throw InvalidInput("solver needs tol > 0 and max_iter >= 1");

    GraphSolution sol{g0, {}};
    ScalarGrid& f = sol.f;
    SolveReport& rep = sol.report;
    if (!mask_is_row_column_convex(g0)) {
        rep.warnings.emplace_back("domain mask is not convex; solvability is not guaranteed");
    }

    std::vector<int> unknown(f.size(), -1);
    int n = 0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (f.interior(k / f.cols(), k % f.cols())) {
            unknown[k] = n++;
            f.values()[k] = 0.0;
        }
    }
    const double h2 = f.spacing() * f.spacing();

    // mode 0: Laplacian (harmonic guess), 1: frozen coefficients, 2: Newton.
    const auto assemble = [&](int mode) {
        std::vector<Eigen::Triplet<double>> trips;
        trips.reserve(static_cast<std::size_t>(n) * 36);
        for_each_triangle(f, [&](const auto& nodes, const Triangle& t, double gx, double gy) {
            Eigen::Matrix2d M = Eigen::Matrix2d::Identity();
            if (mode > 0) {
                const double W = graph_density(gx, gy);
                M /= W;
                if (mode == 2) {
                    const Vec2 gv(gx, gy);
                    M -= gv * gv.transpose() / (W * W * W);
                }
            }
            for (int a = 0; a < 4; ++a) {
                const int ra = unknown[nodes[a]];
                if (ra < 0) continue;
                const Vec2 sa(t.gx[a], t.gy[a]);
                for (int b = 0; b < 4; ++b) {
                    const int rb = unknown[nodes[b]];
                    if (rb < 0) continue;
                    trips.emplace_back(ra, rb, 0.25 * sa.dot(M * Vec2(t.gx[b], t.gy[b])));
                }
            }
        });
        Eigen::SparseMatrix<double> A(n, n);
        A.setFromTriplets(trips.begin(), trips.end());
        return A;
    };
    const auto laplace_gradient = [&]() {
        std::vector<double> grad(f.size(), 0.0);
        for_each_triangle(f, [&](const auto& nodes, const Triangle& t, double gx, double gy) {
            for (int c = 0; c < 4; ++c) grad[nodes[c]] += 0.25 * f.spacing() * (gx * t.gx[c] + gy * t.gy[c]);
        });
        return grad;
    };
    const auto restrict_to_unknowns = [&](const std::vector<double>& full) {
        Eigen::VectorXd r(n);
        for (std::size_t k = 0; k < full.size(); ++k)
            if (unknown[k] >= 0) r[unknown[k]] = full[k];
        return r;
    };
    const auto solve = [&](const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& rhs) {
        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(A);
        if (ldlt.info() != Eigen::Success) throw NonConvergence("linear system factorization failed", 0.0);
        Eigen::VectorXd x = ldlt.solve(rhs);
        if (ldlt.info() != Eigen::Success || !x.allFinite()) throw NonConvergence("linear solve failed", 0.0);
        return x;
    };
    const auto apply_step = [&](const Eigen::VectorXd& d, double t) {
        for (std::size_t k = 0; k < f.size(); ++k)
            if (unknown[k] >= 0) f.values()[k] += t * d[unknown[k]];
    };

    // Harmonic extension: the Dirichlet energy is quadratic, so one step from zero is exact.
    apply_step(solve(assemble(0), -restrict_to_unknowns(laplace_gradient())), 1.0);

    double area = area_graph(f);
    rep.area_history.push_back(area);
    Eigen::VectorXd grad = restrict_to_unknowns(area_gradient(f));
    rep.residual = grad.lpNorm<Eigen::Infinity>() / h2;

    while (rep.residual >= opt.tol) {
        if (rep.iterations >= opt.max_iter) {
            std::ostringstream os;
            os << "minimal graph solver stopped after " << opt.max_iter << " iterations with residual "
               << rep.residual;
            throw NonConvergence(os.str(), rep.residual);
        }
        const int mode = rep.iterations < opt.picard_iterations ? 1 : 2;
        const Eigen::VectorXd d = solve(assemble(mode), -grad);
        const double slope = grad.dot(d);

        const ScalarGrid saved = f;
        double t = 1.0;
        apply_step(d, t);
        double trial = area_graph(f);
        // Once the predicted decrease is at roundoff level, area comparisons are noise.
        const bool roundoff = std::abs(slope) <= 1e-13 * std::max(1.0, area);
        if (!roundoff) {
            int halvings = 0;
            while (!(trial <= area + opt.armijo * t * slope)) {
                if (++halvings > opt.max_halvings) {
                    throw NonConvergence("line search failed to decrease the area", rep.residual);
                }
                t *= 0.5;
                f = saved;
                apply_step(d, t);
                trial = area_graph(f);
            }
        }
        ++rep.iterations;
        area = trial;
        rep.area_history.push_back(area);
        grad = restrict_to_unknowns(area_gradient(f));
        rep.residual = grad.lpNorm<Eigen::Infinity>() / h2;
    }
    rep.converged = true;
    const ScalarGrid r = mge_residual(f);
    for (std::size_t k = 0; k < r.size(); ++k) rep.mge_residual = std::max(rep.mge_residual, std::abs(r.values()[k]));
    return sol;
}

}  // namespace minsurf
