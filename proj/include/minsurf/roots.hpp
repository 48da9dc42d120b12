#pragma once

#include <functional>
#include <vector>

namespace minsurf {

struct Root {
    double x;
    bool tangent;  ///< double root found by tangency (no sign change)
};

struct RootOptions {
    int scan_points = 4000;
    double tol = 1e-12;
    double tangency_tol = 1e-9;
    bool detect_tangency = true;  ///< the multiplicity hint
};

/// All roots of g in [lo, hi]: sign changes are bracketed on a uniform scan, bisected,
/// and Newton-polished; local minima of |g| below tangency_tol are reported as double roots.
/// Throws BracketInvalid when lo >= hi.
std::vector<Root> find_roots_1d(const std::function<double(double)>& g, double lo, double hi,
                                const RootOptions& opts = {});

}  // namespace minsurf
