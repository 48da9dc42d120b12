#include "minsurf/roots.hpp"

#include "minsurf/errors.hpp"

#include <algorithm>
#include <cmath>

namespace minsurf {

namespace {

double central_slope(const std::function<double(double)>& g, double x) {
    const double step = 1e-7 * std::max(1.0, std::abs(x));
    return (g(x + step) - g(x - step)) / (2.0 * step);
}

double bisect(const std::function<double(double)>& g, double a, double b, double ga, double tol) {
    for (int it = 0; it < 200 && b - a > tol * std::max(1.0, std::abs(a)); ++it) {
        const double m = 0.5 * (a + b);
        const double gm = g(m);
        if (gm == 0.0) return m;
        if ((gm < 0.0) == (ga < 0.0)) {
            a = m;
            ga = gm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

double newton_polish(const std::function<double(double)>& g, double x, double a, double b) {
    double gx = g(x);
    for (int it = 0; it < 8 && gx != 0.0; ++it) {
        const double slope = central_slope(g, x);
        if (slope == 0.0 || !std::isfinite(slope)) break;
        const double next = x - gx / slope;
        if (next < a || next > b) break;
        const double gn = g(next);
        if (!(std::abs(gn) < std::abs(gx))) break;
        x = next;
        gx = gn;
    }
    return x;
}

// Zero of g' in [a, b] by bisection on the sign of the finite-difference slope.
double stationary_point(const std::function<double(double)>& g, double a, double b) {
    double sa = central_slope(g, a);
    for (int it = 0; it < 200 && b - a > 1e-14 * std::max(1.0, std::abs(a)); ++it) {
        const double m = 0.5 * (a + b);
        const double sm = central_slope(g, m);
        if ((sm < 0.0) == (sa < 0.0)) {
            a = m;
            sa = sm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

std::vector<Root> find_roots_1d(const std::function<double(double)>& g, double lo, double hi,
                                const RootOptions& opts) {
    if (!(lo < hi)) throw BracketInvalid("root bracket must satisfy lo < hi");
    const int n = std::max(8, opts.scan_points);
    std::vector<double> xs(n + 1), gs(n + 1);
    for (int k = 0; k <= n; ++k) {
        xs[k] = k == n ? hi : lo + (hi - lo) * static_cast<double>(k) / n;
        gs[k] = g(xs[k]);
    }

    std::vector<Root> roots;
    for (int k = 0; k < n; ++k) {
        if (gs[k] == 0.0) {
            const bool touch = k > 0 && gs[k - 1] != 0.0 && gs[k + 1] != 0.0 && (gs[k - 1] < 0.0) == (gs[k + 1] < 0.0);
            roots.push_back({xs[k], touch});
        } else if (gs[k + 1] != 0.0 && (gs[k] < 0.0) != (gs[k + 1] < 0.0)) {
            const double x = bisect(g, xs[k], xs[k + 1], gs[k], opts.tol);
            roots.push_back({newton_polish(g, x, xs[k], xs[k + 1]), false});
        }
    }
    if (gs[n] == 0.0) roots.push_back({xs[n], false});

    if (opts.detect_tangency) {
        for (int k = 1; k < n; ++k) {
            const bool local_min = std::abs(gs[k]) <= std::abs(gs[k - 1]) && std::abs(gs[k]) <= std::abs(gs[k + 1]);
            const bool same_sign = (gs[k - 1] < 0.0) == (gs[k] < 0.0) && (gs[k] < 0.0) == (gs[k + 1] < 0.0);
            if (!local_min || !same_sign || gs[k] == 0.0) continue;
            const double x = stationary_point(g, xs[k - 1], xs[k + 1]);
            if (std::abs(g(x)) < opts.tangency_tol) roots.push_back({x, true});
        }
    }

    std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) { return a.x < b.x; });
    // A pair of sign changes closer than the tangency resolution is one double root.
    std::vector<Root> merged;
    for (const Root& r : roots) {
        if (!merged.empty() && std::abs(r.x - merged.back().x) < 1e-7 * std::max(1.0, std::abs(r.x))) {
            merged.back() = {0.5 * (merged.back().x + r.x), true};
        } else {
            merged.push_back(r);
        }
    }
    return merged;
}

}  // namespace minsurf
