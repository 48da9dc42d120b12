#include "minsurf/numeric.hpp"

#include <cmath>

namespace minsurf {

namespace {

Vec2 sign_normalized(Vec2 v) {
    v.normalize();
    constexpr double tiny = 1e-14;
    const bool flip = std::abs(v.x()) > tiny ? v.x() < 0.0 : v.y() < 0.0;
    return flip ? Vec2(-v) : v;
}

}  // namespace

SymEigen2 eig_sym2(const SymMat2& m) {
    const double half_trace = 0.5 * (m.a + m.c);
    const double half_gap = 0.5 * (m.a - m.c);
    const double radius = std::hypot(half_gap, m.b);

    SymEigen2 out{half_trace + radius, half_trace - radius, Vec2(1.0, 0.0), Vec2(0.0, 1.0)};
    if (m.b == 0.0 || radius == 0.0) {
        if (m.a >= m.c) {
            out.lambda1 = m.a;
            out.lambda2 = m.c;
        } else {
            out.lambda1 = m.c;
            out.lambda2 = m.a;
            out.v1 = Vec2(0.0, 1.0);
            out.v2 = Vec2(1.0, 0.0);
        }
        return out;
    }

    // Two candidate eigenvectors for lambda1; take the better conditioned one.
    const Vec2 p(m.b, out.lambda1 - m.a);
    const Vec2 q(out.lambda1 - m.c, m.b);
    out.v1 = sign_normalized(p.squaredNorm() >= q.squaredNorm() ? p : q);
    out.v2 = sign_normalized(Vec2(out.v1.y(), -out.v1.x()));
    return out;
}

}  // namespace minsurf
