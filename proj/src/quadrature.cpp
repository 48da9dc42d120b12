#include "minsurf/quadrature.hpp"

#include <algorithm>
#include <limits>
#include <optional>

namespace minsurf {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kClosureTol = 1e-12;

double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * kPi);
    return a < 0.0 ? a + 2.0 * kPi : a;
}

double signed_area(const std::vector<Complex>& v) {
    double twice = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) {
        const Complex& p = v[k];
        const Complex& q = v[(k + 1) % v.size()];
        twice += p.real() * q.imag() - q.real() * p.imag();
    }
    return 0.5 * twice;
}

}  // namespace

Complex Loop::Piece::point(double s) const {
    if (kind == Kind::Line) return start + s * (end - start);
    return start + radius * std::exp(kI * (theta0 + s * sweep));
}

Complex Loop::Piece::derivative(double s) const {
    if (kind == Kind::Line) return end - start;
    return kI * sweep * radius * std::exp(kI * (theta0 + s * sweep));
}

double Loop::Piece::distance_to(Complex p) const {
    if (kind == Kind::Line) {
        const Complex d = end - start;
        const double len2 = std::norm(d);
        double s = len2 > 0.0 ? ((p - start) * std::conj(d)).real() / len2 : 0.0;
        s = std::clamp(s, 0.0, 1.0);
        return std::abs(p - point(s));
    }
    const Complex rel = p - start;
    if (std::abs(sweep) >= 2.0 * kPi) return std::abs(std::abs(rel) - radius);
    // Angle of p measured from theta0 along the sweep direction.
    const double phi = std::arg(rel);
    const double along = sweep >= 0.0 ? wrap_angle(phi - theta0) : wrap_angle(theta0 - phi);
    if (std::abs(rel) > 0.0 && along <= std::abs(sweep)) return std::abs(std::abs(rel) - radius);
    return std::min(std::abs(p - point(0.0)), std::abs(p - point(1.0)));
}

Loop::Loop(std::vector<Piece> pieces, bool ccw, int samples)
    : pieces_(std::move(pieces)), counterclockwise_(ccw), samples_(samples) {
    if (pieces_.empty()) throw InvalidInput("loop needs at least one piece");
    if (samples_ < 16) throw InvalidInput("loop sample count must be at least 16");
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
        const Complex tail = pieces_[k].point(1.0);
        const Complex head = pieces_[(k + 1) % pieces_.size()].point(0.0);
        const double scale = std::max(1.0, std::abs(head));
        if (std::abs(tail - head) > kClosureTol * scale) {
            throw InvalidInput("loop is not closed: pieces do not join");
        }
    }
}

Loop Loop::circle(Complex center, double radius, bool counterclockwise, int samples) {
    if (!(radius > 0.0)) throw InvalidInput("circle radius must be positive");
    Piece arc{Piece::Kind::Arc, center, center, radius, 0.0, counterclockwise ? 2.0 * kPi : -2.0 * kPi};
    return Loop({arc}, counterclockwise, samples);
}

Loop Loop::polygon(std::vector<Complex> vertices, int samples) {
    if (vertices.size() < 3) throw InvalidInput("polygon loop needs at least three vertices");
    std::vector<Piece> pieces;
    pieces.reserve(vertices.size());
    for (std::size_t k = 0; k < vertices.size(); ++k) {
        pieces.push_back({Piece::Kind::Line, vertices[k], vertices[(k + 1) % vertices.size()]});
    }
    return Loop(std::move(pieces), signed_area(vertices) > 0.0, samples);
}

Loop Loop::concat(const Loop& a, const Loop& b) {
    if (std::abs(a.base_point() - b.base_point()) > kClosureTol * std::max(1.0, std::abs(a.base_point()))) {
        throw InvalidInput("concatenated loops must share a base point");
    }
    std::vector<Piece> pieces = a.pieces_;
    pieces.insert(pieces.end(), b.pieces_.begin(), b.pieces_.end());
    return Loop(std::move(pieces), a.counterclockwise_, std::max(a.samples_, b.samples_));
}

Complex Loop::point(double t) const {
    const double scaled = std::clamp(t, 0.0, 1.0) * static_cast<double>(pieces_.size());
    const auto k = std::min(static_cast<std::size_t>(scaled), pieces_.size() - 1);
    return pieces_[k].point(scaled - static_cast<double>(k));
}

double Loop::distance_to(Complex p) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& piece : pieces_) best = std::min(best, piece.distance_to(p));
    return best;
}

void Loop::require_clearance(std::span<const Complex> singularities, double margin) const {
    for (const Complex& s : singularities) {
        if (!(distance_to(s) > margin)) {
            throw DomainViolation("loop passes within " + std::to_string(margin) + " of singular point (" +
                                  std::to_string(s.real()) + ", " + std::to_string(s.imag()) + ")");
        }
    }
}

namespace {

template <class T>
T contour_sum(const std::function<T(Complex)>& g, const Loop& loop, const QuadOptions& opts) {
    QuadOptions piece_opts = opts;
    const int per_piece = std::max<int>(1, loop.samples() / static_cast<int>(loop.pieces().size()));
    piece_opts.initial_panels = std::max(opts.initial_panels, per_piece);
    piece_opts.abs_tol = opts.abs_tol / static_cast<double>(loop.pieces().size());
    std::optional<T> total;
    for (const auto& piece : loop.pieces()) {
        const auto integrand = [&](double s) -> T { return g(piece.point(s)) * piece.derivative(s); };
        const T part = integrate_1d(integrand, 0.0, 1.0, piece_opts).value;
        if (total) {
            *total += part;
        } else {
            total = part;
        }
    }
    return *total;
}

}  // namespace

Complex quad_contour(const std::function<Complex(Complex)>& g, const Loop& loop, const QuadOptions& opts) {
    return contour_sum<Complex>(g, loop, opts);
}

CVecN quad_contour(const std::function<CVecN(Complex)>& g, const Loop& loop, const QuadOptions& opts) {
    return contour_sum<CVecN>(g, loop, opts);
}

QuadEstimate<double> quad_area(const std::function<double(double, double)>& g, const Region& region,
                               const QuadOptions& opts) {
    // The inner integrals get a share of the budget proportional to the outer length.
    return std::visit(
        [&](const auto& r) -> QuadEstimate<double> {
            using R = std::decay_t<decltype(r)>;
            double inner_error = 0.0;
            QuadOptions inner = opts;
            if constexpr (std::is_same_v<R, Rectangle>) {
                inner.abs_tol = 0.25 * opts.abs_tol / std::max(1.0, std::abs(r.v1 - r.v0));
                inner.rel_tol = 0.25 * opts.rel_tol;
                const auto row = [&](double v) {
                    const auto est = integrate_1d([&](double u) { return g(u, v); }, r.u0, r.u1, inner);
                    inner_error = std::max(inner_error, est.error);
                    return est.value;
                };
                auto est = integrate_1d(row, r.v0, r.v1, opts);
                est.error += inner_error * std::abs(r.v1 - r.v0);
                return est;
            } else {
                if (!(r.outer > r.inner) || r.inner < 0.0) throw InvalidInput("annulus needs 0 <= inner < outer");
                inner.initial_panels = std::max(inner.initial_panels, 4);
                // Rings near roundoff level cannot meet an absolute target scaled by a large weight.
                inner.rel_tol = std::max(0.25 * opts.rel_tol, 1e-14);
                const auto ring = [&](double radius, double weight) {
                    inner.abs_tol = 0.25 * opts.abs_tol / std::max(1.0, weight);
                    const auto est = integrate_1d(
                        [&](double theta) {
                            const Complex w = r.center + std::polar(radius, theta);
                            return g(w.real(), w.imag());
                        },
                        0.0, 2.0 * kPi, inner);
                    inner_error = std::max(inner_error, est.error * weight);
                    return est.value;
                };
                // log-radius from max(inner, 1) outward; linear radius on any part below 1.
                const double split = r.inner > 0.0 ? r.inner : std::min(r.outer, 1.0);
                QuadEstimate<double> total{0.0, 0.0, 0};
                if (split < r.outer) {
                    const double length = std::log(r.outer) - std::log(split);
                    const auto integrand = [&](double s) {
                        const double radius = std::exp(s);
                        return radius * radius * ring(radius, radius * radius * length);
                    };
                    total = integrate_1d(integrand, std::log(split), std::log(r.outer), opts);
                }
                if (r.inner == 0.0) {
                    const auto lin = integrate_1d([&](double radius) { return radius * ring(radius, split * split); },
                                                  0.0, split, opts);
                    total.value += lin.value;
                    total.error += lin.error;
                    total.panels += lin.panels;
                }
                total.error += inner_error;
                return total;
            }
        },
        region);
}

}  // namespace minsurf
