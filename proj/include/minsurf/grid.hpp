#pragma once

#include "minsurf/errors.hpp"
#include "minsurf/numeric.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace minsurf {

/// Node kinds of a masked grid. Boundary nodes are the non-interior nodes within one
/// step (including diagonals) of an interior node; they carry Dirichlet data.
enum class NodeKind : unsigned char { Outside, Boundary, Interior };

/// Uniform axis-aligned grid of samples over a plane domain. Row i sits at
/// y = origin.y + i*h, column j at x = origin.x + j*h.
template <class T>
class GridField {
public:
    GridField() = default;

    GridField(Vec2 origin, double spacing, std::size_t rows, std::size_t cols, std::vector<bool> interior,
              T fill = T{})
        : origin_(origin), h_(spacing), rows_(rows), cols_(cols), interior_(std::move(interior)),
          values_(rows * cols, fill) {
        if (!(spacing > 0.0)) throw InvalidInput("grid spacing must be positive");
        if (rows < 3 || cols < 3) throw InvalidInput("grid needs at least 3x3 nodes");
        if (interior_.size() != rows * cols) throw InvalidInput("mask size does not match grid dims");
        classify();
    }

    /// Grid whose mask and values come from callables of (x, y).
    static GridField sample(Vec2 origin, double spacing, std::size_t rows, std::size_t cols,
                            const std::function<bool(double, double)>& inside,
                            const std::function<T(double, double)>& value) {
        std::vector<bool> mask(rows * cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                mask[i * cols + j] = inside(origin.x() + j * spacing, origin.y() + i * spacing);
        GridField g(origin, spacing, rows, cols, std::move(mask));
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                if (g.kind(i, j) != NodeKind::Outside) g(i, j) = value(g.x(j), g.y(i));
        return g;
    }

    /// Same layout, every in-domain value replaced by fn(x, y, current).
    template <class U, class Fn>
    GridField<U> map(Fn&& fn) const {
        GridField<U> out(origin_, h_, rows_, cols_, interior_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (kind(i, j) != NodeKind::Outside) out(i, j) = fn(x(j), y(i), (*this)(i, j));
        return out;
    }

    Vec2 origin() const { return origin_; }
    double spacing() const { return h_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return values_.size(); }
    double x(std::size_t j) const { return origin_.x() + static_cast<double>(j) * h_; }
    double y(std::size_t i) const { return origin_.y() + static_cast<double>(i) * h_; }
    std::size_t index(std::size_t i, std::size_t j) const { return i * cols_ + j; }

    NodeKind kind(std::size_t i, std::size_t j) const { return kinds_[index(i, j)]; }
    bool interior(std::size_t i, std::size_t j) const { return kind(i, j) == NodeKind::Interior; }
    /// Interior or boundary: the closure of the domain on the grid.
    bool in_closure(std::size_t i, std::size_t j) const { return kind(i, j) != NodeKind::Outside; }
    const std::vector<bool>& mask() const { return interior_; }
    std::size_t interior_count() const {
        std::size_t n = 0;
        for (auto k : kinds_) n += k == NodeKind::Interior;
        return n;
    }

    T& operator()(std::size_t i, std::size_t j) { return values_[index(i, j)]; }
    const T& operator()(std::size_t i, std::size_t j) const { return values_[index(i, j)]; }
    std::vector<T>& values() { return values_; }
    const std::vector<T>& values() const { return values_; }

private:
    void classify() {
        kinds_.assign(rows_ * cols_, NodeKind::Outside);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                if (!interior_[index(i, j)]) continue;
                if (i == 0 || j == 0 || i + 1 == rows_ || j + 1 == cols_) {
                    throw InvalidInput("interior node on the grid edge has no outer neighbour");
                }
                kinds_[index(i, j)] = NodeKind::Interior;
            }
        }
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                if (!interior_[index(i, j)]) continue;
                for (std::size_t a = i - 1; a <= i + 1; ++a)
                    for (std::size_t b = j - 1; b <= j + 1; ++b)
                        if (kinds_[index(a, b)] == NodeKind::Outside) kinds_[index(a, b)] = NodeKind::Boundary;
            }
        }
    }

    Vec2 origin_{0.0, 0.0};
    double h_ = 1.0;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<bool> interior_;
    std::vector<NodeKind> kinds_;
    std::vector<T> values_;
};

using ScalarGrid = GridField<double>;
using VectorGrid = GridField<VecN>;

}  // namespace minsurf
