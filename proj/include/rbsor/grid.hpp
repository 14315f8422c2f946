#ifndef RBSOR_GRID_HPP
#define RBSOR_GRID_HPP

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rbsor {

/// Constant temperature held on each side of the square domain.
struct BoundarySpec {
    double north = 1.0;
    double south = 0.0;
    double east = 0.0;
    double west = 0.0;

    bool operator==(const BoundarySpec&) const = default;
};

enum class CellColor { Red, Black };

/// Red iff (i + j) is even.
constexpr CellColor cell_color(std::size_t i, std::size_t j) noexcept {
    return ((i + j) % 2 == 0) ? CellColor::Red : CellColor::Black;
}

constexpr CellColor other_color(CellColor c) noexcept {
    return c == CellColor::Red ? CellColor::Black : CellColor::Red;
}

constexpr const char* to_string(CellColor c) noexcept {
    return c == CellColor::Red ? "red" : "black";
}

/// Square temperature field of side n, stored row-major. The outermost
/// ring of cells is the fixed boundary; rows/columns 1..n-2 are interior.
class Grid {
public:
    static constexpr std::size_t min_side = 3;

    Grid(std::size_t n, double fill) : n_(n), values_(checked_side(n) * n, fill) {}

    /// Adopts an existing row-major field of n*n values.
    Grid(std::size_t n, std::vector<double> values) : n_(checked_side(n)), values_(std::move(values)) {
        if (values_.size() != n_ * n_) {
            throw std::invalid_argument("grid: expected " + std::to_string(n_ * n_) + " values, got " +
                                        std::to_string(values_.size()));
        }
    }

    std::size_t side() const noexcept { return n_; }
    std::size_t size() const noexcept { return values_.size(); }

    /// First and one-past-last interior row (same for columns).
    std::size_t interior_begin() const noexcept { return 1; }
    std::size_t interior_end() const noexcept { return n_ - 1; }

    bool is_boundary(std::size_t i, std::size_t j) const noexcept {
        return i == 0 || j == 0 || i == n_ - 1 || j == n_ - 1;
    }

    double& operator()(std::size_t i, std::size_t j) noexcept {
        assert(i < n_ && j < n_);
        return values_[i * n_ + j];
    }
    double operator()(std::size_t i, std::size_t j) const noexcept {
        assert(i < n_ && j < n_);
        return values_[i * n_ + j];
    }

    double* row(std::size_t i) noexcept { return values_.data() + i * n_; }
    const double* row(std::size_t i) const noexcept { return values_.data() + i * n_; }

    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }

    /// Overwrites this grid's values with those of `src` without reallocating.
    void assign_from(const Grid& src) {
        if (src.n_ != n_) {
            throw std::invalid_argument("grid: cannot assign a " + std::to_string(src.n_) + "-grid to a " +
                                        std::to_string(n_) + "-grid");
        }
        std::copy(src.values_.begin(), src.values_.end(), values_.begin());
    }

    bool operator==(const Grid&) const = default;

private:
    static std::size_t checked_side(std::size_t n) {
        if (n < min_side) {
            throw std::invalid_argument("grid: side must be at least 3 (one interior cell), got " +
                                        std::to_string(n));
        }
        return n;
    }

    std::size_t n_;
    std::vector<double> values_;
};

/// Builds a grid with constant sides and a uniform interior. Corner cells
/// take the north/south value of their row.
inline Grid new_grid(std::size_t n, const BoundarySpec& boundary, double interior_init = 0.0) {
    for (double v : {boundary.north, boundary.south, boundary.east, boundary.west, interior_init}) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("grid: boundary and initial values must be finite");
        }
    }
    Grid g(n, interior_init);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        g(i, 0) = boundary.west;
        g(i, n - 1) = boundary.east;
    }
    for (std::size_t j = 0; j < n; ++j) {
        g(0, j) = boundary.north;
        g(n - 1, j) = boundary.south;
    }
    return g;
}

inline Grid copy_grid(const Grid& src) { return src; }

inline bool all_finite(const Grid& g) {
    return std::all_of(g.values().begin(), g.values().end(), [](double v) { return std::isfinite(v); });
}

}  // namespace rbsor

#endif  // RBSOR_GRID_HPP
