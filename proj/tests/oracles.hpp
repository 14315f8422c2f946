// Reference routines used only by the tests. They are written directly from
// the update rule, independently of the library's loop structure.
#ifndef RBSOR_TESTS_ORACLES_HPP
#define RBSOR_TESTS_ORACLES_HPP

#include <cmath>
#include <cstddef>
#include <cstring>
#include <random>

#include "rbsor/grid.hpp"

namespace oracle {

inline double stencil_update(const rbsor::Grid& g, std::size_t i, std::size_t j, double omega) {
    const double gs = (g(i - 1, j) + g(i + 1, j) + g(i, j - 1) + g(i, j + 1)) / 4.0;
    return omega * gs + (1.0 - omega) * g(i, j);
}

/// Visits every cell and updates it only when its parity matches.
inline void guarded_sweep(rbsor::Grid& g, rbsor::CellColor color, double omega, std::size_t row_begin,
                          std::size_t row_end) {
    const std::size_t want = color == rbsor::CellColor::Red ? 0 : 1;
    for (std::size_t i = 0; i < g.side(); ++i) {
        for (std::size_t j = 0; j < g.side(); ++j) {
            if (i < row_begin || i >= row_end || g.is_boundary(i, j)) continue;
            if ((i + j) % 2 == want) g(i, j) = stencil_update(g, i, j, omega);
        }
    }
}

inline void guarded_sweep(rbsor::Grid& g, rbsor::CellColor color, double omega) {
    guarded_sweep(g, color, omega, 1, g.side() - 1);
}

inline double brute_max_abs_diff(const rbsor::Grid& a, const rbsor::Grid& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.side(); ++i) {
        for (std::size_t j = 0; j < a.side(); ++j) {
            const double d = std::fabs(a(i, j) - b(i, j));
            if (d > m) m = d;
        }
    }
    return m;
}

inline bool bitwise_equal(const rbsor::Grid& a, const rbsor::Grid& b) {
    if (a.side() != b.side()) return false;
    return std::memcmp(a.values().data(), b.values().data(), a.size() * sizeof(double)) == 0;
}

/// Arbitrary finite field (boundary included) with values in [lo, hi).
inline rbsor::Grid random_grid(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    rbsor::Grid g(n, 0.0);
    for (double& v : g.values()) v = dist(rng);
    return g;
}

inline rbsor::BoundarySpec random_boundary(std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    return {dist(rng), dist(rng), dist(rng), dist(rng)};
}

inline bool boundary_equal(const rbsor::Grid& a, const rbsor::Grid& b) {
    for (std::size_t i = 0; i < a.side(); ++i) {
        for (std::size_t j = 0; j < a.side(); ++j) {
            if (!a.is_boundary(i, j)) continue;
            const double x = a(i, j);
            const double y = b(i, j);
            if (std::memcmp(&x, &y, sizeof(double)) != 0) return false;
        }
    }
    return true;
}

}  // namespace oracle

#endif  // RBSOR_TESTS_ORACLES_HPP
