#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "rbsor/grid.hpp"

using rbsor::BoundarySpec;
using rbsor::CellColor;
using rbsor::Grid;

TEST(Grid, ZeroGrid) {
    const Grid g = rbsor::new_grid(3, {0, 0, 0, 0}, 0.0);
    ASSERT_EQ(g.side(), 3u);
    for (double v : g.values()) EXPECT_EQ(v, 0.0);
}

TEST(Grid, NorthHotSmall) {
    const Grid g = rbsor::new_grid(4, {1.0, 0.0, 0.0, 0.0});
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(g(0, j), 1.0);
    for (std::size_t i = 1; i < 3; ++i) {
        for (std::size_t j = 1; j < 3; ++j) EXPECT_EQ(g(i, j), 0.0);
    }
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(g(3, j), 0.0);
}

TEST(Grid, CornersTakeRowSide) {
    const Grid g = rbsor::new_grid(5, {1.0, 2.0, 3.0, 4.0}, 0.5);
    EXPECT_EQ(g(0, 0), 1.0);
    EXPECT_EQ(g(0, 4), 1.0);
    EXPECT_EQ(g(4, 0), 2.0);
    EXPECT_EQ(g(4, 4), 2.0);
    EXPECT_EQ(g(2, 0), 4.0);
    EXPECT_EQ(g(2, 4), 3.0);
    EXPECT_EQ(g(2, 2), 0.5);
}

TEST(Grid, DefaultBoundaryIsNorthHot) {
    EXPECT_EQ(BoundarySpec{}, (BoundarySpec{1.0, 0.0, 0.0, 0.0}));
}

TEST(Grid, ReferenceProblemSize) {
    const Grid g = rbsor::new_grid(4096, BoundarySpec{});
    EXPECT_EQ(g.size(), 4096u * 4096u);
    EXPECT_EQ(g(0, 2048), 1.0);
    EXPECT_EQ(g(2048, 2048), 0.0);
    EXPECT_EQ(g(4095, 2048), 0.0);
    const Grid copy = rbsor::copy_grid(g);
    EXPECT_TRUE(copy == g);
}

TEST(Grid, RejectsTooSmall) {
    EXPECT_THROW(rbsor::new_grid(2, {}), std::invalid_argument);
    EXPECT_THROW(rbsor::new_grid(0, {}), std::invalid_argument);
    EXPECT_THROW(Grid(3, std::vector<double>(8, 0.0)), std::invalid_argument);
}

TEST(Grid, RejectsNonFinite) {
    const double inf = std::numeric_limits<double>::infinity();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(rbsor::new_grid(4, {nan, 0, 0, 0}), std::invalid_argument);
    EXPECT_THROW(rbsor::new_grid(4, {0, 0, inf, 0}), std::invalid_argument);
    EXPECT_THROW(rbsor::new_grid(4, {}, -inf), std::invalid_argument);
}

TEST(Grid, CellColor) {
    EXPECT_EQ(rbsor::cell_color(0, 0), CellColor::Red);
    EXPECT_EQ(rbsor::cell_color(1, 2), CellColor::Black);
    EXPECT_EQ(rbsor::cell_color(2, 2), CellColor::Red);
    static_assert(rbsor::cell_color(3, 4) == CellColor::Black);
}

TEST(Grid, ParityPartitionByEnumeration) {
    for (std::size_t n = 3; n <= 9; ++n) {
        for (std::size_t i = 1; i + 1 < n; ++i) {
            for (std::size_t j = 1; j + 1 < n; ++j) {
                const CellColor c = rbsor::cell_color(i, j);
                EXPECT_NE(c == CellColor::Red, c == CellColor::Black);
                const CellColor opposite = rbsor::other_color(c);
                EXPECT_EQ(rbsor::cell_color(i - 1, j), opposite);
                EXPECT_EQ(rbsor::cell_color(i + 1, j), opposite);
                EXPECT_EQ(rbsor::cell_color(i, j - 1), opposite);
                EXPECT_EQ(rbsor::cell_color(i, j + 1), opposite);
            }
        }
    }
}

TEST(Grid, CopyIsIndependent) {
    Grid src = rbsor::new_grid(6, {0, 0, 0, 0});
    const Grid zero_copy = rbsor::copy_grid(src);
    EXPECT_TRUE(zero_copy == src);

    Grid copy = rbsor::copy_grid(src);
    src(2, 3) = 0.75;
    std::size_t differing = 0;
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = 0; j < 6; ++j) {
            if (src(i, j) != copy(i, j)) {
                ++differing;
                EXPECT_EQ(i, 2u);
                EXPECT_EQ(j, 3u);
            }
        }
    }
    EXPECT_EQ(differing, 1u);
}

TEST(Grid, AssignFromRequiresSameSide) {
    Grid a(4, 0.0);
    const Grid b(5, 1.0);
    EXPECT_THROW(a.assign_from(b), std::invalid_argument);
    const Grid c(4, 2.0);
    a.assign_from(c);
    EXPECT_TRUE(a == c);
}
