#ifndef RBSOR_SOLVER_HPP
#define RBSOR_SOLVER_HPP

#include <chrono>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "rbsor/grid.hpp"

namespace rbsor {

/// Iteration controls shared by every solver. Defaults reproduce the
/// reference experiment: omega 0.376, tolerance 1e-5, a convergence check
/// every 4000 iterations, at most 50000 iterations.
struct SolverConfig {
    double omega = 0.376;
    double epsilon = 1e-5;
    std::size_t max_iterations = 50000;
    std::size_t check_interval = 4000;
    unsigned workers = 1;
    /// Run exactly max_iterations with no convergence checks (benchmarking).
    bool fixed_iterations = false;

    bool operator==(const SolverConfig&) const = default;

    /// Throws std::invalid_argument naming the first violated constraint.
    void validate() const {
        if (!(omega > 0.0 && omega < 2.0)) {
            throw std::invalid_argument("omega must lie in (0, 2), got " + std::to_string(omega));
        }
        if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
            throw std::invalid_argument("epsilon must be positive and finite");
        }
        if (max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
        if (check_interval < 1) throw std::invalid_argument("check_interval must be at least 1");
        if (check_interval > max_iterations) {
            throw std::invalid_argument("check_interval (" + std::to_string(check_interval) +
                                        ") must not exceed max_iterations (" + std::to_string(max_iterations) +
                                        ")");
        }
        if (workers < 1) throw std::invalid_argument("workers must be at least 1");
    }

    bool is_check_iteration(std::size_t iter) const noexcept {
        return !fixed_iterations && iter % check_interval == 0;
    }
};

struct SolveReport {
    bool converged = false;
    std::size_t iterations = 0;
    /// Change measured by the most recent convergence check; empty if no
    /// check ran.
    std::optional<double> final_max_change;
    double elapsed_seconds = 0.0;
    /// The observer asked the solve to stop before convergence or the
    /// iteration cap.
    bool stopped_early = false;
};

/// Half-open range of grid rows [begin, end).
struct RowRange {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t size() const noexcept { return end > begin ? end - begin : 0; }
    bool empty() const noexcept { return size() == 0; }
    bool operator==(const RowRange&) const = default;
};

inline RowRange interior_rows(const Grid& g) noexcept { return {g.interior_begin(), g.interior_end()}; }

/// Instrumentation hooks. Solvers take any type with these members; derive
/// from this and shadow the ones you need.
struct NullObserver {
    /// The grid was copied aside at the start of a check iteration.
    void on_snapshot(std::size_t /*iter*/) {}
    /// All cells of `color` were updated for iteration `iter`. In the
    /// parallel solver this is the phase barrier.
    void on_phase_end(std::size_t /*iter*/, CellColor /*color*/) {}
    void on_check(std::size_t /*iter*/, double /*max_change*/) {}
    /// Called from worker threads right before each worker sweeps its rows.
    void on_sweep(unsigned /*worker*/, CellColor /*color*/, RowRange /*rows*/) {}
    /// Polled by the coordinator after every completed iteration.
    bool stop_requested(std::size_t /*iter*/) { return false; }
};

namespace detail {

inline double relax(const double* up, const double* mid, const double* down, std::size_t j, double omega) noexcept {
    const double avg = (up[j] + down[j] + mid[j - 1] + mid[j + 1]) * 0.25;
    return omega * avg + (1.0 - omega) * mid[j];
}

inline void require_same_side(const Grid& a, const Grid& b, const char* what) {
    if (a.side() != b.side()) {
        throw std::invalid_argument(std::string(what) + ": grid sides differ (" + std::to_string(a.side()) +
                                    " vs " + std::to_string(b.side()) + ")");
    }
}

}  // namespace detail

/// Over-relaxed five-point Gauss-Seidel value for interior cell (i, j):
/// omega * (N + S + W + E) / 4 + (1 - omega) * X(i, j).
inline double sor_cell_update(const Grid& grid, std::size_t i, std::size_t j, double omega) {
    if (i >= grid.side() || j >= grid.side() || grid.is_boundary(i, j)) {
        throw std::out_of_range("sor_cell_update: (" + std::to_string(i) + ", " + std::to_string(j) +
                                ") is not an interior cell");
    }
    return detail::relax(grid.row(i - 1), grid.row(i), grid.row(i + 1), j, omega);
}

/// Updates, in place and in ascending (i, j) order, every interior cell of
/// `color` whose row lies in `rows`. Each row starts at the first column of
/// the right parity and advances by two, so no per-cell color test is made.
inline void sweep_color(Grid& grid, CellColor color, double omega, RowRange rows) noexcept {
    const std::size_t n = grid.side();
    const std::size_t first = std::max(rows.begin, grid.interior_begin());
    const std::size_t last = std::min(rows.end, grid.interior_end());
    const std::size_t parity = color == CellColor::Red ? 0 : 1;
    for (std::size_t i = first; i < last; ++i) {
        const double* up = grid.row(i - 1);
        double* mid = grid.row(i);
        const double* down = grid.row(i + 1);
        // Smallest j >= 1 with (i + j) % 2 == parity.
        const std::size_t j0 = 1 + ((i + 1 + parity) & 1);
        for (std::size_t j = j0; j < n - 1; j += 2) {
            mid[j] = detail::relax(up, mid, down, j, omega);
        }
    }
}

inline void sweep_color(Grid& grid, CellColor color, double omega) noexcept {
    sweep_color(grid, color, omega, interior_rows(grid));
}

/// Infinity-norm distance between two grids of equal side.
inline double max_abs_diff(const Grid& a, const Grid& b) {
    detail::require_same_side(a, b, "max_abs_diff");
    const auto av = a.values();
    const auto bv = b.values();
    double m = 0.0;
    for (std::size_t k = 0; k < av.size(); ++k) {
        m = std::max(m, std::abs(av[k] - bv[k]));
    }
    return m;
}

namespace detail {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Shared iterate/check loop for the serial solvers. `step(iter)` performs
/// one full iteration on `grid`.
template <class Observer, class Step>
SolveReport run_serial_loop(Grid& grid, const SolverConfig& config, Observer& obs, Step&& step) {
    SolveReport report;
    std::optional<Grid> old;
    if (!config.fixed_iterations) old.emplace(grid.side(), 0.0);

    const auto start = Clock::now();
    for (std::size_t iter = 1; iter <= config.max_iterations; ++iter) {
        const bool check = config.is_check_iteration(iter);
        if (check) {
            old->assign_from(grid);
            obs.on_snapshot(iter);
        }
        step(iter);
        report.iterations = iter;
        if (check) {
            const double change = max_abs_diff(grid, *old);
            report.final_max_change = change;
            obs.on_check(iter, change);
            if (change < config.epsilon) {
                report.converged = true;
                break;
            }
        }
        if (obs.stop_requested(iter)) {
            report.stopped_early = true;
            break;
        }
    }
    report.elapsed_seconds = seconds_since(start);
    return report;
}

}  // namespace detail

/// Red-black SOR on a single thread: a red sweep then a black sweep over
/// all interior rows per iteration. `config.workers` is ignored.
template <class Observer = NullObserver>
SolveReport solve_serial(Grid& grid, const SolverConfig& config, Observer&& obs = {}) {
    config.validate();
    const auto rows = interior_rows(grid);
    return detail::run_serial_loop(grid, config, obs, [&](std::size_t iter) {
        sweep_color(grid, CellColor::Red, config.omega, rows);
        obs.on_phase_end(iter, CellColor::Red);
        sweep_color(grid, CellColor::Black, config.omega, rows);
        obs.on_phase_end(iter, CellColor::Black);
    });
}

/// Red-black Gauss-Seidel: solve_serial with omega = 1.
template <class Observer = NullObserver>
SolveReport gauss_seidel_solve(Grid& grid, SolverConfig config, Observer&& obs = {}) {
    config.omega = 1.0;
    return solve_serial(grid, config, std::forward<Observer>(obs));
}

/// Plain (unrelaxed) Jacobi iteration: every interior cell becomes the mean
/// of its four neighbours from the previous iterate. `config.omega` and
/// `config.workers` are ignored; the check protocol matches solve_serial.
template <class Observer = NullObserver>
SolveReport jacobi_solve(Grid& grid, const SolverConfig& config, Observer&& obs = {}) {
    config.validate();
    const std::size_t n = grid.side();
    Grid prev = grid;
    return detail::run_serial_loop(grid, config, obs, [&](std::size_t) {
        prev.assign_from(grid);
        for (std::size_t i = 1; i < n - 1; ++i) {
            const double* up = prev.row(i - 1);
            const double* mid = prev.row(i);
            const double* down = prev.row(i + 1);
            double* out = grid.row(i);
            for (std::size_t j = 1; j < n - 1; ++j) {
                out[j] = (up[j] + down[j] + mid[j - 1] + mid[j + 1]) * 0.25;
            }
        }
    });
}

}  // namespace rbsor

#endif  // RBSOR_SOLVER_HPP
