#ifndef RBSOR_SCHEDULER_HPP
#define RBSOR_SCHEDULER_HPP

#include <atomic>
#include <barrier>
#include <cstddef>
#include <exception>
#include <latch>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rbsor/grid.hpp"
#include "rbsor/solver.hpp"

namespace rbsor {

struct Assignment {
    unsigned worker = 0;
    RowRange rows;

    bool operator==(const Assignment&) const = default;
};

/// Contiguous blocks of interior rows, one per worker, in worker order.
struct Partition {
    std::vector<Assignment> assignments;

    const RowRange& rows_of(unsigned worker) const { return assignments.at(worker).rows; }
};

/// Splits rows 1..n-2 into `workers` contiguous blocks whose sizes differ by
/// at most one; the first (rows % workers) blocks get the extra row. Workers
/// beyond the row count receive empty ranges.
inline Partition partition_rows(std::size_t n, unsigned workers) {
    if (n < Grid::min_side) throw std::invalid_argument("partition_rows: grid side must be at least 3");
    if (workers < 1) throw std::invalid_argument("partition_rows: workers must be at least 1");

    const std::size_t interior = n - 2;
    const std::size_t base = interior / workers;
    const std::size_t extra = interior % workers;
    Partition p;
    p.assignments.reserve(workers);
    std::size_t row = 1;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t len = base + (w < extra ? 1 : 0);
        p.assignments.push_back({w, {row, row + len}});
        row += len;
    }
    return p;
}

/// Red-black SOR with `config.workers` threads. Each iteration runs a red
/// phase and a black phase; every worker sweeps its own row block and then
/// waits on a shared barrier. Snapshots, convergence checks and the stop
/// decision run in the barrier's completion step, so exactly one thread
/// executes them while all workers are parked. The calling thread acts as
/// worker 0.
///
/// The result is bitwise identical to solve_serial for any worker count.
/// If a worker throws, the grid is restored to its input state and a
/// std::runtime_error naming the worker is thrown.
template <class Observer = NullObserver>
SolveReport solve_parallel(Grid& grid, const SolverConfig& config, Observer&& obs = {}) {
    config.validate();
    const unsigned workers = config.workers;
    const Partition partition = partition_rows(grid.side(), workers);

    const Grid backup = grid;
    std::optional<Grid> snapshot;
    if (!config.fixed_iterations) snapshot.emplace(grid.side(), 0.0);

    SolveReport report;
    std::size_t iter = 1;
    bool check = false;
    bool done = false;
    CellColor phase = CellColor::Red;

    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::string error_message;
    auto record_failure = [&](const std::string& who, std::exception_ptr ep) noexcept {
        std::string what = "unknown error";
        try {
            std::rethrow_exception(ep);
        } catch (const std::exception& e) {
            what = e.what();
        } catch (...) {
        }
        std::lock_guard lock(error_mutex);
        if (error_message.empty()) error_message = who + ": " + what;
        failed.store(true, std::memory_order_relaxed);
    };

    auto begin_iteration = [&]() {
        check = config.is_check_iteration(iter);
        if (check) {
            snapshot->assign_from(grid);
            obs.on_snapshot(iter);
        }
    };

    // Runs once per phase on a single thread while every worker is blocked.
    auto on_phase_complete = [&]() noexcept {
        try {
            obs.on_phase_end(iter, phase);
            if (phase == CellColor::Red) {
                phase = CellColor::Black;
                return;
            }
            phase = CellColor::Red;
            report.iterations = iter;
            if (failed.load(std::memory_order_relaxed)) {
                done = true;
                return;
            }
            if (check) {
                const double change = max_abs_diff(grid, *snapshot);
                report.final_max_change = change;
                obs.on_check(iter, change);
                if (change < config.epsilon) {
                    report.converged = true;
                    done = true;
                    return;
                }
            }
            if (obs.stop_requested(iter)) {
                report.stopped_early = true;
                done = true;
                return;
            }
            if (iter == config.max_iterations) {
                done = true;
                return;
            }
            ++iter;
            begin_iteration();
        } catch (...) {
            record_failure("coordinator", std::current_exception());
            done = true;
        }
    };

    std::barrier sync(static_cast<std::ptrdiff_t>(workers), on_phase_complete);
    std::latch started(1);
    bool launch_failed = false;

    auto run_worker = [&](unsigned w) {
        const RowRange rows = partition.rows_of(w);
        auto sweep = [&](CellColor color) {
            if (failed.load(std::memory_order_relaxed)) return;
            try {
                obs.on_sweep(w, color, rows);
                sweep_color(grid, color, config.omega, rows);
            } catch (...) {
                record_failure("worker " + std::to_string(w), std::current_exception());
            }
        };
        started.wait();
        if (launch_failed) return;
        while (true) {
            sweep(CellColor::Red);
            sync.arrive_and_wait();
            sweep(CellColor::Black);
            sync.arrive_and_wait();
            if (done) break;
        }
    };

    const auto start = detail::Clock::now();
    try {
        begin_iteration();
    } catch (...) {
        grid.assign_from(backup);
        throw;
    }
    {
        std::vector<std::jthread> threads;
        try {
            threads.reserve(workers - 1);
            for (unsigned w = 1; w < workers; ++w) threads.emplace_back(run_worker, w);
        } catch (...) {
            launch_failed = true;
            started.count_down();
            threads.clear();
            grid.assign_from(backup);
            throw;
        }
        started.count_down();
        run_worker(0);
    }
    report.elapsed_seconds = detail::seconds_since(start);

    if (failed.load()) {
        grid.assign_from(backup);
        throw std::runtime_error("solve_parallel aborted: " + error_message);
    }
    return report;
}

}  // namespace rbsor

#endif  // RBSOR_SCHEDULER_HPP
