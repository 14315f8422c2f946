// Command-line driver: one solve, or the worker-count scaling benchmark.
//
// Exit codes: 0 success, 1 usage or runtime error, 2 solve did not converge.

#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "rbsor/bench.hpp"
#include "rbsor/grid.hpp"
#include "rbsor/io.hpp"
#include "rbsor/scheduler.hpp"
#include "rbsor/solver.hpp"

namespace {

using namespace rbsor;

struct DeadlineObserver : NullObserver {
    std::optional<std::chrono::steady_clock::time_point> deadline;

    bool stop_requested(std::size_t) const { return deadline && std::chrono::steady_clock::now() >= *deadline; }
};

int run_solve(const CliConfig& cfg) {
    Grid grid = new_grid(cfg.grid_side, cfg.boundary, cfg.interior_init);
    DeadlineObserver obs;
    if (cfg.time_limit_seconds) {
        obs.deadline = std::chrono::steady_clock::now() +
                       std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                           std::chrono::duration<double>(*cfg.time_limit_seconds));
    }
    const SolveReport report =
        cfg.solver.workers == 1 ? solve_serial(grid, cfg.solver, obs) : solve_parallel(grid, cfg.solver, obs);

    std::cout << "grid " << cfg.grid_side << "x" << cfg.grid_side << ", omega " << format_double(cfg.solver.omega)
              << ", " << cfg.solver.workers << " worker" << (cfg.solver.workers == 1 ? "" : "s") << "\n"
              << "converged: " << (report.converged ? "true" : "false") << "\n"
              << "iterations: " << report.iterations << "\n"
              << "final max change: "
              << (report.final_max_change ? format_double(*report.final_max_change) : std::string("n/a")) << "\n"
              << "elapsed seconds: " << format_double(report.elapsed_seconds) << "\n";
    if (report.stopped_early) std::cout << "stopped: time limit reached\n";

    if (cfg.output_path) {
        const std::filesystem::path path = *cfg.output_path;
        switch (cfg.output_format) {
            case OutputFormat::Csv: write_grid(grid, GridFormat::Csv, path); break;
            case OutputFormat::Pgm: write_grid(grid, GridFormat::Pgm, path); break;
            case OutputFormat::Json: {
                std::ofstream out(path);
                if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
                out << report_to_json(report, cfg).dump(2) << "\n";
                if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
                break;
            }
        }
    }

    const bool ok = cfg.solver.fixed_iterations ? !report.stopped_early : report.converged;
    return ok ? 0 : 2;
}

int run_bench(const CliConfig& cfg) {
    const BenchmarkResult result =
        run_benchmark(cfg.grid_side, cfg.solver, cfg.worker_counts, cfg.repetitions, cfg.boundary);
    std::cout << emit_report(result, ReportFormat::Table);
    if (cfg.output_path) {
        std::ofstream out(*cfg.output_path);
        if (!out) throw std::runtime_error("cannot open '" + *cfg.output_path + "' for writing");
        out << emit_report(result, cfg.output_format == OutputFormat::Json ? ReportFormat::Json : ReportFormat::Csv);
        if (!out) throw std::runtime_error("write to '" + *cfg.output_path + "' failed");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CliConfig cfg;
    try {
        cfg = parse_cli(std::vector<std::string>(argv + 1, argv + argc));
    } catch (const HelpRequested& h) {
        std::cout << h.what();
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "rbsor: " << e.what() << "\n(run with --help for usage)\n";
        return 1;
    }

    try {
        return cfg.mode == RunMode::Bench ? run_bench(cfg) : run_solve(cfg);
    } catch (const std::exception& e) {
        std::cerr << "rbsor: " << e.what() << "\n";
        return 1;
    }
}
