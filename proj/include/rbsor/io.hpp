#ifndef RBSOR_IO_HPP
#define RBSOR_IO_HPP

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rbsor/bench.hpp"
#include "rbsor/format.hpp"
#include "rbsor/grid.hpp"
#include "rbsor/solver.hpp"

namespace rbsor {

enum class RunMode { Solve, Bench };
enum class OutputFormat { Csv, Pgm, Json };
enum class GridFormat { Csv, Pgm };

struct CliConfig {
    RunMode mode = RunMode::Solve;
    std::size_t grid_side = 4096;
    BoundarySpec boundary;
    double interior_init = 0.0;
    SolverConfig solver;
    std::vector<unsigned> worker_counts{1, 2, 4, 8};
    unsigned repetitions = 1;
    std::optional<std::string> output_path;
    OutputFormat output_format = OutputFormat::Csv;
    /// Wall-clock budget for a solve; the run stops after the first
    /// iteration that ends past it.
    std::optional<double> time_limit_seconds;
};

/// Bad command line; the message is meant for the user.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// --help was given; what() is the help text.
class HelpRequested : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses command-line arguments (without the program name). Either returns
/// a configuration whose parts all validate, or throws UsageError.
inline CliConfig parse_cli(const std::vector<std::string>& args) {
    CliConfig cfg;
    CLI::App app{"Red-black SOR solver for 2D steady-state heat conduction", "rbsor"};
    app.allow_extras(false);

    std::string mode = "solve";
    std::string format = "csv";
    app.add_option("--mode", mode, "solve: run one solve; bench: time the solve across worker counts")
        ->check(CLI::IsMember({"solve", "bench"}));
    app.add_option("--n", cfg.grid_side, "Grid side including the boundary ring")->capture_default_str();
    app.add_option("--omega", cfg.solver.omega, "Relaxation factor, 0 < omega < 2")->capture_default_str();
    app.add_option("--epsilon", cfg.solver.epsilon, "Convergence tolerance on the max per-iteration change")
        ->capture_default_str();
    app.add_option("--max-iters", cfg.solver.max_iterations, "Iteration cap")->capture_default_str();
    app.add_option("--check-interval", cfg.solver.check_interval, "Iterations between convergence checks (K)")
        ->capture_default_str();
    app.add_option("--workers", cfg.solver.workers, "Worker threads for solve mode")->capture_default_str();
    app.add_option("--worker-counts", cfg.worker_counts, "Comma-separated worker counts for bench mode")
        ->delimiter(',');
    app.add_option("--reps", cfg.repetitions, "Repetitions per worker count (minimum is reported)")
        ->capture_default_str();
    app.add_option("--north", cfg.boundary.north, "North boundary temperature")->capture_default_str();
    app.add_option("--south", cfg.boundary.south, "South boundary temperature")->capture_default_str();
    app.add_option("--east", cfg.boundary.east, "East boundary temperature")->capture_default_str();
    app.add_option("--west", cfg.boundary.west, "West boundary temperature")->capture_default_str();
    app.add_option("--init", cfg.interior_init, "Initial interior temperature")->capture_default_str();
    app.add_flag("--fixed-iterations", cfg.solver.fixed_iterations,
                 "Run exactly --max-iters iterations without convergence checks");
    app.add_option("--time-limit", cfg.time_limit_seconds, "Stop a solve after this many seconds");
    app.add_option("--out", cfg.output_path, "Output file (grid, solve report or bench report)");
    app.add_option("--format", format, "Output file format: csv, pgm or json")
        ->check(CLI::IsMember({"csv", "pgm", "json"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    cfg.mode = mode == "bench" ? RunMode::Bench : RunMode::Solve;
    cfg.output_format = format == "pgm" ? OutputFormat::Pgm : format == "json" ? OutputFormat::Json : OutputFormat::Csv;

    const auto& s = cfg.solver;
    if (cfg.grid_side < Grid::min_side) throw UsageError("--n must be at least 3");
    if (!(s.omega > 0.0 && s.omega < 2.0)) {
        throw UsageError("--omega must lie strictly between 0 and 2 (got " + format_double(s.omega) + ")");
    }
    if (!(s.epsilon > 0.0) || !std::isfinite(s.epsilon)) throw UsageError("--epsilon must be positive");
    if (s.max_iterations < 1) throw UsageError("--max-iters must be at least 1");
    if (s.check_interval < 1) throw UsageError("--check-interval must be at least 1");
    if (s.check_interval > s.max_iterations) {
        throw UsageError("--check-interval (" + std::to_string(s.check_interval) + ") must not exceed --max-iters (" +
                         std::to_string(s.max_iterations) + ")");
    }
    if (s.workers < 1) throw UsageError("--workers must be at least 1");
    if (cfg.repetitions < 1) throw UsageError("--reps must be at least 1");
    for (double v : {cfg.boundary.north, cfg.boundary.south, cfg.boundary.east, cfg.boundary.west, cfg.interior_init}) {
        if (!std::isfinite(v)) throw UsageError("boundary and --init temperatures must be finite");
    }
    if (cfg.time_limit_seconds && !(*cfg.time_limit_seconds > 0.0)) throw UsageError("--time-limit must be positive");
    if (cfg.mode == RunMode::Bench) {
        if (cfg.worker_counts.empty()) throw UsageError("--worker-counts must not be empty");
        if (std::find(cfg.worker_counts.begin(), cfg.worker_counts.end(), 1u) == cfg.worker_counts.end()) {
            throw UsageError("--worker-counts must include 1 (the serial baseline)");
        }
        for (unsigned w : cfg.worker_counts) {
            if (w < 1) throw UsageError("--worker-counts entries must be at least 1");
            if (std::count(cfg.worker_counts.begin(), cfg.worker_counts.end(), w) > 1) {
                throw UsageError("--worker-counts lists " + std::to_string(w) + " more than once");
            }
        }
        if (cfg.output_format == OutputFormat::Pgm) throw UsageError("bench reports can be written as csv or json only");
    }
    cfg.solver.validate();
    return cfg;
}

inline void write_grid_csv(const Grid& grid, std::ostream& out) {
    const std::size_t n = grid.side();
    std::string line;
    for (std::size_t i = 0; i < n; ++i) {
        line.clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (j) line += ',';
            line += format_double(grid(i, j));
        }
        line += '\n';
        out << line;
    }
}

/// Binary PGM (P5), row 0 at the top. Values are clamped to [lo, hi] and
/// mapped linearly onto 0..255; lo/hi default to the grid's min and max.
inline void write_grid_pgm(const Grid& grid, std::ostream& out, std::optional<double> lo = {},
                           std::optional<double> hi = {}) {
    const auto vals = grid.values();
    const auto [mn, mx] = std::minmax_element(vals.begin(), vals.end());
    const double low = lo.value_or(*mn);
    const double high = hi.value_or(*mx);
    const std::size_t n = grid.side();
    out << "P5\n" << n << " " << n << "\n255\n";
    std::vector<char> pixels(vals.size());
    for (std::size_t k = 0; k < vals.size(); ++k) {
        double t = 0.0;
        if (high > low) t = (std::clamp(vals[k], low, high) - low) / (high - low);
        pixels[k] = static_cast<char>(static_cast<unsigned char>(std::lround(t * 255.0)));
    }
    out.write(pixels.data(), static_cast<std::streamsize>(pixels.size()));
}

namespace detail {

inline std::ofstream open_for_write(const std::filesystem::path& path, std::ios::openmode mode = {}) {
    std::ofstream out(path, std::ios::out | std::ios::trunc | mode);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing: " + std::strerror(errno));
    }
    return out;
}

inline void finish_write(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

}  // namespace detail

inline void write_grid(const Grid& grid, GridFormat format, const std::filesystem::path& path) {
    auto out = detail::open_for_write(path, std::ios::binary);
    if (format == GridFormat::Csv) {
        write_grid_csv(grid, out);
    } else {
        write_grid_pgm(grid, out);
    }
    detail::finish_write(out, path);
}

/// Parses an n-by-n comma-separated field (n >= 3).
inline Grid read_grid_csv(std::istream& in, const std::string& source = "<stream>") {
    std::vector<double> values;
    std::size_t width = 0;
    std::size_t rows = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++rows;
        std::size_t cells = 0;
        std::size_t pos = 0;
        while (true) {
            const auto comma = line.find(',', pos);
            const auto field = std::string_view(line).substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            const auto v = parse_double(field);
            if (!v) {
                throw std::runtime_error(source + ": row " + std::to_string(rows) + ", column " +
                                         std::to_string(cells + 1) + ": '" + std::string(field) + "' is not a number");
            }
            values.push_back(*v);
            ++cells;
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (rows == 1) {
            width = cells;
        } else if (cells != width) {
            throw std::runtime_error(source + ": row " + std::to_string(rows) + " has " + std::to_string(cells) +
                                     " values, expected " + std::to_string(width));
        }
    }
    if (rows != width) {
        throw std::runtime_error(source + ": grid must be square, got " + std::to_string(rows) + " rows of " +
                                 std::to_string(width) + " values");
    }
    if (rows < Grid::min_side) {
        throw std::runtime_error(source + ": grid side must be at least 3, got " + std::to_string(rows));
    }
    return Grid(rows, std::move(values));
}

inline Grid read_grid_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "': " + std::strerror(errno));
    return read_grid_csv(in, path.string());
}

inline nlohmann::json report_to_json(const SolveReport& r, const CliConfig& cfg) {
    nlohmann::json j;
    j["grid_side"] = cfg.grid_side;
    j["omega"] = cfg.solver.omega;
    j["epsilon"] = cfg.solver.epsilon;
    j["max_iterations"] = cfg.solver.max_iterations;
    j["check_interval"] = cfg.solver.check_interval;
    j["workers"] = cfg.solver.workers;
    j["converged"] = r.converged;
    j["iterations"] = r.iterations;
    j["final_max_change"] = r.final_max_change ? nlohmann::json(*r.final_max_change) : nlohmann::json(nullptr);
    j["elapsed_seconds"] = r.elapsed_seconds;
    j["stopped_early"] = r.stopped_early;
    return j;
}

}  // namespace rbsor

#endif  // RBSOR_IO_HPP
