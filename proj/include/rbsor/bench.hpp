#ifndef RBSOR_BENCH_HPP
#define RBSOR_BENCH_HPP

#include <algorithm>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rbsor/format.hpp"
#include "rbsor/grid.hpp"
#include "rbsor/scheduler.hpp"
#include "rbsor/solver.hpp"

namespace rbsor {

/// S_P = T_1 / T_P.
inline double speedup(double t1, double tp) {
    if (!(t1 > 0.0) || !(tp > 0.0)) {
        throw std::invalid_argument("speedup: times must be positive, got " + format_double(t1) + " and " +
                                    format_double(tp));
    }
    return t1 / tp;
}

struct BenchmarkEntry {
    unsigned workers = 1;
    double seconds = 0.0;
    bool converged = false;
    std::size_t iterations = 0;

    bool operator==(const BenchmarkEntry&) const = default;
};

/// One row per worker count. Speedups are never stored; they are derived
/// from the 1-worker entry on demand.
struct BenchmarkResult {
    std::size_t grid_side = 0;
    SolverConfig config;  // workers is always 1 here
    unsigned repetitions = 1;
    std::vector<BenchmarkEntry> entries;

    bool operator==(const BenchmarkResult&) const = default;

    const BenchmarkEntry& baseline() const {
        const auto it = std::find_if(entries.begin(), entries.end(), [](const auto& e) { return e.workers == 1; });
        if (it == entries.end()) throw std::logic_error("benchmark result has no 1-worker baseline");
        return *it;
    }

    double speedup_of(const BenchmarkEntry& e) const { return speedup(baseline().seconds, e.seconds); }
};

/// Times red-black SOR on a fresh grid for each worker count and keeps the
/// minimum wall time over `repetitions`. The 1-worker run uses solve_serial.
/// Only the solve itself is timed.
inline BenchmarkResult run_benchmark(std::size_t grid_side, SolverConfig config,
                                     const std::vector<unsigned>& worker_counts, unsigned repetitions,
                                     const BoundarySpec& boundary = {}) {
    if (worker_counts.empty()) throw std::invalid_argument("run_benchmark: worker_counts is empty");
    if (std::find(worker_counts.begin(), worker_counts.end(), 1u) == worker_counts.end()) {
        throw std::invalid_argument("run_benchmark: worker_counts must include 1 as the serial baseline");
    }
    for (unsigned w : worker_counts) {
        if (w < 1) throw std::invalid_argument("run_benchmark: worker counts must be positive");
        if (std::count(worker_counts.begin(), worker_counts.end(), w) > 1) {
            throw std::invalid_argument("run_benchmark: duplicate worker count " + std::to_string(w));
        }
    }
    if (repetitions < 1) throw std::invalid_argument("run_benchmark: repetitions must be at least 1");
    config.workers = 1;
    config.validate();

    BenchmarkResult result{grid_side, config, repetitions, {}};
    for (unsigned w : worker_counts) {
        BenchmarkEntry entry{w, std::numeric_limits<double>::infinity(), false, 0};
        SolverConfig run_config = config;
        run_config.workers = w;
        for (unsigned r = 0; r < repetitions; ++r) {
            Grid grid = new_grid(grid_side, boundary);
            const SolveReport rep = w == 1 ? solve_serial(grid, run_config) : solve_parallel(grid, run_config);
            entry.seconds = std::min(entry.seconds, rep.elapsed_seconds);
            entry.converged = rep.converged;
            entry.iterations = rep.iterations;
        }
        result.entries.push_back(entry);
    }
    return result;
}

enum class ReportFormat { Table, Csv, Json };

namespace detail {

inline std::string bool_text(bool b) { return b ? "true" : "false"; }

inline std::string fixed2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

inline std::string emit_table(const BenchmarkResult& r) {
    const auto& c = r.config;
    std::ostringstream out;
    out << "Grid " << r.grid_side << "x" << r.grid_side << ", omega=" << format_double(c.omega);
    if (c.fixed_iterations) {
        out << ", fixed " << c.max_iterations << " iterations";
    } else {
        out << ", epsilon=" << format_double(c.epsilon) << ", K=" << c.check_interval
            << ", max iterations=" << c.max_iterations;
    }
    out << ", min of " << r.repetitions << " run" << (r.repetitions == 1 ? "" : "s") << "\n";
    out << pad("Threads", 12) << pad("Seconds", 16) << "Speedup\n";

    bool any_unconverged = false;
    for (const auto& e : r.entries) {
        const bool flagged = !c.fixed_iterations && !e.converged;
        any_unconverged = any_unconverged || flagged;
        const std::string threads = e.workers == 1 ? "1 (Serial)" : std::to_string(e.workers);
        const std::string secs = format_double(e.seconds) + (flagged ? " *" : "");
        const std::string sp = e.workers == 1 ? "-" : fixed2(r.speedup_of(e));
        out << pad(threads, 12) << pad(secs, 16) << sp << "\n";
    }
    if (any_unconverged) out << "* did not converge within " << c.max_iterations << " iterations\n";
    return out.str();
}

inline std::string emit_csv(const BenchmarkResult& r) {
    const auto& c = r.config;
    std::ostringstream out;
    out << "# grid_side=" << r.grid_side << "\n"
        << "# omega=" << format_double(c.omega) << "\n"
        << "# epsilon=" << format_double(c.epsilon) << "\n"
        << "# max_iterations=" << c.max_iterations << "\n"
        << "# check_interval=" << c.check_interval << "\n"
        << "# fixed_iterations=" << bool_text(c.fixed_iterations) << "\n"
        << "# repetitions=" << r.repetitions << "\n";
    for (const auto& e : r.entries) {
        out << "# run workers=" << e.workers << " converged=" << bool_text(e.converged)
            << " iterations=" << e.iterations << "\n";
    }
    out << "workers,seconds,speedup\n";
    for (const auto& e : r.entries) {
        out << e.workers << "," << format_double(e.seconds) << "," << format_double(r.speedup_of(e)) << "\n";
    }
    return out.str();
}

inline nlohmann::json to_json(const BenchmarkResult& r) {
    nlohmann::json j;
    j["grid_side"] = r.grid_side;
    j["repetitions"] = r.repetitions;
    j["config"] = {{"omega", r.config.omega},
                   {"epsilon", r.config.epsilon},
                   {"max_iterations", r.config.max_iterations},
                   {"check_interval", r.config.check_interval},
                   {"fixed_iterations", r.config.fixed_iterations}};
    j["entries"] = nlohmann::json::array();
    for (const auto& e : r.entries) {
        j["entries"].push_back({{"workers", e.workers},
                                {"seconds", e.seconds},
                                {"speedup", r.speedup_of(e)},
                                {"converged", e.converged},
                                {"iterations", e.iterations}});
    }
    return j;
}

}  // namespace detail

/// Serializes a benchmark result. The table mirrors a threads / seconds /
/// speedup layout with "-" as the baseline speedup; csv carries run
/// metadata as leading "#" lines before the "workers,seconds,speedup"
/// header; json holds everything in one object.
inline std::string emit_report(const BenchmarkResult& result, ReportFormat format) {
    result.baseline();
    switch (format) {
        case ReportFormat::Table: return detail::emit_table(result);
        case ReportFormat::Csv: return detail::emit_csv(result);
        case ReportFormat::Json: return detail::to_json(result).dump(2) + "\n";
    }
    throw std::invalid_argument("emit_report: unknown format");
}

inline BenchmarkResult parse_report_json(std::string_view text) {
    try {
        const auto j = nlohmann::json::parse(text);
        BenchmarkResult r;
        r.grid_side = j.at("grid_side").get<std::size_t>();
        r.repetitions = j.at("repetitions").get<unsigned>();
        const auto& c = j.at("config");
        r.config.omega = c.at("omega").get<double>();
        r.config.epsilon = c.at("epsilon").get<double>();
        r.config.max_iterations = c.at("max_iterations").get<std::size_t>();
        r.config.check_interval = c.at("check_interval").get<std::size_t>();
        r.config.fixed_iterations = c.at("fixed_iterations").get<bool>();
        for (const auto& e : j.at("entries")) {
            r.entries.push_back({e.at("workers").get<unsigned>(), e.at("seconds").get<double>(),
                                 e.at("converged").get<bool>(), e.at("iterations").get<std::size_t>()});
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("benchmark json: ") + e.what());
    }
}

inline BenchmarkResult parse_report_csv(std::string_view text) {
    auto fail = [](std::size_t line, const std::string& msg) -> BenchmarkResult {
        throw std::runtime_error("benchmark csv line " + std::to_string(line) + ": " + msg);
    };
    auto to_size = [&](const std::string& s, std::size_t line) {
        const auto v = parse_double(s);
        if (!v || *v < 0 || *v != static_cast<double>(static_cast<std::size_t>(*v))) {
            fail(line, "expected a non-negative integer, got '" + s + "'");
        }
        return static_cast<std::size_t>(*v);
    };

    BenchmarkResult r;
    std::map<std::string, std::string> meta;
    std::map<unsigned, std::pair<bool, std::size_t>> runs;
    bool header_seen = false;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.rfind("# run ", 0) == 0) {
            std::istringstream fields(line.substr(6));
            std::map<std::string, std::string> kv;
            std::string tok;
            while (fields >> tok) {
                const auto eq = tok.find('=');
                if (eq == std::string::npos) fail(lineno, "malformed run field '" + tok + "'");
                kv[tok.substr(0, eq)] = tok.substr(eq + 1);
            }
            if (!kv.count("workers") || !kv.count("converged") || !kv.count("iterations")) {
                fail(lineno, "run line needs workers, converged and iterations");
            }
            runs[static_cast<unsigned>(to_size(kv["workers"], lineno))] = {kv["converged"] == "true",
                                                                          to_size(kv["iterations"], lineno)};
            continue;
        }
        if (line.rfind("# ", 0) == 0) {
            const auto eq = line.find('=');
            if (eq == std::string::npos) fail(lineno, "malformed metadata line");
            meta[line.substr(2, eq - 2)] = line.substr(eq + 1);
            continue;
        }
        if (!header_seen) {
            if (line != "workers,seconds,speedup") fail(lineno, "expected header 'workers,seconds,speedup'");
            header_seen = true;
            continue;
        }
        const auto c1 = line.find(',');
        const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
        if (c2 == std::string::npos) fail(lineno, "expected three comma-separated fields");
        const auto workers = static_cast<unsigned>(to_size(line.substr(0, c1), lineno));
        const auto seconds = parse_double(line.substr(c1 + 1, c2 - c1 - 1));
        if (!seconds) fail(lineno, "seconds is not a number");
        BenchmarkEntry e{workers, *seconds, false, 0};
        if (const auto it = runs.find(workers); it != runs.end()) {
            e.converged = it->second.first;
            e.iterations = it->second.second;
        }
        r.entries.push_back(e);
    }
    if (!header_seen) fail(lineno, "missing header");

    auto need = [&](const char* key) -> const std::string& {
        const auto it = meta.find(key);
        if (it == meta.end()) fail(0, std::string("missing metadata '") + key + "'");
        return it->second;
    };
    auto need_double = [&](const char* key) {
        const auto v = parse_double(need(key));
        if (!v) fail(0, std::string("metadata '") + key + "' is not a number");
        return *v;
    };
    r.grid_side = to_size(need("grid_side"), 0);
    r.repetitions = static_cast<unsigned>(to_size(need("repetitions"), 0));
    r.config.omega = need_double("omega");
    r.config.epsilon = need_double("epsilon");
    r.config.max_iterations = to_size(need("max_iterations"), 0);
    r.config.check_interval = to_size(need("check_interval"), 0);
    r.config.fixed_iterations = need("fixed_iterations") == "true";
    return r;
}

}  // namespace rbsor

#endif  // RBSOR_BENCH_HPP
