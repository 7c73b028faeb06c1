/**
 * @file sweep.hpp
 * @brief theta2 sweeps at fixed theta1 and their CSV serialization.
 *
 * CSV schema (UTF-8, comma separated, one header line):
 *
 *   theta1_deg,theta2_deg,k_theory,k_pipeline,k_noisy_mean,k_noisy_std,violation
 *
 * Reals are printed with 12 significant digits (%.12g); violation is
 * "true"/"false" and depends on the angles only.
 */

#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "lgi/lgi_engine.hpp"
#include "lgi/noise_lab.hpp"

namespace lgi {

/// Which spread measure fills the k_noisy_std column.
enum class ErrorBar { sample_std, std_error };

struct SweepConfig {
    double theta1 = 0.0;
    double theta2_start = 0.0;
    double theta2_end = 180.0;
    std::size_t steps = 37;
    InitialStateSpec state = DiagonalState{};
    NoiseConfig noise{};
    std::size_t trials = 5;
    /// Multiplier on sigma_rel for the partially polarized preparation.
    double partial_noise_factor = kPartialPreparationFactor;
    ErrorBar error_bar = ErrorBar::sample_std;
    DegeneratePolicy degenerate = DegeneratePolicy::resample;
    /// "-" writes to standard output.
    std::string output_path = "-";
};

struct SweepRow {
    double theta1 = 0.0;
    double theta2 = 0.0;
    double k_theory = 0.0;
    double k_pipeline = 0.0;
    double k_mean = 0.0;
    double k_std = 0.0;
    bool violation = false;
};

inline constexpr const char* kCsvHeader =
    "theta1_deg,theta2_deg,k_theory,k_pipeline,k_noisy_mean,k_noisy_std,violation";

inline void validate(const SweepConfig& cfg) {
    if (!std::isfinite(cfg.theta1)) throw ConfigError("theta1", "must be finite");
    if (!std::isfinite(cfg.theta2_start)) throw ConfigError("theta2-start", "must be finite");
    if (!std::isfinite(cfg.theta2_end)) throw ConfigError("theta2-end", "must be finite");
    if (!(cfg.theta2_end > cfg.theta2_start)) throw ConfigError("theta2-end", "must be greater than theta2-start");
    if (cfg.steps < 2) throw ConfigError("steps", "must be >= 2");
    if (cfg.trials < 1) throw ConfigError("trials", "must be >= 1");
    if (!(std::isfinite(cfg.partial_noise_factor) && cfg.partial_noise_factor >= 0.0))
        throw ConfigError("partial-noise-factor", "must be finite and >= 0");
    if (const auto* p = std::get_if<PartiallyPolarizedState>(&cfg.state); p && !(p->dop >= 0.0 && p->dop <= 1.0))
        throw ConfigError("state", "dop must be in [0,1]");
    validate(cfg.noise);
}

/// theta2 of point `index`: inclusive of both endpoints.
inline double sweep_angle(const SweepConfig& cfg, std::size_t index) noexcept {
    if (index + 1 == cfg.steps) return cfg.theta2_end;
    const double span = cfg.theta2_end - cfg.theta2_start;
    return cfg.theta2_start + span * static_cast<double>(index) / static_cast<double>(cfg.steps - 1);
}

namespace detail {

inline SweepRow sweep_point(const SweepConfig& cfg, const CoherencyMatrix& rho, const NoiseConfig& noise,
                            std::size_t index) {
    SweepRow row;
    row.theta1 = cfg.theta1;
    row.theta2 = sweep_angle(cfg, index);
    const EvolutionConfig evo{cfg.theta1, row.theta2};
    row.k_theory = k_analytic(evo);
    row.k_pipeline = k_statistic(rho, evo).k;
    row.violation = violates_lgi(row.k_theory);

    RandomStream rng = RandomStream::child(noise.seed, index);
    const TrialStats stats = repeat_trials(rho, evo, noise, cfg.trials, rng, cfg.degenerate);
    row.k_mean = stats.mean_k;
    row.k_std = cfg.error_bar == ErrorBar::sample_std ? stats.std_k : stats.std_error();
    return row;
}

}  // namespace detail

/// One row per theta2 point. Each point draws from its own child stream keyed
/// by the point index, so any `workers` count yields identical rows.
inline std::vector<SweepRow> run_sweep(const SweepConfig& cfg, unsigned workers = 1) {
    validate(cfg);
    const CoherencyMatrix rho = initial_state(cfg.state);
    const NoiseConfig noise = noise_for_state(cfg.state, cfg.noise, cfg.partial_noise_factor);

    std::vector<SweepRow> rows(cfg.steps);
    if (workers <= 1) {
        for (std::size_t i = 0; i < cfg.steps; ++i) rows[i] = detail::sweep_point(cfg, rho, noise, i);
        return rows;
    }

    std::vector<std::exception_ptr> failures(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < cfg.steps; i += workers)
                        rows[i] = detail::sweep_point(cfg, rho, noise, i);
                } catch (...) {
                    failures[w] = std::current_exception();
                }
            });
        }
    }
    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);
    return rows;
}

inline std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
    return buf;
}

inline void write_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const SweepRow& r : rows) {
        out << format_real(r.theta1) << ',' << format_real(r.theta2) << ',' << format_real(r.k_theory) << ','
            << format_real(r.k_pipeline) << ',' << format_real(r.k_mean) << ',' << format_real(r.k_std) << ','
            << (r.violation ? "true" : "false") << '\n';
    }
}

inline void emit_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_csv(rows, out);
    out.flush();
    if (!out) throw IoError("failed writing '" + path + "'");
}

/// Parses a file written by write_csv.
inline std::vector<SweepRow> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw IoError("read_csv: missing or unexpected header");
    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
        if (fields.size() != 7) throw IoError("read_csv: expected 7 fields in '" + line + "'");
        SweepRow r;
        try {
            r.theta1 = std::stod(fields[0]);
            r.theta2 = std::stod(fields[1]);
            r.k_theory = std::stod(fields[2]);
            r.k_pipeline = std::stod(fields[3]);
            r.k_mean = std::stod(fields[4]);
            r.k_std = std::stod(fields[5]);
        } catch (const std::logic_error&) {
            throw IoError("read_csv: malformed number in '" + line + "'");
        }
        if (fields[6] == "true")
            r.violation = true;
        else if (fields[6] != "false")
            throw IoError("read_csv: violation must be true or false");
        rows.push_back(r);
    }
    return rows;
}

}  // namespace lgi
