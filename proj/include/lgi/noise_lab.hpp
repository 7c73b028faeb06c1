/**
 * @file noise_lab.hpp
 * @brief Monte Carlo model of intensity fluctuations in the LGI measurement.
 *
 * One K value needs twelve intensity readings (three tables of four). Each
 * reading is modeled as i (1 + g1 sigma_rel) + g2 detector_floor with g1, g2
 * independent standard normals, clamped at zero. Readings are drawn in table
 * order 21, 32, 31 and, within a table, in IntensityTable storage order; each
 * reading always consumes g1 then g2.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "lgi/lgi_engine.hpp"
#include "lgi/rng.hpp"

namespace lgi {

struct NoiseConfig {
    double sigma_rel = 0.02;
    std::uint64_t seed = 1;
    double detector_floor = 0.0;
};

inline void validate(const NoiseConfig& cfg) {
    if (!(std::isfinite(cfg.sigma_rel) && cfg.sigma_rel >= 0.0))
        throw ConfigError("noise-sigma", "must be finite and >= 0");
    if (!(std::isfinite(cfg.detector_floor) && cfg.detector_floor >= 0.0))
        throw ConfigError("detector-floor", "must be finite and >= 0");
}

/// What simulate_run does when a noisy table sums to <= 0.
enum class DegeneratePolicy { resample, error };

/// Attempts per run before a resampling run gives up.
inline constexpr int kMaxResamples = 1000;

/// Default extra fluctuation of the partially polarized preparation.
inline constexpr double kPartialPreparationFactor = 2.0;

struct TrialStats {
    double mean_k = 0.0;
    double std_k = 0.0;  ///< sample standard deviation (n - 1)
    std::vector<double> samples;
    std::size_t n_trials = 0;
    /// Runs that hit a degenerate table: resampled, or dropped under DegeneratePolicy::error.
    std::size_t degenerate = 0;

    double std_error() const noexcept {
        return n_trials == 0 ? 0.0 : std_k / std::sqrt(static_cast<double>(n_trials));
    }
};

inline double perturb_intensity(double i, const NoiseConfig& cfg, RandomStream& rng) {
    if (!(i >= 0.0)) throw InvalidInput("perturb_intensity: intensity must be >= 0");
    const double g1 = rng.normal();
    const double g2 = rng.normal();
    return std::max(0.0, i * (1.0 + g1 * cfg.sigma_rel) + g2 * cfg.detector_floor);
}

inline IntensityTable perturb_table(const IntensityTable& table, const NoiseConfig& cfg, RandomStream& rng) {
    std::array<double, 4> noisy{};
    for (std::size_t i = 0; i < 4; ++i) noisy[i] = perturb_intensity(table.values()[i], cfg, rng);
    return {table.pair(), noisy};
}

/// Noise settings for a preparation: the partially polarized source scales
/// sigma_rel by `partial_factor`; other kinds pass through.
inline NoiseConfig noise_for_state(const InitialStateSpec& spec, NoiseConfig noise,
                                   double partial_factor = kPartialPreparationFactor) {
    if (std::holds_alternative<PartiallyPolarizedState>(spec)) noise.sigma_rel *= partial_factor;
    return noise;
}

namespace detail {

struct RunOutcome {
    KStat stat;
    int degenerate_draws = 0;
};

inline RunOutcome simulate_run_counted(const TableSet& clean, const NoiseConfig& noise, RandomStream& rng,
                                       DegeneratePolicy policy) {
    RunOutcome out;
    for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
        const IntensityTable t21 = perturb_table(clean.t21, noise, rng);
        const IntensityTable t32 = perturb_table(clean.t32, noise, rng);
        const IntensityTable t31 = perturb_table(clean.t31, noise, rng);
        if (t21.total() > 0.0 && t32.total() > 0.0 && t31.total() > 0.0) {
            out.stat = make_kstat(correlations({t21, t32, t31}).k());
            return out;
        }
        ++out.degenerate_draws;
        if (policy == DegeneratePolicy::error)
            throw DegenerateSample("simulate_run: noisy intensity table sums to <= 0");
    }
    throw DegenerateSample("simulate_run: no non-degenerate sample after resampling");
}

inline TableSet clean_tables(const CoherencyMatrix& rho, const EvolutionConfig& cfg) {
    if (!is_physical(rho)) throw InvalidState("simulate_run: coherency matrix is not physical");
    if (intensity(rho) < tol::kZeroTrace) throw UndefinedCorrelation("simulate_run: zero-intensity state");
    return intensity_tables(rho, evolution_unitary(cfg));
}

}  // namespace detail

/// One noisy K: noiseless tables, twelve perturbed readings, correlations, K.
/// With zero noise this equals k_statistic exactly.
inline KStat simulate_run(const CoherencyMatrix& rho, const EvolutionConfig& cfg, const NoiseConfig& noise,
                          RandomStream& rng, DegeneratePolicy policy = DegeneratePolicy::resample) {
    validate(noise);
    return detail::simulate_run_counted(detail::clean_tables(rho, cfg), noise, rng, policy).stat;
}

/// n independent runs drawn sequentially from `rng`.
inline TrialStats repeat_trials(const CoherencyMatrix& rho, const EvolutionConfig& cfg, const NoiseConfig& noise,
                                std::size_t n, RandomStream& rng,
                                DegeneratePolicy policy = DegeneratePolicy::resample) {
    if (n < 1) throw ConfigError("trials", "must be >= 1");
    validate(noise);
    const TableSet clean = detail::clean_tables(rho, cfg);

    TrialStats stats;
    stats.samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        try {
            const auto run = detail::simulate_run_counted(clean, noise, rng, policy);
            stats.degenerate += static_cast<std::size_t>(run.degenerate_draws);
            stats.samples.push_back(run.stat.k);
        } catch (const DegenerateSample&) {
            if (policy == DegeneratePolicy::resample) throw;
            ++stats.degenerate;
        }
    }
    if (stats.samples.empty()) throw DegenerateSample("repeat_trials: every sample was degenerate");

    // Welford: identical samples give exactly mean = sample and std = 0.
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t count = 0;
    for (double k : stats.samples) {
        ++count;
        const double delta = k - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (k - mean);
    }
    stats.n_trials = count;
    stats.mean_k = mean;
    stats.std_k = count > 1 ? std::sqrt(m2 / static_cast<double>(count - 1)) : 0.0;
    return stats;
}

}  // namespace lgi
