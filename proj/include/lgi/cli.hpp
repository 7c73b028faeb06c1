#pragma once

#include <charconv>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

#include "lgi/sweep.hpp"

namespace lgi {

/// Exit codes of the sweep tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;

struct CliOutcome {
    std::optional<SweepConfig> config;  ///< empty when the program should exit
    unsigned workers = 1;
    int exit_code = kExitOk;
    std::string message;  ///< help text or error+usage to print before exiting
};

namespace detail {

inline std::optional<double> parse_real(std::string_view text) {
    double v = 0.0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v)) return std::nullopt;
    return v;
}

inline double require_real(std::string_view text, const char* what) {
    if (auto v = parse_real(text)) return *v;
    throw ConfigError("state", std::string(what) + " is not a number: '" + std::string(text) + "'");
}

}  // namespace detail

/// linear:<deg> | diagonal | unpolarized | partial:<dop>[:<basis-deg>]
inline InitialStateSpec parse_state_spec(std::string_view text) {
    if (text == "diagonal") return DiagonalState{};
    if (text == "unpolarized") return UnpolarizedState{};
    const auto colon = text.find(':');
    const std::string_view kind = text.substr(0, colon);
    const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    if (kind == "linear" && colon != std::string_view::npos) return LinearState{detail::require_real(rest, "angle")};
    if (kind == "partial" && colon != std::string_view::npos) {
        const auto second = rest.find(':');
        PartiallyPolarizedState s;
        s.dop = detail::require_real(rest.substr(0, second), "dop");
        if (second != std::string_view::npos) s.basis_angle = detail::require_real(rest.substr(second + 1), "basis angle");
        if (!(s.dop >= 0.0 && s.dop <= 1.0)) throw ConfigError("state", "dop must be in [0,1]");
        return s;
    }
    throw ConfigError("state", "expected linear:<deg>, diagonal, unpolarized or partial:<dop>, got '" +
                                   std::string(text) + "'");
}

/// Builds a SweepConfig from command-line arguments. Flags override values
/// read from a key=value file given with --config.
inline CliOutcome parse_cli(int argc, const char* const* argv) {
    SweepConfig cfg;
    CliOutcome outcome;
    std::string state = "diagonal";
    std::string error_bar = "std";
    std::string degenerate = "resample";

    CLI::App app{"Sweep theta2 at fixed theta1 and tabulate the Leggett-Garg K statistic", "lgi_sweep"};
    app.set_config("--config", "", "key=value file; command-line flags take precedence");
    app.allow_config_extras(false);
    app.add_option("--theta1", cfg.theta1, "first HWP fast-axis angle [deg]")->capture_default_str();
    app.add_option("--theta2-start", cfg.theta2_start, "first theta2 [deg]")->capture_default_str();
    app.add_option("--theta2-end", cfg.theta2_end, "last theta2 [deg]")->capture_default_str();
    app.add_option("--steps", cfg.steps, "number of theta2 points, endpoints included")->capture_default_str();
    app.add_option("--state", state, "linear:<deg> | diagonal | unpolarized | partial:<dop>[:<basis-deg>]")
        ->capture_default_str();
    app.add_option("--noise-sigma", cfg.noise.sigma_rel, "relative std of intensity fluctuations")
        ->capture_default_str();
    app.add_option("--detector-floor", cfg.noise.detector_floor, "additive detector noise std")
        ->capture_default_str();
    app.add_option("--partial-noise-factor", cfg.partial_noise_factor,
                   "sigma multiplier for the partially polarized preparation")
        ->capture_default_str();
    app.add_option("--trials", cfg.trials, "noisy repeats per point")->capture_default_str();
    app.add_option("--seed", cfg.noise.seed, "base RNG seed")->capture_default_str();
    app.add_option("--error-bar", error_bar, "spread in k_noisy_std: std or sem")
        ->check(CLI::IsMember({"std", "sem"}))
        ->capture_default_str();
    app.add_option("--degenerate", degenerate, "noisy tables summing to <= 0: resample or error")
        ->check(CLI::IsMember({"resample", "error"}))
        ->capture_default_str();
    app.add_option("--workers", outcome.workers, "worker threads")->check(CLI::Range(1u, 1024u))->capture_default_str();
    app.add_option("--out", cfg.output_path, "output CSV path, - for stdout")->capture_default_str();

    std::ostringstream out;
    std::ostringstream err;
    try {
        // CLI11 consumes argv[0] as the program name.
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        outcome.exit_code = kExitOk;
        outcome.message = out.str();
        return outcome;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        outcome.exit_code = kExitUsage;
        outcome.message = err.str() + out.str() + app.help();
        return outcome;
    }

    try {
        cfg.state = parse_state_spec(state);
        cfg.error_bar = error_bar == "sem" ? ErrorBar::std_error : ErrorBar::sample_std;
        cfg.degenerate = degenerate == "error" ? DegeneratePolicy::error : DegeneratePolicy::resample;
        validate(cfg);
    } catch (const ConfigError& e) {
        outcome.exit_code = kExitUsage;
        outcome.message = std::string("error: ") + e.what() + "\n" + app.help();
        return outcome;
    }
    outcome.config = std::move(cfg);
    return outcome;
}

inline CliOutcome parse_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"lgi_sweep"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return parse_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace lgi
