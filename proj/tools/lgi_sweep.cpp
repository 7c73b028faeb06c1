// Reproduces the theta2 sweep of the classical-light LGI experiment and writes
// the K curve as CSV.

#include <iostream>

#include "lgi/cli.hpp"

int main(int argc, char** argv) {
    const lgi::CliOutcome parsed = lgi::parse_cli(argc, argv);
    if (!parsed.config) {
        (parsed.exit_code == lgi::kExitOk ? std::cout : std::cerr) << parsed.message;
        return parsed.exit_code;
    }
    const lgi::SweepConfig& cfg = *parsed.config;

    std::vector<lgi::SweepRow> rows;
    try {
        rows = lgi::run_sweep(cfg, parsed.workers);
    } catch (const lgi::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return lgi::kExitUsage;
    } catch (const lgi::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return lgi::kExitUsage;
    }

    try {
        if (cfg.output_path == "-") {
            lgi::write_csv(rows, std::cout);
            std::cout.flush();
            if (!std::cout) throw lgi::IoError("failed writing to stdout");
        } else {
            lgi::emit_csv(rows, cfg.output_path);
        }
    } catch (const lgi::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return lgi::kExitIo;
    }
    return lgi::kExitOk;
}
