// Command-line surface of the prime-pair toolkit.
//
// Subcommands: twin-scan, predict, polignac, scenario, estimate.
// Exit codes: 0 success, 1 validation error, 2 compute/IO error.
// The PRIMEPAIRS_THREADS environment variable overrides --threads.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "primepairs/primepairs.hpp"

namespace pp = primepairs;

int main(int argc, char** argv) {
    CLI::App app{
        "primepairs: twin-prime window scans, gap-pair statistics and the\n"
        "matching analytic predictions.\n\n"
        "Exit codes: 0 success, 1 validation error, 2 compute/IO error.\n"
        "PRIMEPAIRS_THREADS, when set, overrides --threads."};
    app.require_subcommand(1);

    pp::RunConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out_path, "Output file (default: stdout)");
        sub->add_option("--threads", cfg.threads,
                        "Worker threads; 0 = auto (default 0)");
        sub->add_option("--segment-size", cfg.segment_size,
                        "Sieve segment size in integers (default 4194304)")
            ->check(CLI::Range(static_cast<pp::u64>(64), static_cast<pp::u64>(1) << 30));
    };

    CLI::App* twin = app.add_subcommand(
        "twin-scan", "Count twin pairs per window ((p-2)^2, p^2) and compare "
                     "with the corrected prediction (CSV)");
    twin->add_option("--p-max", cfg.p_max, "Scan windows for primes up to this bound (default 10000)");
    add_common(twin);

    CLI::App* predict = app.add_subcommand(
        "predict", "Emit prediction breakdowns per window without sieving (CSV)");
    predict->add_option("--p-max", cfg.p_max, "Predict for primes up to this bound (default 10000)");
    add_common(predict);

    CLI::App* polignac = app.add_subcommand(
        "polignac", "Count prime pairs (P, P+m) for all even m up to m-max (CSV)");
    polignac->add_option("--low-index", cfg.low_index,
                         "1-based index of the first Low prime (default 1000001)");
    polignac->add_option("--high-index", cfg.high_index,
                         "1-based index of the last Low prime (default 21000001)");
    polignac->add_option("--m-max", cfg.m_max, "Largest regular even gap (default 3000)");
    polignac->add_option("--extra-m", cfg.extra_ms,
                         "Extra even gap, repeatable (default 30030)");
    add_common(polignac);

    CLI::App* scenario = app.add_subcommand(
        "scenario", "Three-placement sensitivity experiment on the composite product");
    add_common(scenario);

    CLI::App* estimate = app.add_subcommand(
        "estimate", "Asymptotic predictions over a geometric grid of n (CSV)");
    estimate->add_option("--low-index", cfg.low_index, "Smallest n (default 1000)");
    estimate->add_option("--high-index", cfg.high_index, "Largest n (default 10000000)");
    add_common(estimate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    if (twin->parsed()) {
        cfg.command = pp::Command::twin_scan;
    } else if (predict->parsed()) {
        cfg.command = pp::Command::predict;
    } else if (polignac->parsed()) {
        cfg.command = pp::Command::polignac;
    } else if (scenario->parsed()) {
        cfg.command = pp::Command::scenario;
    } else {
        cfg.command = pp::Command::estimate;
        if (estimate->count("--low-index") == 0) cfg.low_index = 1000;
        if (estimate->count("--high-index") == 0) cfg.high_index = 10000000;
    }

    try {
        pp::run_command(cfg);
    } catch (const pp::BudgetExceeded& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "failed: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
