#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "asymptotics.hpp"
#include "parallel.hpp"
#include "polignac.hpp"
#include "prediction.hpp"
#include "prime_engine.hpp"
#include "twin_sieve.hpp"

namespace primepairs {

enum class Command { twin_scan, predict, polignac, scenario, estimate };

struct RunConfig {
    Command command = Command::twin_scan;
    u64 p_max = 10000;            // twin-scan, predict
    u64 low_index = 1000001;      // polignac, estimate (1-based prime index / n)
    u64 high_index = 21000001;
    u64 m_max = 3000;             // polignac
    std::vector<u64> extra_ms = {30030};
    std::string out_path;         // empty = stdout
    unsigned threads = 0;         // 0 = auto; PRIMEPAIRS_THREADS overrides
    u64 segment_size = kDefaultSegmentIntegers;
};

// Refusals of over-budget requests; carries a work estimate in the message.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr u64 kTwinScanBudgetPMax = 300000;
inline constexpr u64 kPredictBudgetPMax = 10000000;
inline constexpr u64 kPolignacBudgetHighIndex = 22000000;

// CSV reals: 6 significant digits, period separator, no grouping.
inline std::string fmt_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

namespace detail {

// Rough strike count of the streaming twin scan, for refusal messages.
inline double twin_scan_strike_estimate(u64 p_max) {
    const double p = static_cast<double>(p_max);
    const double sum_inv_p = std::log(std::log(p)) + 0.2615 - 5.0 / 6.0;
    return 2.0 * (p * p / 6.0) * sum_inv_p;
}

// Upper bound on the n-th prime (Rosser-type) for sieve sizing.
inline u64 nth_prime_upper_bound(u64 n) {
    if (n < 6) return 13;
    const double nd = static_cast<double>(n);
    return static_cast<u64>(nd * (std::log(nd) + std::log(std::log(nd)))) + 16;
}

}  // namespace detail

// One row per prime p_n in [7, p_max]: window bounds, exact candidate count,
// measured twins, the corrected prediction and their ratio.
inline void run_twin_scan(const RunConfig& config, std::ostream& out) {
    if (config.p_max > kTwinScanBudgetPMax) {
        throw BudgetExceeded(
            "twin-scan: p-max " + std::to_string(config.p_max) + " exceeds the budget of " +
            std::to_string(kTwinScanBudgetPMax) + "; the scan would need about " +
            fmt_real(detail::twin_scan_strike_estimate(config.p_max)) +
            " sieve strikes over [25, p_max^2)");
    }
    const unsigned threads = resolve_threads(config.threads);
    out << "p_n,low,high,candidates,twins_found,prediction,ratio\n";
    if (config.p_max < 7) return;
    std::cerr << "twin-scan: sieving base table to " << config.p_max << "\n";
    const PrimeTable table = sieve_upto(std::max<u64>(config.p_max, 100));
    std::cerr << "twin-scan: streaming candidate grid up to " << config.p_max
              << "^2 with " << threads << " thread(s)\n";
    TwinScanOptions opt;
    opt.threads = threads;
    opt.segment_size = config.segment_size;
    opt.keep_centers_below = 0;
    const std::vector<TwinScanRecord> records = twin_scan_stream(config.p_max, table, opt);

    const double corr = correction_factor();
    double prod = 1.0;
    u64 idx = table.index_of_first_at_least(5);
    for (const TwinScanRecord& rec : records) {
        while (idx < table.count() && table.primes[idx] < rec.p_n) {
            const double p = static_cast<double>(table.primes[idx]);
            prod *= (p - 2.0) / p;
            ++idx;
        }
        const double prediction = prod * static_cast<double>(rec.candidates) / corr;
        out << rec.p_n << ',' << (rec.p_n - 2) * (rec.p_n - 2) << ',' << rec.p_n * rec.p_n
            << ',' << rec.candidates << ',' << rec.twins_found << ',' << fmt_real(prediction)
            << ',' << fmt_real(static_cast<double>(rec.twins_found) / prediction) << '\n';
    }
}

// Prediction breakdowns only (no sieving of the windows' twins).
inline void run_predict(const RunConfig& config, std::ostream& out) {
    if (config.p_max > kPredictBudgetPMax) {
        throw BudgetExceeded("predict: p-max " + std::to_string(config.p_max) +
                             " exceeds the budget of " + std::to_string(kPredictBudgetPMax));
    }
    out << "p_n,product_pminus2_over_p,candidates,correction,prediction\n";
    if (config.p_max < 7) return;
    const PrimeTable table = sieve_upto(std::max<u64>(config.p_max, 100));
    const double corr = correction_factor();
    double prod = 1.0;
    u64 idx = table.index_of_first_at_least(5);
    for (u64 i = table.index_of_first_at_least(7);
         i < table.count() && table.primes[i] <= config.p_max; ++i) {
        const u64 p_n = table.primes[i];
        while (idx < table.count() && table.primes[idx] < p_n) {
            const double p = static_cast<double>(table.primes[idx]);
            prod *= (p - 2.0) / p;
            ++idx;
        }
        const u64 candidates = candidate_bounds(p_n).count;
        const double prediction = prod * static_cast<double>(candidates) / corr;
        out << p_n << ',' << fmt_real(prod) << ',' << candidates << ',' << fmt_real(corr)
            << ',' << fmt_real(prediction) << '\n';
    }
}

// Pair counts and ratio diagnostics for every even gap up to m-max plus the
// extra gaps; range ends are given as 1-based prime indices.
inline void run_polignac(const RunConfig& config, std::ostream& out) {
    if (config.low_index < 3 || config.high_index < config.low_index) {
        throw std::invalid_argument("polignac: need 3 <= low-index <= high-index");
    }
    if (config.high_index > kPolignacBudgetHighIndex) {
        throw BudgetExceeded(
            "polignac: high-index " + std::to_string(config.high_index) +
            " exceeds the budget of " + std::to_string(kPolignacBudgetHighIndex) +
            " (the sieve would span about " +
            fmt_real(static_cast<double>(detail::nth_prime_upper_bound(config.high_index))) +
            " integers)");
    }
    const unsigned threads = resolve_threads(config.threads);
    u64 max_m = config.m_max;
    for (u64 m : config.extra_ms) max_m = std::max(max_m, m);
    const u64 bound = detail::nth_prime_upper_bound(config.high_index) + max_m;
    std::cerr << "polignac: sieving to " << bound << "\n";
    const PrimeTable table = sieve_upto(bound);
    if (table.count() < config.high_index) {
        throw std::runtime_error("polignac: prime bound estimate fell short");
    }
    const u64 low = nth_prime(config.low_index, table);
    const u64 high = nth_prime(config.high_index, table);
    std::cerr << "polignac: scanning gaps up to " << config.m_max << " over primes in ["
              << low << ", " << high << "] with " << threads << " thread(s)\n";
    const std::vector<PolignacRecord> records =
        scan_all_gaps(low, high, config.m_max, config.extra_ms, table, threads);
    out << "m,pairs_m,occurrence_ratio,expected_ratio,quotient\n";
    for (const PolignacRecord& r : records) {
        out << r.m << ',' << r.pairs << ',' << fmt_real(r.occurrence_ratio) << ','
            << fmt_real(r.expected_ratio) << ',' << fmt_real(r.quotient) << '\n';
    }
    const RatioStats stats = ratio_stats(records);
    out << "# min " << fmt_real(stats.minimum) << '\n';
    out << "# max " << fmt_real(stats.maximum) << '\n';
    out << "# mean " << fmt_real(stats.mean) << '\n';
    out << "# std " << fmt_real(stats.std_dev) << '\n';
}

// The three-placement sensitivity experiment; plain text, 9 decimal digits.
inline void run_scenario(const RunConfig& config, std::ostream& out) {
    const unsigned threads = resolve_threads(config.threads);
    std::cerr << "scenario: sieving to 87000000\n";
    const PrimeTable table = sieve_upto(87000000);
    const ScenarioResult r = scenario_experiment(table, threads);
    char buf[64];
    std::snprintf(buf, sizeof buf, "prod1 %.9f\nprod2 %.9f\nprod3 %.9f\n", r.prod1,
                  r.prod2, r.prod3);
    out << buf;
}

// Asymptotic estimates over a geometric grid of n in [low-index, high-index].
inline void run_estimate(const RunConfig& config, std::ostream& out) {
    if (config.low_index < 10 || config.high_index < config.low_index) {
        throw std::invalid_argument("estimate: need 10 <= low-index <= high-index");
    }
    const PrimeTable anchor = sieve_upto(10000);
    std::vector<u64> grid;
    const u64 lo = config.low_index, hi = config.high_index;
    if (hi - lo <= 100) {
        for (u64 n = lo; n <= hi; ++n) grid.push_back(n);
    } else {
        const double ratio = static_cast<double>(hi) / static_cast<double>(lo);
        for (int i = 0; i < 100; ++i) {
            const double x = static_cast<double>(lo) * std::pow(ratio, i / 99.0);
            grid.push_back(static_cast<u64>(std::llround(x)));
        }
        grid.front() = lo;
        grid.back() = hi;
        grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    }
    out << "n,p_n_estimate,product_estimate,candidates_estimate,predicted_twins\n";
    for (u64 n : grid) {
        const AsymptoticPrediction a = predict_twins_asymptotic(n, anchor);
        out << n << ',' << fmt_real(a.p_n_estimate) << ',' << fmt_real(a.product_estimate)
            << ',' << fmt_real(a.candidates_estimate) << ',' << fmt_real(a.predicted_twins)
            << '\n';
    }
}

// Dispatch helper: writes to the configured path or stdout.
inline void run_command(const RunConfig& config) {
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!config.out_path.empty()) {
        file.open(config.out_path);
        if (!file) {
            throw std::runtime_error("cannot open output file: " + config.out_path);
        }
        out = &file;
    }
    switch (config.command) {
        case Command::twin_scan: run_twin_scan(config, *out); break;
        case Command::predict: run_predict(config, *out); break;
        case Command::polignac: run_polignac(config, *out); break;
        case Command::scenario: run_scenario(config, *out); break;
        case Command::estimate: run_estimate(config, *out); break;
    }
    out->flush();
    if (out == &file && !file) {
        throw std::runtime_error("write failed: " + config.out_path);
    }
}

}  // namespace primepairs
