#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "parallel.hpp"
#include "prediction.hpp"
#include "prime_engine.hpp"

namespace primepairs {

struct AsymptoticPrediction {
    u64 n = 0;
    double p_n_estimate = 0.0;       // Cesaro approximation of the n-th prime
    double product_estimate = 0.0;   // anchored (p-2)/p product at x = p_n_estimate
    double candidates_estimate = 0.0;
    double predicted_twins = 0.0;
};

struct ScenarioResult {
    double prod1 = 0.0;  // hypothetical middle prime at p_n + 2
    double prod2 = 0.0;  // at p_{n+2} - 2
    double prod3 = 0.0;  // at the midpoint (p_n + p_{n+2}) / 2
};

// Cesaro's 1894 approximation of the n-th prime.
inline double cesaro_nth_prime(u64 n) {
    if (n < 10) {
        throw std::domain_error("cesaro_nth_prime: n must be >= 10, got " +
                                std::to_string(n));
    }
    const double nd = static_cast<double>(n);
    const double l = std::log(nd);
    const double ll = std::log(l);
    return nd * (l + ll - 1.0 + (ll - 2.0) / l);
}

namespace detail {

// Exact prod (p-2)/p over primes 5 <= p <= 10^4.
inline double anchor_product_to_1e4(const PrimeTable& anchor) {
    if (anchor.limit < 10000) {
        throw std::invalid_argument("anchor table must cover 10^4");
    }
    double prod = 1.0;
    for (u64 i = anchor.index_of_first_at_least(5);
         i < anchor.count() && anchor.primes[i] <= 10000; ++i) {
        const double p = static_cast<double>(anchor.primes[i]);
        prod *= (p - 2.0) / p;
    }
    return prod;
}

// The anchored product scaled as (log 10001 / log x)^2; defined for any
// x > 1, the public product_estimate gates it to the x >= 10001 regime.
inline double scaled_product(double x, double anchor_product) {
    const double s = std::log(10001.0) / std::log(x);
    return anchor_product * s * s;
}

}  // namespace detail

// The product over primes <= x of (p-2)/p falls like 1/log(x)^2; anchoring
// at the exactly-computed value for 10^4 gives a cheap estimate for large x.
inline double product_estimate(double x, const PrimeTable& anchor) {
    if (x < 10001.0) {
        throw std::domain_error("product_estimate: x must be >= 10001");
    }
    return detail::scaled_product(x, detail::anchor_product_to_1e4(anchor));
}

// Fully asymptotic prediction: estimated p_n, estimated product, estimated
// candidate count, combined with the Mertens correction. The scaled product
// is evaluated directly so small n (whose p_n estimate falls below the 10^4
// anchor) still yield a positive finite value.
inline AsymptoticPrediction predict_twins_asymptotic(u64 n, const PrimeTable& anchor,
                                                     bool high_precision_mertens = false) {
    AsymptoticPrediction a;
    a.n = n;
    a.p_n_estimate = cesaro_nth_prime(n);
    a.product_estimate =
        detail::scaled_product(a.p_n_estimate, detail::anchor_product_to_1e4(anchor));
    a.candidates_estimate = 2.0 / 3.0 * a.p_n_estimate;
    a.predicted_twins = a.product_estimate * a.candidates_estimate /
                        correction_factor(high_precision_mertens);
    return a;
}

// Sensitivity experiment on the telescoped odd-composite product: walk the
// odd primes from the 10^6-th to the 5*10^6-th in index steps of 2, keep the
// outer pair (P, Q) real, and replace the prime between them by a
// hypothetical one at three placements. Per step the odd composites strictly
// between P and Q contribute P/(Q-2), and sparing the hypothetical prime h
// multiplies by h/(h-2).
//
// The range is processed in fixed-size chunks whose long double partial
// products are combined in chunk order, so results are identical for any
// thread count.
inline ScenarioResult scenario_experiment(const PrimeTable& table, unsigned threads = 1) {
    constexpr u64 kFirstOddIndex = 1000000;  // odd-prime index = overall index - 1
    constexpr u64 kLastOddIndex = 5000000;
    constexpr u64 kChunkSteps = 16384;
    if (table.count() < kLastOddIndex + 3) {
        throw std::invalid_argument(
            "scenario_experiment: table must hold at least " +
            std::to_string(kLastOddIndex + 3) + " primes, has " +
            std::to_string(table.count()));
    }
    const u64 n_steps = (kLastOddIndex - kFirstOddIndex) / 2 + 1;
    const u64 n_chunks = (n_steps + kChunkSteps - 1) / kChunkSteps;
    std::vector<std::array<long double, 3>> partials(
        n_chunks, {1.0L, 1.0L, 1.0L});

    for_each_chunk(n_chunks, threads, [&](u64 ci) {
        const u64 step_lo = ci * kChunkSteps;
        const u64 step_hi = std::min(n_steps, step_lo + kChunkSteps);
        auto& acc = partials[ci];
        for (u64 s = step_lo; s < step_hi; ++s) {
            // 0-based vector position of the odd-prime index k is k itself
            // (entry 0 is the prime 2).
            const u64 k = kFirstOddIndex + 2 * s;
            const long double P = static_cast<long double>(table.primes[k]);
            const long double Q = static_cast<long double>(table.primes[k + 2]);
            const long double base = P / (Q - 2.0L);
            const long double h1 = P + 2.0L;
            const long double h2 = Q - 2.0L;
            const long double h3 = (P + Q) / 2.0L;
            acc[0] *= base * h1 / (h1 - 2.0L);
            acc[1] *= base * h2 / (h2 - 2.0L);
            acc[2] *= base * h3 / (h3 - 2.0L);
        }
    });

    long double p1 = 1.0L, p2 = 1.0L, p3 = 1.0L;
    for (const auto& a : partials) {
        p1 *= a[0];
        p2 *= a[1];
        p3 *= a[2];
    }
    return {static_cast<double>(p1), static_cast<double>(p2), static_cast<double>(p3)};
}

}  // namespace primepairs
