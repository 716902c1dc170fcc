#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "candidate_model.hpp"
#include "prime_engine.hpp"

namespace primepairs {

// Overestimation factor of the Euler product for primality probability,
// at the published precision. The high-precision value 2 e^{-gamma} is
// available behind a flag for comparison runs.
inline constexpr double kMertensFactor = 1.12292;
inline constexpr double kMertensFactorHighPrecision = 1.1229189671337703;

inline double correction_factor(bool high_precision = false) {
    const double m = high_precision ? kMertensFactorHighPrecision : kMertensFactor;
    return m * m;
}

struct PredictionBreakdown {
    u64 p_n = 0;
    double product_pminus2_over_p = 1.0;
    u64 n_of_candidates = 0;
    double correction = kMertensFactor * kMertensFactor;
    double prediction = 0.0;
};

// prod (p-2)/p over the primes 5 <= p <= p_{n-1}; exactly n-3 factors.
inline double product_pminus2_over_p(u64 p_n, const PrimeTable& table) {
    if (p_n < 7 || !is_prime_trial(p_n)) {
        throw std::invalid_argument("product_pminus2_over_p: p_n must be a prime >= 7");
    }
    if (table.limit < p_n) {
        throw std::invalid_argument("product_pminus2_over_p: table limit " +
                                    std::to_string(table.limit) +
                                    " does not cover p_{n-1} for p_n = " +
                                    std::to_string(p_n));
    }
    double prod = 1.0;
    for (u64 i = table.index_of_first_at_least(5);
         i < table.count() && table.primes[i] < p_n; ++i) {
        const double p = static_cast<double>(table.primes[i]);
        prod *= (p - 2.0) / p;
    }
    return prod;
}

struct TelescopingCheck {
    double direct = 0.0;         // running product of (p-2)/p
    double reconstructed = 0.0;  // 3/p_{n-1} divided by the odd-composite product
};

// The product over all odd numbers 5..p_{n-1} of (o-2)/o telescopes to
// 3/p_{n-1}; dividing back out the odd composites in [9, p_{n-1}) recovers
// the prime-only product. Both routes are accumulated in long double so the
// 1e-12 agreement bound is meaningful.
inline TelescopingCheck telescoping_check(u64 p_n, const PrimeTable& table) {
    if (p_n < 11 || !is_prime_trial(p_n)) {
        throw std::invalid_argument("telescoping_check: p_n must be a prime >= 11");
    }
    if (table.limit < p_n) {
        throw std::invalid_argument("telescoping_check: table does not cover p_n");
    }
    const u64 i_n = table.index_of_first_at_least(p_n);
    const u64 p_prev = table.primes[i_n - 1];
    long double direct = 1.0L;
    for (u64 i = table.index_of_first_at_least(5); i < i_n; ++i) {
        const long double p = static_cast<long double>(table.primes[i]);
        direct *= (p - 2.0L) / p;
    }
    long double composite = 1.0L;
    for (u64 c = 9; c < p_prev; c += 2) {
        if (!table.contains(c)) composite *= (static_cast<long double>(c) - 2.0L) / c;
    }
    TelescopingCheck out;
    out.direct = static_cast<double>(direct);
    out.reconstructed = static_cast<double>(3.0L / p_prev / composite);
    return out;
}

// Incremental form of telescoping_check for sweeps over consecutive primes;
// one factor of work per odd number instead of a fresh pass per p_n.
class TelescopingScanner {
  public:
    explicit TelescopingScanner(const PrimeTable& table) : table_(table) {
        idx_ = table.index_of_first_at_least(11);
        if (idx_ >= table.count()) {
            throw std::invalid_argument("TelescopingScanner: table has no prime >= 11");
        }
        // State for p_n = 11: direct over {5, 7}, no odd composite below 7.
        direct_ = (3.0L / 5.0L) * (5.0L / 7.0L);
        composite_ = 1.0L;
        p_prev_ = 7;
    }

    bool done() const { return idx_ >= table_.count(); }
    u64 current_p_n() const { return table_.primes[idx_]; }

    // Check for the current p_n, then advance to the next prime.
    std::pair<u64, TelescopingCheck> next() {
        const u64 p_n = table_.primes[idx_];
        TelescopingCheck c;
        c.direct = static_cast<double>(direct_);
        c.reconstructed = static_cast<double>(3.0L / p_prev_ / composite_);
        ++idx_;
        if (idx_ < table_.count()) {
            // p_{n-1} becomes the old p_n; the odd numbers strictly between
            // the old and new p_{n-1} are all composite.
            for (u64 o = p_prev_ + 2; o < p_n; o += 2) {
                composite_ *= (static_cast<long double>(o) - 2.0L) / o;
            }
            direct_ *= (static_cast<long double>(p_n) - 2.0L) / p_n;
            p_prev_ = p_n;
        }
        return {p_n, c};
    }

  private:
    const PrimeTable& table_;
    u64 idx_;
    long double direct_;
    long double composite_;
    u64 p_prev_;
};

inline PredictionBreakdown predict_twins(u64 p_n, const PrimeTable& table,
                                         bool high_precision_mertens = false) {
    PredictionBreakdown b;
    b.p_n = p_n;
    b.product_pminus2_over_p = product_pminus2_over_p(p_n, table);
    b.n_of_candidates = candidate_bounds(p_n).count;
    b.correction = correction_factor(high_precision_mertens);
    b.prediction = b.product_pminus2_over_p *
                   static_cast<double>(b.n_of_candidates) / b.correction;
    return b;
}

// prod (p-1)/p over all primes p <= limit (2 included); by Mertens' theorem
// the quotient by 2 e^{-gamma} / log(limit^2) tends to 1.
inline double mertens_product(u64 limit, const PrimeTable& table) {
    if (table.limit < limit) {
        throw std::invalid_argument("mertens_product: table does not cover the limit");
    }
    double prod = 1.0;
    for (u64 p : table.primes) {
        if (p > limit) break;
        const double pd = static_cast<double>(p);
        prod *= (pd - 1.0) / pd;
    }
    return prod;
}

// Partial value of the twin prime constant: prod p(p-2)/(p-1)^2 over odd
// primes 3 <= p <= limit. Tends to 0.66016... from above.
inline double twin_constant_partial(u64 limit, const PrimeTable& table) {
    if (limit < 3) {
        throw std::invalid_argument("twin_constant_partial: limit must be >= 3");
    }
    if (table.limit < limit) {
        throw std::invalid_argument("twin_constant_partial: table does not cover the limit");
    }
    double prod = 1.0;
    for (u64 i = table.index_of_first_at_least(3);
         i < table.count() && table.primes[i] <= limit; ++i) {
        const double p = static_cast<double>(table.primes[i]);
        prod *= p * (p - 2.0) / ((p - 1.0) * (p - 1.0));
    }
    return prod;
}

}  // namespace primepairs
