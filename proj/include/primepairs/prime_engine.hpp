#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "parallel.hpp"

namespace primepairs {

using u64 = std::uint64_t;

// Default segment width in integers; sized so a segment's bit array sits in
// L2 cache while sieving.
inline constexpr u64 kDefaultSegmentIntegers = 1ull << 22;

inline u64 isqrt_u64(u64 n) {
    if (n == 0) return 0;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Trial-division primality for argument validation and small oracles.
inline bool is_prime_trial(u64 n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (u64 d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

// Ordered primes up to an inclusive limit.
struct PrimeTable {
    u64 limit = 0;
    std::vector<u64> primes;

    u64 count() const { return primes.size(); }
    bool contains(u64 x) const {
        return std::binary_search(primes.begin(), primes.end(), x);
    }
    // 0-based index of the first prime >= x.
    u64 index_of_first_at_least(u64 x) const {
        return static_cast<u64>(
            std::lower_bound(primes.begin(), primes.end(), x) - primes.begin());
    }
};

inline PrimeTable sieve_upto(u64 limit) {
    if (limit < 2) {
        throw std::invalid_argument("sieve_upto: limit must be >= 2, got " +
                                    std::to_string(limit));
    }
    // One bit per odd number: bit j <-> 2j+1, j >= 1.
    const u64 jmax = limit >= 3 ? (limit - 1) / 2 : 0;
    std::vector<u64> bits(jmax / 64 + 1, ~0ull);
    bits[0] &= ~1ull;  // 1 is not prime
    const u64 root = isqrt_u64(limit);
    for (u64 p = 3; p <= root; p += 2) {
        const u64 jp = p >> 1;
        if (!(bits[jp >> 6] >> (jp & 63) & 1)) continue;
        for (u64 c = p * p; c <= limit; c += 2 * p) {
            const u64 j = c >> 1;
            bits[j >> 6] &= ~(1ull << (j & 63));
        }
    }
    PrimeTable t;
    t.limit = limit;
    if (limit >= 60) {
        const double dl = static_cast<double>(limit);
        t.primes.reserve(static_cast<std::size_t>(dl / (std::log(dl) - 1.2)) + 64);
    }
    t.primes.push_back(2);
    for (u64 j = 1; j <= jmax; ++j) {
        if (bits[j >> 6] >> (j & 63) & 1) t.primes.push_back(2 * j + 1);
    }
    return t;
}

// 1-based: nth_prime(1) = 2.
inline u64 nth_prime(u64 n, const PrimeTable& table) {
    if (n < 1 || n > table.count()) {
        throw std::out_of_range("nth_prime: n = " + std::to_string(n) +
                                " outside [1, " + std::to_string(table.count()) + "]");
    }
    return table.primes[n - 1];
}

// The k-th odd prime (counting from 3): overall index k + 1.
inline u64 kth_odd_prime(u64 k, const PrimeTable& table) {
    return nth_prime(k + 1, table);
}

// Exact primality flags for every integer in [low, high], one bit each.
struct PrimalityWindow {
    u64 low = 0;
    u64 high = 0;
    std::vector<u64> bits;  // bit i <-> integer low + i

    bool flag(u64 x) const {
        const u64 i = x - low;
        return bits[i >> 6] >> (i & 63) & 1;
    }
    bool covers(u64 a, u64 b) const { return low <= a && b <= high; }
};

// Segmented sieve over [low, high]. Memory is proportional to the window, not
// to high. Parallel chunks are word-aligned so workers never share a word and
// the resulting bits cannot depend on scheduling.
inline PrimalityWindow segmented_window(u64 low, u64 high, const PrimeTable& base,
                                        u64 segment_size = kDefaultSegmentIntegers,
                                        unsigned threads = 1) {
    if (low < 2 || high < low) {
        throw std::invalid_argument("segmented_window: need 2 <= low <= high");
    }
    const u64 root = isqrt_u64(high);
    if (base.limit < root) {
        throw std::invalid_argument(
            "segmented_window: base table limit " + std::to_string(base.limit) +
            " is below the required floor(sqrt(high)) = " + std::to_string(root));
    }
    PrimalityWindow w;
    w.low = low;
    w.high = high;
    const u64 n = high - low + 1;
    w.bits.assign((n + 63) / 64, ~0ull);
    if (n % 64) w.bits.back() = ~0ull >> (64 - n % 64);

    u64 chunk = std::max<u64>(segment_size, 64);
    chunk -= chunk % 64;
    const u64 n_chunks = (n + chunk - 1) / chunk;
    for_each_chunk(n_chunks, threads, [&](u64 ci) {
        const u64 lo = low + ci * chunk;
        const u64 hi = std::min(high, lo + chunk - 1);
        for (u64 p : base.primes) {
            if (p > root || p * p > hi) break;
            u64 c = std::max(p * p, (lo + p - 1) / p * p);
            for (; c <= hi; c += p) {
                const u64 i = c - low;
                w.bits[i >> 6] &= ~(1ull << (i & 63));
            }
        }
    });
    return w;
}

}  // namespace primepairs
