#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "parallel.hpp"
#include "prime_engine.hpp"

namespace primepairs {

struct GapSpec {
    u64 m = 0;
    std::vector<u64> distinct_prime_divisors;
};

struct PolignacRecord {
    u64 m = 0;
    u64 pairs = 0;
    double occurrence_ratio = 0.0;  // pairs_m / pairs_2
    double expected_ratio = 0.0;
    double quotient = 0.0;          // occurrence / expected
};

struct RatioStats {
    double minimum = 0.0;
    double maximum = 0.0;
    double mean = 0.0;
    double std_dev = 0.0;  // population form
};

inline GapSpec gap_spec(u64 m) {
    if (m < 2 || m % 2 != 0) {
        throw std::invalid_argument("gap_spec: m must be a positive even integer, got " +
                                    std::to_string(m));
    }
    GapSpec g;
    g.m = m;
    u64 rest = m;
    g.distinct_prime_divisors.push_back(2);
    while (rest % 2 == 0) rest /= 2;
    for (u64 d = 3; d * d <= rest; d += 2) {
        if (rest % d == 0) {
            g.distinct_prime_divisors.push_back(d);
            while (rest % d == 0) rest /= d;
        }
    }
    if (rest > 1) g.distinct_prime_divisors.push_back(rest);
    return g;
}

// Gaps divisible by 3 double the candidate density; every further distinct
// prime divisor p >= 5 scales it by (p-1)/(p-2). Powers of a prime change
// nothing beyond its first occurrence.
inline double expected_ratio(u64 m) {
    const GapSpec g = gap_spec(m);
    double r = m % 3 == 0 ? 2.0 : 1.0;
    for (u64 p : g.distinct_prime_divisors) {
        if (p >= 5) r *= (static_cast<double>(p) - 1.0) / (static_cast<double>(p) - 2.0);
    }
    return r;
}

// Count primes P in the closed range [low_prime, high_prime] with P + m also
// prime. The partner may exceed high_prime (the upper limit stays open), so
// the window must cover [low_prime, high_prime + m].
inline u64 count_pairs_m(u64 low_prime, u64 high_prime, u64 m,
                         const PrimalityWindow& window) {
    if (m < 2 || m % 2 != 0) {
        throw std::invalid_argument("count_pairs_m: m must be a positive even integer");
    }
    if (low_prime < 5 || high_prime < low_prime) {
        throw std::invalid_argument("count_pairs_m: need 5 <= low_prime <= high_prime");
    }
    if (!window.covers(low_prime, high_prime + m)) {
        throw std::invalid_argument(
            "count_pairs_m: window [" + std::to_string(window.low) + ", " +
            std::to_string(window.high) + "] does not cover [" +
            std::to_string(low_prime) + ", " + std::to_string(high_prime + m) + "]");
    }
    u64 count = 0;
    for (u64 x = low_prime | 1; x <= high_prime; x += 2) {
        if (window.flag(x) && window.flag(x + m)) ++count;
    }
    return count;
}

// One record per even m in {2, 4, ..., m_max} plus any extra gaps. A single
// pass over the in-range primes feeds every m at once: P odd and m even make
// every partner P + m odd, so for a bit-per-odd prime bitmap the partners of
// P occupy the consecutive bits just above P's position, and one extraction
// of that run histograms all gaps together. Extra gaps beyond m_max use
// direct bitmap probes. Chunks over the prime list are fixed-size and merged
// in order, so results do not depend on the thread count.
inline std::vector<PolignacRecord> scan_all_gaps(u64 low_prime, u64 high_prime,
                                                 u64 m_max,
                                                 const std::vector<u64>& extra_ms,
                                                 const PrimeTable& table,
                                                 unsigned threads = 1) {
    if (m_max < 2 || m_max % 2 != 0) {
        throw std::invalid_argument("scan_all_gaps: m_max must be a positive even integer");
    }
    if (low_prime < 5 || high_prime < low_prime) {
        throw std::invalid_argument("scan_all_gaps: need 5 <= low_prime <= high_prime");
    }
    std::vector<u64> extras;
    for (u64 m : extra_ms) {
        if (m < 2 || m % 2 != 0) {
            throw std::invalid_argument("scan_all_gaps: extra m must be a positive even integer");
        }
        if (m > m_max) extras.push_back(m);
    }
    std::sort(extras.begin(), extras.end());
    extras.erase(std::unique(extras.begin(), extras.end()), extras.end());
    const u64 max_m = extras.empty() ? m_max : extras.back();
    if (table.limit < high_prime + max_m) {
        throw std::invalid_argument("scan_all_gaps: table limit " +
                                    std::to_string(table.limit) + " is below high + m = " +
                                    std::to_string(high_prime + max_m));
    }

    // Bit-per-odd prime bitmap up to high + max_m: bit j <-> 2j + 1.
    const u64 top = high_prime + max_m;
    std::vector<u64> oddbits(top / 2 / 64 + 2, 0);
    for (u64 p : table.primes) {
        if (p > top) break;
        if (p == 2) continue;
        const u64 j = p >> 1;
        oddbits[j >> 6] |= 1ull << (j & 63);
    }

    const u64 i_lo = table.index_of_first_at_least(low_prime);
    u64 i_hi = table.index_of_first_at_least(high_prime + 1);  // exclusive
    const u64 n_primes = i_hi - i_lo;
    const u64 run_len = m_max / 2;  // offsets 1..run_len <-> m = 2..m_max

    constexpr u64 kChunkPrimes = 1u << 18;
    const u64 n_chunks = n_primes == 0 ? 0 : (n_primes - 1) / kChunkPrimes + 1;
    struct ChunkCounts {
        std::vector<u64> hist;    // hist[b] <-> m = 2(b+1)
        std::vector<u64> extra;
    };
    std::vector<ChunkCounts> chunk_counts(n_chunks);

    for_each_chunk(n_chunks, threads, [&](u64 ci) {
        ChunkCounts& cc = chunk_counts[ci];
        cc.hist.assign(run_len, 0);
        cc.extra.assign(extras.size(), 0);
        const u64 a = i_lo + ci * kChunkPrimes;
        const u64 b = std::min(i_hi, a + kChunkPrimes);
        for (u64 i = a; i < b; ++i) {
            const u64 P = table.primes[i];
            const u64 start = (P >> 1) + 1;  // bit of P + 2
            // Extract run_len consecutive bits starting at `start`.
            u64 produced = 0;
            u64 word = start >> 6;
            unsigned off = static_cast<unsigned>(start & 63);
            while (produced < run_len) {
                u64 v = oddbits[word] >> off;
                if (off) v |= oddbits[word + 1] << (64 - off);
                const u64 remaining = run_len - produced;
                if (remaining < 64) v &= (1ull << remaining) - 1;
                while (v) {
                    const unsigned tz = static_cast<unsigned>(std::countr_zero(v));
                    v &= v - 1;
                    ++cc.hist[produced + tz];
                }
                produced += 64;
                ++word;
            }
            for (std::size_t e = 0; e < extras.size(); ++e) {
                const u64 j = (P + extras[e]) >> 1;
                cc.extra[e] += oddbits[j >> 6] >> (j & 63) & 1;
            }
        }
    });

    std::vector<u64> hist(run_len, 0);
    std::vector<u64> extra_counts(extras.size(), 0);
    for (const ChunkCounts& cc : chunk_counts) {
        for (u64 b = 0; b < run_len; ++b) hist[b] += cc.hist[b];
        for (std::size_t e = 0; e < extras.size(); ++e) extra_counts[e] += cc.extra[e];
    }

    const u64 pairs_2 = hist.empty() ? 0 : hist[0];
    if (pairs_2 == 0) {
        throw std::runtime_error("scan_all_gaps: no m = 2 pairs in range; ratios undefined");
    }
    std::vector<PolignacRecord> records;
    records.reserve(run_len + extras.size());
    auto make_record = [&](u64 m, u64 pairs) {
        PolignacRecord r;
        r.m = m;
        r.pairs = pairs;
        r.occurrence_ratio = static_cast<double>(pairs) / static_cast<double>(pairs_2);
        r.expected_ratio = expected_ratio(m);
        r.quotient = r.occurrence_ratio / r.expected_ratio;
        return r;
    };
    for (u64 b = 0; b < run_len; ++b) records.push_back(make_record(2 * (b + 1), hist[b]));
    for (std::size_t e = 0; e < extras.size(); ++e) {
        records.push_back(make_record(extras[e], extra_counts[e]));
    }
    return records;
}

inline RatioStats ratio_stats(const std::vector<PolignacRecord>& records) {
    if (records.empty()) {
        throw std::invalid_argument("ratio_stats: no records");
    }
    RatioStats s;
    s.minimum = records.front().quotient;
    s.maximum = records.front().quotient;
    double sum = 0.0;
    for (const PolignacRecord& r : records) {
        s.minimum = std::min(s.minimum, r.quotient);
        s.maximum = std::max(s.maximum, r.quotient);
        sum += r.quotient;
    }
    s.mean = sum / static_cast<double>(records.size());
    double sq = 0.0;
    for (const PolignacRecord& r : records) {
        const double d = r.quotient - s.mean;
        sq += d * d;
    }
    s.std_dev = std::sqrt(sq / static_cast<double>(records.size()));
    return s;
}

}  // namespace primepairs
