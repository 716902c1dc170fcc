#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "candidate_model.hpp"
#include "parallel.hpp"
#include "prime_engine.hpp"

namespace primepairs {

struct TwinScanRecord {
    u64 p_n = 0;
    u64 candidates = 0;
    u64 twins_found = 0;
    std::vector<u64> twin_centers;  // filled only when retention is on
};

// The double sieve: candidate N dies when some sieve prime p divides N-1 or
// N+1, i.e. N mod p is 1 or p-1. Inside the window both neighbours are below
// p_n^2, so surviving is equivalent to N-1 and N+1 both being prime.
inline bool survives_double_sieve(u64 N, std::span<const u64> sieve_primes) {
    if (N % 6 != 0) {
        throw std::invalid_argument("survives_double_sieve: N = " + std::to_string(N) +
                                    " is not a multiple of 6");
    }
    for (u64 p : sieve_primes) {
        const u64 r = N % p;
        if (r == 1 || r == p - 1) return false;
    }
    return true;
}

// Reference implementation: per-candidate modulo loops over the primes
// 5 .. p_{n-1}. Kept as the cross-validation path for the streaming scan.
inline TwinScanRecord count_twins_in_window(u64 p_n, const PrimeTable& table,
                                            bool keep_centers = true) {
    if (table.limit < p_n) {
        throw std::invalid_argument("count_twins_in_window: table limit " +
                                    std::to_string(table.limit) + " is below p_n = " +
                                    std::to_string(p_n));
    }
    const CandidateRange cr = candidate_bounds(p_n);
    const u64 i5 = table.index_of_first_at_least(5);
    const u64 in = table.index_of_first_at_least(p_n);
    const std::span<const u64> sieve_primes(table.primes.data() + i5, in - i5);
    TwinScanRecord rec;
    rec.p_n = p_n;
    rec.candidates = cr.count;
    for (u64 N = cr.first_candidate; N <= cr.last_candidate; N += 6) {
        if (survives_double_sieve(N, sieve_primes)) {
            ++rec.twins_found;
            if (keep_centers) rec.twin_centers.push_back(N);
        }
    }
    return rec;
}

// Twin centers read off a primality window instead of the modulo criteria;
// used to cross-check the double sieve against actual primality.
inline std::vector<u64> twin_centers_via_primality(u64 p_n, const PrimalityWindow& win) {
    const CandidateRange cr = candidate_bounds(p_n);
    if (!win.covers(cr.first_candidate - 1, cr.last_candidate + 1)) {
        throw std::invalid_argument("twin_centers_via_primality: window does not cover the candidate range");
    }
    std::vector<u64> centers;
    for (u64 N = cr.first_candidate; N <= cr.last_candidate; N += 6) {
        if (win.flag(N - 1) && win.flag(N + 1)) centers.push_back(N);
    }
    return centers;
}

struct TwinScanOptions {
    unsigned threads = 1;
    u64 segment_size = kDefaultSegmentIntegers;  // integers per streamed segment
    u64 keep_centers_below = 100000;             // retain centers while p_n <= this
};

namespace detail {

inline u64 modinv_u64(u64 a, u64 m) {
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(a % m);
    while (nr != 0) {
        const std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(m);
    return static_cast<u64>(t);
}

}  // namespace detail

// Streaming scan over every window ((p-2)^2, p^2) for primes 7 <= p <= p_max.
//
// Instead of per-window modulo loops, the whole candidate grid k (N = 6k) is
// sieved once: prime p >= 5 strikes k = +-inv6 (mod p) starting at p^2, which
// marks exactly the N whose neighbour N-+1 is a multiple of p with cofactor
// >= p. Any composite neighbour inside a window has its smallest prime factor
// q with q^2 <= N+-1 and q >= 5 (neighbours are +-1 mod 6), so it is struck by
// q; primes are never struck; primes >= p_n cannot strike inside p_n's window
// because their squares lie beyond it. The survivors therefore coincide with
// the per-window double sieve, window by window.
//
// Segments are fixed-size (independent of the thread count) and results are
// combined in segment order, so output never depends on scheduling.
inline std::vector<TwinScanRecord> twin_scan_stream(u64 p_max, const PrimeTable& base,
                                                    const TwinScanOptions& opt = {}) {
    std::vector<TwinScanRecord> records;
    if (p_max < 7) return records;
    if (base.limit < p_max) {
        throw std::invalid_argument("twin_scan_stream: base table limit " +
                                    std::to_string(base.limit) + " is below p_max = " +
                                    std::to_string(p_max));
    }

    // Window bounds, ordered by p_n.
    std::vector<u64> lows, highs;
    for (u64 i = base.index_of_first_at_least(7);
         i < base.count() && base.primes[i] <= p_max; ++i) {
        const CandidateRange cr = candidate_bounds(base.primes[i]);
        records.push_back({cr.p_n, cr.count, 0, {}});
        lows.push_back(cr.low);
        highs.push_back(cr.high);
    }
    if (records.empty()) return records;

    const u64 k_min = 5;  // N = 30, first candidate of the first window
    const u64 k_max = (p_max * p_max - 7) / 6;

    // Strike primes with both residues and their activation points.
    struct Strike {
        u64 p, r_minus, r_plus, kmin_minus, kmin_plus;
    };
    std::vector<Strike> strikes;
    for (u64 i = base.index_of_first_at_least(5); i < base.count(); ++i) {
        const u64 p = base.primes[i];
        if (p * p > 6 * k_max + 1) break;
        const u64 inv6 = detail::modinv_u64(6 % p, p);
        Strike s;
        s.p = p;
        s.r_minus = inv6;             // 6k = 1 (mod p): p divides N - 1
        s.r_plus = p - inv6;          // 6k = -1 (mod p): p divides N + 1
        s.kmin_minus = (p * p + 1 + 5) / 6;
        s.kmin_plus = (p * p - 1 + 5) / 6;
        strikes.push_back(s);
    }

    u64 seg_k = std::max<u64>(opt.segment_size / 6, 4096);
    seg_k = (seg_k + 63) / 64 * 64;
    const u64 n_segs = (k_max - k_min) / seg_k + 1;

    struct SegOut {
        std::vector<std::pair<std::uint32_t, u64>> window_counts;
        std::vector<u64> kept_centers;
    };
    std::vector<SegOut> outs(n_segs);
    const u64 keep_below = opt.keep_centers_below;

    for_each_chunk(n_segs, opt.threads, [&](u64 si) {
        const u64 lo = k_min + si * seg_k;
        const u64 hi = std::min(k_max, lo + seg_k - 1);
        const u64 nbits = hi - lo + 1;
        std::vector<u64> bits((nbits + 63) / 64, ~0ull);
        if (nbits % 64) bits.back() = ~0ull >> (64 - nbits % 64);

        for (const Strike& s : strikes) {
            if (s.kmin_plus > hi) break;  // sorted by p, activation monotone
            const u64 sides[2][2] = {{s.r_minus, s.kmin_minus}, {s.r_plus, s.kmin_plus}};
            for (const auto& side : sides) {
                const u64 start = std::max(side[1], lo);
                if (start > hi) continue;
                u64 k = start + (side[0] + s.p - start % s.p) % s.p;
                for (; k <= hi; k += s.p) {
                    const u64 j = k - lo;
                    bits[j >> 6] &= ~(1ull << (j & 63));
                }
            }
        }

        // Map survivors onto windows; survivors in the gaps between
        // consecutive windows belong to none and are skipped.
        SegOut& out = outs[si];
        std::size_t w = static_cast<std::size_t>(
            std::upper_bound(highs.begin(), highs.end(), 6 * lo) - highs.begin());
        const std::size_t W = highs.size();
        std::uint32_t run_w = 0;
        u64 run_count = 0;
        bool run_open = false;
        for (u64 wi = 0; wi < bits.size(); ++wi) {
            u64 v = bits[wi];
            while (v) {
                const unsigned tz = static_cast<unsigned>(std::countr_zero(v));
                v &= v - 1;
                const u64 N = 6 * (lo + wi * 64 + tz);
                while (w < W && highs[w] < N) ++w;
                if (w >= W) break;
                if (N <= lows[w]) continue;
                if (run_open && run_w == w) {
                    ++run_count;
                } else {
                    if (run_open) out.window_counts.emplace_back(run_w, run_count);
                    run_w = static_cast<std::uint32_t>(w);
                    run_count = 1;
                    run_open = true;
                }
                if (records[w].p_n <= keep_below) out.kept_centers.push_back(N);
            }
            if (w >= W) break;
        }
        if (run_open) out.window_counts.emplace_back(run_w, run_count);
    });

    // Deterministic combination in segment order.
    std::size_t w = 0;
    for (u64 si = 0; si < n_segs; ++si) {
        for (const auto& [wi, c] : outs[si].window_counts) records[wi].twins_found += c;
        for (u64 N : outs[si].kept_centers) {
            while (w < highs.size() && highs[w] < N) ++w;
            records[w].twin_centers.push_back(N);
        }
    }
    return records;
}

}  // namespace primepairs
