#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "prime_engine.hpp"

namespace primepairs {

// The window ((p_n - 2)^2, p_n^2) with its twin-candidate multiples of 6.
// The largest candidate is p_n^2 - 7: p_n^2 - 1 is skipped because p_n^2 is
// a square, never by a primality test. The first candidate depends on whether
// 3 divides p_n - 2 (then (p_n-2)^2 = 3 mod 6) or not (then it is 1 mod 6).
struct CandidateRange {
    u64 p_n = 0;
    u64 low = 0;              // (p_n - 2)^2, exclusive
    u64 high = 0;             // p_n^2, exclusive
    u64 first_candidate = 0;  // smallest multiple of 6 in the open window
    u64 last_candidate = 0;   // p_n^2 - 7
    u64 count = 0;            // (last - first)/6 + 1
};

inline CandidateRange candidate_bounds(u64 p_n) {
    if (p_n < 7 || !is_prime_trial(p_n)) {
        throw std::invalid_argument("candidate_bounds: p_n must be a prime >= 7, got " +
                                    std::to_string(p_n));
    }
    CandidateRange r;
    r.p_n = p_n;
    r.low = (p_n - 2) * (p_n - 2);
    r.high = p_n * p_n;
    r.first_candidate = r.low + ((p_n - 2) % 3 == 0 ? 3 : 5);
    r.last_candidate = r.high - 7;
    r.count = (r.last_candidate - r.first_candidate) / 6 + 1;
    return r;
}

// The window holds 4(p_n - 1) integers; two thirds of the multiple-of-6 grid,
// i.e. roughly (2/3) p_n candidates.
inline double candidate_count_approx(u64 p_n) {
    if (p_n < 7) {
        throw std::invalid_argument("candidate_count_approx: p_n must be >= 7, got " +
                                    std::to_string(p_n));
    }
    return 2.0 / 3.0 * static_cast<double>(p_n);
}

inline std::vector<u64> enumerate_candidates(const CandidateRange& range) {
    std::vector<u64> out;
    out.reserve(range.count);
    for (u64 n = range.first_candidate; n <= range.last_candidate; n += 6) {
        out.push_back(n);
    }
    return out;
}

}  // namespace primepairs
