#pragma once

// Test-side oracles, implemented independently of the library (plain trial
// division and exhaustive loops) so the two sides can disagree.

#include <cmath>
#include <cstdint>
#include <vector>

namespace oracles {

using u64 = std::uint64_t;

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

inline std::vector<u64> primes_upto(u64 limit) {
    std::vector<u64> out;
    for (u64 n = 2; n <= limit; ++n) {
        if (is_prime(n)) out.push_back(n);
    }
    return out;
}

// Twin centers in the open window ((p-2)^2, p^2): multiples of 6 whose
// neighbours are both prime.
inline std::vector<u64> twin_centers_in_window(u64 p) {
    const u64 low = (p - 2) * (p - 2), high = p * p;
    std::vector<u64> out;
    for (u64 n = (low / 6 + 1) * 6; n < high; n += 6) {
        if (is_prime(n - 1) && is_prime(n + 1)) out.push_back(n);
    }
    return out;
}

// Pairs (P, P+m) with P prime in [low, high] and P+m prime (no upper bound on
// the partner).
inline u64 count_pairs(u64 low, u64 high, u64 m) {
    u64 count = 0;
    for (u64 p = low; p <= high; ++p) {
        if (is_prime(p) && is_prime(p + m)) ++count;
    }
    return count;
}

// Candidate count by brute enumeration: multiples of 6 strictly inside
// ((p-2)^2, p^2), excluding p^2 - 1.
inline u64 candidate_count(u64 p) {
    const u64 low = (p - 2) * (p - 2), high = p * p;
    u64 count = 0;
    for (u64 n = (low / 6 + 1) * 6; n < high; n += 6) {
        if (n != high - 1) ++count;
    }
    return count;
}

}  // namespace oracles
