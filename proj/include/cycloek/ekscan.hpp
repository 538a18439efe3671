#pragma once

// Partial-sum estimation of gamma_q at large q, the scanner for candidate
// primes with many small prime values of aq+1, the greedy admissible
// prime-offset sequence, and the admissibility checker.

#include <cstdint>
#include <vector>

#include "cycloek/ddouble.hpp"
#include "cycloek/ntheory.hpp"

namespace cycloek {

// log p when n = p^a, else 0.
ddouble von_mangoldt(u64 n);

struct EkEstimate {
    u64 q = 0;
    u64 x = 0;
    ddouble estimate{};       // -log q/(q-1) + log x - (q-1) sum Lambda(n)/n
    u64 terms_used = 0;       // prime-power hits n = 1 (mod q), n <= x
    ddouble estimate_half{};  // same estimator at x/2, drift diagnostic
};

// Requires x >= 2q and x/q <= 1e8 (iteration bound).
EkEstimate ek_partial_sum(u64 q, u64 x);

struct ScanHit {
    u64 q = 0;
    double score = 0.0;              // sum of 1/a over witnesses
    std::vector<std::uint32_t> witnesses;  // even a <= A with aq+1 prime
};

// Scores every prime in [q_lo, q_hi]; hits with score >= min_score returned
// sorted by descending score.
std::vector<ScanHit> scan_candidates(u64 q_lo, u64 q_hi, std::uint32_t A,
                                     double min_score, unsigned threads = 1);

struct OffsetSequence {
    std::vector<std::uint32_t> entries;  // a(1) = 0 < a(2) = 2 < ...
    // residue classes hit so far, per tracked prime r
    std::vector<std::uint32_t> tracked_primes;
    std::vector<std::vector<bool>> residues_hit;
};

// First `count` entries of the greedy sequence (count <= 1e5).
OffsetSequence greedy_offsets(std::size_t count);

struct GreedySumResult {
    OffsetSequence seq;
    std::size_t i0 = 0;   // 1-based index with sum_{i=2}^{i0} 1/a(i) > target
    std::uint32_t a_i0 = 0;
    ddouble partial_sum{};
};

GreedySumResult greedy_offsets_until(double target_sum,
                                     std::size_t max_count = 100000);

struct AdmissibleResult {
    bool admissible = false;
    u64 blocking_prime = 0;  // set when inadmissible
};

// The forms n and a_i n + 1 have no fixed prime factor?  Checks every prime
// r <= k+1 by residue enumeration; larger r cannot be covered.
AdmissibleResult admissible_check(const std::vector<u64>& offsets);

}  // namespace cycloek
