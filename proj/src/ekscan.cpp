#include "cycloek/ekscan.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "cycloek/errors.hpp"

namespace cycloek {

namespace {

constexpr u64 kTrialPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

}  // namespace

ddouble von_mangoldt(u64 n) {
    if (n < 2) return ddouble(0.0);
    for (u64 s : kTrialPrimes) {
        if (n % s == 0) {
            do { n /= s; } while (n % s == 0);
            return n == 1 ? log(ddouble(static_cast<double>(s))) : ddouble(0.0);
        }
        if (s * s > n) break;
    }
    u64 base = prime_power_base(n);
    return base ? log(ddouble(static_cast<double>(base))) : ddouble(0.0);
}

EkEstimate ek_partial_sum(u64 q, u64 x) {
    if (!is_prime(q) || q < 3 || (q & 1) == 0)
        throw std::invalid_argument("q must be an odd prime");
    if (x < 2 * q) throw std::invalid_argument("ek_partial_sum needs x >= 2q");
    if (static_cast<u128>(x) > static_cast<u128>(q) * 100000000ULL)
        throw refusal_error("ek_partial_sum refuses x/q > 1e8");
    const u64 kmax = (x - 1) / q;

    EkEstimate out;
    out.q = q;
    out.x = x;
    const u64 k_half = (x / 2 - 1) / q;

    ddouble sum(0.0);
    ddouble sum_half(0.0);
    u64 hits = 0;
    for (u64 k = 1; k <= kmax; ++k) {
        u64 n = 1 + k * q;
        ddouble lam = von_mangoldt(n);
        if (to_double(lam) != 0.0) {
            sum += lam / static_cast<double>(n);
            ++hits;
        }
        if (k == k_half) sum_half = sum;
    }
    if (kmax < k_half) sum_half = sum;  // unreachable under x >= 2q

    ddouble qq(static_cast<double>(q));
    ddouble head = -log(qq) / (qq - 1.0);
    out.estimate = head + log(ddouble(static_cast<double>(x))) - (qq - 1.0) * sum;
    out.estimate_half =
        head + log(ddouble(static_cast<double>(x) / 2.0)) - (qq - 1.0) * sum_half;
    out.terms_used = hits;
    return out;
}

std::vector<ScanHit> scan_candidates(u64 q_lo, u64 q_hi, std::uint32_t A,
                                     double min_score, unsigned threads) {
    if (A == 0 || (A & 1) != 0)
        throw std::invalid_argument("witness bound A must be even and positive");
    if (q_hi < q_lo) throw std::invalid_argument("empty scan range");
    if (q_hi > (u64(1) << 62) / A)
        throw refusal_error("scan range exceeds the aq+1 overflow bound");

    std::vector<ScanHit> hits;
    std::mutex mu;
    const u64 kBlock = 1u << 16;
    const u64 nblocks = (q_hi - q_lo) / kBlock + 1;
    std::atomic<u64> next{0};

    auto worker = [&] {
        std::vector<ScanHit> local;
        for (;;) {
            u64 b = next.fetch_add(1);
            if (b >= nblocks) break;
            u64 lo = q_lo + b * kBlock;
            u64 hi = std::min(q_hi, lo + kBlock - 1);
            for (u64 c = lo; c <= hi; ++c) {
                if (!is_prime(c)) continue;
                double score = 0.0;
                std::vector<std::uint32_t> wit;
                for (std::uint32_t a = 2; a <= A; a += 2) {
                    if (is_prime(a * c + 1)) {
                        score += 1.0 / a;
                        wit.push_back(a);
                    }
                }
                if (score >= min_score)
                    local.push_back({c, score, std::move(wit)});
            }
        }
        std::lock_guard<std::mutex> lock(mu);
        for (auto& h : local) hits.push_back(std::move(h));
    };

    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    std::sort(hits.begin(), hits.end(), [](const ScanHit& a, const ScanHit& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.q < b.q;
    });
    return hits;
}

namespace {

// Incremental greedy-sequence state: per tracked prime r, the residue classes
// hit; once only one residue is missing, candidates in that class are barred.
struct GreedyState {
    std::vector<std::uint32_t> entries;
    std::vector<std::uint32_t> primes;          // tracked primes, ascending
    std::vector<std::vector<bool>> hit;         // residues hit per prime
    std::vector<std::uint32_t> hit_count;
    std::vector<std::uint32_t> missing;         // valid when saturated
    std::vector<std::size_t> saturated;         // indices into primes

    void track(std::uint32_t r) {
        primes.push_back(r);
        hit.emplace_back(r, false);
        hit_count.push_back(0);
        missing.push_back(0);
        std::size_t idx = primes.size() - 1;
        for (std::uint32_t a : entries) add_residue(idx, a % r);
    }

    void add_residue(std::size_t idx, std::uint32_t res) {
        if (hit[idx][res]) return;
        hit[idx][res] = true;
        if (++hit_count[idx] == primes[idx] - 1) {
            for (std::uint32_t v = 0; v < primes[idx]; ++v) {
                if (!hit[idx][v]) { missing[idx] = v; break; }
            }
            saturated.push_back(idx);
        }
    }

    bool candidate_ok(std::uint32_t c) const {
        for (std::size_t idx : saturated) {
            if (c % primes[idx] == missing[idx]) return false;
        }
        return true;
    }

    void append(std::uint32_t c) {
        entries.push_back(c);
        for (std::size_t idx = 0; idx < primes.size(); ++idx)
            add_residue(idx, c % primes[idx]);
    }
};

GreedyState greedy_generate(std::size_t count) {
    if (count > 100000)
        throw refusal_error("greedy_offsets refuses count > 1e5");
    GreedyState st;
    if (count == 0) return st;
    st.append(0);  // a(1) = 0
    std::vector<u64> small_primes = sieve_primes(count + 1);
    std::size_t next_prime = 0;
    std::uint32_t cand = 0;
    while (st.entries.size() < count) {
        // primes r <= n matter for the n-th entry; larger r cannot be covered
        std::size_t n = st.entries.size() + 1;
        while (next_prime < small_primes.size() && small_primes[next_prime] <= n)
            st.track(static_cast<std::uint32_t>(small_primes[next_prime++]));
        ++cand;
        while (!st.candidate_ok(cand)) ++cand;
        st.append(cand);
    }
    return st;
}

OffsetSequence to_sequence(GreedyState&& st) {
    OffsetSequence out;
    out.entries = std::move(st.entries);
    out.tracked_primes = std::move(st.primes);
    out.residues_hit = std::move(st.hit);
    return out;
}

}  // namespace

OffsetSequence greedy_offsets(std::size_t count) {
    return to_sequence(greedy_generate(count));
}

GreedySumResult greedy_offsets_until(double target_sum, std::size_t max_count) {
    GreedySumResult out;
    if (max_count > 100000)
        throw refusal_error("greedy_offsets refuses count > 1e5");
    GreedyState st;
    st.append(0);
    std::vector<u64> small_primes = sieve_primes(max_count + 1);
    std::size_t next_prime = 0;
    std::uint32_t cand = 0;
    ddouble sum(0.0);
    while (st.entries.size() < max_count) {
        std::size_t n = st.entries.size() + 1;
        while (next_prime < small_primes.size() && small_primes[next_prime] <= n)
            st.track(static_cast<std::uint32_t>(small_primes[next_prime++]));
        ++cand;
        while (!st.candidate_ok(cand)) ++cand;
        st.append(cand);
        sum += ddouble(1.0) / static_cast<double>(cand);
        if (to_double(sum) > target_sum) {
            out.i0 = st.entries.size();
            out.a_i0 = cand;
            out.partial_sum = sum;
            out.seq = to_sequence(std::move(st));
            return out;
        }
    }
    throw refusal_error("greedy sum target not reached within the count bound");
}

AdmissibleResult admissible_check(const std::vector<u64>& offsets) {
    if (offsets.size() > 10000)
        throw refusal_error("admissible_check refuses more than 1e4 offsets");
    for (u64 a : offsets) {
        if (a == 0) throw std::invalid_argument("offsets must be positive");
    }
    const u64 k = offsets.size();
    std::vector<u64> primes = sieve_primes(k + 1);
    std::vector<bool> bad;
    for (u64 r : primes) {
        bad.assign(r, false);
        bad[0] = true;  // the form n itself
        u64 covered = 1;
        for (u64 a : offsets) {
            u64 ar = a % r;
            if (ar == 0) continue;  // a_i n + 1 = 1 (mod r), never 0
            // a n + 1 = 0 (mod r)  <=>  n = -a^{-1} (mod r)
            u64 inv = powmod(ar, r - 2, r);
            u64 res = (r - inv) % r;
            if (!bad[res]) {
                bad[res] = true;
                ++covered;
            }
        }
        if (covered == r) return {false, r};
    }
    return {true, 0};
}

}  // namespace cycloek
