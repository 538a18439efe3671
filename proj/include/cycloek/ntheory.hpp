#pragma once

// Integer substrate: primes, factorization, primitive roots, multiplicative
// orders.  Everything here is a pure function; results are safe to share
// across threads.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace cycloek {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
    u64 r = m > 1 ? 1 % m : 0;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(u64 n);

// All primes <= limit, ascending; empty for limit < 2.  The sieve itself is
// segmented so working memory stays O(sqrt(limit) + segment).
std::vector<u64> sieve_primes(u64 limit);

// Visits primes in [lo, hi] ascending.
void for_each_prime(u64 lo, u64 hi, const std::function<void(u64)>& fn);

// Prime factors with multiplicity, ascending (trial division + Pollard rho).
std::vector<u64> factorize(u64 n);

struct PrimeModulus {
    u64 q = 0;                       // odd prime
    u64 g = 0;                       // smallest primitive root mod q
    std::vector<u64> qm1_factors;    // prime factors of q-1, with multiplicity
};

// Throws std::invalid_argument unless q is an odd prime.
PrimeModulus primitive_root(u64 q);

// Smallest primitive root check helper: true iff g generates (Z/q)^*.
bool is_primitive_root(u64 g, u64 q, const std::vector<u64>& qm1_factors);

// Minimal unsigned bignum, little-endian 64-bit limbs; just enough for the
// (p^f - 1)/(p - 1) = q * n_p identity.
struct BigU {
    std::vector<u64> limbs;  // empty == 0

    static BigU from_u64(u64 v);
    bool is_zero() const { return limbs.empty(); }
    std::size_t bit_length() const;
    void mul_small(u64 m);
    void sub1();                    // requires *this >= 1
    u64 div_small(u64 d);           // in-place quotient, returns remainder
    std::string to_string() const;
    friend bool operator==(const BigU&, const BigU&) = default;
};

struct OrderInfo {
    u64 p = 0;
    u64 f_p = 0;                    // multiplicative order of p mod q
    std::optional<BigU> n_p;        // (p^f_p - 1)/((p-1) q) when f_p >= 2 and small enough
};

// Throws std::domain_error when p == 0 (mod q).  n_p is computed exactly
// whenever p^f_p fits in 512 bits, omitted otherwise.
OrderInfo multiplicative_order(u64 p, const PrimeModulus& m);

// ord(a) for every residue a in [0, q-1]; entry 0 and entry for a=0 are 0.
// Built from the primitive-root power table in O(q) time.  Requires q < 2^32.
std::vector<std::uint32_t> residue_orders(const PrimeModulus& m);

// Floor k-th root by pure integer Newton iteration (exact, no floating point).
u64 kth_root(u64 n, unsigned k);

// If n = p^a for a prime p (a >= 1), returns p; otherwise 0.
u64 prime_power_base(u64 n);

}  // namespace cycloek
