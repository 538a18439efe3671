#include "cycloek/ntheory.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <numeric>
#include <stdexcept>

namespace cycloek {

namespace {

constexpr u64 kSegmentSpan = u64(1) << 22;

bool miller_rabin_witness(u64 n, u64 a, u64 d, int s) {
    a %= n;
    if (a == 0) return false;  // base divisible by n: no information
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;  // witness of compositeness
}

}  // namespace

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    int s = 0;
    u64 d = n - 1;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // Sinclair base set: deterministic for all n < 2^64.
    for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL})
        if (miller_rabin_witness(n, a, d, s)) return false;
    return true;
}

void for_each_prime(u64 lo, u64 hi, const std::function<void(u64)>& fn) {
    if (hi < 2 || hi < lo) return;
    if (lo < 2) lo = 2;

    u64 root = static_cast<u64>(std::sqrt(static_cast<double>(hi)));
    while (static_cast<u128>(root + 1) * (root + 1) <= hi) ++root;
    while (static_cast<u128>(root) * root > hi) --root;

    // Base primes by a plain sieve up to sqrt(hi).
    std::vector<u64> base;
    {
        std::vector<bool> comp(root + 1, false);
        for (u64 i = 2; i <= root; ++i) {
            if (!comp[i]) {
                base.push_back(i);
                for (u64 j = i * i; j <= root; j += i) comp[j] = true;
            }
        }
    }

    std::vector<std::uint8_t> seg;
    for (u64 left = lo; left <= hi; ) {
        u64 span = std::min(kSegmentSpan, hi - left + 1);
        seg.assign(span, 1);
        for (u64 p : base) {
            if (static_cast<u128>(p) * p > left + span - 1) break;
            u64 start = std::max(p * p, (left + p - 1) / p * p);
            for (u64 j = start; j < left + span; j += p) seg[j - left] = 0;
        }
        for (u64 i = 0; i < span; ++i)
            if (seg[i]) fn(left + i);
        if (left + span - 1 >= hi) break;
        left += span;
    }
}

std::vector<u64> sieve_primes(u64 limit) {
    std::vector<u64> out;
    if (limit < 2) return out;
    out.reserve(static_cast<std::size_t>(
        limit > 16 ? 1.2 * limit / std::log(static_cast<double>(limit)) : 8));
    for_each_prime(2, limit, [&](u64 p) { out.push_back(p); });
    return out;
}

namespace {

u64 pollard_rho(u64 n) {
    // Brent's cycle variant.
    if ((n & 1) == 0) return 2;
    u64 seed = 1;
    for (;;) {
        ++seed;
        u64 y = seed, c = seed | 1, m = 128, g = 1, r = 1, q = 1, x = 0, ys = 0;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        while (g == 1) {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            for (u64 k = 0; k < r && g == 1; k += m) {
                ys = y;
                u64 lim = std::min(m, r - k);
                for (u64 i = 0; i < lim; ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
            }
            r <<= 1;
        }
        if (g == n) {
            g = 1;
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_rec(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    u64 d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

std::vector<u64> factorize(u64 n) {
    std::vector<u64> out;
    if (n < 2) return out;
    // Trial division first; the spec scale (q-1 <= 2^63) never stresses rho.
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
        while (n % p == 0) { out.push_back(p); n /= p; }
    }
    for (u64 p = 17; p <= 1000000 && p * p <= n; p += 2) {
        while (n % p == 0) { out.push_back(p); n /= p; }
    }
    if (n > 1) factor_rec(n, out);
    std::sort(out.begin(), out.end());
    return out;
}

bool is_primitive_root(u64 g, u64 q, const std::vector<u64>& qm1_factors) {
    if (g % q == 0) return false;
    u64 prev = 0;
    for (u64 r : qm1_factors) {
        if (r == prev) continue;  // factors sorted with multiplicity
        prev = r;
        if (powmod(g, (q - 1) / r, q) == 1) return false;
    }
    return true;
}

PrimeModulus primitive_root(u64 q) {
    if (q < 3 || (q & 1) == 0 || !is_prime(q))
        throw std::invalid_argument("modulus not prime");
    PrimeModulus m;
    m.q = q;
    m.qm1_factors = factorize(q - 1);
    for (u64 g = 2; ; ++g) {
        if (is_primitive_root(g, q, m.qm1_factors)) {
            m.g = g;
            return m;
        }
    }
}

// ---- BigU ----

BigU BigU::from_u64(u64 v) {
    BigU b;
    if (v) b.limbs.push_back(v);
    return b;
}

std::size_t BigU::bit_length() const {
    if (limbs.empty()) return 0;
    return 64 * (limbs.size() - 1) + (64 - std::countl_zero(limbs.back()));
}

void BigU::mul_small(u64 m) {
    u64 carry = 0;
    for (auto& limb : limbs) {
        u128 t = static_cast<u128>(limb) * m + carry;
        limb = static_cast<u64>(t);
        carry = static_cast<u64>(t >> 64);
    }
    if (carry) limbs.push_back(carry);
    if (m == 0) limbs.clear();
}

void BigU::sub1() {
    for (auto& limb : limbs) {
        if (limb-- != 0) break;
    }
    while (!limbs.empty() && limbs.back() == 0) limbs.pop_back();
}

u64 BigU::div_small(u64 d) {
    u128 rem = 0;
    for (std::size_t i = limbs.size(); i-- > 0; ) {
        u128 cur = (rem << 64) | limbs[i];
        limbs[i] = static_cast<u64>(cur / d);
        rem = cur % d;
    }
    while (!limbs.empty() && limbs.back() == 0) limbs.pop_back();
    return static_cast<u64>(rem);
}

std::string BigU::to_string() const {
    if (limbs.empty()) return "0";
    BigU tmp = *this;
    std::string out;
    while (!tmp.is_zero()) {
        u64 r = tmp.div_small(10);
        out.push_back(static_cast<char>('0' + r));
    }
    std::reverse(out.begin(), out.end());
    return out;
}

OrderInfo multiplicative_order(u64 p, const PrimeModulus& m) {
    if (p % m.q == 0) throw std::domain_error("p equals q");
    OrderInfo info;
    info.p = p;
    // Start from q-1 and strip prime factors while the power stays 1.
    u64 f = m.q - 1;
    u64 prev = 0;
    for (u64 r : m.qm1_factors) {
        if (r == prev) continue;
        prev = r;
        while (f % r == 0 && powmod(p, f / r, m.q) == 1) f /= r;
    }
    info.f_p = f;
    if (f >= 2) {
        // n_p = (p^f - 1)/((p-1) q), exact, capped at a 512-bit intermediate.
        double bits = static_cast<double>(f) * std::log2(static_cast<double>(p));
        if (bits <= 512.0) {
            BigU v = BigU::from_u64(1);
            for (u64 i = 0; i < f; ++i) v.mul_small(p);
            v.sub1();
            u64 r1 = v.div_small(p - 1);
            u64 r2 = v.div_small(m.q);
            if (r1 != 0 || r2 != 0)
                throw std::logic_error("order identity (p^f-1)/(p-1) = q n_p violated");
            info.n_p = std::move(v);
        }
    }
    return info;
}

std::vector<std::uint32_t> residue_orders(const PrimeModulus& m) {
    if (m.q >= (u64(1) << 32))
        throw std::invalid_argument("residue_orders requires q < 2^32");
    std::vector<std::uint32_t> ord(m.q, 0);
    u64 n = m.q - 1;
    u64 r = 1;
    ord[1] = 1;
    for (u64 k = 1; k < n; ++k) {
        r = mulmod(r, m.g, m.q);
        ord[r] = static_cast<std::uint32_t>(n / std::gcd(n, k));
    }
    return ord;
}

u64 kth_root(u64 n, unsigned k) {
    if (n == 0 || k == 0) return 0;
    if (k == 1 || n == 1) return n;
    if (k >= 64) return 1;
    // pow with saturation above the comparison target
    auto pow_le = [](u64 x, unsigned e, u64 cap) -> bool {
        // returns x^e <= cap
        u128 acc = 1;
        for (unsigned i = 0; i < e; ++i) {
            acc *= x;
            if (acc > cap) return false;
        }
        return true;
    };
    unsigned bits = 64 - std::countl_zero(n);
    u64 x = u64(1) << (bits / k + 1);
    // Newton: x <- ((k-1)x + n/x^(k-1))/k, monotone decreasing to the root.
    for (;;) {
        u128 xp = 1;
        bool over = false;
        for (unsigned i = 0; i + 1 < k; ++i) {
            xp *= x;
            if (xp > n) { over = true; break; }
        }
        u64 y;
        if (over) {
            y = (static_cast<u128>(k - 1) * x) / k;
        } else {
            y = static_cast<u64>((static_cast<u128>(k - 1) * x + n / static_cast<u64>(xp)) / k);
        }
        if (y >= x) break;
        x = y;
    }
    while (!pow_le(x, k, n)) --x;
    while (pow_le(x + 1, k, n)) ++x;
    return x;
}

u64 prime_power_base(u64 n) {
    if (n < 2) return 0;
    // Strip the exponent down to a perfect-power-free base, prime exponents
    // suffice; k <= 62 covers the full 64-bit range.
    u64 base = n;
    bool reduced = true;
    while (reduced) {
        reduced = false;
        for (unsigned k : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u, 43u, 47u, 53u, 59u, 61u}) {
            if ((u64(1) << k) > base) break;
            u64 r = kth_root(base, k);
            if (r >= 2) {
                u128 check = 1;
                for (unsigned i = 0; i < k; ++i) check *= r;
                if (check == base) {
                    base = r;
                    reduced = true;
                    break;
                }
            }
        }
    }
    return is_prime(base) ? base : 0;
}

}  // namespace cycloek
