#include "cycloek/census.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cycloek/constants.hpp"
#include "cycloek/errors.hpp"

namespace cycloek {

namespace {

void check_census_args(u64 q, u64 x, const CensusOptions& opts) {
    if (q < 3 || (q & 1) == 0 || !is_prime(q))
        throw std::invalid_argument("q must be an odd prime");
    if (q >= (u64(1) << 32)) throw refusal_error("census requires q < 2^32");
    if (x < 1) throw std::invalid_argument("x must be positive");
    if (x > opts.limit)
        throw refusal_error("census x exceeds the configured limit");
}

}  // namespace

u64 count_eq(u64 q, u64 x, const CensusOptions& opts) {
    check_census_args(q, x, opts);
    const u64 seg_len = opts.segment;
    const u64 qsq = q * q;

    // Base primes for primality detection within segments.
    u64 root = static_cast<u64>(std::sqrt(static_cast<double>(x)));
    while (static_cast<u128>(root + 1) * (root + 1) <= x) ++root;
    std::vector<u64> base = sieve_primes(root);

    // Class primes with outstanding multiples, bucketed by target segment.
    struct Pending {
        u64 next;
        u64 p;
    };
    const u64 nseg = (x + seg_len - 1) / seg_len;
    std::vector<std::vector<Pending>> bucket(nseg);
    auto enqueue = [&](u64 next, u64 p) {
        if (next > x) return;
        bucket[(next - 1) / seg_len].push_back({next, p});
    };

    u64 count = 0;
    std::vector<std::uint8_t> prime_mask, excluded;

    u64 next_q2 = qsq;
    for (u64 s = 0; s < nseg; ++s) {
        const u64 lo = s * seg_len + 1;          // segment covers [lo, hi]
        const u64 hi = std::min(x, lo + seg_len - 1);
        const u64 width = hi - lo + 1;
        prime_mask.assign(width, 1);
        excluded.assign(width, 0);
        if (lo == 1) prime_mask[0] = 0;  // n = 1

        for (u64 p : base) {
            if (static_cast<u128>(p) * p > hi) break;
            u64 start = std::max(p * p, (lo + p - 1) / p * p);
            for (u64 j = start; j <= hi; j += p) prime_mask[j - lo] = 0;
        }

        // multiples of q^2 (overflow-safe advance)
        while (next_q2 <= hi) {
            excluded[next_q2 - lo] = 1;
            u64 nx = next_q2 + qsq;
            if (nx < next_q2 || nx > x) { next_q2 = x + 1; break; }
            next_q2 = nx;
        }

        // pending multiples of previously found class primes
        for (const Pending& pd : bucket[s]) {
            u64 mult = pd.next;
            for (; mult <= hi; mult += pd.p) excluded[mult - lo] = 1;
            enqueue(mult, pd.p);
        }
        bucket[s].clear();
        bucket[s].shrink_to_fit();

        // newly discovered class primes: mark in place, queue the overflow.
        // Multiples of p are >= p, so an ascending scan covers everything.
        for (u64 i = 0; i < width; ++i) {
            u64 n = lo + i;
            if (prime_mask[i] && n % q == 1) {
                u64 mult = n;
                for (; mult <= hi; mult += n) excluded[mult - lo] = 1;
                enqueue(mult, n);
            }
        }

        for (u64 i = 0; i < width; ++i)
            if (!excluded[i]) ++count;
    }
    return count;
}

ddouble landau_approx(ddouble e0_val, u64 q, u64 x) {
    if (x < 3) throw std::invalid_argument("approximation needs x >= 3");
    ddouble lx = log(ddouble(static_cast<double>(x)));
    ddouble c = ddouble(1.0) / static_cast<double>(q - 1);
    return e0_val * static_cast<double>(x) / pow(lx, c);
}

namespace {

// adaptive Simpson with interval doubling on a smooth monotone integrand
struct Simpson {
    ddouble c;  // exponent 1/(q-1)

    ddouble f(ddouble t) const { return pow(log(t), -c); }

    ddouble recurse(ddouble a, ddouble b, ddouble fa, ddouble fm, ddouble fb,
                    ddouble whole, int depth) const {
        ddouble m = mul_pwr2(a + b, 0.5);
        ddouble lm = mul_pwr2(a + m, 0.5), rm = mul_pwr2(m + b, 0.5);
        ddouble flm = f(lm), frm = f(rm);
        ddouble h6 = (b - a) / 12.0;
        ddouble left = h6 * (fa + mul_pwr2(flm, 2.0) * 2.0 + fm);
        ddouble right = h6 * (fm + mul_pwr2(frm, 2.0) * 2.0 + fb);
        ddouble sum = left + right;
        ddouble err = sum - whole;
        if (depth <= 0 || std::abs(to_double(err)) <=
                              1e-14 * std::abs(to_double(sum)))
            return sum + err / 15.0;
        return recurse(a, m, fa, flm, fm, left, depth - 1) +
               recurse(m, b, fm, frm, fb, right, depth - 1);
    }

    ddouble integrate(ddouble a, ddouble b) const {
        ddouble m = mul_pwr2(a + b, 0.5);
        ddouble fa = f(a), fm = f(m), fb = f(b);
        ddouble whole = (b - a) / 6.0 * (fa + mul_pwr2(fm, 2.0) * 2.0 + fb);
        return recurse(a, b, fa, fm, fb, whole, 48);
    }
};

}  // namespace

ddouble ramanujan_approx(ddouble e0_val, u64 q, u64 x) {
    if (x <= 2) return ddouble(0.0);  // empty interval
    Simpson s{ddouble(1.0) / static_cast<double>(q - 1)};
    // split at a few powers to keep the recursion shallow over wide ranges
    ddouble total(0.0);
    double a = 2.0;
    double xd = static_cast<double>(x);
    while (a < xd) {
        double b = std::min(xd, a * 64.0);
        total += s.integrate(ddouble(a), ddouble(b));
        a = b;
    }
    return e0_val * total;
}

CensusResult compare_census_with(ddouble e0_val, u64 q, u64 x,
                                 const CensusOptions& opts) {
    CensusResult out;
    out.q = q;
    out.x = x;
    out.count = count_eq(q, x, opts);
    out.landau = landau_approx(e0_val, q, x);
    out.ramanujan = ramanujan_approx(e0_val, q, x);
    ddouble cnt(static_cast<double>(out.count));
    ddouble dr = fabs(cnt - out.ramanujan);
    ddouble dl = fabs(cnt - out.landau);
    if (dr < dl) out.verdict = Verdict::RamanujanCloser;
    else if (dl < dr) out.verdict = Verdict::LandauCloser;
    else out.verdict = Verdict::Tie;
    return out;
}

CensusResult compare_census(u64 q, u64 x, const CensusOptions& opts) {
    return compare_census_with(e0(q), q, x, opts);
}

}  // namespace cycloek
