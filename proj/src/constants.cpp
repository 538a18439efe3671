#include "cycloek/constants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cycloek/specfun.hpp"

namespace cycloek {

namespace {

constexpr double kLogSpaceBits = 200.0;  // f * log2(p) above this: double route
constexpr double kContribFloor = 1e-12;
constexpr std::size_t kContribCap = 256;

void check_q(u64 q) {
    if (q < 3 || (q & 1) == 0 || !is_prime(q))
        throw std::invalid_argument("q must be an odd prime");
    if (q >= (u64(1) << 32))
        throw refusal_error("prime scans require q < 2^32");
}

// One pass accumulating S(q) and log C(q,s) together.
struct ScanAcc {
    u64 q;
    u64 pmax;
    ddouble s;
    bool unit_s;
    bool want_contribs;
    const std::vector<std::uint32_t>& ord;
    double qm1;

    ddouble s_sum{0.0};
    ddouble logc_sum{0.0};
    std::vector<SqTerm> contribs;

    ScanAcc(u64 q_, u64 pmax_, ddouble s_, bool wc,
            const std::vector<std::uint32_t>& ord_)
        : q(q_), pmax(pmax_), s(s_), unit_s(s_ == ddouble(1.0)),
          want_contribs(wc), ord(ord_), qm1(static_cast<double>(q_ - 1)) {}

    void process(u64 p) {
        u64 f = ord[p % q];
        if (f < 2) return;  // split primes and p = q contribute nothing
        double lp_d = std::log(static_cast<double>(p));
        double bits = static_cast<double>(f) * lp_d * 1.4426950408889634;
        if (bits > kLogSpaceBits) {
            // log-space term log p * e^{-f log p}: far below the dd noise
            // floor of the totals, double precision suffices here.
            double t = static_cast<double>(f) * lp_d;
            double sd = unit_s ? 1.0 : to_double(s);
            double e = std::exp(-sd * t);
            if (e == 0.0) return;
            if (unit_s) s_sum += ddouble(lp_d * e);
            logc_sum += ddouble(-(qm1 / static_cast<double>(f)) * e);
            return;
        }
        ddouble lp = log(ddouble(static_cast<double>(p)));
        ddouble inv_pf;  // p^{-s f}
        if (unit_s) {
            inv_pf = ddouble(1.0) / pow(ddouble(static_cast<double>(p)),
                                        static_cast<long long>(f));
            ddouble term = lp * inv_pf / (ddouble(1.0) - inv_pf);
            s_sum += term;
            if (want_contribs && to_double(term) >= kContribFloor)
                contribs.push_back({p, f, term});
        } else {
            inv_pf = exp(-(s * static_cast<double>(f)) * lp);
        }
        logc_sum += (ddouble(qm1) / static_cast<double>(f)) * log1p(-inv_pf);
    }

    SqCqScan finalize() {
        // f_p = 2 tail: primes p = 2kq - 1 > pmax, integral bound; then the
        // crude cap for f_p >= 3.
        const u64 K = std::max<u64>(1, pmax / (2 * q));
        double q_d = static_cast<double>(q);
        double pm_d = static_cast<double>(pmax);
        double f2_tail = (std::log(2.0 * q_d * static_cast<double>(K)) + 1.0) /
                         (2.0 * q_d * q_d * static_cast<double>(K));
        double s_tail = f2_tail + 2.0 * (q_d - 1.0) / (pm_d * pm_d);
        double logc_tail = (q_d - 1.0) / (q_d * q_d * static_cast<double>(K)) +
                           (q_d - 1.0) / (pm_d * pm_d);

        SqCqScan out;
        out.sq.q = q;
        out.sq.value = s_sum;
        out.sq.pmax = pmax;
        out.sq.tail_bound = ddouble(s_tail);
        if (want_contribs) {
            std::sort(contribs.begin(), contribs.end(),
                      [](const SqTerm& a, const SqTerm& b) { return b.term < a.term; });
            if (contribs.size() > kContribCap) contribs.resize(kContribCap);
            out.sq.contributions = std::move(contribs);
        }
        out.cq.q = q;
        out.cq.value = exp(logc_sum);
        out.cq.s = s;
        out.cq.pmax = pmax;
        out.cq.tail_bound = out.cq.value * ddouble(std::expm1(logc_tail));
        return out;
    }
};

}  // namespace

SqCqScan scan_sq_cq_with(const PrimeModulus& m, u64 pmax, ddouble s,
                         bool want_contributions) {
    check_q(m.q);
    if (pmax == 0) pmax = default_pmax(m.q);
    if (pmax < 2 * m.q) throw std::invalid_argument("pmax must be at least 2q");
    auto ord = residue_orders(m);
    ScanAcc acc(m.q, pmax, s, want_contributions, ord);
    for_each_prime(2, pmax, [&](u64 p) { acc.process(p); });
    return acc.finalize();
}

SqCqScan scan_sq_cq_primes(const PrimeModulus& m, std::span<const u64> primes,
                           u64 pmax, ddouble s, bool want_contributions) {
    check_q(m.q);
    if (pmax == 0) pmax = default_pmax(m.q);
    if (pmax < 2 * m.q) throw std::invalid_argument("pmax must be at least 2q");
    auto ord = residue_orders(m);
    ScanAcc acc(m.q, pmax, s, want_contributions, ord);
    for (u64 p : primes) {
        if (p > pmax) break;
        acc.process(p);
    }
    return acc.finalize();
}

SqCqScan scan_sq_cq(u64 q, u64 pmax, ddouble s, bool want_contributions) {
    check_q(q);
    PrimeModulus m = primitive_root(q);
    return scan_sq_cq_with(m, pmax, s, want_contributions);
}

SqResult s_of_q(u64 q, u64 pmax) {
    return scan_sq_cq(q, pmax, ddouble(1.0), true).sq;
}

CqResult c_of_q(u64 q, u64 pmax, ddouble s) {
    return scan_sq_cq(q, pmax, s, false).cq;
}

ddouble e0_from(ddouble alpha, ddouble c_q, u64 q) {
    double q_d = static_cast<double>(q);
    ddouble qq(q_d);
    ddouble num = ddouble(1.0) - ddouble(1.0) / (qq * qq);
    ddouble garg = (qq - 2.0) / (qq - 1.0);
    ddouble inner = c_q * (ddouble(1.0) - ddouble(1.0) / qq) * alpha;
    ddouble root = pow(inner, ddouble(1.0) / (qq - 1.0));
    return num / (gamma_real(garg) * root);
}

ddouble e0(u64 q, u64 pmax) {
    auto c = c_of_q(q, pmax);
    auto ek = euler_kronecker(q);
    return e0_from(ek.alpha, c.value, q);
}

ddouble e1_ratio_from(ddouble s_q, ddouble gamma_q, u64 q) {
    double q_d = static_cast<double>(q);
    ddouble qq(q_d);
    ddouble logq = log(qq);
    ddouble mid = (ddouble(3.0) - qq) * logq /
                  ((qq - 1.0) * (qq - 1.0) * (qq + 1.0));
    return ddouble(1.0) - euler_gamma() + mid + s_q + gamma_q / (qq - 1.0);
}

ddouble e1_ratio(u64 q, u64 pmax) {
    auto sq = s_of_q(q, pmax);
    auto ek = euler_kronecker(q);
    return e1_ratio_from(sq.value, ek.gamma_q, q);
}

MertensResult mertens_check(u64 q, u64 x, u64 pmax) {
    check_q(q);
    if (x < 2 * q) throw std::invalid_argument("mertens_check needs x >= 2q");
    MertensResult out;
    out.q = q;
    out.x = x;

    ddouble log_lhs(0.0);
    for_each_prime(2, x, [&](u64 p) {
        if (p % q == 1)
            log_lhs += log1p(-(ddouble(1.0) / static_cast<double>(p)));
    });
    out.lhs = exp(log_lhs);

    auto c = c_of_q(q, pmax);
    auto ek = euler_kronecker(q);
    ddouble qq(static_cast<double>(q));
    ddouble inner = qq * exp(-euler_gamma()) /
                    ((qq - 1.0) * ek.alpha * c.value *
                     log(ddouble(static_cast<double>(x))));
    out.rhs = pow(inner, ddouble(1.0) / (qq - 1.0));
    out.ratio = out.lhs / out.rhs;
    return out;
}

CoefficientSet compute_coefficients(u64 q, u64 pmax) {
    auto scan = scan_sq_cq(q, pmax, ddouble(1.0), false);
    auto ek = euler_kronecker(q);
    CoefficientSet out;
    out.q = q;
    out.c_q1 = scan.cq.value;
    out.alpha = ek.alpha;
    out.gamma_q = ek.gamma_q;
    out.s_q = scan.sq.value;
    out.e0 = e0_from(ek.alpha, scan.cq.value, q);
    out.ratio = e1_ratio_from(scan.sq.value, ek.gamma_q, q);
    return out;
}

}  // namespace cycloek
