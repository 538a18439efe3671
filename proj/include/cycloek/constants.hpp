#pragma once

// S(q), C(q,s), e0(q), the ratio (q-1) e1(q)/e0(q), and the Mertens-product
// empirical check.  All prime scans share one pass over p <= pmax using the
// per-residue order table, so S and log C come out of the same loop.

#include <cstdint>
#include <span>
#include <vector>

#include "cycloek/ddouble.hpp"
#include "cycloek/lfun.hpp"
#include "cycloek/ntheory.hpp"

namespace cycloek {

// default pmax rule for the standalone operations
inline u64 default_pmax(u64 q) { return std::max<u64>(1000000, 100 * q); }

// scan depth matched to the printed reference table (see cmd_table)
inline constexpr u64 kTablePmax = 200000;

struct SqTerm {
    u64 p = 0;
    u64 f_p = 0;
    ddouble term{};  // log p / (p^f_p - 1)
};

struct SqResult {
    u64 q = 0;
    ddouble value{};
    std::vector<SqTerm> contributions;  // terms above the floor, descending
    u64 pmax = 0;
    ddouble tail_bound{};  // rigorous bound on the omitted p > pmax mass
};

struct CqResult {
    u64 q = 0;
    ddouble value{};       // C(q,s)
    ddouble s{1.0};        // evaluation point
    u64 pmax = 0;
    ddouble tail_bound{};  // bound on the absolute effect of p > pmax
};

// pmax = 0 selects default_pmax(q).
SqResult s_of_q(u64 q, u64 pmax = 0);
CqResult c_of_q(u64 q, u64 pmax = 0, ddouble s = ddouble(1.0));

// Both sums from a single prime scan (the batch path).
struct SqCqScan {
    SqResult sq;
    CqResult cq;
};
SqCqScan scan_sq_cq(u64 q, u64 pmax = 0, ddouble s = ddouble(1.0),
                    bool want_contributions = true);
// Same scan with a caller-chosen modulus (the results never depend on which
// primitive root it carries) or a precomputed ascending prime list.
SqCqScan scan_sq_cq_with(const PrimeModulus& m, u64 pmax = 0,
                         ddouble s = ddouble(1.0), bool want_contributions = true);
SqCqScan scan_sq_cq_primes(const PrimeModulus& m, std::span<const u64> primes,
                           u64 pmax = 0, ddouble s = ddouble(1.0),
                           bool want_contributions = false);

// e0(q) = (1-q^-2) / ( Gamma((q-2)/(q-1)) (C(q) (1-1/q) alpha)^(1/(q-1)) )
ddouble e0_from(ddouble alpha, ddouble c_q, u64 q);
ddouble e0(u64 q, u64 pmax = 0);

// (q-1) e1/e0 = 1 - gamma + (3-q) log q/((q-1)^2 (q+1)) + S(q) + gamma_q/(q-1)
ddouble e1_ratio_from(ddouble s_q, ddouble gamma_q, u64 q);
ddouble e1_ratio(u64 q, u64 pmax = 0);

struct MertensResult {
    u64 q = 0, x = 0;
    ddouble lhs{};    // prod_{p<=x, p=1 mod q} (1 - 1/p)
    ddouble rhs{};    // (q e^-gamma / ((q-1) alpha C(q) log x))^(1/(q-1))
    ddouble ratio{};  // lhs/rhs, tends to 1
};
MertensResult mertens_check(u64 q, u64 x, u64 pmax = 0);

struct CoefficientSet {
    u64 q = 0;
    ddouble c_q1{};
    ddouble alpha{};
    ddouble e0{};
    ddouble ratio{};  // (q-1) e1/e0
    ddouble gamma_q{};
    ddouble s_q{};
};
CoefficientSet compute_coefficients(u64 q, u64 pmax = 0);

}  // namespace cycloek
