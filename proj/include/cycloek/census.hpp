#pragma once

// Brute-force count E_q(x) = #{n <= x : q does not divide phi(n)} and the
// Landau / Ramanujan approximation comparison.  n survives iff q^2 does not
// divide n and no prime p = 1 (mod q) divides n.

#include <cstdint>

#include "cycloek/ddouble.hpp"
#include "cycloek/ntheory.hpp"

namespace cycloek {

struct CensusOptions {
    u64 limit = 10000000000ULL;  // refusal bound on x
    u64 segment = u64(1) << 22;
};

u64 count_eq(u64 q, u64 x, const CensusOptions& opts = {});

// L_q(x) = e0 x / log^{1/(q-1)} x
ddouble landau_approx(ddouble e0_val, u64 q, u64 x);
// R_q(x) = e0 \int_2^x dt / log^{1/(q-1)} t  (adaptive Simpson, rel. 1e-12)
ddouble ramanujan_approx(ddouble e0_val, u64 q, u64 x);

enum class Verdict { RamanujanCloser, LandauCloser, Tie };

struct CensusResult {
    u64 q = 0, x = 0;
    u64 count = 0;
    ddouble landau{};
    ddouble ramanujan{};
    Verdict verdict = Verdict::Tie;
};

// Runs the census and both approximants (e0 computed via the L-value
// pipeline unless supplied).
CensusResult compare_census(u64 q, u64 x, const CensusOptions& opts = {});
CensusResult compare_census_with(ddouble e0_val, u64 q, u64 x,
                                 const CensusOptions& opts = {});

}  // namespace cycloek
