#pragma once

// Extended-precision special functions: Euler's constant, digamma at rational
// arguments, the convergence-factor sum T(y) = sum_m [log(m+y)/(m+y)
// - log(m+1)/(m+1)], and the real Gamma function.

#include <cstdint>

#include "cycloek/ddouble.hpp"
#include "cycloek/realops.hpp"

namespace cycloek {

ddouble euler_gamma();

// psi(r/q) for 1 <= r <= q; absolute error well below 1e-25.
ddouble digamma_rational(std::uint64_t r, std::uint64_t q);

// T(r/q) for 1 <= r <= q; absolute error well below 1e-20.  T(1) == 0.
ddouble t_sum(std::uint64_t r, std::uint64_t q);

// Gamma(x) for x > 0, relative error well below 1e-20.
ddouble gamma_real(ddouble x);

// detail: scalar-generic kernels shared by the table builder and fast path.
namespace detail {

// Upward recurrence to z >= 32 plus an 11-term Bernoulli asymptotic series.
template <class R>
R digamma_impl(std::uint64_t r, std::uint64_t q);

// Euler-Maclaurin tail of the T(y) sum starting at index M, y = r/q.
template <class R>
R t_tail(std::uint64_t M, std::uint64_t r, std::uint64_t q);

// Truncation point used by t_sum and the table builder; the Euler-Maclaurin
// depth of t_tail keeps the truncation error near 2e-24 here (the M-doubling
// test watches this margin).
inline constexpr std::uint64_t kTsumTerms = 128;

// t_sum with an explicit truncation point (tests probe M-stability).
ddouble t_sum_m(std::uint64_t r, std::uint64_t q, std::uint64_t M);

}  // namespace detail

}  // namespace cycloek
