#pragma once

// Uniform interface over the two scalar types the pipelines run on:
// ddouble (high-precision path) and double (fast path).

#include <cmath>

#include "cycloek/ddouble.hpp"

namespace cycloek {

// Generic power-of-two scaling so scalar-templated code works on double too.
inline double mul_pwr2(double a, double p2) { return a * p2; }
inline double to_double_generic(double x) { return x; }
inline double to_double_generic(ddouble x) { return x.hi; }

template <class R>
struct real_ops;

template <>
struct real_ops<double> {
    static double from_ratio(std::uint64_t n, std::uint64_t d) {
        return static_cast<double>(n) / static_cast<double>(d);
    }
    static double log(double x) { return std::log(x); }
    static double log1p(double x) { return std::log1p(x); }
    static double exp(double x) { return std::exp(x); }
    static double sqrt(double x) { return std::sqrt(x); }
    static double ln2() { return 0x1.62e42fefa39efp-1; }
    static double euler_gamma() { return 0x1.2788cfc6fb619p-1; }
    static double eps() { return 0x1p-52; }
    static void sincos_2pi(double frac, double& s, double& c) {
        double t = 6.283185307179586476925286766559 * (frac - std::floor(frac));
        s = std::sin(t);
        c = std::cos(t);
    }
};

template <>
struct real_ops<ddouble> {
    static ddouble from_ratio(std::uint64_t n, std::uint64_t d) {
        return ddouble(static_cast<double>(n)) / ddouble(static_cast<double>(d));
    }
    static ddouble log(ddouble x) { return cycloek::log(x); }
    static ddouble log1p(ddouble x) { return cycloek::log1p(x); }
    static ddouble exp(ddouble x) { return cycloek::exp(x); }
    static ddouble sqrt(ddouble x) { return cycloek::sqrt(x); }
    static ddouble ln2() { return dd_ln2; }
    static ddouble euler_gamma() { return dd_euler_gamma; }
    static double eps() { return 0x1p-104; }
    static void sincos_2pi(ddouble frac, ddouble& s, ddouble& c) {
        cycloek::sincos_2pi(frac, s, c);
    }
};

}  // namespace cycloek
