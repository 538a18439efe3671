#pragma once

// Double-double scalar: an unevaluated sum of two IEEE doubles giving an
// effective 106-bit mantissa (~32 significant decimal digits).  Relative
// error per arithmetic operation is below 2^-100.  Comparisons, floor and
// ldexp are exact; exp/log/sqrt/sin/cos are accurate to a few ulps.

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace cycloek {

struct ddouble {
    double hi = 0.0;
    double lo = 0.0;

    constexpr ddouble() = default;
    constexpr ddouble(double x) : hi(x), lo(0.0) {}
    constexpr ddouble(double h, double l) : hi(h), lo(l) {}

    explicit operator double() const { return hi; }
};

namespace eft {

// Error-free transforms.  Require round-to-nearest and no FP contraction.
inline ddouble two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

// Requires |a| >= |b| (or a == 0).
inline ddouble quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline ddouble two_prod(double a, double b) {
    double p = a * b;
#if defined(__FMA__) || defined(FP_FAST_FMA)
    return {p, std::fma(a, b, -p)};
#else
    // Dekker split fallback.
    constexpr double split = 134217729.0;  // 2^27 + 1
    double ta = split * a, tb = split * b;
    double ah = ta - (ta - a), bh = tb - (tb - b);
    double al = a - ah, bl = b - bh;
    double err = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    return {p, err};
#endif
}

}  // namespace eft

inline ddouble renorm(double hi, double lo) { return eft::quick_two_sum(hi, lo); }

// ---- addition / subtraction ----

inline ddouble operator+(ddouble a, ddouble b) {
    ddouble s = eft::two_sum(a.hi, b.hi);
    ddouble t = eft::two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = eft::quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return eft::quick_two_sum(s.hi, s.lo);
}

inline ddouble operator+(ddouble a, double b) {
    ddouble s = eft::two_sum(a.hi, b);
    s.lo += a.lo;
    return eft::quick_two_sum(s.hi, s.lo);
}

inline ddouble operator+(double a, ddouble b) { return b + a; }

inline ddouble operator-(ddouble a) { return {-a.hi, -a.lo}; }
inline ddouble operator-(ddouble a, ddouble b) { return a + (-b); }
inline ddouble operator-(ddouble a, double b) { return a + (-b); }
inline ddouble operator-(double a, ddouble b) { return (-b) + a; }

// ---- multiplication ----

inline ddouble operator*(ddouble a, ddouble b) {
    ddouble p = eft::two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return eft::quick_two_sum(p.hi, p.lo);
}

inline ddouble operator*(ddouble a, double b) {
    ddouble p = eft::two_prod(a.hi, b);
    p.lo += a.lo * b;
    return eft::quick_two_sum(p.hi, p.lo);
}

inline ddouble operator*(double a, ddouble b) { return b * a; }

// Exact scaling by a power of two.
inline ddouble mul_pwr2(ddouble a, double p2) { return {a.hi * p2, a.lo * p2}; }

// ---- division ----

inline ddouble operator/(ddouble a, ddouble b) {
    double q1 = a.hi / b.hi;
    ddouble r = a - b * q1;
    double q2 = r.hi / b.hi;
    r = r - b * q2;
    double q3 = r.hi / b.hi;
    ddouble q = eft::quick_two_sum(q1, q2);
    return q + q3;
}

inline ddouble operator/(ddouble a, double b) { return a / ddouble(b); }
inline ddouble operator/(double a, ddouble b) { return ddouble(a) / b; }

inline ddouble& operator+=(ddouble& a, ddouble b) { a = a + b; return a; }
inline ddouble& operator+=(ddouble& a, double b) { a = a + b; return a; }
inline ddouble& operator-=(ddouble& a, ddouble b) { a = a - b; return a; }
inline ddouble& operator-=(ddouble& a, double b) { a = a - b; return a; }
inline ddouble& operator*=(ddouble& a, ddouble b) { a = a * b; return a; }
inline ddouble& operator*=(ddouble& a, double b) { a = a * b; return a; }
inline ddouble& operator/=(ddouble& a, ddouble b) { a = a / b; return a; }
inline ddouble& operator/=(ddouble& a, double b) { a = a / b; return a; }

// ---- comparisons (exact) ----

inline bool operator==(ddouble a, ddouble b) { return a.hi == b.hi && a.lo == b.lo; }
inline bool operator!=(ddouble a, ddouble b) { return !(a == b); }
inline bool operator<(ddouble a, ddouble b) {
    return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(ddouble a, ddouble b) { return b < a; }
inline bool operator<=(ddouble a, ddouble b) { return !(b < a); }
inline bool operator>=(ddouble a, ddouble b) { return !(a < b); }

inline double to_double(ddouble a) { return a.hi; }
inline bool isfinite(ddouble a) { return std::isfinite(a.hi); }

inline ddouble fabs(ddouble a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0) ? -a : a; }

inline ddouble floor(ddouble a) {
    double fh = std::floor(a.hi);
    if (fh != a.hi) return {fh, 0.0};
    ddouble r = eft::quick_two_sum(fh, std::floor(a.lo));
    return r;
}

inline ddouble ceil_dd(ddouble a) { return -floor(-a); }

inline ddouble nint(ddouble a) { return floor(a + ddouble(0.5)); }

// Exact ldexp.
inline ddouble ldexp_dd(ddouble a, int e) {
    return {std::ldexp(a.hi, e), std::ldexp(a.lo, e)};
}

// ---- transcendentals (ddouble.cpp) ----

ddouble sqrt(ddouble a);                 // a >= 0
ddouble exp(ddouble a);                  // underflows to 0, overflow -> throw
ddouble log(ddouble a);                  // a > 0
ddouble log1p(ddouble a);                // a > -1
ddouble pow(ddouble base, long long n);  // integer power
ddouble pow(ddouble base, ddouble e);    // base > 0
void sincos_2pi(ddouble frac, ddouble& s, ddouble& c);  // sin/cos of 2*pi*frac

// ---- decimal conversion (ddouble.cpp) ----

// Round-trips losslessly to within ~1 ulp at 32 significant digits.
std::string to_string(ddouble a, int sig_digits = 32);
// Fixed-point rendering with the given number of decimals (CSV output).
std::string to_fixed(ddouble a, int decimals);
ddouble from_string(std::string_view s);

std::ostream& operator<<(std::ostream& os, ddouble a);

// ---- constants ----

inline constexpr ddouble dd_pi{0x1.921fb54442d18p+1, 0x1.1a62633145c07p-53};
inline constexpr ddouble dd_ln2{0x1.62e42fefa39efp-1, 0x1.abc9e3b39803fp-56};
inline constexpr ddouble dd_ln10{0x1.26bb1bbb55516p+1, -0x1.f48ad494ea3e9p-53};
inline constexpr ddouble dd_euler_gamma{0x1.2788cfc6fb619p-1, -0x1.6cb90701fbfabp-58};

inline ddouble two_pi() { return mul_pwr2(dd_pi, 2.0); }
inline ddouble half_pi() { return mul_pwr2(dd_pi, 0.5); }

}  // namespace cycloek
