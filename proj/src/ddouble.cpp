#include "cycloek/ddouble.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace cycloek {

namespace {

// 1/k! for k = 0..31, computed once from exact integer factorials.
const std::array<ddouble, 32>& inv_factorials() {
    static const std::array<ddouble, 32> table = [] {
        std::array<ddouble, 32> t{};
        ddouble fact(1.0);
        t[0] = ddouble(1.0);
        for (int k = 1; k < 32; ++k) {
            fact = fact * double(k);
            t[k] = ddouble(1.0) / fact;
        }
        return t;
    }();
    return table;
}

}  // namespace

ddouble sqrt(ddouble a) {
    if (a.hi == 0.0 && a.lo == 0.0) return ddouble(0.0);
    if (a.hi < 0.0) throw std::domain_error("ddouble sqrt of negative value");
    double x0 = std::sqrt(a.hi);
    // One Newton step in full precision: x <- (x + a/x)/2.
    ddouble x(x0);
    x = mul_pwr2(x + a / x, 0.5);
    x = mul_pwr2(x + a / x, 0.5);
    return x;
}

ddouble exp(ddouble a) {
    if (a.hi > 709.0) throw std::overflow_error("ddouble exp overflow");
    if (a.hi < -745.0) return ddouble(0.0);

    // a = m*ln2 + r, |r| <= ln2/2; then exp(r) by Taylor on r/512.
    double m = std::floor(a.hi / dd_ln2.hi + 0.5);
    ddouble r = a - dd_ln2 * m;
    r = mul_pwr2(r, 1.0 / 512.0);

    const auto& inv_fact = inv_factorials();
    // exp(r) - 1 for |r| < 7e-4: 9 terms reach 2^-110.
    ddouble p = r * r;
    ddouble s = r + mul_pwr2(p, 0.5);
    p = p * r;
    ddouble t = p * inv_fact[3];
    int k = 4;
    for (;;) {
        s = s + t;
        if (std::abs(t.hi) <= 1e-35 || k >= 13) break;
        p = p * r;
        t = p * inv_fact[k];
        ++k;
    }
    // Undo the /512 scaling: (1+s)^(2^9) - 1, keeping the -1 form.
    for (int i = 0; i < 9; ++i) s = mul_pwr2(s, 2.0) + s * s;
    s = s + 1.0;
    return ldexp_dd(s, static_cast<int>(m));
}

ddouble log(ddouble a) {
    if (a.hi <= 0.0) throw std::domain_error("ddouble log of non-positive value");
    // Newton on exp: y <- y + a*exp(-y) - 1, two steps from the double seed.
    ddouble y(std::log(a.hi));
    y = y + a * exp(-y) - 1.0;
    y = y + a * exp(-y) - 1.0;
    return y;
}

namespace {

// 1/k to full precision, k = 1..39 (series coefficients)
const std::array<ddouble, 40>& inv_ints() {
    static const std::array<ddouble, 40> table = [] {
        std::array<ddouble, 40> t{};
        for (int k = 1; k < 40; ++k) t[k] = ddouble(1.0) / double(k);
        return t;
    }();
    return table;
}

}  // namespace

ddouble log1p(ddouble a) {
    // Series for small |a|, full log otherwise.
    double x = a.hi;
    if (x <= -1.0) throw std::domain_error("ddouble log1p domain");
    if (std::abs(x) > 0x1p-6) return log(a + 1.0);
    if (x == 0.0 && a.lo == 0.0) return ddouble(0.0);
    // log(1+a) = sum_{k>=1} (-1)^{k+1} a^k / k
    const auto& inv = inv_ints();
    ddouble term = a;
    ddouble sum = a;
    double limit = std::abs(x) * 1e-34;
    for (int k = 2; k < 40; ++k) {
        term = term * (-a);
        ddouble c = term * inv[k];
        sum = sum + c;
        if (std::abs(c.hi) < limit) break;
    }
    return sum;
}

ddouble pow(ddouble base, long long n) {
    if (n == 0) return ddouble(1.0);
    bool inv = n < 0;
    unsigned long long e = inv ? 0ULL - static_cast<unsigned long long>(n)
                               : static_cast<unsigned long long>(n);
    ddouble acc(1.0), b = base;
    while (e) {
        if (e & 1) acc = acc * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return inv ? ddouble(1.0) / acc : acc;
}

ddouble pow(ddouble base, ddouble e) {
    if (base.hi <= 0.0) throw std::domain_error("ddouble pow needs positive base");
    return exp(e * log(base));
}

namespace {

// sin/cos of t = 2*pi*w for w in [0, 1/8], by Taylor in dd_pi/4 range.
void sincos_kernel(ddouble w, ddouble& s, ddouble& c) {
    ddouble x = two_pi() * w;  // x in [0, pi/4]
    ddouble x2 = x * x;
    const auto& inv_fact = inv_factorials();
    // sin: x - x^3/3! + ... up to x^29; cos: 1 - x^2/2! + ... up to x^30.
    ddouble ssum(0.0), csum(0.0);
    ddouble p(1.0);
    for (int k = 0; k <= 30; k += 2) {
        // p = x^k at loop entry
        ddouble ck = p * inv_fact[k];
        csum = (k % 4 == 0) ? csum + ck : csum - ck;
        ddouble ps = p * x;
        ddouble sk = ps * inv_fact[k + 1];
        ssum = (k % 4 == 0) ? ssum + sk : ssum - sk;
        p = p * x2;
        if (std::abs(p.hi) < 1e-40) break;
    }
    s = ssum;
    c = csum;
}

}  // namespace

void sincos_2pi(ddouble frac, ddouble& s, ddouble& c) {
    // Reduce to [0,1): exact since floor is exact.
    ddouble w = frac - floor(frac);
    // Octant decomposition: w = k/8 + t, t in [0,1/8).
    ddouble w8 = mul_pwr2(w, 8.0);
    int oct = static_cast<int>(to_double(floor(w8)));
    if (oct < 0) oct = 0;
    if (oct > 7) oct = 7;
    ddouble t = mul_pwr2(w8 - double(oct), 1.0 / 8.0);
    ddouble ks, kc;
    // Use the complement within the octant pair so the kernel argument stays <= pi/4.
    bool flip = (oct & 1) != 0;
    if (flip) t = ddouble(0.125) - t;
    sincos_kernel(t, ks, kc);
    ddouble sv, cv;
    switch (oct) {
        case 0: sv = ks;  cv = kc;  break;   // [0, pi/4)
        case 1: sv = kc;  cv = ks;  break;   // [pi/4, pi/2): sin(pi/2-x)=cos x
        case 2: sv = kc;  cv = -ks; break;   // [pi/2, 3pi/4)
        case 3: sv = ks;  cv = -kc; break;
        case 4: sv = -ks; cv = -kc; break;
        case 5: sv = -kc; cv = -ks; break;
        case 6: sv = -kc; cv = ks;  break;
        default: sv = -ks; cv = kc; break;
    }
    s = sv;
    c = cv;
}

// ---- decimal conversion ----

namespace {

ddouble pow10_dd(int e) {
    ddouble ten(10.0);
    if (e >= 0) return pow(ten, static_cast<long long>(e));
    return ddouble(1.0) / pow(ten, static_cast<long long>(-e));
}

// Extracts `n` decimal digits of |a|, a normalized to [1,10). Returns digits
// and decimal exponent via out-params.
void extract_digits(ddouble a, int n, std::string& digits, int& exp10) {
    exp10 = static_cast<int>(std::floor(std::log10(std::abs(a.hi))));
    ddouble y = a / pow10_dd(exp10);
    // Correct the estimate.
    while (y.hi >= 10.0) { y = y / 10.0; ++exp10; }
    while (y.hi < 1.0) { y = y * 10.0; --exp10; }
    digits.clear();
    digits.reserve(n + 1);
    for (int i = 0; i <= n; ++i) {  // one guard digit for rounding
        int d = static_cast<int>(y.hi);
        if (d < 0) d = 0;
        if (d > 9) d = 9;
        digits.push_back(static_cast<char>('0' + d));
        y = (y - double(d)) * 10.0;
    }
    // Round on the guard digit, propagate carry.
    if (digits.back() >= '5') {
        int i = n - 1;
        while (i >= 0 && digits[i] == '9') digits[i--] = '0';
        if (i < 0) {
            digits.insert(digits.begin(), '1');
            ++exp10;
        } else {
            ++digits[i];
        }
    }
    digits.resize(n);
}

}  // namespace

std::string to_string(ddouble a, int sig_digits) {
    if (!std::isfinite(a.hi)) return a.hi > 0 ? "inf" : (a.hi < 0 ? "-inf" : "nan");
    if (a.hi == 0.0 && a.lo == 0.0) return "0";
    bool neg = a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0);
    std::string digits;
    int e10 = 0;
    extract_digits(fabs(a), sig_digits, digits, e10);
    std::string out;
    if (neg) out += '-';
    out += digits[0];
    out += '.';
    out.append(digits.begin() + 1, digits.end());
    out += 'e';
    char buf[16];
    std::snprintf(buf, sizeof buf, "%+03d", e10);
    out += buf;
    return out;
}

std::string to_fixed(ddouble a, int decimals) {
    if (!std::isfinite(a.hi)) return a.hi > 0 ? "inf" : (a.hi < 0 ? "-inf" : "nan");
    bool neg = a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0);
    ddouble x = fabs(a);
    // Scale, round to integer, then print with a decimal point inserted.
    ddouble scaled = x * pow10_dd(decimals) + 0.5;
    ddouble ipart = floor(scaled);
    // Digits of ipart.
    std::string digits;
    if (ipart.hi == 0.0) {
        digits = "0";
    } else {
        int e10;
        std::string d;
        extract_digits(ipart, 36, d, e10);
        if (e10 + 1 >= 36) throw std::overflow_error("to_fixed: value too large");
        digits = d.substr(0, e10 + 1);
        if (digits.empty()) digits = "0";
    }
    while (static_cast<int>(digits.size()) < decimals + 1)
        digits.insert(digits.begin(), '0');
    std::string out;
    if (neg) out += '-';
    out.append(digits.begin(), digits.end() - decimals);
    if (decimals > 0) {
        out += '.';
        out.append(digits.end() - decimals, digits.end());
    }
    return out;
}

ddouble from_string(std::string_view s) {
    size_t i = 0;
    auto fail = [&] { throw std::invalid_argument("ddouble parse: " + std::string(s)); };
    if (s.empty()) fail();
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
    ddouble mant(0.0);
    int frac_digits = 0;
    bool any = false, in_frac = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c >= '0' && c <= '9') {
            mant = mant * 10.0 + double(c - '0');
            if (in_frac) ++frac_digits;
            any = true;
        } else if (c == '.' && !in_frac) {
            in_frac = true;
        } else {
            break;
        }
    }
    if (!any) fail();
    long long e10 = -frac_digits;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = s[i++] == '-';
        if (i >= s.size()) fail();
        long long e = 0;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') fail();
            e = e * 10 + (s[i] - '0');
        }
        e10 += eneg ? -e : e;
    } else if (i != s.size()) {
        fail();
    }
    ddouble r = mant;
    if (e10 != 0) r = r * pow10_dd(static_cast<int>(e10));
    return neg ? -r : r;
}

std::ostream& operator<<(std::ostream& os, ddouble a) { return os << to_string(a); }

}  // namespace cycloek
