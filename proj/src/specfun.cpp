#include "cycloek/specfun.hpp"

#include <stdexcept>

namespace cycloek {

ddouble euler_gamma() { return dd_euler_gamma; }

namespace detail {

namespace {

// B_{2n}/(2n) for n = 1..11, as exact integer ratios.
template <class R>
const R* psi_coeffs() {
    static const R c[11] = {
        R(1.0) / R(12.0),
        -(R(1.0) / R(120.0)),
        R(1.0) / R(252.0),
        -(R(1.0) / R(240.0)),
        R(1.0) / R(132.0),
        -(R(691.0) / R(32760.0)),
        R(1.0) / R(12.0),
        -(R(3617.0) / R(8160.0)),
        R(43867.0) / R(14364.0),
        -(R(174611.0) / R(6600.0)),
        R(854513.0) / R(3036.0),
    };
    return c;
}

}  // namespace

template <class R>
R digamma_impl(std::uint64_t r, std::uint64_t q) {
    using ops = real_ops<R>;
    // z walks from r/q upward in exact rational steps (r + kq)/q.
    R qr(static_cast<double>(q));
    R acc(0.0);
    std::uint64_t num = r;
    while (num < 32 * q) {
        acc = acc - qr / R(static_cast<double>(num));
        num += q;
    }
    R z = R(static_cast<double>(num)) / qr;
    R logz = ops::log(z);
    R inv = R(1.0) / z;
    R inv2 = inv * inv;
    R series(0.0);
    const R* c = psi_coeffs<R>();
    R u = inv2;
    for (int n = 0; n < 11; ++n) {
        series = series + c[n] * u;
        u = u * inv2;
    }
    return logz - mul_pwr2(inv, 0.5) - series + acc;
}

template <class R>
R t_tail(std::uint64_t M, std::uint64_t r, std::uint64_t q) {
    using ops = real_ops<R>;
    // f(t) = log t / t;  f^(j)(t) = (-1)^j j! (log t - H_j)/t^(j+1).
    // tail = int_M^inf h + h(M)/2 - h'(M)/12 + h'''(M)/720
    //        - h^(5)(M)/30240 + h^(7)(M)/1209600,  h(t) = f(t+y) - f(t+1).
    struct FD {
        R f, f1, f3, f5, f7;
    };
    auto derivs = [](R t, R logt) {
        FD d;
        R it = R(1.0) / t;
        R it2 = it * it;
        d.f = logt * it;
        d.f1 = -(logt - R(1.0)) * it2;
        R it4 = it2 * it2;
        d.f3 = -R(6.0) * (logt - R(11.0) / R(6.0)) * it4;
        d.f5 = -R(120.0) * (logt - R(137.0) / R(60.0)) * it4 * it2;
        d.f7 = -R(5040.0) * (logt - R(363.0) / R(140.0)) * it4 * it4;
        return d;
    };
    R qr(static_cast<double>(q));
    R ta = R(static_cast<double>(M * q + r)) / qr;  // M + y
    R tb = R(static_cast<double>(M + 1));
    R la = ops::log(ta), lb = ops::log(tb);
    FD a = derivs(ta, la), b = derivs(tb, lb);
    R integral = mul_pwr2(lb * lb - la * la, 0.5);
    R tail = integral;
    tail = tail + mul_pwr2(a.f - b.f, 0.5);
    tail = tail - (a.f1 - b.f1) / R(12.0);
    tail = tail + (a.f3 - b.f3) / R(720.0);
    tail = tail - (a.f5 - b.f5) / R(30240.0);
    tail = tail + (a.f7 - b.f7) / R(1209600.0);
    return tail;
}

template ddouble digamma_impl<ddouble>(std::uint64_t, std::uint64_t);
template double digamma_impl<double>(std::uint64_t, std::uint64_t);
template ddouble t_tail<ddouble>(std::uint64_t, std::uint64_t, std::uint64_t);
template double t_tail<double>(std::uint64_t, std::uint64_t, std::uint64_t);

}  // namespace detail

ddouble digamma_rational(std::uint64_t r, std::uint64_t q) {
    if (r == 0 || r > q) throw std::domain_error("digamma_rational needs 1 <= r <= q");
    return detail::digamma_impl<ddouble>(r, q);
}

namespace detail {

ddouble t_sum_m(std::uint64_t r, std::uint64_t q, std::uint64_t M) {
    ddouble qr(static_cast<double>(q));
    ddouble sum(0.0);
    for (std::uint64_t m = 0; m < M; ++m) {
        ddouble x = ddouble(static_cast<double>(m * q + r)) / qr;
        ddouble y(static_cast<double>(m + 1));
        sum += log(x) / x - log(y) / y;
    }
    return sum + t_tail<ddouble>(M, r, q);
}

}  // namespace detail

ddouble t_sum(std::uint64_t r, std::uint64_t q) {
    if (r == 0 || r > q) throw std::domain_error("t_sum needs 1 <= r <= q");
    if (r == q) return ddouble(0.0);  // every term vanishes at y = 1
    return detail::t_sum_m(r, q, detail::kTsumTerms);
}

namespace {

// B_{2n}/((2n)(2n-1)) for n = 1..12.
const ddouble* lgamma_coeffs() {
    static const ddouble c[12] = {
        ddouble(1.0) / ddouble(12.0),
        -(ddouble(1.0) / ddouble(360.0)),
        ddouble(1.0) / ddouble(1260.0),
        -(ddouble(1.0) / ddouble(1680.0)),
        ddouble(1.0) / ddouble(1188.0),
        -(ddouble(691.0) / ddouble(360360.0)),
        ddouble(1.0) / ddouble(156.0),
        -(ddouble(3617.0) / ddouble(122400.0)),
        ddouble(43867.0) / ddouble(244188.0),
        -(ddouble(174611.0) / ddouble(125400.0)),
        ddouble(854513.0) / ddouble(63756.0),
        -(ddouble(236364091.0) / ddouble(1506960.0)),
    };
    return c;
}

const ddouble& half_log_two_pi() {
    static const ddouble v = mul_pwr2(log(two_pi()), 0.5);
    return v;
}

}  // namespace

ddouble gamma_real(ddouble x) {
    if (to_double(x) <= 0.0) throw std::domain_error("gamma_real needs x > 0");
    // Shift to z >= 32, Stirling there, divide the shift product back out.
    int shift = 0;
    if (to_double(x) < 32.0)
        shift = 32 - static_cast<int>(std::floor(to_double(x)));
    ddouble z = x + double(shift);
    ddouble logz = log(z);
    ddouble inv = ddouble(1.0) / z;
    ddouble inv2 = inv * inv;
    ddouble series(0.0);
    const ddouble* c = lgamma_coeffs();
    ddouble u = inv;
    for (int n = 0; n < 12; ++n) {
        series += c[n] * u;
        u = u * inv2;
    }
    ddouble lg = (z - 0.5) * logz - z + half_log_two_pi() + series;
    ddouble result = exp(lg);
    for (int i = 0; i < shift; ++i) result = result / (x + double(i));
    return result;
}

}  // namespace cycloek
