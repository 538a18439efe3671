#pragma once

// Complex arithmetic over a generic real scalar (std::complex is only
// specified for the native floating types, and the transform must run on
// ddouble unchanged).

#include "cycloek/ddouble.hpp"
#include "cycloek/realops.hpp"

namespace cycloek {

template <class R>
struct cplx {
    R re{}, im{};

    constexpr cplx() = default;
    constexpr cplx(R r) : re(r), im(0.0) {}
    constexpr cplx(R r, R i) : re(r), im(i) {}
};

template <class R> cplx<R> operator+(cplx<R> a, cplx<R> b) { return {a.re + b.re, a.im + b.im}; }
template <class R> cplx<R> operator-(cplx<R> a, cplx<R> b) { return {a.re - b.re, a.im - b.im}; }
template <class R> cplx<R> operator-(cplx<R> a) { return {-a.re, -a.im}; }

template <class R> cplx<R> operator*(cplx<R> a, cplx<R> b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class R> cplx<R> operator*(cplx<R> a, R s) { return {a.re * s, a.im * s}; }
template <class R> cplx<R> operator*(R s, cplx<R> a) { return a * s; }

template <class R> cplx<R> conj(cplx<R> a) { return {a.re, -a.im}; }

template <class R> R norm(cplx<R> a) { return a.re * a.re + a.im * a.im; }
template <class R> R abs(cplx<R> a) { return real_ops<R>::sqrt(norm(a)); }

template <class R> cplx<R> operator/(cplx<R> a, cplx<R> b) {
    R d = norm(b);
    cplx<R> n = a * conj(b);
    return {n.re / d, n.im / d};
}
template <class R> cplx<R> operator/(cplx<R> a, R s) { return {a.re / s, a.im / s}; }

template <class R> cplx<R>& operator+=(cplx<R>& a, cplx<R> b) { a = a + b; return a; }
template <class R> cplx<R>& operator-=(cplx<R>& a, cplx<R> b) { a = a - b; return a; }
template <class R> cplx<R>& operator*=(cplx<R>& a, cplx<R> b) { a = a * b; return a; }

// e^{2*pi*i*frac}
template <class R>
cplx<R> unit_root(R frac) {
    R s, c;
    real_ops<R>::sincos_2pi(frac, s, c);
    return {c, s};
}

using cdd = cplx<ddouble>;
using cfl = cplx<double>;

}  // namespace cycloek
