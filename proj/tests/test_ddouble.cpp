#include "doctest.h"

#include <cmath>
#include <random>

#include "cycloek/ddouble.hpp"

using namespace cycloek;

namespace {

double rel_err(ddouble a, ddouble b) {
    ddouble d = fabs(a - b);
    ddouble m = fabs(b);
    if (to_double(m) == 0.0) return std::abs(to_double(d));
    return to_double(d / m);
}

}  // namespace

TEST_CASE("constants match 36-digit references") {
    CHECK(rel_err(dd_pi, from_string("3.14159265358979323846264338327950288")) < 1e-31);
    CHECK(rel_err(dd_ln2, from_string("0.693147180559945309417232121458176568")) < 1e-31);
    CHECK(rel_err(dd_euler_gamma,
                  from_string("0.577215664901532860606512090082402431")) < 1e-31);
}

TEST_CASE("basic arithmetic keeps the low word") {
    ddouble a = ddouble(1.0) / 3.0;
    ddouble b = a * 3.0 - 1.0;
    CHECK(std::abs(to_double(b)) < 1e-31);

    ddouble s = ddouble(1e16) + ddouble(1e-16);
    CHECK(to_double(s - 1e16) == doctest::Approx(1e-16).epsilon(1e-10));

    // division round trip
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        ddouble x(u(rng) * std::exp2(u(rng) * 40.0));
        ddouble y(u(rng) * std::exp2(u(rng) * 40.0));
        if (std::abs(to_double(y)) < 1e-300) continue;
        ddouble q = x / y;
        CHECK(rel_err(q * y, x) < 1e-30);
    }
}

TEST_CASE("sqrt, exp, log") {
    CHECK(rel_err(sqrt(ddouble(2.0)) * sqrt(ddouble(2.0)), ddouble(2.0)) < 1e-31);
    CHECK(rel_err(exp(ddouble(1.0)),
                  from_string("2.71828182845904523536028747135266250")) < 1e-31);
    CHECK(rel_err(log(exp(ddouble(0.5))), ddouble(0.5)) < 1e-31);
    CHECK(rel_err(exp(dd_ln2), ddouble(2.0)) < 1e-31);
    CHECK(to_double(exp(ddouble(-800.0))) == 0.0);
    CHECK_THROWS(exp(ddouble(800.0)));
    CHECK_THROWS(log(ddouble(0.0)));
    CHECK_THROWS(log(ddouble(-1.0)));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-30.0, 30.0);
    for (int i = 0; i < 100; ++i) {
        ddouble x(u(rng));
        CHECK(rel_err(log(exp(x)), x) < 1e-30);
    }
}

TEST_CASE("log1p small-argument series agrees with log") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        ddouble x(u(rng) * 0.01);
        CHECK(rel_err(log1p(x), log(ddouble(1.0) + x)) < 1e-27);
    }
    CHECK(to_double(log1p(ddouble(0.0))) == 0.0);
}

TEST_CASE("sincos_2pi at exact fractions") {
    ddouble s, c;
    sincos_2pi(ddouble(0.0), s, c);
    CHECK(to_double(s) == 0.0);
    CHECK(to_double(c) == 1.0);

    sincos_2pi(ddouble(1.0) / 4.0, s, c);
    CHECK(std::abs(to_double(c)) < 1e-31);
    CHECK(rel_err(s, ddouble(1.0)) < 1e-31);

    ddouble r2h = sqrt(ddouble(2.0)) * 0.5;
    sincos_2pi(ddouble(1.0) / 8.0, s, c);
    CHECK(rel_err(s, r2h) < 1e-30);
    CHECK(rel_err(c, r2h) < 1e-30);

    sincos_2pi(ddouble(1.0) / 3.0, s, c);
    CHECK(rel_err(c, ddouble(-0.5)) < 1e-30);
    CHECK(rel_err(s, sqrt(ddouble(3.0)) * 0.5) < 1e-30);

    // periodicity and negatives reduce exactly
    ddouble s2, c2;
    sincos_2pi(ddouble(7.0) + ddouble(1.0) / 3.0, s2, c2);
    CHECK(rel_err(s2, s) < 1e-30);
    sincos_2pi(ddouble(-2.0) / 3.0, s2, c2);
    CHECK(rel_err(s2, s) < 1e-30);
}

TEST_CASE("integer and real powers") {
    CHECK(to_double(pow(ddouble(2.0), 10)) == 1024.0);
    CHECK(rel_err(pow(ddouble(2.0), -2), ddouble(0.25)) < 1e-31);
    CHECK(rel_err(pow(ddouble(10.0), ddouble(0.5)), sqrt(ddouble(10.0))) < 1e-30);
    CHECK(to_double(pow(ddouble(3.0), 0)) == 1.0);
}

TEST_CASE("floor and nint are exact") {
    CHECK(to_double(floor(ddouble(2.75))) == 2.0);
    CHECK(to_double(floor(ddouble(-2.25))) == -3.0);
    ddouble big = ddouble(1e20) + ddouble(0.75);
    CHECK(to_double(big - floor(big)) == doctest::Approx(0.75));
    CHECK(to_double(nint(ddouble(2.5))) == 3.0);
}

TEST_CASE("decimal string round trip at 32 digits") {
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        double hi = u(rng) * std::exp2(u(rng) * 100.0);
        double lo = hi * u(rng) * 1e-17;
        ddouble x = renorm(hi, lo);
        ddouble back = from_string(to_string(x, 32));
        CHECK(rel_err(back, x) < 1e-31);  // one unit in the 32nd digit
    }
    CHECK(to_string(ddouble(0.0)) == "0");
    CHECK(rel_err(from_string("-1.5e-3"), ddouble(-15.0) / 10000.0) < 1e-31);
    CHECK_THROWS(from_string("zzz"));
    CHECK_THROWS(from_string(""));
}

TEST_CASE("fixed-point rendering") {
    CHECK(to_fixed(ddouble(1.0) / 3.0, 6) == "0.333333");
    CHECK(to_fixed(ddouble(0.0000125), 6) == "0.000013");
    CHECK(to_fixed(ddouble(-2.0) / 3.0, 4) == "-0.6667");
    CHECK(to_fixed(ddouble(5.0), 2) == "5.00");
    CHECK(to_fixed(ddouble(0.0), 6) == "0.000000");
    CHECK(to_fixed(from_string("1.05494049"), 6) == "1.054940");
    CHECK(to_fixed(from_string("1.05494051"), 6) == "1.054941");
    CHECK(to_fixed(ddouble(123456.0), 0) == "123456");
}

TEST_CASE("comparisons are total and exact") {
    ddouble a(1.0, 1e-20);
    ddouble b(1.0, 2e-20);
    CHECK(a < b);
    CHECK(b > a);
    CHECK(a != b);
    CHECK(a <= a);
    CHECK(fabs(ddouble(-3.5)) == ddouble(3.5));
}
