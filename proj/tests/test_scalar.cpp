#include "doctest.h"

#include <random>

#include "cheigen/scalar.hpp"

using namespace cheigen;

TEST_CASE("rational canonical form") {
    CHECK(Rational(-10, 4).str() == "-5/2");
    CHECK(Rational(10, -4).str() == "-5/2");
    CHECK(Rational(-10, -4).str() == "5/2");
    CHECK(Rational(0, 7).str() == "0");
    CHECK(Rational(0, -7).str() == "0");
    CHECK(Rational(6, 3).str() == "2");
    CHECK(Rational(6, 3).is_integer());
    CHECK(Rational(5, 2).den() == BigInt(2));
    CHECK(Rational(5, 2).num() == BigInt(5));
    CHECK_THROWS_AS(Rational(1, 0), Error);
}

TEST_CASE("rational arithmetic and comparison") {
    Rational a(1, 2), b(1, 3);
    CHECK((a + b).str() == "5/6");
    CHECK((a - b).str() == "1/6");
    CHECK((a * b).str() == "1/6");
    CHECK((a / b).str() == "3/2");
    CHECK((-a).str() == "-1/2");
    CHECK(b < a);
    CHECK(a == Rational(2, 4));
    CHECK(Rational(-1, 2) < Rational(1, 3));
    CHECK(Rational(-7, 3).abs() == Rational(7, 3));
    CHECK(Rational(1, 2).sign() == 1);
    CHECK(Rational(-1, 2).sign() == -1);
    CHECK(Rational(0).sign() == 0);
    CHECK_THROWS_AS(a / Rational(0), Error);
}

TEST_CASE("rational to_double and exact double import") {
    CHECK(Rational(1, 2).to_double() == 0.5);
    CHECK(Rational(-3, 4).to_double() == -0.75);
    Rational tenth = Rational::from_double_exact(0.1);
    CHECK(tenth.to_double() == 0.1);
    CHECK(tenth != Rational(1, 10));
    CHECK(Rational::from_double_exact(0.5) == Rational(1, 2));
    CHECK(Rational::from_double_exact(-3.0) == Rational(-3));
    CHECK(Rational::from_double_exact(0.0) == Rational(0));
}

TEST_CASE("scalar modes stay separate") {
    Scalar e = Scalar::exact(3, 4);
    Scalar f = Scalar::floating(0.75);
    CHECK(e.is_exact());
    CHECK(!f.is_exact());
    CHECK(e.to_double() == 0.75);
    CHECK_THROWS_AS(e + f, ModeMismatch);
    CHECK_THROWS_AS((void)(e == f), ModeMismatch);
    CHECK_THROWS_AS(f.rat(), ModeMismatch);
    CHECK_THROWS_AS(e.flt(), ModeMismatch);
}

TEST_CASE("scalar arithmetic") {
    Scalar a = Scalar::exact(2), b = Scalar::exact(-6, 4);
    CHECK((a + b).str() == "1/2");
    CHECK((a * b).str() == "-3");
    CHECK((a / b).str() == "-4/3");
    CHECK(b.str() == "-3/2");
    CHECK(b.abs().str() == "3/2");
    CHECK(b.sign() == -1);
    CHECK(Scalar::zero(Mode::Exact).is_zero());
    CHECK(Scalar::one(Mode::Float).flt() == 1.0);
    CHECK_THROWS_AS(a / Scalar::zero(Mode::Exact), Error);
    CHECK_THROWS_AS(Scalar::floating(1.0) / Scalar::floating(0.0), Error);
}

TEST_CASE("scalar mode conversion") {
    Scalar e = Scalar::exact(-5, 2);
    Scalar f = e.to_mode(Mode::Float);
    CHECK(f.flt() == -2.5);
    Scalar back = f.to_mode(Mode::Exact);
    CHECK(back.rat() == Rational(-5, 2));
    Scalar third = Scalar::floating(1.0 / 3.0).to_mode(Mode::Exact);
    CHECK(third.to_double() == 1.0 / 3.0);
    CHECK(third.rat() != Rational(1, 3));
}

TEST_CASE("double_str round-trips through parsing") {
    for (double x : {0.1, -2.5, 1e-9, 3.0, 1234.5678, 6.02e23}) {
        CHECK(std::stod(double_str(x)) == x);
    }
}

TEST_CASE("rational arithmetic properties on random values") {
    std::mt19937_64 rng(12345);
    auto draw = [&]() {
        long long n = static_cast<long long>(rng() % 2001) - 1000;
        long long d = static_cast<long long>(rng() % 999) + 1;
        return Rational(n, d);
    };
    for (int i = 0; i < 500; ++i) {
        Rational a = draw(), b = draw();
        CHECK((a + b) - b == a);
        CHECK(a + b == b + a);
        if (!b.is_zero()) CHECK((a * b) / b == a);
        CHECK((a + b).is_canonical());
        CHECK((a * b).is_canonical());
    }
}
