#include <doctest.h>

#include "slgamma/scalar.hpp"

using slgamma::Rational;
using slgamma::format_double;
using slgamma::scalar_eq;

TEST_CASE("rational parsing accepts p, -p and p/q") {
    CHECK(Rational::parse("3/2") == Rational(3, 2));
    CHECK(Rational::parse("-11/25") == Rational(-11, 25));
    CHECK(Rational::parse("7") == Rational(7));
    CHECK(Rational::parse("+4/6") == Rational(2, 3));
    CHECK(Rational::parse("0") == Rational(0));
}

TEST_CASE("rational parsing rejects malformed text") {
    CHECK_FALSE(Rational::parse("").has_value());
    CHECK_FALSE(Rational::parse("1/").has_value());
    CHECK_FALSE(Rational::parse("/2").has_value());
    CHECK_FALSE(Rational::parse("1/0").has_value());
    CHECK_FALSE(Rational::parse("1.5").has_value());
    CHECK_FALSE(Rational::parse("1e3").has_value());
    CHECK_FALSE(Rational::parse(" 1").has_value());
    CHECK_FALSE(Rational::parse("1/2/3").has_value());
    CHECK_FALSE(Rational::parse("a").has_value());
}

TEST_CASE("rational arithmetic is exact and canonical") {
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(2, 4).str() == "1/2");
    CHECK((Rational(-4, 6)).str() == "-2/3");
    CHECK(Rational(3, 2) * Rational(2, 3) == Rational(1));
    CHECK(Rational(1) / Rational(3) == Rational(1, 3));
    CHECK((-Rational(5, 7)).str() == "-5/7");
    CHECK(Rational(5).str() == "5");
    CHECK_THROWS_AS(Rational(1) / Rational(0), slgamma::Error);
    CHECK_THROWS_AS(Rational(1, 0), slgamma::Error);
}

TEST_CASE("rational ordering and helpers") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1) < Rational(0));
    CHECK(Rational(-3, 4).abs() == Rational(3, 4));
    CHECK(Rational(-3, 4).sign() == -1);
    CHECK(Rational(0).is_zero());
    CHECK(Rational(7, 3).numerator_str() == "7");
    CHECK(Rational(7, 3).denominator_str() == "3");
}

TEST_CASE("rational from double is the exact dyadic value") {
    CHECK(Rational(0.5) == Rational(1, 2));
    CHECK(Rational(0.1) == Rational::parse("3602879701896397/36028797018963968"));
    CHECK(Rational(-0.25) == Rational(-1, 4));
}

TEST_CASE("exact square roots of perfect rational squares") {
    CHECK(Rational(121, 625).exact_sqrt() == Rational(11, 25));
    CHECK(Rational(9, 4).exact_sqrt() == Rational(3, 2));
    CHECK(Rational(0).exact_sqrt() == Rational(0));
    CHECK(Rational(1).exact_sqrt() == Rational(1));
    CHECK_FALSE(Rational(2).exact_sqrt().has_value());
    CHECK_FALSE(Rational(1, 3).exact_sqrt().has_value());
    CHECK_FALSE(Rational(-4).exact_sqrt().has_value());
}

TEST_CASE("format_double renders shortest round-trip decimals") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-0.44) == "-0.44");
    CHECK(format_double(0.0) == "0");
}

TEST_CASE("float trait parsing") {
    using T = slgamma::scalar_traits<double>;
    CHECK(T::parse("0.125") == 0.125);
    CHECK(T::parse("1e-3") == 0.001);
    CHECK(T::parse("-2") == -2.0);
    CHECK_FALSE(T::parse("abc").has_value());
    CHECK_FALSE(T::parse("1.2.3").has_value());
    CHECK_FALSE(T::parse("nan").has_value());
    CHECK_FALSE(T::parse("inf").has_value());
}

TEST_CASE("scalar_eq is exact for rationals, tolerant for floats") {
    CHECK(scalar_eq(Rational(1, 3), Rational(1, 3), 1e-12));
    CHECK_FALSE(scalar_eq(Rational(1, 3), Rational(1, 3) + Rational(1, 1000000000), 1e-2));
    CHECK(scalar_eq(1.0, 1.0 + 1e-13, 1e-12));
    CHECK_FALSE(scalar_eq(1.0, 1.001, 1e-12));
}
