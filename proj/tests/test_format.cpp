#include <doctest.h>

#include <string>

#include "slgamma/format.hpp"
#include "support/generators.hpp"

using slgamma::Blade;
using slgamma::CliffordNumber;
using slgamma::ParseError;
using slgamma::Rational;
using slgamma::parse_clifford;
using slgamma::parse_vector;
using slgamma::to_string;
using C = CliffordNumber<Rational>;
using F = CliffordNumber<double>;

TEST_CASE("blade rendering") {
    CHECK(to_string(Blade()) == "1");
    CHECK(to_string(Blade({1})) == "e1");
    CHECK(to_string(Blade({1, 2, 7})) == "e1.e2.e7");
}

TEST_CASE("canonical element rendering") {
    CHECK(to_string(C::zero()) == "0");
    CHECK(to_string(C(Rational(3, 2))) == "3/2");
    CHECK(to_string(C::generator(1)) == "1*e1");
    CHECK(to_string(-C::generator(1)) == "-1*e1");
    CHECK(to_string(C(Rational(3, 2)) + C::generator(1).scaled(Rational(11, 25))) ==
          "3/2 + 11/25*e1");
    CHECK(to_string(C(Rational(1)) - C::term(Blade({1, 2}), Rational(1))) ==
          "1 - 1*e1.e2");
    CHECK(to_string(C(Rational(-1, 2)) + C::generator(3)) == "-1/2 + 1*e3");
    CHECK(to_string(F(0.5) + F::generator(2).scaled(0.25)) == "0.5 + 0.25*e2");
}

TEST_CASE("parsing round and canonicalization") {
    CHECK(parse_clifford<Rational>("3/2 + 11/25*e1") ==
          C(Rational(3, 2)) + C::generator(1).scaled(Rational(11, 25)));
    CHECK(parse_clifford<Rational>("0") == C::zero());
    CHECK(parse_clifford<Rational>("-2") == C(Rational(-2)));
    CHECK(parse_clifford<Rational>("1*e1 + 1*e1") == C::generator(1).scaled(Rational(2)));
    CHECK(parse_clifford<Rational>("1*e2.e5") == C::term(Blade({2, 5}), Rational(1)));
    CHECK(parse_clifford<Rational>("  3/2+11/25*e1  ") ==
          parse_clifford<Rational>("3/2 + 11/25*e1"));
    CHECK(parse_clifford<Rational>("2 - 3*e1") == C(Rational(2)) - C::generator(1).scaled(Rational(3)));
    CHECK(parse_clifford<Rational>("1*e1 - 1*e1") == C::zero());
}

TEST_CASE("float grammar accepts decimals and exponents") {
    CHECK(parse_clifford<double>("0.5*e1.e2") == F::term(Blade({1, 2}), 0.5));
    CHECK(parse_clifford<double>("1e+2*e1") == F::generator(1).scaled(100.0));
    CHECK(parse_clifford<double>("2e1") == F(20.0));  // exponent, not a blade
    CHECK(parse_clifford<double>("2*e1") == F::generator(1).scaled(2.0));
    CHECK(parse_clifford<double>("1.25 - 0.25*e3") == F(1.25) - F::generator(3).scaled(0.25));
}

TEST_CASE("rational grammar rejects float literals") {
    CHECK_THROWS_AS(parse_clifford<Rational>("1.5"), ParseError);
    CHECK_THROWS_AS(parse_clifford<Rational>("1e3"), ParseError);
}

TEST_CASE("parse errors carry one-based position") {
    try {
        parse_clifford<Rational>("1/");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
        CHECK(e.column == 3);
    }

    try {
        parse_clifford<Rational>("1 +\n2*e0");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("e1") != std::string::npos);
    }
}

TEST_CASE("parse error cases") {
    CHECK_THROWS_AS(parse_clifford<Rational>(""), ParseError);
    CHECK_THROWS_AS(parse_clifford<Rational>("e1"), ParseError);
    CHECK_THROWS_AS(parse_clifford<Rational>("1 +"), ParseError);
    CHECK_THROWS_AS(parse_clifford<Rational>("2*e0"), ParseError);
    CHECK_THROWS_AS(parse_clifford<Rational>("1*e2.e1"), ParseError);
    CHECK_THROWS_AS(parse_clifford<Rational>("1*e1.e1"), ParseError);
    CHECK_THROWS_AS(parse_clifford<Rational>("1*e1 junk"), ParseError);
    CHECK_THROWS_AS(parse_clifford<Rational>("1/0"), ParseError);
    CHECK_THROWS_AS(parse_clifford<double>("0.5.1"), ParseError);
}

TEST_CASE("parse_vector rejects higher grades") {
    CHECK(parse_vector<Rational>("1 + 2*e3").value() ==
          C(Rational(1)) + C::generator(3).scaled(Rational(2)));
    CHECK_THROWS_AS(parse_vector<Rational>("1*e1.e2"), ParseError);
}

TEST_CASE("print then parse is the identity on random rational elements") {
    slgamma::testing::Rng rng;
    for (int t = 0; t < 200; ++t) {
        const C a = slgamma::testing::random_element(rng);
        CHECK(parse_clifford<Rational>(to_string(a)) == a);
    }
}

TEST_CASE("print then parse is the identity on float elements") {
    slgamma::testing::Rng rng;
    for (int t = 0; t < 200; ++t) {
        const F a = slgamma::testing::to_float_element(slgamma::testing::random_element(rng));
        CHECK(parse_clifford<double>(to_string(a)) == a);  // shortest repr round-trips
    }
}
