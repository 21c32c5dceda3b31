#include <doctest.h>

#include "slgamma/clifford.hpp"
#include "support/generators.hpp"

using slgamma::Blade;
using slgamma::CliffordNumber;
using slgamma::GammaElement;
using slgamma::Rational;
using slgamma::VectorElement;
using C = CliffordNumber<Rational>;

namespace {

C gen(std::uint32_t k) { return C::generator(k); }
C scalar(long n, long d = 1) { return C(Rational(n, d)); }

}  // namespace

TEST_CASE("construction and queries") {
    CHECK(C::zero().is_zero());
    CHECK(C::one().real_part() == Rational(1));
    CHECK(gen(3).max_generator() == 3);
    CHECK(C::zero().max_generator() == 0);
    CHECK(scalar(5).is_real());
    CHECK(gen(1).is_vector());
    CHECK((scalar(2) + gen(1)).is_vector());
    CHECK_FALSE((gen(1) * gen(2)).is_vector());
    CHECK((gen(1) * gen(2)).coefficient(Blade({1, 2})) == Rational(1));
    CHECK((gen(1) * gen(2)).coefficient(Blade({1})) == Rational(0));
}

TEST_CASE("from_terms merges duplicates and drops zeros") {
    const C a = C::from_terms({{Blade({1}), Rational(1)},
                               {Blade({1}), Rational(2)},
                               {Blade({2}), Rational(0)}});
    CHECK(a == gen(1).scaled(Rational(3)));
    CHECK(a.terms().size() == 1);

    const C b = C::from_terms({{Blade({1}), Rational(1)},
                               {Blade({1}), Rational(-1)}});
    CHECK(b.is_zero());
}

TEST_CASE("generator products") {
    CHECK(gen(1) * gen(2) == C::term(Blade({1, 2}), Rational(1)));
    CHECK(gen(2) * gen(1) == -(gen(1) * gen(2)));
    CHECK(gen(1) * gen(1) == scalar(-1));
    CHECK((scalar(1) + gen(1)) * (scalar(1) - gen(1)) == scalar(2));
}

TEST_CASE("involutions on small elements") {
    const C e12 = gen(1) * gen(2);
    CHECK(star(e12) == -e12);
    CHECK(prime(e12) == e12);
    CHECK(bar(e12) == -e12);
    CHECK(star(gen(1)) == gen(1));
    CHECK(prime(gen(1)) == -gen(1));
    CHECK(bar(gen(1)) == -gen(1));
    CHECK(star(scalar(7)) == scalar(7));
}

TEST_CASE("norms") {
    CHECK((scalar(1) + gen(1)).norm_sq() == Rational(2));
    CHECK((gen(1) * gen(2)).norm_sq() == Rational(1));
    CHECK(scalar(-3, 2).norm_sq() == Rational(9, 4));
    CHECK(C::zero().norm_sq() == Rational(0));
}

TEST_CASE("grade split helpers") {
    const C mixed = scalar(3) + gen(2) + (gen(1) * gen(2)).scaled(Rational(5));
    CHECK(slgamma::vector_part(mixed) == scalar(3) + gen(2));
    CHECK(slgamma::nonvector_norm(mixed) == doctest::Approx(5.0));
    CHECK(slgamma::is_vector_within(mixed, 1e-9) == false);
    CHECK(slgamma::is_vector_within(scalar(1) + gen(4), 0.0));
    CHECK(slgamma::imaginary_norm(scalar(2)) == doctest::Approx(0.0));
    CHECK(slgamma::is_real_within(scalar(2), 0.0));
    CHECK_FALSE(slgamma::is_real_within(gen(1), 1e-9));
}

TEST_CASE("vector elements and inverses") {
    CHECK_THROWS_AS(VectorElement<Rational>(gen(1) * gen(2)), slgamma::NotAVector);
    CHECK_THROWS_AS(slgamma::vector_inverse(VectorElement<Rational>()), slgamma::ZeroVector);

    const VectorElement<Rational> i1{gen(1)};
    CHECK(slgamma::vector_inverse(i1).value() == -gen(1));

    const VectorElement<Rational> two{scalar(2)};
    CHECK(slgamma::vector_inverse(two).value() == scalar(1, 2));

    const VectorElement<Rational> x{scalar(1) + gen(1)};
    CHECK(slgamma::vector_inverse(x).value() == (scalar(1) - gen(1)).scaled(Rational(1, 2)));

    // x * x^{-1} = 1 on random nonzero vectors
    slgamma::testing::Rng rng;
    for (int t = 0; t < 50; ++t) {
        const auto v = slgamma::testing::random_nonzero_vector(rng);
        CHECK(v.value() * slgamma::vector_inverse(v).value() == C::one());
        CHECK(slgamma::vector_inverse(v).value() * v.value() == C::one());
    }
}

TEST_CASE("gamma elements certify membership by factorization") {
    using slgamma::gamma_from_factors;
    const auto two = gamma_from_factors<Rational>(
        {VectorElement<Rational>(scalar(1) + gen(1)), VectorElement<Rational>(scalar(1) - gen(1))});
    CHECK(two.value == scalar(2));
    CHECK(two.consistent(0.0));

    const auto e12 = gamma_from_factors<Rational>(
        {VectorElement<Rational>(gen(1)), VectorElement<Rational>(gen(2))});
    CHECK(e12.value == gen(1) * gen(2));

    CHECK_THROWS_AS(gamma_from_factors<Rational>({}), slgamma::Error);
    CHECK_THROWS_AS(gamma_from_factors<Rational>({VectorElement<Rational>()}),
                    slgamma::ZeroVector);
}

TEST_CASE("gamma inverse and involutions") {
    slgamma::testing::Rng rng;
    for (int t = 0; t < 30; ++t) {
        std::vector<VectorElement<Rational>> fs;
        const long k = rng.integer(1, 3);
        for (long i = 0; i < k; ++i) fs.push_back(slgamma::testing::random_nonzero_vector(rng));
        const auto u = slgamma::gamma_from_factors(fs);

        const auto inv = slgamma::gamma_inverse(u);
        CHECK(u.value * inv.value == C::one());
        CHECK(inv.consistent(0.0));

        const auto st = slgamma::gamma_star(u);
        CHECK(st.value == star(u.value));
        CHECK(st.consistent(0.0));

        const auto pr = slgamma::gamma_prime(u);
        CHECK(pr.value == prime(u.value));
        CHECK(pr.consistent(0.0));

        const auto ng = slgamma::gamma_negate(u);
        CHECK(ng.value == -u.value);
        CHECK(ng.consistent(0.0));

        // |uv|^2 = |u|^2 |v|^2 within Gamma
        const auto v = slgamma::gamma_from_factors<Rational>(
            {slgamma::testing::random_nonzero_vector(rng)});
        CHECK((u.value * v.value).norm_sq() == u.value.norm_sq() * v.value.norm_sq());
    }
}

TEST_CASE("ring laws on random elements") {
    slgamma::testing::Rng rng;
    for (int t = 0; t < 100; ++t) {
        const C a = slgamma::testing::random_element(rng);
        const C b = slgamma::testing::random_element(rng);
        const C c = slgamma::testing::random_element(rng);

        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a + b) * c == a * c + b * c);
        CHECK(a * C::one() == a);
        CHECK(C::one() * a == a);
        CHECK(a - a == C::zero());
    }
}

TEST_CASE("involution laws on random elements") {
    slgamma::testing::Rng rng;
    for (int t = 0; t < 100; ++t) {
        const C a = slgamma::testing::random_element(rng);
        const C b = slgamma::testing::random_element(rng);

        CHECK(star(star(a)) == a);
        CHECK(prime(prime(a)) == a);
        CHECK(bar(bar(a)) == a);
        CHECK(star(a * b) == star(b) * star(a));
        CHECK(prime(a * b) == prime(a) * prime(b));
        CHECK(bar(a * b) == bar(b) * bar(a));
        CHECK(bar(a) == prime(star(a)));
        CHECK(star(a + b) == star(a) + star(b));
    }
}

TEST_CASE("vectors are star-fixed and bar matches prime on them") {
    slgamma::testing::Rng rng;
    for (int t = 0; t < 50; ++t) {
        const C x = slgamma::testing::random_vector_value(rng);
        CHECK(star(x) == x);
        CHECK(bar(x) == prime(x));
    }
}

TEST_CASE("clifford_eq modes") {
    using slgamma::clifford_eq;
    CHECK(clifford_eq(scalar(1, 3), scalar(1, 3), 0.0));
    CHECK_FALSE(clifford_eq(scalar(1, 3), scalar(1, 3) + gen(9).scaled(Rational(1, 1000000)), 1e-3));

    const CliffordNumber<double> fa(1.0);
    const CliffordNumber<double> fb(1.0 + 1e-14);
    CHECK(clifford_eq(fa, fb, 1e-12));
    CHECK_FALSE(clifford_eq(fa, CliffordNumber<double>(1.001), 1e-12));
}
