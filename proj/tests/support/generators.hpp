#pragma once

// Seeded random inputs for property tests. The seed comes from
// SLGAMMA_TEST_SEED when set, so failures replay deterministically.

#include <cstdlib>
#include <cstdint>
#include <random>
#include <vector>

#include "slgamma/clifford.hpp"
#include "slgamma/moebius.hpp"
#include "slgamma/scalar.hpp"

namespace slgamma::testing {

inline std::uint64_t test_seed() {
    if (const char* env = std::getenv("SLGAMMA_TEST_SEED")) {
        char* end = nullptr;
        const std::uint64_t v = std::strtoull(env, &end, 10);
        if (end != env) return v;
    }
    return 0x5106a77a5eedull;
}

struct Rng {
    std::mt19937_64 eng{test_seed()};

    long integer(long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(eng);
    }
    std::uint32_t index(std::uint32_t lo, std::uint32_t hi) {
        return std::uniform_int_distribution<std::uint32_t>(lo, hi)(eng);
    }
    bool chance(double p) {
        return std::uniform_real_distribution<double>(0.0, 1.0)(eng) < p;
    }
};

inline Rational random_rational(Rng& rng, long max_abs = 9, long max_den = 9) {
    return Rational(rng.integer(-max_abs, max_abs), rng.integer(1, max_den));
}

inline Rational random_nonzero_rational(Rng& rng, long max_abs = 9, long max_den = 9) {
    for (;;) {
        Rational v = random_rational(rng, max_abs, max_den);
        if (!v.is_zero()) return v;
    }
}

/// Sparse element over generators 1..max_gen with at most max_terms terms.
inline CliffordNumber<Rational> random_element(Rng& rng, std::uint32_t max_gen = 6,
                                               int max_terms = 8) {
    std::vector<std::pair<Blade, Rational>> terms;
    const int count = int(rng.integer(0, max_terms));
    for (int t = 0; t < count; ++t) {
        std::vector<std::uint32_t> indices;
        for (std::uint32_t k = 1; k <= max_gen; ++k) {
            if (rng.chance(0.35)) indices.push_back(k);
        }
        terms.emplace_back(Blade(std::move(indices)), random_rational(rng));
    }
    return CliffordNumber<Rational>::from_terms(std::move(terms));
}

inline CliffordNumber<Rational> random_vector_value(Rng& rng, std::uint32_t max_gen = 6) {
    std::vector<std::pair<Blade, Rational>> terms;
    terms.emplace_back(Blade(), random_rational(rng));
    for (std::uint32_t k = 1; k <= max_gen; ++k) {
        if (rng.chance(0.4)) {
            terms.emplace_back(Blade({k}), random_rational(rng));
        }
    }
    return CliffordNumber<Rational>::from_terms(std::move(terms));
}

inline VectorElement<Rational> random_nonzero_vector(Rng& rng, std::uint32_t max_gen = 6) {
    for (;;) {
        CliffordNumber<Rational> v = random_vector_value(rng, max_gen);
        if (!v.is_zero()) return VectorElement<Rational>(std::move(v));
    }
}

/// Unit vector cos + sin * e_k from a Pythagorean pair: p < q gives
/// ((q^2 - p^2) + 2pq e_k) / (q^2 + p^2), whose norm is exactly 1.
inline VectorElement<Rational> random_unit_vector(Rng& rng, std::uint32_t max_gen = 6) {
    const long p = rng.integer(1, 5);
    const long q = p + rng.integer(1, 5);
    const Rational den(q * q + p * p);
    const std::uint32_t k = rng.index(1, max_gen);
    CliffordNumber<Rational> v(Rational(q * q - p * p) / den);
    v = v + CliffordNumber<Rational>::term(Blade({k}), Rational(2 * p * q) / den);
    return VectorElement<Rational>(std::move(v));
}

/// One certified block: a translation, a transvection, a real dilation, or
/// a diagonal twist diag(lambda, lambda') with |lambda| = 1. Every block is
/// fully certifiable.
inline CliffordMatrix<Rational> random_sl_block(Rng& rng, std::uint32_t max_gen = 6) {
    using M = CliffordMatrix<Rational>;
    using C = CliffordNumber<Rational>;
    const Rational one(1);
    switch (rng.integer(0, 3)) {
        case 0: {  // [[1, x], [0, 1]]
            VectorElement<Rational> x = random_nonzero_vector(rng, max_gen);
            M g = M::from_entries(C(one), x.value(), C(), C(one));
            g.ev_a = gamma_scalar(one);
            g.ev_b = gamma_from_factors<Rational>({x});
            g.ev_d = gamma_scalar(one);
            return g;
        }
        case 1: {  // [[1, 0], [y, 1]]
            VectorElement<Rational> y = random_nonzero_vector(rng, max_gen);
            M g = M::from_entries(C(one), C(), y.value(), C(one));
            g.ev_a = gamma_scalar(one);
            g.ev_c = gamma_from_factors<Rational>({y});
            g.ev_d = gamma_scalar(one);
            return g;
        }
        case 2: {  // diag(r, 1/r), r real, r != 0
            const Rational r = random_nonzero_rational(rng, 4, 3);
            M g = M::diagonal(r, one / r);
            g.ev_a = gamma_scalar(r);
            g.ev_d = gamma_scalar(one / r);
            return g;
        }
        default: {  // diag(lambda, lambda'), |lambda| = 1
            VectorElement<Rational> lambda = random_unit_vector(rng, max_gen);
            GammaElement<Rational> ev = gamma_from_factors<Rational>({lambda});
            M g = M::from_entries(lambda.value(), C(), C(), prime(lambda.value()));
            g.ev_a = ev;
            g.ev_d = gamma_prime(ev);
            return g;
        }
    }
}

/// Product of 1..max_blocks certified blocks; determinant is exactly 1 by
/// construction, entries are generally sums so evidence does not survive.
inline CliffordMatrix<Rational> random_sl(Rng& rng, int max_blocks = 4,
                                          std::uint32_t max_gen = 6) {
    CliffordMatrix<Rational> g = random_sl_block(rng, max_gen);
    const int blocks = int(rng.integer(1, max_blocks));
    for (int i = 1; i < blocks; ++i) {
        g = matmul(g, random_sl_block(rng, max_gen));
    }
    return g;
}

inline CliffordNumber<double> to_float_element(const CliffordNumber<Rational>& x) {
    std::vector<std::pair<Blade, double>> terms;
    for (const auto& [blade, coeff] : x.terms()) {
        terms.emplace_back(blade, coeff.to_double());
    }
    return CliffordNumber<double>::from_terms(std::move(terms));
}

inline CliffordMatrix<double> to_float_matrix(const CliffordMatrix<Rational>& g) {
    return CliffordMatrix<double>::from_entries(
        to_float_element(g.a), to_float_element(g.b),
        to_float_element(g.c), to_float_element(g.d));
}

}  // namespace slgamma::testing
