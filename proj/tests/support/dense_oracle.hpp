#pragma once

// Dense reference model for the Clifford algebra on generators e1..en,
// n <= 12. Blades are bitmasks (bit k-1 <-> generator k), coefficients live
// in a flat 2^n array. Product signs come from an explicit bubble sort of
// the concatenated generator word, which is a different algorithm from the
// merge count used by the library.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "slgamma/clifford.hpp"

namespace slgamma::testing {

struct DimensionMismatch : std::runtime_error {
    DimensionMismatch() : std::runtime_error("dense operands disagree on generator count") {}
};

struct SupportExceedsN : std::runtime_error {
    SupportExceedsN() : std::runtime_error("sparse support needs more generators than the dense model holds") {}
};

template <class S>
struct DenseElement {
    int n = 0;
    std::vector<S> coeffs;

    explicit DenseElement(int generators)
        : n(generators),
          coeffs(std::size_t(1) << generators, scalar_traits<S>::from_int(0)) {
        if (generators < 0 || generators > 12) {
            throw std::runtime_error("dense model supports 0..12 generators");
        }
    }
};

/// Sign of (blade a)(blade b) by brute force: write out the generator word,
/// bubble-sort it counting adjacent transpositions, then cancel equal
/// adjacent pairs at -1 each.
inline int dense_sign(std::uint32_t mask_a, std::uint32_t mask_b, int n) {
    std::vector<int> word;
    for (int k = 0; k < n; ++k) {
        if (mask_a >> k & 1u) word.push_back(k);
    }
    for (int k = 0; k < n; ++k) {
        if (mask_b >> k & 1u) word.push_back(k);
    }
    long swaps = 0;
    for (bool moved = true; moved;) {
        moved = false;
        for (std::size_t i = 0; i + 1 < word.size(); ++i) {
            if (word[i] > word[i + 1]) {
                std::swap(word[i], word[i + 1]);
                ++swaps;
                moved = true;
            }
        }
    }
    int sign = (swaps % 2 == 0) ? 1 : -1;
    for (std::size_t i = 0; i + 1 < word.size();) {
        if (word[i] == word[i + 1]) {
            sign = -sign;
            word.erase(word.begin() + long(i), word.begin() + long(i) + 2);
            if (i > 0) --i;
        } else {
            ++i;
        }
    }
    return sign;
}

template <class S>
DenseElement<S> dense_add(const DenseElement<S>& a, const DenseElement<S>& b) {
    if (a.n != b.n) throw DimensionMismatch();
    DenseElement<S> out(a.n);
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
        out.coeffs[i] = a.coeffs[i] + b.coeffs[i];
    }
    return out;
}

template <class S>
DenseElement<S> dense_mul(const DenseElement<S>& a, const DenseElement<S>& b) {
    if (a.n != b.n) throw DimensionMismatch();
    DenseElement<S> out(a.n);
    for (std::uint32_t i = 0; i < a.coeffs.size(); ++i) {
        if (scalar_traits<S>::is_zero(a.coeffs[i])) continue;
        for (std::uint32_t j = 0; j < b.coeffs.size(); ++j) {
            if (scalar_traits<S>::is_zero(b.coeffs[j])) continue;
            const S term = a.coeffs[i] * b.coeffs[j];
            const int sign = dense_sign(i, j, a.n);
            if (sign > 0) {
                out.coeffs[i ^ j] = out.coeffs[i ^ j] + term;
            } else {
                out.coeffs[i ^ j] = out.coeffs[i ^ j] - term;
            }
        }
    }
    return out;
}

template <class S, class SignOfGrade>
DenseElement<S> dense_involution(const DenseElement<S>& a, SignOfGrade sign_of_grade) {
    DenseElement<S> out(a.n);
    for (std::uint32_t i = 0; i < a.coeffs.size(); ++i) {
        const int p = std::popcount(i);
        out.coeffs[i] = sign_of_grade(p) > 0 ? a.coeffs[i] : -a.coeffs[i];
    }
    return out;
}

template <class S>
DenseElement<S> dense_star(const DenseElement<S>& a) {
    return dense_involution(a, [](int p) { return (p * (p - 1) / 2) % 2 == 0 ? 1 : -1; });
}

template <class S>
DenseElement<S> dense_prime(const DenseElement<S>& a) {
    return dense_involution(a, [](int p) { return p % 2 == 0 ? 1 : -1; });
}

template <class S>
DenseElement<S> dense_bar(const DenseElement<S>& a) {
    return dense_involution(a, [](int p) { return (p * (p + 1) / 2) % 2 == 0 ? 1 : -1; });
}

inline std::uint32_t blade_mask(const Blade& blade, int n) {
    std::uint32_t mask = 0;
    for (std::uint32_t k : blade.indices()) {
        if (int(k) > n) throw SupportExceedsN();
        mask |= 1u << (k - 1);
    }
    return mask;
}

inline Blade mask_blade(std::uint32_t mask) {
    std::vector<std::uint32_t> indices;
    for (int k = 0; k < 32; ++k) {
        if (mask >> k & 1u) indices.push_back(std::uint32_t(k) + 1);
    }
    return Blade(std::move(indices));
}

template <class S>
DenseElement<S> to_dense(const CliffordNumber<S>& x, int n) {
    DenseElement<S> out(n);
    for (const auto& [blade, coeff] : x.terms()) {
        out.coeffs[blade_mask(blade, n)] = coeff;
    }
    return out;
}

template <class S>
CliffordNumber<S> to_sparse(const DenseElement<S>& a) {
    std::vector<std::pair<Blade, S>> terms;
    for (std::uint32_t i = 0; i < a.coeffs.size(); ++i) {
        if (!scalar_traits<S>::is_zero(a.coeffs[i])) {
            terms.emplace_back(mask_blade(i), a.coeffs[i]);
        }
    }
    return CliffordNumber<S>::from_terms(std::move(terms));
}

}  // namespace slgamma::testing
