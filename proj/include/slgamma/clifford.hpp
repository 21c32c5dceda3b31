#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "slgamma/blade.hpp"
#include "slgamma/errors.hpp"
#include "slgamma/scalar.hpp"

namespace slgamma {

/// Finitely supported element a = sum_I a_I I of the Clifford algebra on
/// countably many generators, stored as blade/coefficient terms sorted in
/// canonical blade order with no explicit zeros. Immutable in spirit: all
/// operations return new values.
template <class S>
class CliffordNumber {
  public:
    using Term = std::pair<Blade, S>;

    CliffordNumber() = default;  // zero
    explicit CliffordNumber(const S& scalar) {
        if (!scalar_traits<S>::is_zero(scalar)) {
            terms_.emplace_back(Blade::scalar(), scalar);
        }
    }

    static CliffordNumber zero() { return CliffordNumber(); }
    static CliffordNumber one() {
        return CliffordNumber(scalar_traits<S>::from_int(1));
    }
    static CliffordNumber generator(std::uint32_t k) {
        CliffordNumber x;
        x.terms_.emplace_back(Blade::generator(k), scalar_traits<S>::from_int(1));
        return x;
    }
    static CliffordNumber term(const Blade& blade, const S& coeff) {
        CliffordNumber x;
        if (!scalar_traits<S>::is_zero(coeff)) x.terms_.emplace_back(blade, coeff);
        return x;
    }
    /// Builds from arbitrary terms: sorts, merges duplicates, drops zeros.
    static CliffordNumber from_terms(std::vector<Term> terms) {
        CliffordNumber x;
        x.terms_ = std::move(terms);
        x.normalize();
        return x;
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Coefficient of the empty blade.
    S real_part() const {
        if (!terms_.empty() && terms_.front().first.is_scalar()) {
            return terms_.front().second;
        }
        return scalar_traits<S>::from_int(0);
    }
    S coefficient(const Blade& blade) const {
        auto it = std::lower_bound(
            terms_.begin(), terms_.end(), blade,
            [](const Term& t, const Blade& b) { return t.first < b; });
        if (it != terms_.end() && it->first == blade) return it->second;
        return scalar_traits<S>::from_int(0);
    }

    bool is_real() const {
        return terms_.empty() ||
               (terms_.size() == 1 && terms_.front().first.is_scalar());
    }
    /// Support contains only blades of grade <= 1.
    bool is_vector() const {
        return terms_.empty() || terms_.back().first.grade() <= 1;
    }
    std::uint32_t max_generator() const {
        std::uint32_t m = 0;
        for (const auto& [blade, coeff] : terms_) m = std::max(m, blade.max_index());
        return m;
    }

    /// Sum of squared coefficients, exact in the active scalar mode.
    S norm_sq() const {
        S acc = scalar_traits<S>::from_int(0);
        for (const auto& [blade, coeff] : terms_) acc += coeff * coeff;
        return acc;
    }
    /// Euclidean norm; float-valued even in rational mode.
    double norm() const { return std::sqrt(scalar_traits<S>::to_double(norm_sq())); }

    CliffordNumber operator-() const {
        CliffordNumber r = *this;
        for (auto& [blade, coeff] : r.terms_) coeff = -coeff;
        return r;
    }

    friend CliffordNumber operator+(const CliffordNumber& a, const CliffordNumber& b) {
        // merge of two canonically sorted term lists
        CliffordNumber r;
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() && j < b.terms_.size()) {
            const auto cmp = a.terms_[i].first <=> b.terms_[j].first;
            if (cmp < 0) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (cmp > 0) {
                r.terms_.push_back(b.terms_[j++]);
            } else {
                S c = a.terms_[i].second + b.terms_[j].second;
                if (!scalar_traits<S>::is_zero(c)) {
                    r.terms_.emplace_back(a.terms_[i].first, std::move(c));
                }
                ++i;
                ++j;
            }
        }
        while (i < a.terms_.size()) r.terms_.push_back(a.terms_[i++]);
        while (j < b.terms_.size()) r.terms_.push_back(b.terms_[j++]);
        return r;
    }
    friend CliffordNumber operator-(const CliffordNumber& a, const CliffordNumber& b) {
        return a + (-b);
    }

    friend CliffordNumber operator*(const CliffordNumber& a, const CliffordNumber& b) {
        if (a.is_zero() || b.is_zero()) return CliffordNumber();
        if (a.is_real()) return b.scaled(a.real_part());
        if (b.is_real()) return a.scaled(b.real_part());
        std::vector<Term> acc;
        acc.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& [ba, ca] : a.terms_) {
            for (const auto& [bb, cb] : b.terms_) {
                auto [sign, blade] = Blade::product(ba, bb);
                S c = ca * cb;
                if (sign < 0) c = -c;
                acc.emplace_back(std::move(blade), std::move(c));
            }
        }
        return from_terms(std::move(acc));
    }

    CliffordNumber scaled(const S& s) const {
        if (scalar_traits<S>::is_zero(s)) return CliffordNumber();
        CliffordNumber r = *this;
        for (auto& [blade, coeff] : r.terms_) coeff = coeff * s;
        r.drop_zeros();  // float underflow can produce exact zeros
        return r;
    }

    friend bool operator==(const CliffordNumber& a, const CliffordNumber& b) = default;

  private:
    void normalize() {
        std::sort(terms_.begin(), terms_.end(),
                  [](const Term& x, const Term& y) { return x.first < y.first; });
        std::size_t out = 0;
        for (std::size_t i = 0; i < terms_.size();) {
            Blade blade = terms_[i].first;
            S c = std::move(terms_[i].second);
            ++i;
            while (i < terms_.size() && terms_[i].first == blade) {
                c += terms_[i].second;
                ++i;
            }
            if (!scalar_traits<S>::is_zero(c)) {
                terms_[out++] = Term(std::move(blade), std::move(c));
            }
        }
        terms_.resize(out);
    }
    void drop_zeros() {
        std::erase_if(terms_, [](const Term& t) {
            return scalar_traits<S>::is_zero(t.second);
        });
    }

    std::vector<Term> terms_;
};

/// Reversal anti-automorphism: i_{k1}...i_{kp} -> i_{kp}...i_{k1}.
template <class S>
CliffordNumber<S> star(const CliffordNumber<S>& a) {
    std::vector<typename CliffordNumber<S>::Term> ts = a.terms();
    for (auto& [blade, coeff] : ts) {
        if (blade.reversal_sign() < 0) coeff = -coeff;
    }
    return CliffordNumber<S>::from_terms(std::move(ts));
}

/// Grade involution: i_k -> -i_k.
template <class S>
CliffordNumber<S> prime(const CliffordNumber<S>& a) {
    std::vector<typename CliffordNumber<S>::Term> ts = a.terms();
    for (auto& [blade, coeff] : ts) {
        if (blade.grade_involution_sign() < 0) coeff = -coeff;
    }
    return CliffordNumber<S>::from_terms(std::move(ts));
}

/// Conjugation: bar(a) = prime(star(a)) = star(prime(a)).
template <class S>
CliffordNumber<S> bar(const CliffordNumber<S>& a) {
    std::vector<typename CliffordNumber<S>::Term> ts = a.terms();
    for (auto& [blade, coeff] : ts) {
        if (blade.conjugation_sign() < 0) coeff = -coeff;
    }
    return CliffordNumber<S>::from_terms(std::move(ts));
}

/// Equality up to tolerance: exact for rationals, per-coefficient absolute
/// tolerance for floats.
template <class S>
bool clifford_eq(const CliffordNumber<S>& a, const CliffordNumber<S>& b, double tol) {
    if constexpr (scalar_traits<S>::exact) {
        (void)tol;
        return a == b;
    } else {
        const CliffordNumber<S> d = a - b;
        for (const auto& [blade, coeff] : d.terms()) {
            if (std::fabs(coeff) > tol) return false;
        }
        return true;
    }
}

/// Norm of the non-scalar part; 0 for real elements.
template <class S>
double imaginary_norm(const CliffordNumber<S>& a) {
    S acc = scalar_traits<S>::from_int(0);
    for (const auto& [blade, coeff] : a.terms()) {
        if (!blade.is_scalar()) acc += coeff * coeff;
    }
    return std::sqrt(scalar_traits<S>::to_double(acc));
}

/// Grade <= 1 part of an element.
template <class S>
CliffordNumber<S> vector_part(const CliffordNumber<S>& a) {
    std::vector<typename CliffordNumber<S>::Term> ts;
    for (const auto& [blade, coeff] : a.terms()) {
        if (blade.grade() <= 1) ts.emplace_back(blade, coeff);
    }
    return CliffordNumber<S>::from_terms(std::move(ts));
}

/// Norm of the grade >= 2 residue; 0 exactly when the element is a vector.
template <class S>
double nonvector_norm(const CliffordNumber<S>& a) {
    S acc = scalar_traits<S>::from_int(0);
    for (const auto& [blade, coeff] : a.terms()) {
        if (blade.grade() > 1) acc += coeff * coeff;
    }
    return std::sqrt(scalar_traits<S>::to_double(acc));
}

/// True when the grade >= 2 residue vanishes (exact mode) or stays within
/// tolerance (float mode).
template <class S>
bool is_vector_within(const CliffordNumber<S>& a, double tol) {
    if constexpr (scalar_traits<S>::exact) {
        (void)tol;
        return a.is_vector();
    } else {
        return nonvector_norm(a) <= tol;
    }
}

template <class S>
bool is_real_within(const CliffordNumber<S>& a, double tol) {
    if constexpr (scalar_traits<S>::exact) {
        (void)tol;
        return a.is_real();
    } else {
        return imaginary_norm(a) <= tol;
    }
}

/// Element of l2: grade <= 1 support, checked at construction.
template <class S>
class VectorElement {
  public:
    VectorElement() = default;  // zero vector
    explicit VectorElement(CliffordNumber<S> value) : v_(std::move(value)) {
        if (!v_.is_vector()) {
            throw NotAVector("element has support of grade > 1");
        }
    }
    explicit VectorElement(const S& scalar) : v_(scalar) {}

    const CliffordNumber<S>& value() const { return v_; }
    bool is_zero() const { return v_.is_zero(); }
    S norm_sq() const { return v_.norm_sq(); }

    friend bool operator==(const VectorElement& a, const VectorElement& b) = default;

  private:
    CliffordNumber<S> v_;
};

/// x^{-1} = bar(x) / |x|^2; two-sided inverse for nonzero vectors.
template <class S>
VectorElement<S> vector_inverse(const VectorElement<S>& x) {
    const S n = x.norm_sq();
    if (scalar_traits<S>::is_zero(n)) throw ZeroVector("inverse of zero vector");
    const S one = scalar_traits<S>::from_int(1);
    return VectorElement<S>(bar(x.value()).scaled(one / n));
}

/// Clifford-group element carried together with a factorization into nonzero
/// vectors; membership in Gamma is certified by the factorization, never
/// inferred from the value alone.
template <class S>
struct GammaElement {
    CliffordNumber<S> value;
    std::vector<VectorElement<S>> factors;

    /// Recomputes the ordered product of the factors and compares.
    bool consistent(double tol) const {
        CliffordNumber<S> p = CliffordNumber<S>::one();
        for (const auto& f : factors) p = p * f.value();
        return clifford_eq(p, value, tol);
    }
};

template <class S>
GammaElement<S> gamma_from_factors(std::vector<VectorElement<S>> factors) {
    if (factors.empty()) throw Error("Gamma element needs at least one factor");
    CliffordNumber<S> p = CliffordNumber<S>::one();
    for (const auto& f : factors) {
        if (scalar_traits<S>::is_zero(f.norm_sq())) {
            throw ZeroVector("Gamma factor with zero norm");
        }
        p = p * f.value();
    }
    return GammaElement<S>{std::move(p), std::move(factors)};
}

template <class S>
GammaElement<S> gamma_scalar(const S& s) {
    return gamma_from_factors<S>({VectorElement<S>(s)});
}

/// Inverse via reversed factor inverses: (v1...vk)^{-1} = vk^{-1}...v1^{-1}.
template <class S>
GammaElement<S> gamma_inverse(const GammaElement<S>& g) {
    std::vector<VectorElement<S>> inv;
    inv.reserve(g.factors.size());
    for (auto it = g.factors.rbegin(); it != g.factors.rend(); ++it) {
        inv.push_back(vector_inverse(*it));
    }
    return gamma_from_factors(std::move(inv));
}

namespace detail {

/// Applies an involution to every factor of a Gamma evidence chain. star is
/// the identity on vectors but reverses products, so callers reverse order
/// themselves where needed.
template <class S, class F>
std::vector<VectorElement<S>> map_factors(const std::vector<VectorElement<S>>& fs, F&& f) {
    std::vector<VectorElement<S>> out;
    out.reserve(fs.size());
    for (const auto& v : fs) out.push_back(VectorElement<S>(f(v.value())));
    return out;
}

}  // namespace detail

/// star on Gamma: reversed factor order (each vector is star-fixed).
template <class S>
GammaElement<S> gamma_star(const GammaElement<S>& g) {
    std::vector<VectorElement<S>> fs(g.factors.rbegin(), g.factors.rend());
    return GammaElement<S>{star(g.value), std::move(fs)};
}

/// prime on Gamma: factorwise (prime is an automorphism, vectors stay vectors).
template <class S>
GammaElement<S> gamma_prime(const GammaElement<S>& g) {
    return GammaElement<S>{prime(g.value),
                           detail::map_factors<S>(g.factors, [](const auto& v) {
                               return prime(v);
                           })};
}

template <class S>
GammaElement<S> gamma_negate(const GammaElement<S>& g) {
    std::vector<VectorElement<S>> fs = g.factors;
    fs.insert(fs.begin(), VectorElement<S>(scalar_traits<S>::from_int(-1)));
    return GammaElement<S>{-g.value, std::move(fs)};
}

}  // namespace slgamma
