#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

#include "slgamma/errors.hpp"

namespace slgamma {

/// Basis monomial i_{k1} i_{k2} ... i_{kp} named by its strictly increasing
/// index set; the empty set is the scalar blade.
class Blade {
  public:
    Blade() = default;
    Blade(std::initializer_list<std::uint32_t> indices)
        : idx_(indices) {
        check();
    }
    explicit Blade(std::vector<std::uint32_t> indices) : idx_(std::move(indices)) {
        check();
    }

    static Blade scalar() { return Blade(); }
    static Blade generator(std::uint32_t k) { return Blade({k}); }

    const std::vector<std::uint32_t>& indices() const { return idx_; }
    std::size_t grade() const { return idx_.size(); }
    bool is_scalar() const { return idx_.empty(); }
    std::uint32_t max_index() const { return idx_.empty() ? 0 : idx_.back(); }

    /// Sign of the reversal i_{kp}...i_{k1} relative to the blade: (-1)^(p(p-1)/2).
    int reversal_sign() const {
        return (grade() * (grade() - 1) / 2) % 2 == 0 ? 1 : -1;
    }
    /// Sign under i_k -> -i_k: (-1)^p.
    int grade_involution_sign() const { return grade() % 2 == 0 ? 1 : -1; }
    /// Composition of the two: (-1)^(p(p+1)/2).
    int conjugation_sign() const {
        return (grade() * (grade() + 1) / 2) % 2 == 0 ? 1 : -1;
    }

    /// Product of two blades under i_h i_k = -i_k i_h (h != k), i_k^2 = -1.
    ///
    /// The result blade is the symmetric difference of the index sets. The
    /// sign counts, per index k of `rhs`, the transpositions needed to move
    /// i_k left past the larger indices of `lhs` (indices annihilated by
    /// earlier rhs indices are all smaller than k, so they never contribute),
    /// plus one factor -1 per common index from i_k^2 = -1.
    static std::pair<int, Blade> product(const Blade& lhs, const Blade& rhs) {
        const auto& a = lhs.idx_;
        const auto& b = rhs.idx_;
        std::vector<std::uint32_t> out;
        out.reserve(a.size() + b.size());
        std::size_t swaps = 0;
        std::size_t common = 0;
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i] < b[j]) {
                out.push_back(a[i++]);
            } else if (a[i] > b[j]) {
                // b[j] crosses every remaining index of a
                swaps += a.size() - i;
                out.push_back(b[j++]);
            } else {
                swaps += a.size() - i - 1;  // crosses everything after its twin
                ++common;
                ++i;
                ++j;
            }
        }
        while (i < a.size()) out.push_back(a[i++]);
        while (j < b.size()) out.push_back(b[j++]);
        const int sign = ((swaps + common) % 2 == 0) ? 1 : -1;
        Blade r;
        r.idx_ = std::move(out);
        return {sign, std::move(r)};
    }

    friend bool operator==(const Blade& x, const Blade& y) = default;

    /// Canonical term order: by grade, then lexicographically by indices.
    friend std::strong_ordering operator<=>(const Blade& x, const Blade& y) {
        if (auto c = x.idx_.size() <=> y.idx_.size(); c != 0) return c;
        for (std::size_t i = 0; i < x.idx_.size(); ++i) {
            if (auto c = x.idx_[i] <=> y.idx_[i]; c != 0) return c;
        }
        return std::strong_ordering::equal;
    }

  private:
    void check() const {
        for (std::size_t i = 0; i < idx_.size(); ++i) {
            if (idx_[i] == 0) throw Error("blade indices start at 1");
            if (i > 0 && idx_[i - 1] >= idx_[i]) {
                throw Error("blade indices must be strictly increasing");
            }
        }
    }

    std::vector<std::uint32_t> idx_;
};

}  // namespace slgamma
