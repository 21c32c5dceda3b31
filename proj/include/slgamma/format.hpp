#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "slgamma/clifford.hpp"
#include "slgamma/errors.hpp"
#include "slgamma/scalar.hpp"

namespace slgamma {

inline std::string to_string(const Blade& b) {
    if (b.is_scalar()) return "1";
    std::string s;
    for (std::uint32_t k : b.indices()) {
        if (!s.empty()) s += '.';
        s += 'e';
        s += std::to_string(k);
    }
    return s;
}

/// Canonical interchange form: terms in blade order joined by " + " / " - ",
/// each `coeff` (scalar blade) or `coeff*e<k1>.e<k2>...`. Zero prints as "0".
template <class S>
std::string to_string(const CliffordNumber<S>& a) {
    if (a.is_zero()) return "0";
    const S zero = scalar_traits<S>::from_int(0);
    std::string out;
    bool first = true;
    for (const auto& [blade, coeff] : a.terms()) {
        const bool neg = coeff < zero;
        if (first) {
            if (neg) out += '-';
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        out += scalar_traits<S>::to_string(neg ? -coeff : coeff);
        if (!blade.is_scalar()) {
            out += '*';
            out += to_string(blade);
        }
    }
    return out;
}

namespace detail {

/// Recursive-descent reader for the interchange grammar with 1-based
/// line/column tracking. Strict: coefficients are mandatory, blades need the
/// '*' separator, blade indices must be ascending and start at e1.
template <class S>
class CliffordReader {
  public:
    explicit CliffordReader(std::string_view text) : text_(text) {}

    CliffordNumber<S> read() {
        using Term = typename CliffordNumber<S>::Term;
        std::vector<Term> terms;
        skip_ws();
        bool neg = eat_sign();
        skip_ws();
        terms.push_back(read_term(neg));
        for (;;) {
            skip_ws();
            if (at_end()) break;
            const char c = peek();
            if (c != '+' && c != '-') {
                fail("expected '+', '-' or end of input");
            }
            advance();
            skip_ws();
            terms.push_back(read_term(c == '-'));
        }
        return CliffordNumber<S>::from_terms(std::move(terms));
    }

  private:
    typename CliffordNumber<S>::Term read_term(bool negative) {
        S coeff = read_coefficient();
        if (negative) coeff = -coeff;
        Blade blade = Blade::scalar();
        if (!at_end() && peek() == '*') {
            advance();
            blade = read_blade();
        }
        return {std::move(blade), std::move(coeff)};
    }

    S read_coefficient() {
        if (at_end() || !is_digit(peek())) fail("expected coefficient");
        const std::size_t start = pos_;
        const std::size_t start_line = line_, start_col = col_;
        eat_digits();
        if constexpr (scalar_traits<S>::exact) {
            if (!at_end() && peek() == '/') {
                advance();
                if (at_end() || !is_digit(peek())) {
                    fail("expected digits after '/'");
                }
                eat_digits();
            }
            if (!at_end() && (peek() == '.' || peek() == 'e' || peek() == 'E')) {
                // reject float syntax early with a targeted message; a bare
                // 'e' could still start a misplaced blade, caught below
                if (peek() == '.' || exponent_follows()) {
                    fail("float literal not allowed in rational mode");
                }
            }
        } else {
            if (!at_end() && peek() == '.') {
                advance();
                if (at_end() || !is_digit(peek())) {
                    fail("expected digits after decimal point");
                }
                eat_digits();
            }
            if (!at_end() && (peek() == 'e' || peek() == 'E') && exponent_follows()) {
                advance();  // 'e'
                if (peek() == '+' || peek() == '-') advance();
                eat_digits();
            }
        }
        auto parsed = scalar_traits<S>::parse(text_.substr(start, pos_ - start));
        if (!parsed) {
            throw ParseError("invalid coefficient", start_line, start_col);
        }
        return *parsed;
    }

    /// True when the 'e'/'E' at the cursor is a float exponent (followed by
    /// optional sign and a digit) rather than a stray blade marker.
    bool exponent_follows() const {
        std::size_t p = pos_ + 1;
        if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
        return p < text_.size() && is_digit(text_[p]);
    }

    Blade read_blade() {
        const std::size_t start_line = line_, start_col = col_;
        std::vector<std::uint32_t> idx;
        idx.push_back(read_generator());
        while (!at_end() && peek() == '.') {
            advance();
            idx.push_back(read_generator());
        }
        try {
            return Blade(std::move(idx));
        } catch (const Error& e) {
            throw ParseError(e.what(), start_line, start_col);
        }
    }

    std::uint32_t read_generator() {
        if (at_end() || peek() != 'e') fail("expected blade 'e<k>'");
        advance();
        if (at_end() || !is_digit(peek())) {
            fail("expected generator index after 'e'");
        }
        const std::size_t start = pos_;
        const std::size_t start_line = line_, start_col = col_;
        eat_digits();
        std::uint32_t k = 0;
        const char* first = text_.data() + start;
        const char* last = text_.data() + pos_;
        auto [ptr, ec] = std::from_chars(first, last, k);
        if (ec != std::errc() || ptr != last) {
            throw ParseError("generator index out of range", start_line, start_col);
        }
        if (k == 0) {
            throw ParseError("generator indices start at e1", start_line, start_col);
        }
        return k;
    }

    static bool is_digit(char c) { return c >= '0' && c <= '9'; }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }
    void eat_digits() {
        while (!at_end() && is_digit(peek())) advance();
    }
    void skip_ws() {
        while (!at_end()) {
            const char c = peek();
            if (c != ' ' && c != '\t' && c != '\r' && c != '\n') break;
            advance();
        }
    }
    bool eat_sign() {
        if (!at_end() && (peek() == '+' || peek() == '-')) {
            const bool neg = peek() == '-';
            advance();
            return neg;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_, col_);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

}  // namespace detail

/// Parses the canonical interchange grammar; throws ParseError with 1-based
/// position on any deviation. Non-canonical but unambiguous input (duplicate
/// blades, unsorted terms) is normalized, not rejected.
template <class S>
CliffordNumber<S> parse_clifford(std::string_view text) {
    return detail::CliffordReader<S>(text).read();
}

/// Parses a vector (grade <= 1) element; grade overflow is a ParseError.
template <class S>
VectorElement<S> parse_vector(std::string_view text) {
    CliffordNumber<S> a = parse_clifford<S>(text);
    if (!a.is_vector()) {
        throw ParseError("expected a vector (grade <= 1 terms only)", 1, 1);
    }
    return VectorElement<S>(std::move(a));
}

}  // namespace slgamma
