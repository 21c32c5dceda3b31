#pragma once

#include <charconv>
#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "slgamma/errors.hpp"

namespace slgamma {

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator (gmp keeps arithmetic results canonical; constructors
/// canonicalize explicitly).
class Rational {
  public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(long num, long den) : v_(num, den) {
        if (den == 0) throw Error("rational with zero denominator");
        v_.canonicalize();
    }
    /// Exact value of the double (every finite double is a dyadic rational).
    template <std::floating_point F>
    explicit Rational(F d) {
        if (!std::isfinite(d)) throw Error("rational from non-finite double");
        v_ = mpq_class(double(d));
        v_.canonicalize();
    }

    /// Parses "p", "-p" or "p/q". Returns nullopt on any malformed input.
    static std::optional<Rational> parse(std::string_view text) {
        if (!looks_like_rational(text)) return std::nullopt;
        if (!text.empty() && text.front() == '+') text.remove_prefix(1);  // gmp rejects '+'
        mpq_class v;
        if (v.set_str(std::string(text), 10) != 0) return std::nullopt;
        if (v.get_den() == 0) return std::nullopt;
        v.canonicalize();
        Rational r;
        r.v_ = std::move(v);
        return r;
    }

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }
    Rational abs() const {
        Rational r;
        r.v_ = ::abs(v_);
        return r;
    }
    double to_double() const { return v_.get_d(); }
    std::string str() const { return v_.get_str(); }
    std::string numerator_str() const { return v_.get_num().get_str(); }
    std::string denominator_str() const { return v_.get_den().get_str(); }

    /// Square root when the value is a perfect rational square. The stored
    /// form is canonical, so numerator and denominator are coprime and both
    /// must be perfect integer squares.
    std::optional<Rational> exact_sqrt() const {
        if (sign() < 0) return std::nullopt;
        const mpz_class& num = v_.get_num();
        const mpz_class& den = v_.get_den();
        if (!mpz_perfect_square_p(num.get_mpz_t()) ||
            !mpz_perfect_square_p(den.get_mpz_t())) {
            return std::nullopt;
        }
        Rational r;
        r.v_ = mpq_class(sqrt(num), sqrt(den));
        return r;
    }

    Rational operator-() const {
        Rational r;
        r.v_ = -v_;
        return r;
    }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw Error("rational division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return cmp(a.v_, b.v_) == 0;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.v_, b.v_);
        return c <=> 0;
    }

  private:
    static bool looks_like_rational(std::string_view s) {
        // [+-]digits[/digits], both digit runs nonempty; no whitespace.
        std::size_t i = 0;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        std::size_t digits = 0;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i, ++digits;
        if (digits == 0) return false;
        if (i == s.size()) return true;
        if (s[i] != '/') return false;
        ++i;
        digits = 0;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i, ++digits;
        return digits > 0 && i == s.size();
    }

    mpq_class v_;
};

/// Shortest round-trip decimal rendering of a double.
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

/// Per-scalar-mode hooks. A whole computation is instantiated over exactly
/// one scalar type, so modes can never mix.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
    static constexpr bool exact = true;
    static constexpr const char* mode_name = "rational";
    static Rational from_int(long n) { return Rational(n); }
    static Rational from_double(double v) { return Rational(v); }
    static bool is_zero(const Rational& v) { return v.is_zero(); }
    static Rational abs(const Rational& v) { return v.abs(); }
    static double to_double(const Rational& v) { return v.to_double(); }
    static std::string to_string(const Rational& v) { return v.str(); }
    static std::optional<Rational> parse(std::string_view s) {
        return Rational::parse(s);
    }
    static std::optional<Rational> exact_sqrt(const Rational& v) {
        return v.exact_sqrt();
    }
};

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static constexpr const char* mode_name = "float";
    static double from_int(long n) { return static_cast<double>(n); }
    static double from_double(double v) { return v; }
    static bool is_zero(double v) { return v == 0.0; }
    static double abs(double v) { return std::fabs(v); }
    static double to_double(double v) { return v; }
    static std::string to_string(double v) { return format_double(v); }
    static std::optional<double> parse(std::string_view s) {
        double v = 0;
        auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
            return std::nullopt;
        }
        if (!std::isfinite(v)) return std::nullopt;
        return v;
    }
    static std::optional<double> exact_sqrt(double v) {
        if (v < 0) return std::nullopt;
        return std::sqrt(v);
    }
};

/// Scalar equality: exact for rationals, absolute tolerance for floats.
template <class S>
bool scalar_eq(const S& a, const S& b, double tol) {
    if constexpr (scalar_traits<S>::exact) {
        (void)tol;
        return a == b;
    } else {
        return std::fabs(a - b) <= tol;
    }
}

}  // namespace slgamma
