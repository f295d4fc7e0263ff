#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace mathworld {

// Exact rational arithmetic over 64-bit numerator/denominator.
// Every quantity, solver value and score in the toolkit routes through this
// type so that results compare exactly; overflow throws instead of wrapping.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num_(n) {}
    Rational(std::int64_t n, std::int64_t d);

    // Accepts "14", "-2.50" and the fraction fallback "5/6".
    static Rational parse(std::string_view text);
    // True if text is a plain decimal number (no fraction form).
    static bool looks_numeric(std::string_view text);
    // True if parse() would accept the text (decimal or fraction form).
    static bool looks_rational(std::string_view text);

    std::int64_t numerator() const { return num_; }
    std::int64_t denominator() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }
    bool is_positive() const { return num_ > 0; }

    // Finite decimal when the denominator divides a power of ten ("2.5"),
    // otherwise "n/d".
    std::string to_string() const;
    double to_double() const;

    Rational operator-() const { return raw(-num_, den_); }
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator<(const Rational& a, const Rational& b);
    friend bool operator<=(const Rational& a, const Rational& b) { return a == b || a < b; }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

private:
    static Rational raw(std::int64_t n, std::int64_t d) {
        Rational r;
        r.num_ = n;
        r.den_ = d;
        return r;
    }
    static Rational reduce(__int128 n, __int128 d);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace mathworld
