#include "mathworld/rational.hpp"

#include <cctype>
#include <limits>

#include "mathworld/errors.hpp"

namespace mathworld {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t narrow(__int128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() ||
        v < std::numeric_limits<std::int64_t>::min()) {
        throw ArithmeticError("rational overflow");
    }
    return static_cast<std::int64_t>(v);
}

}  // namespace

Rational Rational::reduce(__int128 n, __int128 d) {
    if (d == 0) throw ArithmeticError("division by zero");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    __int128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    return raw(narrow(n), narrow(d));
}

Rational::Rational(std::int64_t n, std::int64_t d) { *this = reduce(n, d); }

Rational operator+(const Rational& a, const Rational& b) {
    return Rational::reduce(static_cast<__int128>(a.num_) * b.den_ +
                                static_cast<__int128>(b.num_) * a.den_,
                            static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
    return Rational::reduce(static_cast<__int128>(a.num_) * b.num_,
                            static_cast<__int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw ArithmeticError("division by zero");
    return Rational::reduce(static_cast<__int128>(a.num_) * b.den_,
                            static_cast<__int128>(a.den_) * b.num_);
}

bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ <
           static_cast<__int128>(b.num_) * a.den_;
}

bool Rational::looks_numeric(std::string_view text) {
    if (text.empty()) return false;
    std::size_t i = 0;
    if (text[i] == '-' || text[i] == '+') ++i;
    bool digits = false, dot = false;
    for (; i < text.size(); ++i) {
        if (std::isdigit(static_cast<unsigned char>(text[i]))) {
            digits = true;
        } else if (text[i] == '.' && !dot) {
            dot = true;
        } else {
            return false;
        }
    }
    return digits;
}

bool Rational::looks_rational(std::string_view text) {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        return looks_numeric(text.substr(0, slash)) && looks_numeric(text.substr(slash + 1));
    }
    return looks_numeric(text);
}

Rational Rational::parse(std::string_view text) {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Rational n = parse(text.substr(0, slash));
        Rational d = parse(text.substr(slash + 1));
        return n / d;
    }
    if (!looks_numeric(text)) {
        throw ValidationError("not a number: '" + std::string(text) + "'");
    }
    bool negative = false;
    std::size_t i = 0;
    if (text[i] == '-' || text[i] == '+') {
        negative = text[i] == '-';
        ++i;
    }
    __int128 num = 0;
    __int128 den = 1;
    bool frac = false;
    for (; i < text.size(); ++i) {
        if (text[i] == '.') {
            frac = true;
            continue;
        }
        num = num * 10 + (text[i] - '0');
        if (frac) den *= 10;
        if (num > std::numeric_limits<std::int64_t>::max() ||
            den > std::numeric_limits<std::int64_t>::max()) {
            throw ArithmeticError("number literal too large: '" + std::string(text) + "'");
        }
    }
    return reduce(negative ? -num : num, den);
}

std::string Rational::to_string() const {
    if (den_ == 1) return std::to_string(num_);
    // Try to express den as 2^a * 5^b; if so we have a finite decimal.
    std::int64_t d = den_;
    int twos = 0, fives = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++twos;
    }
    while (d % 5 == 0) {
        d /= 5;
        ++fives;
    }
    if (d != 1) {
        return std::to_string(num_) + "/" + std::to_string(den_);
    }
    int k = twos > fives ? twos : fives;
    __int128 scaled = static_cast<__int128>(num_ < 0 ? -num_ : num_);
    for (int i = 0; i < k; ++i) scaled *= 10;
    scaled /= den_;
    std::string digits;
    if (scaled == 0) digits = "0";
    while (scaled > 0) {
        digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(scaled % 10)));
        scaled /= 10;
    }
    while (static_cast<int>(digits.size()) <= k) digits.insert(digits.begin(), '0');
    digits.insert(digits.size() - k, ".");
    while (digits.back() == '0') digits.pop_back();
    if (digits.back() == '.') digits.pop_back();
    return (num_ < 0 ? "-" : "") + digits;
}

double Rational::to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
}

}  // namespace mathworld
