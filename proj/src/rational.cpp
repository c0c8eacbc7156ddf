#include "hcd/rational.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

namespace hcd {

namespace {

using u128 = unsigned __int128;

u128 magnitude(__int128 v) { return v < 0 ? u128(-(v + 1)) + 1 : u128(v); }

u128 gcd128(u128 a, u128 b)
{
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits_int64(__int128 v)
{
    return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

[[noreturn]] void bad_literal(std::string_view text)
{
    throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
}

std::int64_t parse_integer(std::string_view digits, std::string_view whole)
{
    if (digits.empty()) bad_literal(whole);
    __int128 acc = 0;
    for (char c : digits) {
        if (!is_digit(c)) bad_literal(whole);
        acc = acc * 10 + (c - '0');
        if (!fits_int64(acc)) throw RationalOverflow("rational literal out of range: " + std::string(whole));
    }
    return static_cast<std::int64_t>(acc);
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den)
{
    if (den == 0) throw std::domain_error("rational with zero denominator");
    *this = reduced(num, den);
}

Rational Rational::reduced(__int128 num, __int128 den)
{
    if (den == 0) throw std::domain_error("division by zero");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    u128 g = gcd128(magnitude(num), u128(den));
    if (g > 1) {
        num /= static_cast<__int128>(g);
        den /= static_cast<__int128>(g);
    }
    if (!fits_int64(num) || !fits_int64(den)) throw RationalOverflow("rational arithmetic overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
}

Rational Rational::parse(std::string_view text)
{
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    if (body.empty()) bad_literal(text);

    Rational value;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        std::int64_t n = parse_integer(body.substr(0, slash), text);
        std::int64_t d = parse_integer(body.substr(slash + 1), text);
        if (d == 0) bad_literal(text);
        value = Rational(n, d);
    } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = body.substr(0, dot);
        std::string_view frac_part = body.substr(dot + 1);
        if (int_part.empty() && frac_part.empty()) bad_literal(text);
        if (frac_part.size() > 18) throw RationalOverflow("too many decimal places: " + std::string(text));
        std::int64_t whole = int_part.empty() ? 0 : parse_integer(int_part, text);
        std::int64_t frac = frac_part.empty() ? 0 : parse_integer(frac_part, text);
        std::int64_t scale = 1;
        for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
        value = Rational(whole) + Rational(frac, scale);
    } else {
        value = Rational(parse_integer(body, text));
    }
    return negative ? -value : value;
}

std::string Rational::str() const
{
    if (den_ == 1) return std::to_string(num_);

    // Terminating iff the denominator has no prime factors besides 2 and 5.
    std::int64_t rest = den_;
    int twos = 0;
    int fives = 0;
    while (rest % 2 == 0) {
        rest /= 2;
        ++twos;
    }
    while (rest % 5 == 0) {
        rest /= 5;
        ++fives;
    }
    if (rest != 1) return std::to_string(num_) + "/" + std::to_string(den_);

    int places = std::max(twos, fives);
    if (places > 18) return std::to_string(num_) + "/" + std::to_string(den_);
    u128 pow10 = 1;
    for (int i = 0; i < places; ++i) pow10 *= 10;
    u128 scaled = magnitude(num_) * pow10 / u128(den_);

    std::string digits;
    if (scaled == 0) digits = "0";
    while (scaled > 0) {
        digits.insert(digits.begin(), char('0' + int(scaled % 10)));
        scaled /= 10;
    }
    if (digits.size() <= static_cast<std::size_t>(places)) {
        digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
    return num_ < 0 ? "-" + digits : digits;
}

Rational Rational::operator-() const { return reduced(-__int128(num_), den_); }

Rational& Rational::operator+=(const Rational& rhs)
{
    return *this = reduced(__int128(num_) * rhs.den_ + __int128(rhs.num_) * den_, __int128(den_) * rhs.den_);
}

Rational& Rational::operator-=(const Rational& rhs)
{
    return *this = reduced(__int128(num_) * rhs.den_ - __int128(rhs.num_) * den_, __int128(den_) * rhs.den_);
}

Rational& Rational::operator*=(const Rational& rhs)
{
    // Cross-reduce first so intermediate products stay small.
    u128 g1 = gcd128(magnitude(num_), u128(rhs.den_));
    u128 g2 = gcd128(magnitude(rhs.num_), u128(den_));
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    __int128 n = (__int128(num_) / __int128(g1)) * (__int128(rhs.num_) / __int128(g2));
    __int128 d = (__int128(den_) / __int128(g2)) * (__int128(rhs.den_) / __int128(g1));
    return *this = reduced(n, d);
}

Rational& Rational::operator/=(const Rational& rhs)
{
    if (rhs.num_ == 0) throw std::domain_error("division by zero");
    Rational inverse;
    inverse.num_ = rhs.num_ < 0 ? -rhs.den_ : rhs.den_;
    inverse.den_ = rhs.num_ < 0 ? -rhs.num_ : rhs.num_;
    if (rhs.num_ == std::numeric_limits<std::int64_t>::min()) {
        return *this = reduced(__int128(num_) * rhs.den_, __int128(den_) * rhs.num_);
    }
    return *this *= inverse;
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs)
{
    return __int128(lhs.num_) * rhs.den_ <=> __int128(rhs.num_) * lhs.den_;
}

Rational abs(const Rational& value) { return value < Rational(0) ? -value : value; }

std::ostream& operator<<(std::ostream& os, const Rational& value) { return os << value.str(); }

}  // namespace hcd
