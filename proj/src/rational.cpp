#include "partsched/rational.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace partsched {

std::string to_string(const Rational& value)
{
    if (value.denominator() == 1) return std::to_string(value.numerator());
    return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole)
{
    std::int64_t out = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (text.empty() || ec != std::errc{} || ptr != last)
        throw std::invalid_argument("not a rational number: '" + std::string(whole) + "'");
    return out;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text, text));
    const auto num = parse_int(text.substr(0, slash), text);
    const auto den = parse_int(text.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

double to_double(const Rational& value)
{
    return static_cast<double>(value.numerator()) / static_cast<double>(value.denominator());
}

bool is_integral(const Rational& value)
{
    return value.denominator() == 1;
}

std::int64_t checked_lcm(std::int64_t a, std::int64_t b)
{
    const auto g = std::gcd(a, b);
    const auto q = a / g;
    if (q != 0 && b > std::numeric_limits<std::int64_t>::max() / q)
        throw std::overflow_error("common denominator overflows 64 bits");
    return q * b;
}

const Rational& ExtendedTime::value() const
{
    if (!value_) throw std::logic_error("value() of +infinity");
    return *value_;
}

bool operator<(const ExtendedTime& a, const ExtendedTime& b)
{
    if (a.is_infinite()) return false;
    if (b.is_infinite()) return true;
    return *a.value_ < *b.value_;
}

ExtendedTime min(const ExtendedTime& a, const ExtendedTime& b)
{
    return b < a ? b : a;
}

std::string to_string(const ExtendedTime& value)
{
    return value.is_infinite() ? std::string("inf") : to_string(value.value());
}

} // namespace partsched
