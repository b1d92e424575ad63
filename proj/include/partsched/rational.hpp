#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

// Boost 1.74's mixed rational/integer operator== recurses forever under the
// C++20 rewritten-comparison rules. These exact-match overloads take priority.
namespace boost {
#define PARTSCHED_RATIONAL_EQ(INT)                                                                    \
    inline bool operator==(const rational<std::int64_t>& a, INT b) { return a == rational<std::int64_t>(b); } \
    inline bool operator==(INT b, const rational<std::int64_t>& a) { return a == rational<std::int64_t>(b); }
PARTSCHED_RATIONAL_EQ(int)
PARTSCHED_RATIONAL_EQ(long)
PARTSCHED_RATIONAL_EQ(long long)
#undef PARTSCHED_RATIONAL_EQ
} // namespace boost

namespace partsched {

// All times, weights and objective values are exact.
using Rational = boost::rational<std::int64_t>;

/// "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rational& value);

/// Accepts "7", "-3", "1/2". Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

double to_double(const Rational& value);

bool is_integral(const Rational& value);

/// Least common multiple of two positive denominators; throws std::overflow_error.
std::int64_t checked_lcm(std::int64_t a, std::int64_t b);

/// A time that may be +infinity. Used where a minimum over an empty set is
/// meaningful (slack values).
class ExtendedTime {
public:
    ExtendedTime() = default; // +infinity
    ExtendedTime(Rational value) : value_(value) {}

    static ExtendedTime infinity() { return ExtendedTime{}; }

    bool is_infinite() const { return !value_.has_value(); }
    const Rational& value() const;

    friend bool operator==(const ExtendedTime& a, const ExtendedTime& b) { return a.value_ == b.value_; }
    friend bool operator<(const ExtendedTime& a, const ExtendedTime& b);

private:
    std::optional<Rational> value_;
};

ExtendedTime min(const ExtendedTime& a, const ExtendedTime& b);

std::string to_string(const ExtendedTime& value);

} // namespace partsched
