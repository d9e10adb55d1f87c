// Exact rational quantities used throughout the analyzer.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace ivnet {

using Rational = mpq_class;

/// Bits of data (burst sizes, storage).
using Bits = Rational;
/// Durations and timestamps.
using Seconds = Rational;
/// Sustained rates in bits per second.
using BitsPerSecond = Rational;

/// Builds num/den in canonical form.
Rational make_rational(std::int64_t num, std::int64_t den = 1);

/// Parses "12", "-3.25", "1e-6", "2.5e9" or "7/3" exactly.
/// Throws std::invalid_argument on malformed text.
Rational parse_rational(std::string_view text);

/// "p/q" or "p" when the denominator is one.
std::string to_exact_string(const Rational& value);

double to_double(const Rational& value);

Rational floor_to_integer(const Rational& value);
Rational ceil_to_integer(const Rational& value);

/// Decimal rendering rounded half-up at `digits` fractional digits.
std::string to_decimal(const Rational& value, int digits);

/// Decimal rendering with `sig` significant figures, trailing zeros trimmed.
std::string to_significant(const Rational& value, int sig);

/// "21.6 kb", "5120 b" style rendering; three significant figures above 1 kb.
std::string format_bits(const Rational& bits);

/// "13 us", "0.48 ms" style rendering with three significant figures.
std::string format_seconds(const Rational& seconds);

}  // namespace ivnet
