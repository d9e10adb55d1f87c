#include "ivnet/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace ivnet {

namespace {

mpz_class pow10(unsigned exponent) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, exponent);
  return out;
}

Rational parse_decimal(std::string_view text, std::string_view whole) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  bool seen_digit = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw std::invalid_argument("not a number: '" + std::string(whole) + "'");
  long exponent = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    std::string exp_text(text.substr(i));
    if (exp_text.empty()) throw std::invalid_argument("bad exponent in '" + std::string(whole) + "'");
    std::size_t used = 0;
    try {
      exponent = std::stol(exp_text, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad exponent in '" + std::string(whole) + "'");
    }
    i += used;
  }
  if (i != text.size()) throw std::invalid_argument("trailing characters in '" + std::string(whole) + "'");

  mpz_class numerator(digits, 10);
  Rational value(numerator);
  const long shift = exponent - frac_digits;
  if (shift > 0) {
    value *= Rational(pow10(static_cast<unsigned>(shift)));
  } else if (shift < 0) {
    value /= Rational(pow10(static_cast<unsigned>(-shift)));
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational r{mpz_class(std::to_string(num)), mpz_class(std::to_string(den))};
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text, text);
  Rational num = parse_decimal(text.substr(0, slash), text);
  Rational den = parse_decimal(text.substr(slash + 1), text);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational out = num / den;
  out.canonicalize();
  return out;
}

std::string to_exact_string(const Rational& value) { return value.get_str(); }

double to_double(const Rational& value) { return value.get_d(); }

Rational floor_to_integer(const Rational& value) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return Rational(out);
}

Rational ceil_to_integer(const Rational& value) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return Rational(out);
}

std::string to_decimal(const Rational& value, int digits) {
  const bool negative = value < 0;
  Rational magnitude = negative ? Rational(-value) : value;
  const mpz_class scale = pow10(static_cast<unsigned>(digits));
  Rational scaled = magnitude * Rational(scale) + Rational(1, 2);
  scaled.canonicalize();
  mpz_class rounded = floor_to_integer(scaled).get_num();
  std::string text = rounded.get_str();
  if (digits > 0) {
    if (text.size() <= static_cast<std::size_t>(digits)) {
      text.insert(0, static_cast<std::size_t>(digits) - text.size() + 1, '0');
    }
    text.insert(text.size() - static_cast<std::size_t>(digits), ".");
  }
  if (negative && rounded != 0) text.insert(0, "-");
  return text;
}

std::string to_significant(const Rational& value, int sig) {
  if (value == 0) return "0";
  const Rational magnitude = value < 0 ? Rational(-value) : value;
  // k = number of integer digits, i.e. 10^(k-1) <= magnitude < 10^k.
  int k = 0;
  Rational probe(1);
  while (magnitude >= probe) {
    probe *= 10;
    ++k;
  }
  while (magnitude * 10 < probe) {
    probe /= 10;
    --k;
  }
  auto scale_by = [](const Rational& x, int places) {
    if (places >= 0) return Rational(x * Rational(pow10(static_cast<unsigned>(places))));
    return Rational(x / Rational(pow10(static_cast<unsigned>(-places))));
  };
  int frac = sig - k;
  mpz_class n = floor_to_integer(scale_by(magnitude, frac) + Rational(1, 2)).get_num();
  if (n >= pow10(static_cast<unsigned>(sig))) {
    --frac;
    n = floor_to_integer(scale_by(magnitude, frac) + Rational(1, 2)).get_num();
  }
  std::string text;
  if (frac <= 0) {
    text = mpz_class(n * pow10(static_cast<unsigned>(-frac))).get_str();
  } else {
    text = n.get_str();
    if (text.size() <= static_cast<std::size_t>(frac)) {
      text.insert(0, static_cast<std::size_t>(frac) - text.size() + 1, '0');
    }
    text.insert(text.size() - static_cast<std::size_t>(frac), ".");
    while (text.back() == '0') text.pop_back();
    if (text.back() == '.') text.pop_back();
  }
  if (value < 0) text.insert(0, "-");
  return text;
}

std::string format_bits(const Rational& bits) {
  const Rational magnitude = bits < 0 ? Rational(-bits) : bits;
  if (magnitude < 1000) return to_significant(bits, 4) + " b";
  return to_significant(bits / 1000, 3) + " kb";
}

std::string format_seconds(const Rational& seconds) {
  const Rational magnitude = seconds < 0 ? Rational(-seconds) : seconds;
  if (magnitude == 0) return "0 s";
  if (magnitude < Rational(1, 1000000)) return to_significant(seconds * 1000000000, 3) + " ns";
  if (magnitude < Rational(1, 1000)) return to_significant(seconds * 1000000, 3) + " us";
  if (magnitude < 1) return to_significant(seconds * 1000, 3) + " ms";
  return to_significant(seconds, 3) + " s";
}

}  // namespace ivnet
