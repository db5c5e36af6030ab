// Extended exponents p in (0, inf], stored by reciprocal.
//
// Every region condition in this library is linear in 1/p, so the reciprocal
// is the natural coordinate: p = inf is simply reciprocal 0 and needs no
// special casing. Reciprocals are exact rationals; numerics read them back as
// doubles through value() / reciprocal_value().

#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

// Boost 1.74's mixed rational/integer operator== recurses forever once C++20
// adds reversed comparison candidates. Exact-match overloads win resolution.
namespace boost {
inline constexpr bool operator==(const rational<long>& a, int b) {
  return a.denominator() == 1 && a.numerator() == b;
}
inline constexpr bool operator==(const rational<long>& a, long b) {
  return a.denominator() == 1 && a.numerator() == b;
}
inline constexpr bool operator==(const rational<long>& a, long long b) {
  return a.denominator() == 1 && a.numerator() == b;
}
}  // namespace boost

namespace tfa {

using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

// Parses "3", "-2", "0.25", "7/4", "1e-3" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  std::string_view s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty number");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Rational num = parse_rational(s.substr(0, slash));
    Rational den = parse_rational(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return num / den;
  }

  bool negative = false;
  std::size_t pos = 0;
  if (s[pos] == '+' || s[pos] == '-') {
    negative = s[pos] == '-';
    ++pos;
  }
  std::int64_t mantissa = 0;
  std::int64_t scale = 1;
  bool seen_digit = false;
  bool after_point = false;
  constexpr std::int64_t kLimit = std::numeric_limits<std::int64_t>::max() / 10;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (c == '.') {
      if (after_point) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
      after_point = true;
      continue;
    }
    if (c == 'e' || c == 'E') break;
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    if (mantissa > kLimit || (after_point && scale > kLimit))
      throw std::invalid_argument("too many digits in '" + std::string(text) + "'");
    mantissa = mantissa * 10 + (c - '0');
    if (after_point) scale *= 10;
    seen_digit = true;
  }
  if (!seen_digit) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
  Rational value(negative ? -mantissa : mantissa, scale);
  if (pos < s.size()) {
    int exponent = 0;
    try {
      exponent = std::stoi(std::string(s.substr(pos + 1)));
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed exponent in '" + std::string(text) + "'");
    }
    if (std::abs(exponent) > 15) throw std::invalid_argument("exponent out of range in '" + std::string(text) + "'");
    std::int64_t p10 = 1;
    for (int i = 0; i < std::abs(exponent); ++i) p10 *= 10;
    value = exponent >= 0 ? value * p10 : value / p10;
  }
  return value;
}

class ExtendedExponent {
 public:
  ExtendedExponent() = default;

  static ExtendedExponent infinity() { return ExtendedExponent(Rational(0)); }

  static ExtendedExponent from_reciprocal(Rational reciprocal) {
    if (reciprocal < 0) throw std::domain_error("exponent reciprocal must be nonnegative");
    return ExtendedExponent(reciprocal);
  }

  // p itself, finite and positive.
  static ExtendedExponent from_value(Rational p) {
    if (p <= 0) throw std::domain_error("exponent must be positive");
    return ExtendedExponent(1 / p);
  }

  static ExtendedExponent from_value(std::int64_t p) { return from_value(Rational(p)); }

  // Accepts "inf", integers, decimals and fractions such as "4/3".
  static ExtendedExponent parse(std::string_view text) {
    std::string lowered;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) lowered.push_back(static_cast<char>(std::tolower(c)));
    if (lowered == "inf" || lowered == "infinity" || lowered == "oo") return infinity();
    return from_value(parse_rational(lowered));
  }

  const Rational& reciprocal() const { return reciprocal_; }
  double reciprocal_value() const { return to_double(reciprocal_); }
  bool is_infinite() const { return reciprocal_ == 0; }

  // p as a double; +inf when reciprocal is zero.
  double value() const {
    return is_infinite() ? std::numeric_limits<double>::infinity() : 1.0 / reciprocal_value();
  }

  bool has_conjugate() const { return reciprocal_ >= 0 && reciprocal_ <= 1; }

  std::string to_string() const {
    if (is_infinite()) return "inf";
    Rational p = 1 / reciprocal_;
    if (p.denominator() == 1) return std::to_string(p.numerator());
    return std::to_string(p.numerator()) + "/" + std::to_string(p.denominator());
  }

  friend bool operator==(const ExtendedExponent& a, const ExtendedExponent& b) {
    return a.reciprocal_ == b.reciprocal_;
  }

 private:
  explicit ExtendedExponent(Rational reciprocal) : reciprocal_(reciprocal) {}
  Rational reciprocal_{0};
};

// min(p, 2)
inline ExtendedExponent meet2(const ExtendedExponent& p) {
  return ExtendedExponent::from_reciprocal(std::max(p.reciprocal(), Rational(1, 2)));
}

// max(p, 2)
inline ExtendedExponent join2(const ExtendedExponent& p) {
  return ExtendedExponent::from_reciprocal(std::min(p.reciprocal(), Rational(1, 2)));
}

// p' with 1/p + 1/p' = 1; defined for 1 <= p <= inf.
inline ExtendedExponent conjugate(const ExtendedExponent& p) {
  if (!p.has_conjugate())
    throw std::domain_error("conjugate exponent undefined for p = " + p.to_string() + " < 1");
  return ExtendedExponent::from_reciprocal(1 - p.reciprocal());
}

// min(1, p)
inline ExtendedExponent dot(const ExtendedExponent& p) {
  return ExtendedExponent::from_reciprocal(std::max(p.reciprocal(), Rational(1)));
}

}  // namespace tfa
