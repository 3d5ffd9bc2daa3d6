// Copyright 2026 The surjkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "surj/dyadic.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <utility>

#include "surj/errors.hpp"

namespace surj {

namespace {

unsigned bit_length(const BigInt& magnitude) {
  return magnitude.is_zero() ? 0 : static_cast<unsigned>(boost::multiprecision::msb(magnitude)) + 1;
}

BigInt pow5(std::uint64_t k) {
  BigInt result = 1;
  BigInt base = 5;
  while (k != 0) {
    if (k & 1U) result *= base;
    base *= base;
    k >>= 1U;
  }
  return result;
}

}  // namespace

Dyadic::Dyadic(BigInt mantissa, std::int64_t exponent)
    : mantissa_(std::move(mantissa)), exponent_(exponent) {
  normalize();
}

Dyadic::Dyadic(long long value) : mantissa_(value), exponent_(0) { normalize(); }

void Dyadic::normalize() {
  if (mantissa_.is_zero()) {
    exponent_ = 0;
    return;
  }
  const auto trailing = boost::multiprecision::lsb(mantissa_ < 0 ? BigInt(-mantissa_) : mantissa_);
  if (trailing != 0) {
    mantissa_ >>= trailing;
    exponent_ += static_cast<std::int64_t>(trailing);
  }
}

Dyadic Dyadic::from_double(double value) {
  if (!std::isfinite(value)) throw DomainError("dyadic: non-finite value");
  if (value == 0.0) return {};
  int exp2 = 0;
  const double frac = std::frexp(value, &exp2);
  // frac * 2^53 is an integer for every finite double.
  const auto scaled = static_cast<long long>(std::ldexp(frac, 53));
  return {BigInt(scaled), static_cast<std::int64_t>(exp2) - 53};
}

Dyadic Dyadic::parse(std::string_view text) {
  auto fail = [&] { return DomainError("not a decimal number: '" + std::string(text) + "'"); };
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  BigInt digits = 0;
  std::int64_t decimal_exponent = 0;
  std::size_t digit_count = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    digits = digits * 10 + (text[pos] - '0');
    ++pos;
    ++digit_count;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      digits = digits * 10 + (text[pos] - '0');
      --decimal_exponent;
      ++pos;
      ++digit_count;
    }
  }
  if (digit_count == 0) throw fail();
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool exp_negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      exp_negative = text[pos] == '-';
      ++pos;
    }
    std::int64_t e = 0;
    std::size_t exp_digits = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      if (e > 100000) throw fail();
      e = e * 10 + (text[pos] - '0');
      ++pos;
      ++exp_digits;
    }
    if (exp_digits == 0) throw fail();
    decimal_exponent += exp_negative ? -e : e;
  }
  if (pos != text.size()) throw fail();
  if (negative) digits = -digits;
  if (digits.is_zero()) return {};

  if (decimal_exponent >= 0) {
    return {digits * pow5(static_cast<std::uint64_t>(decimal_exponent)), decimal_exponent};
  }
  const BigInt five = pow5(static_cast<std::uint64_t>(-decimal_exponent));
  if (digits % five == 0) return {digits / five, decimal_exponent};

  const std::string copy(text);
  char* end = nullptr;
  const double rounded = std::strtod(copy.c_str(), &end);
  if (!std::isfinite(rounded)) throw fail();
  return from_double(rounded);
}

Dyadic Dyadic::abs() const {
  Dyadic out = *this;
  if (out.mantissa_ < 0) out.mantissa_ = -out.mantissa_;
  return out;
}

Dyadic Dyadic::scaled(std::int64_t shift) const {
  if (is_zero()) return {};
  Dyadic out = *this;
  out.exponent_ += shift;
  return out;
}

BigInt Dyadic::floor() const {
  if (exponent_ >= 0) return mantissa_ << static_cast<unsigned>(exponent_);
  const auto shift = static_cast<unsigned>(-exponent_);
  if (mantissa_ >= 0) return mantissa_ >> shift;
  // Arithmetic shift on cpp_int truncates toward zero for negatives.
  BigInt magnitude = -mantissa_;
  BigInt q = magnitude >> shift;
  return -(q + 1);  // mantissa is odd, so the division is never exact here
}

BigInt Dyadic::ceil() const { return -(-*this).floor(); }

double Dyadic::to_double() const {
  if (is_zero()) return 0.0;
  const bool negative = mantissa_ < 0;
  BigInt magnitude = negative ? BigInt(-mantissa_) : mantissa_;
  std::int64_t exponent = exponent_;
  const unsigned bits = bit_length(magnitude);
  if (bits > 53) {
    const unsigned shift = bits - 53;
    BigInt quotient = magnitude >> shift;
    const BigInt remainder = magnitude - (quotient << shift);
    const BigInt half = BigInt(1) << (shift - 1);
    if (remainder > half || (remainder == half && (quotient & 1) != 0)) ++quotient;
    magnitude = quotient;
    exponent += shift;
  }
  if (exponent > std::numeric_limits<double>::max_exponent + 64) {
    return negative ? -std::numeric_limits<double>::infinity()
                    : std::numeric_limits<double>::infinity();
  }
  if (exponent < std::numeric_limits<double>::min_exponent - 128) return negative ? -0.0 : 0.0;
  const double result = std::ldexp(magnitude.convert_to<double>(), static_cast<int>(exponent));
  return negative ? -result : result;
}

std::string Dyadic::to_decimal() const {
  if (exponent_ >= 0) return BigInt(mantissa_ << static_cast<unsigned>(exponent_)).str();
  const auto places = static_cast<std::uint64_t>(-exponent_);
  const bool negative = mantissa_ < 0;
  const BigInt magnitude = negative ? BigInt(-mantissa_) : mantissa_;
  std::string digits = BigInt(magnitude * pow5(places)).str();
  if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
  digits.insert(digits.size() - places, 1, '.');
  // An odd mantissa times 5^places never ends in 0, so no trailing zeros to strip.
  return negative ? "-" + digits : digits;
}

Dyadic Dyadic::operator-() const {
  Dyadic out = *this;
  out.mantissa_ = -out.mantissa_;
  return out;
}

Dyadic& Dyadic::operator+=(const Dyadic& rhs) {
  if (rhs.is_zero()) return *this;
  if (is_zero()) return *this = rhs;
  if (exponent_ == rhs.exponent_) {
    mantissa_ += rhs.mantissa_;
  } else if (exponent_ < rhs.exponent_) {
    mantissa_ += rhs.mantissa_ << static_cast<unsigned>(rhs.exponent_ - exponent_);
  } else {
    mantissa_ = (mantissa_ << static_cast<unsigned>(exponent_ - rhs.exponent_)) + rhs.mantissa_;
    exponent_ = rhs.exponent_;
  }
  normalize();
  return *this;
}

Dyadic& Dyadic::operator-=(const Dyadic& rhs) { return *this += -rhs; }

Dyadic& Dyadic::operator*=(const Dyadic& rhs) {
  mantissa_ *= rhs.mantissa_;
  exponent_ += rhs.exponent_;
  normalize();
  return *this;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  const int sa = a.sign();
  const int sb = b.sign();
  if (sa != sb) return sa <=> sb;
  if (sa == 0) return std::strong_ordering::equal;
  const std::int64_t common = std::min(a.exponent_, b.exponent_);
  const BigInt lhs = a.mantissa_ << static_cast<unsigned>(a.exponent_ - common);
  const BigInt rhs = b.mantissa_ << static_cast<unsigned>(b.exponent_ - common);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

BigInt floor_div(const Dyadic& a, const BigInt& d) {
  // a / d = mantissa / (d * 2^-exponent) when exponent < 0.
  BigInt numerator;
  BigInt denominator = d;
  if (a.exponent() >= 0) {
    numerator = a.mantissa() << static_cast<unsigned>(a.exponent());
  } else {
    numerator = a.mantissa();
    denominator <<= static_cast<unsigned>(-a.exponent());
  }
  BigInt q = numerator / denominator;  // truncates toward zero
  if (numerator < 0 && q * denominator != numerator) --q;
  return q;
}

BigInt ceil_div(const Dyadic& a, const BigInt& d) { return -floor_div(-a, d); }

unsigned ceil_log2(const BigInt& n) {
  if (n <= 1) return 0;
  const unsigned bits = bit_length(n);
  return (n & (n - 1)) == 0 ? bits - 1 : bits;
}

}  // namespace surj
