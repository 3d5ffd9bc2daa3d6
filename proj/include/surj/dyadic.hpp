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

#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace surj {

using BigInt = boost::multiprecision::cpp_int;

/*
 * Exact binary rational m * 2^e.
 *
 * Stored normalized: the mantissa is odd, or the value is zero with e == 0.
 * Sums, differences, products and power-of-two scalings are exact; the only
 * lossy operation is to_double(), which rounds to nearest, ties to even.
 */
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(BigInt mantissa, std::int64_t exponent);
  Dyadic(long long value);  // NOLINT(google-explicit-constructor)

  /// Exact conversion; throws DomainError for NaN or infinities.
  static Dyadic from_double(double value);

  /// Decimal literal ("-12.5e-3"). Exact when the literal is a dyadic
  /// rational, otherwise rounded to the nearest double first.
  static Dyadic parse(std::string_view text);

  const BigInt& mantissa() const noexcept { return mantissa_; }
  std::int64_t exponent() const noexcept { return exponent_; }

  int sign() const noexcept { return mantissa_.sign(); }
  bool is_zero() const noexcept { return mantissa_.is_zero(); }
  bool is_integer() const noexcept { return exponent_ >= 0; }

  Dyadic abs() const;
  /// value * 2^shift
  Dyadic scaled(std::int64_t shift) const;

  BigInt floor() const;
  BigInt ceil() const;

  double to_double() const;
  /// Exact terminating decimal expansion, no exponent ("-0.0625").
  std::string to_decimal() const;

  Dyadic operator-() const;
  Dyadic& operator+=(const Dyadic& rhs);
  Dyadic& operator-=(const Dyadic& rhs);
  Dyadic& operator*=(const Dyadic& rhs);

  friend Dyadic operator+(Dyadic lhs, const Dyadic& rhs) { return lhs += rhs; }
  friend Dyadic operator-(Dyadic lhs, const Dyadic& rhs) { return lhs -= rhs; }
  friend Dyadic operator*(Dyadic lhs, const Dyadic& rhs) { return lhs *= rhs; }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exponent_ == b.exponent_ && a.mantissa_ == b.mantissa_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

  friend std::ostream& operator<<(std::ostream& os, const Dyadic& d) {
    return os << d.to_decimal();
  }

 private:
  void normalize();

  BigInt mantissa_{0};
  std::int64_t exponent_ = 0;
};

/// ceil(a / d) for d > 0.
BigInt ceil_div(const Dyadic& a, const BigInt& d);

/// floor(a / d) for d > 0.
BigInt floor_div(const Dyadic& a, const BigInt& d);

inline BigInt pow2(std::uint64_t k) { return BigInt(1) << k; }

/// Smallest c with 2^c >= n, for n >= 1.
unsigned ceil_log2(const BigInt& n);

}  // namespace surj
