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

#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "surj/dyadic.hpp"
#include "surj/errors.hpp"

using surj::BigInt;
using surj::Dyadic;

TEST_CASE("dyadic normalizes and compares by value") {
  CHECK(Dyadic(4, -3) == Dyadic(1, -1));
  CHECK(Dyadic(0, 17) == Dyadic{});
  CHECK(Dyadic(1, -1) < Dyadic(1));
  CHECK(Dyadic(-3, -2) < Dyadic(-1, -1));
  CHECK(Dyadic(5, 3).to_decimal() == "40");
}

TEST_CASE("dyadic floor and ceil round toward -inf and +inf") {
  CHECK(Dyadic(5, -1).floor() == 2);
  CHECK(Dyadic(5, -1).ceil() == 3);
  CHECK(Dyadic(-5, -1).floor() == -3);
  CHECK(Dyadic(-5, -1).ceil() == -2);
  CHECK(Dyadic(7).floor() == 7);
  CHECK(Dyadic(-7).ceil() == -7);
}

TEST_CASE("floor_div and ceil_div agree with rational arithmetic") {
  CHECK(surj::floor_div(Dyadic(7), BigInt(2)) == 3);
  CHECK(surj::ceil_div(Dyadic(7), BigInt(2)) == 4);
  CHECK(surj::floor_div(Dyadic(-7), BigInt(2)) == -4);
  CHECK(surj::ceil_div(Dyadic(3, -2), BigInt(3)) == 1);   // 0.25
  CHECK(surj::floor_div(Dyadic(3, -2), BigInt(3)) == 0);
  CHECK(surj::ceil_div(Dyadic(6), BigInt(3)) == 2);
}

TEST_CASE("decimal parsing is exact for dyadic literals") {
  CHECK(Dyadic::parse("0.5") == Dyadic(1, -1));
  CHECK(Dyadic::parse("-12.0625") == Dyadic(-193, -4));
  CHECK(Dyadic::parse("1e3") == Dyadic(1000));
  CHECK(Dyadic::parse("2.5E-1") == Dyadic(1, -2));
  CHECK(Dyadic::parse("+3") == Dyadic(3));
  // Not dyadic: falls back to the nearest double.
  CHECK(Dyadic::parse("0.1").to_double() == 0.1);
  CHECK(Dyadic::parse("1e-3").to_double() == 1e-3);
  CHECK_THROWS_AS(Dyadic::parse(""), surj::DomainError);
  CHECK_THROWS_AS(Dyadic::parse("1.2.3"), surj::DomainError);
  CHECK_THROWS_AS(Dyadic::parse("abc"), surj::DomainError);
  CHECK_THROWS_AS(Dyadic::parse("1e"), surj::DomainError);
}

TEST_CASE("to_double rounds to nearest, ties to even") {
  const Dyadic one(1);
  const Dyadic half_ulp(1, -53);
  CHECK((one + half_ulp).to_double() == 1.0);                     // tie -> even
  CHECK((one + half_ulp + Dyadic(1, -80)).to_double() > 1.0);     // above the tie
  const Dyadic odd = Dyadic(1) + Dyadic(1, -52);
  CHECK((odd + half_ulp).to_double() == 1.0 + std::ldexp(1.0, -51));
}

TEST_CASE("double round trip and decimal round trip over random values") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-1e6, 1e6);
  for (int i = 0; i < 2000; ++i) {
    const double v = dist(rng) * std::ldexp(1.0, static_cast<int>(rng() % 60) - 30);
    const Dyadic d = Dyadic::from_double(v);
    CHECK(d.to_double() == v);
    CHECK(Dyadic::parse(d.to_decimal()) == d);
  }
  CHECK_THROWS_AS(Dyadic::from_double(std::numeric_limits<double>::infinity()), surj::DomainError);
}

TEST_CASE("arithmetic is exact") {
  const Dyadic a = Dyadic::from_double(0.1);
  const Dyadic b = Dyadic::from_double(0.2);
  const Dyadic sum = a + b;
  CHECK(sum - b == a);
  CHECK(sum.to_double() == 0.30000000000000004);  // the double sum of the exact inputs
  CHECK((a * Dyadic(3, -5)).scaled(5) == a * Dyadic(3));
}

TEST_CASE("ceil_log2") {
  CHECK(surj::ceil_log2(BigInt(1)) == 0);
  CHECK(surj::ceil_log2(BigInt(2)) == 1);
  CHECK(surj::ceil_log2(BigInt(3)) == 2);
  CHECK(surj::ceil_log2(BigInt(8)) == 3);
  CHECK(surj::ceil_log2(BigInt(9)) == 4);
}
