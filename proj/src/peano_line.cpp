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

#include "surj/peano_line.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "surj/errors.hpp"

namespace surj {

namespace {

BigInt segment_of(const Dyadic& t) {
  BigInt n = t.ceil();
  if (n > pow2(kMaxSegmentLog2)) {
    throw ResourceError("curve parameter " + t.to_decimal() + " beyond the segment cap");
  }
  return n;
}

}  // namespace

unsigned segment_depth(unsigned depth, const BigInt& segment) {
  return depth + ceil_log2(segment);
}

PeanoValue peano_line_value(const Dyadic& t, unsigned depth) {
  if (t.sign() <= 0) return {};
  const BigInt n = segment_of(t);
  const Dyadic nd(n, 0);
  const Dyadic local = t - (nd - Dyadic(1));  // in (0, 1]
  const Dyadic half(1, -1);
  if (local <= half) {
    // Bridge from (n-1, 1-n) to (-n, -n).
    const Dyadic s = local.scaled(1);
    const Dyadic one(1);
    return {{nd - one + s * (Dyadic(1) - nd.scaled(1)), one - nd - s}, 0.0};
  }
  const Dyadic s = local.scaled(1) - Dyadic(1);
  const unsigned d = segment_depth(depth, n);
  const PlanePoint h = curve_point(s, d);
  const Dyadic side = nd.scaled(1);
  return {{side * h.x - nd, side * h.y - nd},
          std::ldexp(2.0 * n.convert_to<double>(), -static_cast<int>(d))};
}

double peano_line_lipschitz(unsigned depth, double radius) {
  if (radius <= 0.0) return 0.0;
  const double top = std::max(1.0, std::ceil(radius));
  const BigInt n(static_cast<unsigned long long>(std::min(top, 1e18)));
  return 4.0 * top * std::ldexp(1.0, static_cast<int>(segment_depth(depth, n)));
}

ParameterCell peano_line_locate(const Dyadic& x, const Dyadic& y, double tolerance) {
  if (!(tolerance > 0.0)) throw DomainError("peano_line_locate: tolerance must be positive");
  if (x.is_zero() && y.is_zero()) return {Dyadic(-1), Dyadic(1), 0};

  const Dyadic reach = std::max(x.abs(), y.abs());
  BigInt n = reach.ceil();
  if (n < 1) n = 1;
  if (n > pow2(kMaxSegmentLog2)) throw ResourceError("target beyond the segment cap");

  // Smallest D with 2n / 2^D <= tolerance.
  const double width = 2.0 * n.convert_to<double>();
  unsigned D = 0;
  while (std::ldexp(width, -static_cast<int>(D)) > tolerance) {
    if (++D > 400) throw ResourceError("peano_line_locate: tolerance too small");
  }

  const Dyadic nd(n, 0);
  const BigInt box = 2 * n;
  auto lower_left = [&](const Dyadic& c) {
    BigInt i = ceil_div((c + nd).scaled(D), box) - 1;
    return i < 0 ? BigInt(0) : i;
  };
  const BigInt j = cell_index(lower_left(x), lower_left(y), D);
  const auto fine = -static_cast<std::int64_t>(2 * D + 1);
  const unsigned offset = ceil_log2(n);
  return {Dyadic(2 * n - 1, -1) + Dyadic(j, fine), Dyadic(1, fine), D > offset ? D - offset : 0};
}

}  // namespace surj
