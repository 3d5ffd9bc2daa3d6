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

#include "surj/curve.hpp"

#include <array>
#include <cmath>
#include <string>

#include "surj/errors.hpp"

namespace surj {

namespace {

// The four symmetries of the unit square that occur in the Hilbert
// recursion form a Klein four-group; composition is XOR of the codes.
enum Orientation : unsigned {
  kIdentity = 0,       // (x, y)
  kTranspose = 1,      // (y, x)
  kAntiTranspose = 2,  // (1 - y, 1 - x)
  kHalfTurn = 3,       // (1 - x, 1 - y)
};

struct Bit2 {
  unsigned x;
  unsigned y;
};

// Quadrant positions for digits 0..3 in the local frame, and the orientation
// of the sub-curve inside each quadrant.
constexpr std::array<Bit2, 4> kQuadrant = {{{0, 0}, {0, 1}, {1, 1}, {1, 0}}};
constexpr std::array<unsigned, 4> kChild = {kTranspose, kIdentity, kIdentity, kAntiTranspose};

constexpr Bit2 apply(unsigned orientation, Bit2 p) {
  switch (orientation) {
    case kTranspose:
      return {p.y, p.x};
    case kAntiTranspose:
      return {1 - p.y, 1 - p.x};
    case kHalfTurn:
      return {1 - p.x, 1 - p.y};
    default:
      return p;
  }
}

unsigned digit_of(Bit2 local) {
  for (unsigned d = 0; d < 4; ++d) {
    if (kQuadrant[d].x == local.x && kQuadrant[d].y == local.y) return d;
  }
  return 0;
}

struct Walk {
  BigInt col{0};
  BigInt row{0};
  unsigned orientation = kIdentity;
};

Walk walk(const BigInt& index, unsigned depth) {
  Walk w;
  for (unsigned level = depth; level-- > 0;) {
    const unsigned digit = static_cast<unsigned>((index >> (2 * level)) & 3);
    const Bit2 q = apply(w.orientation, kQuadrant[digit]);
    w.col = (w.col << 1) + q.x;
    w.row = (w.row << 1) + q.y;
    w.orientation ^= kChild[digit];
  }
  return w;
}

BigInt four_pow(unsigned depth) { return BigInt(1) << (2 * depth); }

void require_unit_square(const PlanePoint& p, const char* op) {
  const Dyadic one(1);
  if (p.x < Dyadic{} || p.x > one || p.y < Dyadic{} || p.y > one) {
    throw DomainError(std::string(op) + ": point outside the unit square");
  }
}

BigInt lower_left_index(const Dyadic& coordinate, unsigned depth) {
  // ceil(c 2^k) - 1, clamped at 0: boundary points fall to the lower cell.
  BigInt i = coordinate.scaled(depth).ceil() - 1;
  return i < 0 ? BigInt(0) : i;
}

}  // namespace

CurveParam::CurveParam(BigInt numerator, unsigned depth)
    : numerator_(std::move(numerator)), depth_(depth) {
  if (numerator_ < 0 || numerator_ > four_pow(depth_)) {
    throw DomainError("curve parameter outside [0, 1]");
  }
}

CurveParam CurveParam::from_dyadic(const Dyadic& value) {
  if (value < Dyadic{} || value > Dyadic(1)) throw DomainError("curve parameter outside [0, 1]");
  if (value.is_zero()) return {};
  const std::int64_t e = value.exponent();
  if (e >= 0) return {BigInt(1), 0};  // value == 1
  const auto depth = static_cast<unsigned>((-e + 1) / 2);
  return {value.mantissa() << static_cast<unsigned>(2 * depth + e), depth};
}

Dyadic CurveParam::value() const { return {numerator_, -2 * static_cast<std::int64_t>(depth_)}; }

bool operator==(const CurveParam& a, const CurveParam& b) { return a.value() == b.value(); }

PlanePoint CellAddress::center() const {
  const auto e = -static_cast<std::int64_t>(depth) - 1;
  return {Dyadic(2 * col + 1, e), Dyadic(2 * row + 1, e)};
}

bool CellAddress::contains(const PlanePoint& p) const {
  const auto e = -static_cast<std::int64_t>(depth);
  const Dyadic x0(col, e), x1(col + 1, e), y0(row, e), y1(row + 1, e);
  return x0 <= p.x && p.x <= x1 && y0 <= p.y && p.y <= y1;
}

BigInt cell_index(const BigInt& col, const BigInt& row, unsigned depth) {
  BigInt index = 0;
  unsigned orientation = kIdentity;
  for (unsigned level = depth; level-- > 0;) {
    const Bit2 global{static_cast<unsigned>((col >> level) & 1),
                      static_cast<unsigned>((row >> level) & 1)};
    // Every orientation is an involution.
    const unsigned digit = digit_of(apply(orientation, global));
    index = (index << 2) + digit;
    orientation ^= kChild[digit];
  }
  return index;
}

CellAddress cell_at(const BigInt& index, unsigned depth) {
  Walk w = walk(index, depth);
  return {depth, std::move(w.col), std::move(w.row)};
}

CellAddress locate_cell(const PlanePoint& p, unsigned depth) {
  return {depth, lower_left_index(p.x, depth), lower_left_index(p.y, depth)};
}

std::pair<CellAddress, PlanePoint> hilbert_encode(const CurveParam& t, unsigned depth) {
  const BigInt cells = four_pow(depth);
  BigInt index = t.depth() >= depth ? BigInt(t.numerator() >> (2 * (t.depth() - depth)))
                                    : BigInt(t.numerator() << (2 * (depth - t.depth())));
  if (index >= cells) index = cells - 1;
  CellAddress cell = cell_at(index, depth);
  PlanePoint center = cell.center();
  return {std::move(cell), std::move(center)};
}

CurveParam hilbert_decode(const PlanePoint& p, unsigned depth) {
  require_unit_square(p, "hilbert_decode");
  const CellAddress cell = locate_cell(p, depth);
  return {cell_index(cell.col, cell.row, depth), depth};
}

std::vector<PlanePoint> curve_trace(unsigned depth, unsigned cap) {
  if (depth > cap) {
    throw ResourceError("curve_trace: depth " + std::to_string(depth) + " exceeds cap " +
                        std::to_string(cap));
  }
  const auto cells = static_cast<std::uint64_t>(four_pow(depth));
  std::vector<PlanePoint> out;
  out.reserve(cells);
  for (std::uint64_t i = 0; i < cells; ++i) out.push_back(cell_at(BigInt(i), depth).center());
  return out;
}

double modulus_bound(unsigned depth) { return std::ldexp(2.0, -static_cast<int>(depth)); }

PlanePoint curve_point(const Dyadic& t, unsigned depth) {
  const Dyadic one(1);
  if (t < Dyadic{} || t > one) throw DomainError("curve_point: parameter outside [0, 1]");
  if (t == one) return {one, Dyadic{}};

  const Dyadic u = t.scaled(2 * static_cast<std::int64_t>(depth));
  const BigInt j = u.floor();
  const Dyadic frac = u - Dyadic(j, 0);
  const Walk w = walk(j, depth);

  const Bit2 entry = apply(w.orientation, {0, 0});
  const Bit2 exit = apply(w.orientation, {1, 0});
  const Dyadic ex(w.col + entry.x, 0), ey(w.row + entry.y, 0);
  const auto dx = static_cast<long long>(exit.x) - static_cast<long long>(entry.x);
  const auto dy = static_cast<long long>(exit.y) - static_cast<long long>(entry.y);
  const auto e = -static_cast<std::int64_t>(depth);
  return {(ex + frac * Dyadic(dx)).scaled(e), (ey + frac * Dyadic(dy)).scaled(e)};
}

}  // namespace surj
