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

#include <cstdint>
#include <utility>
#include <vector>

#include "surj/dyadic.hpp"

namespace surj {

/// Parameter numerator / 4^depth in [0, 1].
class CurveParam {
 public:
  CurveParam() = default;
  /// Throws DomainError unless 0 <= numerator <= 4^depth.
  CurveParam(BigInt numerator, unsigned depth);

  /// Throws DomainError for values outside [0, 1].
  static CurveParam from_dyadic(const Dyadic& value);

  const BigInt& numerator() const noexcept { return numerator_; }
  unsigned depth() const noexcept { return depth_; }
  Dyadic value() const;

  friend bool operator==(const CurveParam& a, const CurveParam& b);

 private:
  BigInt numerator_{0};
  unsigned depth_ = 0;
};

struct PlanePoint {
  Dyadic x;
  Dyadic y;

  friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

/// Cell [col, col+1] x [row, row+1] scaled by 2^-depth.
struct CellAddress {
  unsigned depth = 0;
  BigInt col{0};
  BigInt row{0};

  PlanePoint center() const;
  bool contains(const PlanePoint& p) const;  // closed cell
  friend bool operator==(const CellAddress&, const CellAddress&) = default;
};

inline constexpr unsigned kDefaultTraceCap = 12;

/// Depth-k cell visited at t (curve order LL, UL, UR, LR; H(0) = (0,0),
/// H(1) = (1,0)) and its center. t = 1 maps to the last cell.
std::pair<CellAddress, PlanePoint> hilbert_encode(const CurveParam& t, unsigned depth);

/// Start parameter index/4^k of the depth-k cell containing p. Points on a
/// cell boundary resolve to the lower-left neighbour.
CurveParam hilbert_decode(const PlanePoint& p, unsigned depth);

/// Cell centers of all 4^k cells in traversal order. Throws ResourceError
/// when depth > cap.
std::vector<PlanePoint> curve_trace(unsigned depth, unsigned cap = kDefaultTraceCap);

/// 2 * 2^-k: sup-distance bound between H_k(t) and H_k(s) for |t-s| <= 4^-k.
double modulus_bound(unsigned depth);

// Lower-level access used by the surjection factory.

/// Curve-order index of cell (col, row) at the given depth.
BigInt cell_index(const BigInt& col, const BigInt& row, unsigned depth);

/// Cell at curve-order index (0 <= index < 4^depth).
CellAddress cell_at(const BigInt& index, unsigned depth);

/// Depth-k cell containing p with lower-left tie breaking; p must lie in [0,1]^2.
CellAddress locate_cell(const PlanePoint& p, unsigned depth);

/*
 * Depth-k approximant of the limit curve at t in [0,1]: the polyline through
 * the knots H(j / 4^k), j = 0..4^k. Each knot is the entry corner of cell j,
 * so the approximant agrees exactly with the limit curve at every dyadic of
 * depth <= k, stays inside cell floor(t 4^k), and has fixed endpoints
 * (0,0) and (1,0). Consecutive depths differ by at most 2^-k.
 */
PlanePoint curve_point(const Dyadic& t, unsigned depth);

}  // namespace surj
