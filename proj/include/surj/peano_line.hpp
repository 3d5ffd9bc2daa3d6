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

#include "surj/curve.hpp"
#include "surj/dyadic.hpp"

// Piecewise description of the factory's R -> R^2 surjection (the PeanoLine
// node). Segment n covers t in [n-1, n].

namespace surj {

/// Segments beyond this index are rejected with ResourceError.
inline constexpr unsigned kMaxSegmentLog2 = 40;

struct PeanoValue {
  PlanePoint point;
  /// Bound on the change of the value when depth increases by one.
  double refinement = 0.0;
};

PeanoValue peano_line_value(const Dyadic& t, unsigned depth);

/// Curve depth used inside segment n: depth + ceil(log2 n).
unsigned segment_depth(unsigned depth, const BigInt& segment);

/// Lipschitz bound of the depth-k approximant on t <= radius.
double peano_line_lipschitz(unsigned depth, double radius);

/*
 * Parameter interval [start, start + length] whose image lies, at every
 * global depth >= min_depth and in the limit, in a closed cell of side
 * <= tolerance that contains the target. The target (0,0) gets the constant
 * interval [-1, 0].
 */
struct ParameterCell {
  Dyadic start;
  Dyadic length;
  unsigned min_depth = 0;
};

ParameterCell peano_line_locate(const Dyadic& x, const Dyadic& y, double tolerance);

}  // namespace surj
