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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "surj/expr.hpp"
#include "surj/phi.hpp"

namespace surj {

inline constexpr std::size_t kDefaultTargetBudget = 100000;

/// Product grid of `grid` equispaced targets per coordinate.
struct BoxSpec {
  std::vector<std::pair<double, double>> bounds;
  std::size_t grid = 2;

  std::size_t target_count() const;
  /// Throws DomainError for empty or inverted bounds or grid < 2, and
  /// ResourceError when grid^n exceeds the budget.
  void validate(std::size_t budget = kDefaultTargetBudget) const;
  /// Row-major (last coordinate fastest).
  std::vector<std::vector<double>> targets() const;
};

struct Witness {
  std::vector<double> target;
  Point preimage;
  unsigned depth = 0;
  double error = 0.0;
  /// Set when the search gave up (budget exhausted, solver resolution).
  std::string diagnostic;
};

enum class CoverageStatus { Certified, Failed };

struct CoverageCertificate {
  std::string function;
  BoxSpec box;
  double epsilon = 0.0;
  std::vector<Witness> witnesses;
  CoverageStatus status = CoverageStatus::Failed;
  /// Index of the target with the largest achieved error.
  std::optional<std::size_t> worst;

  bool certified() const { return status == CoverageStatus::Certified; }
  double max_error() const;
};

struct CertifyOptions {
  std::size_t target_budget = kDefaultTargetBudget;
  /// 0 = hardware concurrency.
  unsigned threads = 0;
  PreimageOptions preimage;
};

/// Runs the preimage pipeline for every grid target. Throws
/// DegenerateMemberError before any search when a span member in the tree
/// has a coordinate that cancels to zero, or is the zero member.
CoverageCertificate certify_surjective_on_box(const FunctionExpr& f, const BoxSpec& box,
                                              double epsilon, const CertifyOptions& options = {});

/// Re-evaluates every witness with evaluate() alone and returns the largest
/// re-computed error.
double reverify(const FunctionExpr& f, const CoverageCertificate& certificate);

/// 0-based index of the first coordinate whose reduced span is zero.
struct DegeneracyWitness {
  std::size_t coordinate;
};

std::optional<DegeneracyWitness> detect_degenerate(const VectorSpanMember& v);

// ---------------------------------------------------------------------------
// Linear independence of finite families

inline constexpr double kDefaultRankTolerance = 1e-8;

/// A family member could not be evaluated at a sample point.
class SampleEvaluationError : public std::runtime_error {
 public:
  SampleEvaluationError(std::size_t point, const std::string& what)
      : std::runtime_error(what), point_(point) {}
  std::size_t point() const noexcept { return point_; }

 private:
  std::size_t point_;
};
inline constexpr unsigned kDefaultSampleDepth = 12;

/// Rank by full-pivot elimination on the row-equilibrated matrix; a pivot
/// at or below tol * (largest pivot) ends the elimination.
std::size_t numerical_rank(std::vector<std::vector<double>> matrix, double tol);

struct IndependenceReport {
  std::vector<std::string> family;
  std::vector<Point> points;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t rank = 0;
  double tolerance = kDefaultRankTolerance;

  bool full_rank() const { return rank == rows; }
};

/// M[i][j*n + c] = coordinate c of function i at point j.
IndependenceReport independence_report(std::span<const FunctionExpr> family,
                                       std::span<const Point> points,
                                       double tol = kDefaultRankTolerance,
                                       unsigned depth = kDefaultSampleDepth);

struct RankComparison {
  /// {F_i} sampled at the images f(x_j).
  IndependenceReport direct;
  /// {F_i o f} sampled at x_j.
  IndependenceReport composed;

  bool equal() const { return direct.rank == composed.rank; }
};

RankComparison composition_preserves_rank(std::span<const VectorSpanMember> family,
                                          const FunctionExpr& base, std::span<const Point> points,
                                          double tol = kDefaultRankTolerance,
                                          unsigned depth = kDefaultSampleDepth);

/// `count` points in [lo, hi]^arity on an interleaved grid: coordinate c of
/// point j is lo + (hi - lo) * (j * arity + c + 1) / (count * arity), so all
/// scalar samples are distinct.
std::vector<Point> grid_sample_points(std::size_t count, std::size_t arity, double lo = -8.0,
                                      double hi = 8.0);

/// Seeded uniform points in [lo, hi]^arity (std::mt19937_64).
std::vector<Point> random_sample_points(std::size_t count, std::size_t arity, std::uint64_t seed,
                                        double lo, double hi);

}  // namespace surj
