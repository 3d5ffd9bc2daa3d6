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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "surj/dyadic.hpp"
#include "surj/errors.hpp"
#include "surj/phi.hpp"

namespace surj {

enum class NodeKind { PeanoLine, DimLift, ProjectLift, PhiCompose };

struct FactoryLimits {
  std::size_t max_codomain = 6;
  std::size_t max_domain = 64;
};

/*
 * Immutable expression tree for a continuous surjection R^m -> R^n.
 *
 *   PeanoLine            R -> R^2, tiled Hilbert curves over growing boxes
 *   DimLift(f, g)        t -> (f_1(t), ..., f_{n-1}(t), g(f_n(t)))
 *   ProjectLift(f, m)    x -> f(x_1)
 *   PhiCompose(v, f)     x -> v(f(x)), or v itself when f is absent
 *
 * Copies share nodes; nothing is mutated after construction.
 */
class FunctionExpr {
 public:
  struct Node;

  NodeKind kind() const;
  std::size_t domain_arity() const;
  std::size_t codomain_arity() const;

  /// Wrapped expression of DimLift / ProjectLift / PhiCompose-with-base.
  const FunctionExpr& inner() const;
  bool has_inner() const;
  /// Trailing-pair surjection of a DimLift.
  const FunctionExpr& pair() const;
  /// Span member of a PhiCompose.
  const VectorSpanMember& member() const;
  /// component_reduce(member()), computed once at construction.
  const std::vector<ScalarSpan>& member_components() const;

  std::string describe() const;

  explicit FunctionExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

 private:
  std::shared_ptr<const Node> node_;
};

/// g : R -> R^2. g(t) = (0,0) for t <= 0; on each [n-1, n] the first half
/// is a straight bridge from (n-1, 1-n) to (-n, -n) and the second half an
/// affinely scaled Hilbert curve filling B_n = [-n, n]^2, ending at (n, -n).
FunctionExpr extend_to_line();

/// (id^{n-1} x g) o f for f in S_{1,n}, with g = extend_to_line(). For
/// f = g this is (id x g) o g in S_{1,3}.
FunctionExpr lift_dimension(const FunctionExpr& f, const FactoryLimits& limits = {});

/// F(x_1, ..., x_m) = g(x_1). DomainError for target_m < 1.
FunctionExpr project_lift(const FunctionExpr& g, std::size_t target_m,
                          const FactoryLimits& limits = {});

/// v o base, or v alone (R^n -> R^n) when base is empty.
FunctionExpr phi_compose(VectorSpanMember member, std::optional<FunctionExpr> base = std::nullopt);

/// Every span member appearing in the tree, outermost first.
std::vector<const VectorSpanMember*> span_members(const FunctionExpr& expr);

// ---------------------------------------------------------------------------
// Evaluation

using Point = std::vector<Dyadic>;

Point to_point(std::span<const double> values);
std::vector<double> to_doubles(std::span<const Dyadic> values);

struct EvalRequest {
  Point point;
  unsigned depth = 16;
  double precision = 1e-6;
};

struct EvalResult {
  std::vector<double> value;
  /// Bound on |value at depth k+1 - value at depth k|_inf.
  double refinement_bound = 0.0;
  bool meets_precision = false;
};

struct EvalLimits {
  unsigned max_depth = 256;
};

/// Value of the depth-k approximant. StructuralError on arity mismatch,
/// ResourceError when depth exceeds the cap, DomainError for depth 0 or a
/// non-positive precision.
EvalResult evaluate(const FunctionExpr& expr, const EvalRequest& request,
                    const EvalLimits& limits = {});

/// Exact (dyadic) value of the depth-k approximant. Nodes below a PhiCompose
/// are exact; a PhiCompose output is the double result converted exactly.
Point evaluate_exact(const FunctionExpr& expr, const Point& point, unsigned depth);

/// Bound on |F(x) - F(x')|_inf at depth k for |x|_inf, |x'|_inf <= radius
/// and |x - x'|_inf <= delta.
double modulus_estimate(const FunctionExpr& expr, unsigned depth, double radius, double delta);

/// Bound on |F(x)|_inf for |x|_inf <= radius at any depth.
double range_bound(const FunctionExpr& expr, double radius);

// ---------------------------------------------------------------------------
// Preimages

struct PreimageOptions {
  /// Number of times the tolerance budget is halved after a failed check.
  unsigned max_refinements = 4;
  unsigned max_depth = 256;
};

struct PreimageResult {
  Point point;
  /// Depth at which evaluate() reproduces the target within epsilon; every
  /// larger depth does too.
  unsigned depth = 0;
  double achieved_error = 0.0;
};

class RefinementFailure : public ResourceError {
 public:
  RefinementFailure(const std::string& what, PreimageResult best)
      : ResourceError(what), best_(std::move(best)) {}
  const PreimageResult& best() const noexcept { return best_; }

 private:
  PreimageResult best_;
};

/// x with |evaluate(expr, x, depth) - target|_inf <= epsilon.
PreimageResult preimage(const FunctionExpr& expr, std::span<const double> target, double epsilon,
                        const PreimageOptions& options = {});

}  // namespace surj
