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

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "surj/expr.hpp"
#include "surj/format.hpp"
#include "surj/peano_line.hpp"

// Analytic inversion chain. Each node receives a target and a per-coordinate
// tolerance and returns a domain point together with the smallest depth from
// which the expression stays within tolerance.

namespace surj {

namespace {

struct Solved {
  Point point;
  unsigned depth = 0;
};

Solved solve(const FunctionExpr& expr, const Point& target, const std::vector<double>& tol);

Solved solve_peano(const Point& target, const std::vector<double>& tol) {
  const ParameterCell cell = peano_line_locate(target[0], target[1], std::min(tol[0], tol[1]));
  // The constant region: t = 0 maps exactly to the origin.
  if (cell.start.sign() < 0) return {{Dyadic{}}, 0};
  return {{cell.start}, cell.min_depth};
}

Solved solve_lift(const FunctionExpr& expr, const Point& target, const std::vector<double>& tol) {
  const std::size_t n = target.size();
  // Outer pair first: any s in the returned interval lands within tolerance.
  const ParameterCell cell =
      peano_line_locate(target[n - 2], target[n - 1], std::min(tol[n - 2], tol[n - 1]));
  const Dyadic half_length = cell.length.scaled(-1);

  Point inner_target(target.begin(), target.end() - 2);
  inner_target.push_back(cell.start + half_length);
  std::vector<double> inner_tol(tol.begin(), tol.end() - 2);
  inner_tol.push_back(half_length.to_double());

  Solved inner = solve(expr.inner(), inner_target, inner_tol);
  inner.depth = std::max(inner.depth, cell.min_depth);
  return inner;
}

Solved solve_phi(const FunctionExpr& expr, const Point& target, const std::vector<double>& tol) {
  const auto& spans = expr.member_components();
  std::vector<double> z(spans.size());
  std::vector<double> inner_tol(spans.size());
  for (std::size_t j = 0; j < spans.size(); ++j) {
    if (spans[j].is_zero()) {
      throw DegenerateMemberError(j, "span member " + expr.member().describe() +
                                         " is degenerate: coordinate " + std::to_string(j + 1) +
                                         " reduces to the zero span (see detect_degenerate)");
    }
    const double y = target[j].to_double();
    z[j] = scalar_solve(spans[j], y, tol[j] / 4.0);
    const double residual = std::fabs(spans[j](z[j]) - y);
    // Half of the remaining slack goes to the inner expression, the rest
    // absorbs rounding when its exact output is converted back to double.
    const double slope = spans[j].derivative_bound(std::fabs(z[j]) + 1.0);
    inner_tol[j] = std::min(1.0, (tol[j] - residual) / (2.0 * slope));
    if (!(inner_tol[j] > 0.0)) throw ResourceError("preimage: span slope exhausts the tolerance");
  }
  if (!expr.has_inner()) return {to_point(z), 0};
  return solve(expr.inner(), to_point(z), inner_tol);
}

Solved solve(const FunctionExpr& expr, const Point& target, const std::vector<double>& tol) {
  switch (expr.kind()) {
    case NodeKind::PeanoLine:
      return solve_peano(target, tol);
    case NodeKind::DimLift:
      return solve_lift(expr, target, tol);
    case NodeKind::ProjectLift: {
      Solved s = solve(expr.inner(), target, tol);
      s.point.resize(expr.domain_arity(), Dyadic{});
      return s;
    }
    case NodeKind::PhiCompose:
      return solve_phi(expr, target, tol);
  }
  throw StructuralError("unknown node kind");
}

double sup_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
  return d;
}

}  // namespace

PreimageResult preimage(const FunctionExpr& expr, std::span<const double> target, double epsilon,
                        const PreimageOptions& options) {
  if (target.size() != expr.codomain_arity()) {
    throw StructuralError("preimage: target has arity " + std::to_string(target.size()) +
                          ", expression maps into R^" + std::to_string(expr.codomain_arity()));
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("preimage: epsilon must be a positive real");
  }
  for (double v : target) {
    if (!std::isfinite(v)) throw DomainError("preimage: target must be finite");
  }

  const Point exact_target = to_point(target);
  std::optional<PreimageResult> best;
  double budget = epsilon;
  for (unsigned attempt = 0; attempt <= options.max_refinements; ++attempt, budget /= 2.0) {
    Solved solved;
    try {
      solved = solve(expr, exact_target, std::vector<double>(target.size(), budget));
    } catch (const RefinementFailure&) {
      throw;
    } catch (const ResourceError& e) {
      if (best) throw RefinementFailure(e.what(), *best);
      throw;
    }
    const unsigned depth = std::max(1U, solved.depth);
    if (depth > options.max_depth) {
      const std::string what = "preimage: required depth " + std::to_string(depth) +
                               " exceeds cap " + std::to_string(options.max_depth);
      if (best) throw RefinementFailure(what, *best);
      throw ResourceError(what);
    }
    EvalRequest request{solved.point, depth, epsilon};
    const EvalResult value = evaluate(expr, request, {options.max_depth});
    PreimageResult candidate{std::move(solved.point), depth, sup_distance(value.value, target)};
    if (candidate.achieved_error <= epsilon) return candidate;
    if (!best || candidate.achieved_error < best->achieved_error) best = std::move(candidate);
  }
  throw RefinementFailure("preimage: no witness within " + format_real(epsilon) + " after " +
                              std::to_string(options.max_refinements) + " refinements",
                          *best);
}

}  // namespace surj
