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

#include "surj/expr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "surj/curve.hpp"
#include "surj/format.hpp"
#include "surj/peano_line.hpp"

namespace surj {

struct FunctionExpr::Node {
  NodeKind kind = NodeKind::PeanoLine;
  std::size_t domain = 1;
  std::size_t codomain = 2;
  std::optional<FunctionExpr> inner;
  std::optional<FunctionExpr> pair;
  std::optional<VectorSpanMember> member;
  std::vector<ScalarSpan> components;
};

NodeKind FunctionExpr::kind() const { return node_->kind; }
std::size_t FunctionExpr::domain_arity() const { return node_->domain; }
std::size_t FunctionExpr::codomain_arity() const { return node_->codomain; }
bool FunctionExpr::has_inner() const { return node_->inner.has_value(); }

const FunctionExpr& FunctionExpr::inner() const {
  if (!node_->inner) throw StructuralError("expression has no inner node");
  return *node_->inner;
}

const FunctionExpr& FunctionExpr::pair() const {
  if (!node_->pair) throw StructuralError("expression is not a dimension lift");
  return *node_->pair;
}

const VectorSpanMember& FunctionExpr::member() const {
  if (!node_->member) throw StructuralError("expression is not a span composition");
  return *node_->member;
}

const std::vector<ScalarSpan>& FunctionExpr::member_components() const {
  return node_->components;
}

std::string FunctionExpr::describe() const {
  switch (node_->kind) {
    case NodeKind::PeanoLine:
      return "peano";
    case NodeKind::DimLift: {
      return "lift(" + node_->inner->describe() + ")";
    }
    case NodeKind::ProjectLift:
      return "project<" + std::to_string(node_->domain) + ">(" + node_->inner->describe() + ")";
    case NodeKind::PhiCompose: {
      std::string out = "phi[" + node_->member->describe() + "]";
      if (node_->inner) out += "(" + node_->inner->describe() + ")";
      return out;
    }
  }
  return "?";
}

FunctionExpr extend_to_line() {
  auto node = std::make_shared<FunctionExpr::Node>();
  node->kind = NodeKind::PeanoLine;
  return FunctionExpr(std::move(node));
}

FunctionExpr lift_dimension(const FunctionExpr& f, const FactoryLimits& limits) {
  if (f.domain_arity() != 1 || f.codomain_arity() < 2) {
    throw StructuralError("lift_dimension: expected an S_{1,n} expression with n >= 2, got S_{" +
                          std::to_string(f.domain_arity()) + "," +
                          std::to_string(f.codomain_arity()) + "}");
  }
  if (f.codomain_arity() + 1 > limits.max_codomain) {
    throw ResourceError("lift_dimension: codomain arity " + std::to_string(f.codomain_arity() + 1) +
                        " exceeds cap " + std::to_string(limits.max_codomain));
  }
  auto node = std::make_shared<FunctionExpr::Node>();
  node->kind = NodeKind::DimLift;
  node->domain = 1;
  node->codomain = f.codomain_arity() + 1;
  node->inner = f;
  node->pair = extend_to_line();
  return FunctionExpr(std::move(node));
}

FunctionExpr project_lift(const FunctionExpr& g, std::size_t target_m, const FactoryLimits& limits) {
  if (target_m < 1) throw DomainError("project_lift: target arity must be at least 1");
  if (g.domain_arity() != 1) throw StructuralError("project_lift: expected a domain arity of 1");
  if (target_m > limits.max_domain) {
    throw ResourceError("project_lift: domain arity " + std::to_string(target_m) + " exceeds cap " +
                        std::to_string(limits.max_domain));
  }
  auto node = std::make_shared<FunctionExpr::Node>();
  node->kind = NodeKind::ProjectLift;
  node->domain = target_m;
  node->codomain = g.codomain_arity();
  node->inner = g;
  return FunctionExpr(std::move(node));
}

FunctionExpr phi_compose(VectorSpanMember member, std::optional<FunctionExpr> base) {
  if (member.arity() == 0) throw StructuralError("phi_compose: member has arity 0");
  if (base && base->codomain_arity() != member.arity()) {
    throw StructuralError("phi_compose: member arity " + std::to_string(member.arity()) +
                          " does not match base codomain " +
                          std::to_string(base->codomain_arity()));
  }
  auto node = std::make_shared<FunctionExpr::Node>();
  node->kind = NodeKind::PhiCompose;
  node->domain = base ? base->domain_arity() : member.arity();
  node->codomain = member.arity();
  node->components = component_reduce(member);
  node->member = std::move(member);
  node->inner = std::move(base);
  return FunctionExpr(std::move(node));
}

std::vector<const VectorSpanMember*> span_members(const FunctionExpr& expr) {
  std::vector<const VectorSpanMember*> out;
  const FunctionExpr* cursor = &expr;
  std::vector<const FunctionExpr*> stack{cursor};
  while (!stack.empty()) {
    cursor = stack.back();
    stack.pop_back();
    if (cursor->kind() == NodeKind::PhiCompose) out.push_back(&cursor->member());
    if (cursor->kind() == NodeKind::DimLift) stack.push_back(&cursor->pair());
    if (cursor->has_inner()) stack.push_back(&cursor->inner());
  }
  return out;
}

// ---------------------------------------------------------------------------

Point to_point(std::span<const double> values) {
  Point out;
  out.reserve(values.size());
  for (double v : values) out.push_back(Dyadic::from_double(v));
  return out;
}

std::vector<double> to_doubles(std::span<const Dyadic> values) {
  std::vector<double> out;
  out.reserve(values.size());
  for (const Dyadic& v : values) out.push_back(v.to_double());
  return out;
}

namespace {

double ulp(double x) {
  const double a = std::fabs(x);
  return std::nextafter(a, std::numeric_limits<double>::infinity()) - a;
}

struct Traced {
  Point value;
  std::vector<double> bound;  // per-coordinate refinement bound
};

Traced trace(const FunctionExpr& expr, const Point& x, unsigned depth) {
  switch (expr.kind()) {
    case NodeKind::PeanoLine: {
      const PeanoValue v = peano_line_value(x.at(0), depth);
      return {{v.point.x, v.point.y}, {v.refinement, v.refinement}};
    }
    case NodeKind::ProjectLift:
      return trace(expr.inner(), {x.at(0)}, depth);
    case NodeKind::DimLift: {
      Traced in = trace(expr.inner(), x, depth);
      const Dyadic s = in.value.back();
      const double slack = in.bound.back();
      Traced pair = trace(expr.pair(), {s}, depth);
      const double radius = std::fabs(s.to_double()) + slack;
      const double carried = slack == 0.0 ? 0.0 : modulus_estimate(expr.pair(), depth + 1, radius, slack);
      in.value.pop_back();
      in.bound.pop_back();
      for (std::size_t j = 0; j < 2; ++j) {
        in.value.push_back(std::move(pair.value[j]));
        in.bound.push_back(pair.bound[j] + carried);
      }
      return in;
    }
    case NodeKind::PhiCompose: {
      Traced in = expr.has_inner() ? trace(expr.inner(), x, depth)
                                   : Traced{x, std::vector<double>(x.size(), 0.0)};
      const auto& spans = expr.member_components();
      Traced out;
      for (std::size_t j = 0; j < spans.size(); ++j) {
        const double z = in.value[j].to_double();
        const double y = spans[j](z);
        if (!std::isfinite(y)) throw ResourceError("evaluate: span value overflows a double");
        out.value.push_back(Dyadic::from_double(y));
        const double e = in.bound[j];
        double b = 0.0;
        if (e > 0.0) {
          // Input moves by at most e plus one rounding step of the conversion.
          const double step = e + 2.0 * ulp(z);
          b = spans[j].derivative_bound(std::fabs(z) + step) * step + 8.0 * ulp(y);
        }
        out.bound.push_back(b);
      }
      return out;
    }
  }
  throw StructuralError("unknown node kind");
}

}  // namespace

Point evaluate_exact(const FunctionExpr& expr, const Point& point, unsigned depth) {
  if (point.size() != expr.domain_arity()) {
    throw StructuralError("evaluate: point has arity " + std::to_string(point.size()) +
                          ", expression expects " + std::to_string(expr.domain_arity()));
  }
  return trace(expr, point, depth).value;
}

EvalResult evaluate(const FunctionExpr& expr, const EvalRequest& request, const EvalLimits& limits) {
  if (request.point.size() != expr.domain_arity()) {
    throw StructuralError("evaluate: point has arity " + std::to_string(request.point.size()) +
                          ", expression expects " + std::to_string(expr.domain_arity()));
  }
  if (request.depth < 1) throw DomainError("evaluate: depth must be at least 1");
  if (!(request.precision > 0.0)) throw DomainError("evaluate: precision must be positive");
  if (request.depth > limits.max_depth) {
    throw ResourceError("evaluate: depth " + std::to_string(request.depth) + " exceeds cap " +
                        std::to_string(limits.max_depth));
  }
  const Traced t = trace(expr, request.point, request.depth);
  EvalResult result;
  result.value = to_doubles(t.value);
  double bound = *std::max_element(t.bound.begin(), t.bound.end());
  if (bound > 0.0) {
    double magnitude = 0.0;
    for (double v : result.value) magnitude = std::max(magnitude, std::fabs(v));
    bound += ulp(magnitude);
  }
  result.refinement_bound = bound;
  result.meets_precision = bound <= request.precision;
  return result;
}

double range_bound(const FunctionExpr& expr, double radius) {
  switch (expr.kind()) {
    case NodeKind::PeanoLine:
      return radius <= 0.0 ? 0.0 : std::ceil(radius);
    case NodeKind::ProjectLift:
      return range_bound(expr.inner(), radius);
    case NodeKind::DimLift: {
      const double inner = range_bound(expr.inner(), radius);
      return std::max(inner, range_bound(expr.pair(), inner));
    }
    case NodeKind::PhiCompose: {
      const double rho = expr.has_inner() ? range_bound(expr.inner(), radius) : radius;
      double out = 0.0;
      for (const ScalarSpan& s : expr.member_components()) {
        double sum = 0.0;
        for (const SpanTerm& t : s.terms()) sum += std::fabs(t.coefficient) * 2.0 * std::sinh(t.exponent * rho);
        out = std::max(out, sum);
      }
      return out;
    }
  }
  return 0.0;
}

double modulus_estimate(const FunctionExpr& expr, unsigned depth, double radius, double delta) {
  if (delta <= 0.0) return 0.0;
  switch (expr.kind()) {
    case NodeKind::PeanoLine:
      return std::min(peano_line_lipschitz(depth, radius) * delta, 2.0 * range_bound(expr, radius));
    case NodeKind::ProjectLift:
      return modulus_estimate(expr.inner(), depth, radius, delta);
    case NodeKind::DimLift: {
      const double b = modulus_estimate(expr.inner(), depth, radius, delta);
      const double rho = range_bound(expr.inner(), radius);
      return std::max(b, modulus_estimate(expr.pair(), depth, rho, b));
    }
    case NodeKind::PhiCompose: {
      const double b = expr.has_inner() ? modulus_estimate(expr.inner(), depth, radius, delta) : delta;
      const double rho = expr.has_inner() ? range_bound(expr.inner(), radius) : radius;
      double out = 0.0;
      for (const ScalarSpan& s : expr.member_components()) out = std::max(out, s.derivative_bound(rho) * b);
      return out + 16.0 * ulp(range_bound(expr, radius));
    }
  }
  return 0.0;
}

}  // namespace surj
