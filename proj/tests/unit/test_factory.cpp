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
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles/hilbert_oracle.hpp"
#include "surj/errors.hpp"
#include "surj/expr.hpp"

using surj::BigInt;
using surj::Dyadic;
using surj::FunctionExpr;
using surj::Point;

namespace {

std::vector<double> eval(const FunctionExpr& f, const Point& x, unsigned depth) {
  return surj::evaluate(f, {x, depth, 1e-6}).value;
}

std::vector<double> eval_d(const FunctionExpr& f, std::vector<double> x, unsigned depth) {
  return eval(f, surj::to_point(x), depth);
}

double sup_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
  return d;
}

BigInt from_u128(unsigned __int128 v) {
  BigInt hi(static_cast<std::uint64_t>(v >> 64));
  return (hi << 64) | BigInt(static_cast<std::uint64_t>(v));
}

// Center of the parameter interval that the oracle assigns to a cell.
Dyadic oracle_parameter(const surj::oracle::LineCell& c) {
  const auto n = static_cast<long long>(c.segment);
  return Dyadic(BigInt(2 * n - 1), -1) +
         Dyadic(2 * from_u128(c.index) + 1, -2 * static_cast<std::int64_t>(c.depth) - 2);
}

Dyadic oracle_half_length(const surj::oracle::LineCell& c) {
  return Dyadic(1, -2 * static_cast<std::int64_t>(c.depth) - 2);
}

bool in_box(const surj::oracle::Box& b, double x, double y) {
  return x >= b.x0 && x <= b.x0 + b.side && y >= b.y0 && y <= b.y0 + b.side;
}

FunctionExpr g() { return surj::extend_to_line(); }

}  // namespace

TEST_CASE("extend_to_line basics") {
  const FunctionExpr line = g();
  CHECK(line.domain_arity() == 1);
  CHECK(line.codomain_arity() == 2);
  CHECK(line.kind() == surj::NodeKind::PeanoLine);
  for (double t : {-5.0, -1e-9, 0.0}) CHECK(eval_d(line, {t}, 8) == std::vector<double>{0, 0});
  // Segment n starts at (n-1, 1-n), reaches (-n, -n) half way and ends at (n, -n).
  for (long long n = 1; n <= 5; ++n) {
    for (unsigned k : {1U, 6U}) {
      const double m = static_cast<double>(n);
      CHECK(eval(line, {Dyadic(n - 1)}, k) == std::vector<double>{m - 1, 1 - m});
      CHECK(eval(line, {Dyadic(2 * n - 1, -1)}, k) == std::vector<double>{-m, -m});
      CHECK(eval(line, {Dyadic(n)}, k) == std::vector<double>{m, -m});
    }
  }
  // Bridge is straight.
  const auto quarter = eval(line, {Dyadic(5, -2)}, 4);  // t = 1.25
  CHECK(quarter == std::vector<double>{-0.5, -1.5});
}

TEST_CASE("junctions are continuous within the modulus bound") {
  const FunctionExpr line = g();
  for (unsigned depth : {4U, 10U, 16U}) {
    for (double n = 0; n <= 6; n += 0.5) {
      const auto left = eval_d(line, {n - 1e-9}, depth);
      const auto right = eval_d(line, {n + 1e-9}, depth);
      CHECK(sup_dist(left, right) <= surj::modulus_estimate(line, depth, n + 1, 2e-9));
    }
  }
}

TEST_CASE("coverage of [-2,2]^2 by g([0,3])") {
  const FunctionExpr line = g();
  const double eps = 1e-3;
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      const double x = -2.0 + 0.2 * i;
      const double y = -2.0 + 0.2 * j;
      // Smallest box holding the target, cell picked by the independent index.
      const auto c = surj::oracle::line_cell(x, y, eps);
      REQUIRE(in_box(c.box, x, y));
      const Dyadic t = oracle_parameter(c);
      CHECK(t >= Dyadic(0));
      CHECK(t <= Dyadic(3));
      const auto v = eval(line, {t}, c.depth);
      CHECK(in_box(c.box, v[0], v[1]));
      CHECK(sup_dist(v, {x, y}) <= eps);
    }
  }
}

TEST_CASE("lift_dimension") {
  const FunctionExpr h = surj::lift_dimension(g());
  CHECK(h.codomain_arity() == 3);
  CHECK(h.domain_arity() == 1);
  CHECK(h.kind() == surj::NodeKind::DimLift);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> t(-1.0, 6.0);
  for (int i = 0; i < 300; ++i) {
    const Point x = surj::to_point(std::vector<double>{t(rng)});
    const unsigned depth = 1 + static_cast<unsigned>(rng() % 20);
    const Point hv = surj::evaluate_exact(h, x, depth);
    const Point gv = surj::evaluate_exact(g(), x, depth);
    CHECK(hv[0] == gv[0]);
    // The tail is g applied to the last coordinate of the inner value.
    const Point tail = surj::evaluate_exact(g(), {gv[1]}, depth);
    CHECK(hv[1] == tail[0]);
    CHECK(hv[2] == tail[1]);
  }

  FunctionExpr f = g();
  for (std::size_t n = 3; n <= 6; ++n) {
    f = surj::lift_dimension(f);
    CHECK(f.codomain_arity() == n);
  }
  CHECK_THROWS_AS(surj::lift_dimension(f), surj::ResourceError);
  CHECK(surj::lift_dimension(f, {.max_codomain = 7}).codomain_arity() == 7);
  CHECK_THROWS_AS(surj::lift_dimension(surj::project_lift(g(), 2)), surj::StructuralError);
}

TEST_CASE("project_lift") {
  const FunctionExpr f3 = surj::project_lift(g(), 3);
  CHECK(f3.domain_arity() == 3);
  CHECK(f3.codomain_arity() == 2);
  CHECK(eval_d(f3, {1, 2, 3}, 9) == eval_d(g(), {1}, 9));
  CHECK(eval_d(f3, {-1, 7, 9}, 9) == std::vector<double>{0, 0});

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int i = 0; i < 200; ++i) {
    const double a = u(rng) / 10;
    CHECK(eval_d(f3, {a, u(rng), u(rng)}, 12) == eval_d(f3, {a, u(rng), u(rng)}, 12));
  }
  const FunctionExpr f1 = surj::project_lift(g(), 1);
  for (double t : {-1.0, 0.3, 2.7}) CHECK(eval_d(f1, {t}, 10) == eval_d(g(), {t}, 10));
  CHECK_THROWS_AS(surj::project_lift(g(), 0), surj::DomainError);
  CHECK_THROWS_AS(surj::project_lift(f3, 2), surj::StructuralError);
}

TEST_CASE("evaluate errors and PhiCompose law") {
  const FunctionExpr line = g();
  CHECK_THROWS_AS(surj::evaluate(line, {surj::to_point(std::vector<double>{1, 2}), 4, 1e-3}),
                  surj::StructuralError);
  CHECK_THROWS_AS(surj::evaluate(line, {{Dyadic(1)}, 0, 1e-3}), surj::DomainError);
  CHECK_THROWS_AS(surj::evaluate(line, {{Dyadic(1)}, 4, 0.0}), surj::DomainError);
  CHECK_THROWS_AS(surj::evaluate(line, {{Dyadic(1)}, 257, 1e-3}), surj::ResourceError);
  CHECK_NOTHROW(surj::evaluate(line, {{Dyadic(1)}, 256, 1e-3}));

  const surj::VectorSpanMember v({{1.5, {1, 2}}, {-0.5, {3, 0.5}}}, 2);
  const FunctionExpr composed = surj::phi_compose(v, line);
  const FunctionExpr bare = surj::phi_compose(v);
  CHECK(bare.domain_arity() == 2);
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> t(-0.5, 3.0);
  for (int i = 0; i < 200; ++i) {
    const std::vector<double> x{t(rng)};
    const auto inner = eval_d(line, x, 10);
    CHECK(eval_d(composed, x, 10) == v(inner));
    CHECK(eval_d(bare, inner, 10) == v(inner));
  }
}

TEST_CASE("one more depth moves the value by at most the reported bound") {
  const surj::VectorSpanMember v({{1.0, {1, 1, 1}}}, 3);
  const surj::VectorSpanMember w({{1.0, {0.5, 0.7}}, {-2.0, {0.25, 0.1}}}, 2);
  const std::vector<FunctionExpr> exprs{
      g(),
      surj::lift_dimension(g()),
      surj::lift_dimension(surj::lift_dimension(g())),
      surj::project_lift(surj::lift_dimension(g()), 2),
      surj::phi_compose(v, surj::project_lift(surj::lift_dimension(g()), 2)),
      surj::phi_compose(w, g()),
  };
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 4.0);
  for (int i = 0; i < 1000; ++i) {
    const FunctionExpr& f = exprs[static_cast<std::size_t>(i) % exprs.size()];
    std::vector<double> x(f.domain_arity());
    for (double& xi : x) xi = u(rng);
    const unsigned depth = 1 + static_cast<unsigned>(rng() % 14);
    const auto coarse = surj::evaluate(f, {surj::to_point(x), depth, 1e-6});
    const auto fine = eval_d(f, x, depth + 1);
    CHECK(sup_dist(coarse.value, fine) <= coarse.refinement_bound);
  }
}

TEST_CASE("continuity: nearby inputs stay within the modulus estimate") {
  const surj::VectorSpanMember v({{1.0, {1, 1, 1}}, {0.5, {2, 2, 2}}}, 3);
  const std::vector<FunctionExpr> exprs{
      g(),
      surj::lift_dimension(g()),
      surj::project_lift(g(), 2),
      surj::phi_compose(v, surj::project_lift(surj::lift_dimension(g()), 2)),
  };
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(-1.0, 3.0);
  for (int i = 0; i < 800; ++i) {
    const FunctionExpr& f = exprs[static_cast<std::size_t>(i) % exprs.size()];
    const double delta = std::ldexp(1.0, -static_cast<int>(rng() % 30));
    std::uniform_real_distribution<double> step(-delta, delta);
    std::vector<double> x(f.domain_arity());
    std::vector<double> y(f.domain_arity());
    for (std::size_t j = 0; j < x.size(); ++j) {
      x[j] = u(rng);
      y[j] = x[j] + step(rng);
    }
    double radius = 0;
    for (std::size_t j = 0; j < x.size(); ++j) radius = std::max({radius, std::fabs(x[j]), std::fabs(y[j])});
    const unsigned depth = 1 + static_cast<unsigned>(rng() % 16);
    CHECK(sup_dist(eval_d(f, x, depth), eval_d(f, y, depth)) <=
          surj::modulus_estimate(f, depth, radius, delta));
  }
}

TEST_CASE("preimage of the origin and round trips") {
  const FunctionExpr line = g();
  const std::vector<double> origin{0, 0};
  const auto o = surj::preimage(line, origin, 1e-6);
  CHECK(o.point[0] <= Dyadic(0));
  CHECK(o.achieved_error == 0.0);

  const surj::VectorSpanMember v({{1.0, {1, 1, 1}}, {-0.25, {0.5, 0.5, 0.5}}}, 3);
  const std::vector<FunctionExpr> exprs{
      line,
      surj::lift_dimension(line),
      surj::project_lift(surj::lift_dimension(line), 2),
      surj::phi_compose(v, surj::project_lift(surj::lift_dimension(line), 2)),
      surj::phi_compose(surj::VectorSpanMember({{2.0, {1, 3}}}, 2)),
  };
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> u(-0.5, 4.0);
  for (int i = 0; i < 150; ++i) {
    const FunctionExpr& f = exprs[static_cast<std::size_t>(i) % exprs.size()];
    std::vector<double> x(f.domain_arity());
    for (double& xi : x) xi = u(rng);
    const auto target = eval_d(f, x, 1 + static_cast<unsigned>(rng() % 12));
    for (double eps : {1e-2, 1e-5}) {
      const auto p = surj::preimage(f, target, eps);
      CHECK(p.achieved_error <= eps);
      CHECK(sup_dist(eval(f, p.point, p.depth), target) <= eps);
      // Deeper approximants keep the witness.
      CHECK(sup_dist(eval(f, p.point, p.depth + 1), target) <= eps);
      CHECK(sup_dist(eval(f, p.point, p.depth + 7), target) <= eps);
    }
  }
  const std::vector<double> bad{1, 2, 3};
  CHECK_THROWS_AS(surj::preimage(line, bad, 1e-3), surj::StructuralError);
  CHECK_THROWS_AS(surj::preimage(line, origin, 0.0), surj::DomainError);
  CHECK_THROWS_AS(surj::preimage(line, origin, 1e-3, {.max_refinements = 4, .max_depth = 0}),
                  surj::ResourceError);
}

TEST_CASE("depth cap yields a refinement failure with the best witness") {
  const std::vector<double> far{3.3, -1.7};
  try {
    (void)surj::preimage(g(), far, 1e-9, {.max_refinements = 4, .max_depth = 20});
    FAIL("expected a failure");
  } catch (const surj::ResourceError& e) {
    CHECK(std::string(e.what()).find("exceeds cap") != std::string::npos);
  }
}

TEST_CASE("2 -> 3 pipeline on [-5,5]^3: oracle and preimage both find witnesses") {
  const FunctionExpr f = surj::project_lift(surj::lift_dimension(g()), 2);
  const double eps = 1e-3;
  const double step = 10.0 / 6.0;
  int oracle_hits = 0;
  int solver_hits = 0;
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 7; ++j) {
      for (int l = 0; l < 7; ++l) {
        const std::vector<double> target{-5 + step * i, -5 + step * j, -5 + step * l};
        // Inner: s with g(s) near (b, c), good on a whole parameter interval.
        const auto inner = surj::oracle::line_cell(target[1], target[2], eps);
        const Dyadic s = oracle_parameter(inner);
        // Outer: t with g(t) in a cell around (a, s) thinner than that interval.
        const double half = oracle_half_length(inner).to_double();
        const auto outer = surj::oracle::line_cell(target[0], s.to_double(), std::min(eps, half));
        const Dyadic t = oracle_parameter(outer);
        const unsigned depth = std::max(inner.depth, outer.depth);
        if (sup_dist(eval(f, {t, Dyadic(0)}, depth), target) <= eps) ++oracle_hits;
        if (surj::preimage(f, target, eps).achieved_error <= eps) ++solver_hits;
      }
    }
  }
  CHECK(oracle_hits == 343);
  CHECK(solver_hits == 343);
}
