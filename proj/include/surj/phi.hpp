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
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace surj {

/// phi_r(t) = e^{rt} - e^{-rt} = 2 sinh(rt). Throws DomainError for r <= 0.
double phi_eval(double r, double t);

/// The unique t with phi_r(t) = y, i.e. asinh(y / 2) / r.
double phi_inverse(double r, double y);

struct SpanTerm {
  double coefficient;
  double exponent;

  friend bool operator==(const SpanTerm&, const SpanTerm&) = default;
};

/*
 * Finite combination sum_i a_i phi_{r_i}. Normalized on construction: equal
 * exponents (exact equality) are merged, zero coefficients dropped, and terms
 * sorted by strictly decreasing exponent. No terms is the zero function.
 */
class ScalarSpan {
 public:
  ScalarSpan() = default;

  const std::vector<SpanTerm>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  const SpanTerm& leading() const { return terms_.front(); }

  /// Saturates to +-infinity when the true value overflows a double.
  double operator()(double t) const;

  /// Upper bound on |s'(u)| for |u| <= radius.
  double derivative_bound(double radius) const;

  std::string describe() const;

  friend bool operator==(const ScalarSpan&, const ScalarSpan&) = default;

 private:
  friend ScalarSpan make_scalar_span(std::span<const SpanTerm> pairs);
  std::vector<SpanTerm> terms_;
};

/// Throws DomainError for a non-positive or non-finite exponent.
ScalarSpan make_scalar_span(std::span<const SpanTerm> pairs);

enum class Limit { PlusInfinity, MinusInfinity, ZeroFunction };

struct Asymptotics {
  Limit at_plus_infinity;
  Limit at_minus_infinity;

  friend bool operator==(const Asymptotics&, const Asymptotics&) = default;
};

/// The largest exponent's coefficient decides both limits.
Asymptotics classify_asymptotics(const ScalarSpan& s);

struct SolveLimits {
  /// Bracket half-width doubles from 1 up to 2^max_doublings.
  unsigned max_doublings = 60;
  unsigned max_bisections = 400;
};

/// t with |s(t) - y| <= tol. NoSolutionError for the zero span, ResourceError
/// when no bracket is found or the tolerance is below double resolution.
double scalar_solve(const ScalarSpan& s, double y, double tol, const SolveLimits& limits = {});

struct VectorTerm {
  double coefficient;
  std::vector<double> exponents;

  friend bool operator==(const VectorTerm&, const VectorTerm&) = default;
};

/// sum_i l_i (phi_{r_i1}(x_1), ..., phi_{r_in}(x_n)), terms with identical
/// exponent vectors merged, zero coefficients dropped.
class VectorSpanMember {
 public:
  VectorSpanMember() = default;

  /// Throws DomainError for non-positive exponents, StructuralError when an
  /// exponent vector does not have `arity` entries.
  VectorSpanMember(std::vector<VectorTerm> terms, std::size_t arity);

  std::size_t arity() const noexcept { return arity_; }
  const std::vector<VectorTerm>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  std::vector<double> operator()(std::span<const double> x) const;

  VectorSpanMember scaled(double factor) const;
  VectorSpanMember operator+(const VectorSpanMember& rhs) const;

  std::string describe() const;

  friend bool operator==(const VectorSpanMember&, const VectorSpanMember&) = default;

 private:
  std::vector<VectorTerm> terms_;
  std::size_t arity_ = 0;
};

/// Coordinate j reduces to the ScalarSpan with terms (l_i, r_ij).
std::vector<ScalarSpan> component_reduce(const VectorSpanMember& v);

/// phi_{(r,...,r)} for each exponent r. Throws DomainError on duplicates.
std::vector<VectorSpanMember> make_diagonal_family(std::span<const double> exponents,
                                                   std::size_t arity);

/// sum_i c_i v_i; all members must share one arity.
VectorSpanMember linear_combination(std::span<const double> coefficients,
                                    std::span<const VectorSpanMember> members);

}  // namespace surj
