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

#include "surj/phi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "surj/errors.hpp"
#include "surj/format.hpp"

namespace surj {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// log(DBL_MAX)
constexpr double kLogMax = 709.782712893384;
// Below this |r t| the plain sum of 2 sinh terms cannot overflow per term.
constexpr double kPlainLimit = 700.0;

void require_exponent(double r, const char* op) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw DomainError(std::string(op) + ": exponent must be a positive real, got " +
                      format_real(r));
  }
}

double sign_of(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

}  // namespace

double phi_eval(double r, double t) {
  require_exponent(r, "phi_eval");
  return 2.0 * std::sinh(r * t);
}

double phi_inverse(double r, double y) {
  require_exponent(r, "phi_inverse");
  return std::asinh(y / 2.0) / r;
}

ScalarSpan make_scalar_span(std::span<const SpanTerm> pairs) {
  std::map<double, double, std::greater<>> merged;
  for (const SpanTerm& p : pairs) {
    require_exponent(p.exponent, "make_scalar_span");
    if (!std::isfinite(p.coefficient)) throw DomainError("make_scalar_span: non-finite coefficient");
    merged[p.exponent] += p.coefficient;
  }
  ScalarSpan out;
  for (const auto& [exponent, coefficient] : merged) {
    if (coefficient != 0.0) out.terms_.push_back({coefficient, exponent});
  }
  return out;
}

double ScalarSpan::operator()(double t) const {
  if (terms_.empty() || t == 0.0) return 0.0;
  const double r1 = terms_.front().exponent;
  if (r1 * std::fabs(t) <= kPlainLimit) {
    double sum = 0.0;
    for (const SpanTerm& term : terms_) sum += term.coefficient * 2.0 * std::sinh(term.exponent * t);
    if (!std::isnan(sum)) return sum;
  }
  // Factor out e^{r1 |t|}; the remaining sum is bounded by sum |a_i|.
  const double a = std::fabs(t);
  double scaled = 0.0;
  for (const SpanTerm& term : terms_) {
    scaled += term.coefficient *
              (std::exp((term.exponent - r1) * a) - std::exp(-(term.exponent + r1) * a));
  }
  const double direction = sign_of(t) * sign_of(scaled);
  if (direction == 0.0) return 0.0;
  if (std::log(std::fabs(scaled)) + r1 * a >= kLogMax) return direction * kInf;
  return sign_of(t) * scaled * std::exp(r1 * a);
}

double ScalarSpan::derivative_bound(double radius) const {
  double bound = 0.0;
  for (const SpanTerm& term : terms_) {
    bound += std::fabs(term.coefficient) * term.exponent * 2.0 *
             std::cosh(term.exponent * std::fabs(radius));
  }
  return bound;
}

std::string ScalarSpan::describe() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const SpanTerm& term : terms_) {
    if (!first) os << " + ";
    os << format_real(term.coefficient) << "*phi_" << format_real(term.exponent);
    first = false;
  }
  return os.str();
}

Asymptotics classify_asymptotics(const ScalarSpan& s) {
  if (s.is_zero()) return {Limit::ZeroFunction, Limit::ZeroFunction};
  if (s.leading().coefficient > 0) return {Limit::PlusInfinity, Limit::MinusInfinity};
  return {Limit::MinusInfinity, Limit::PlusInfinity};
}

double scalar_solve(const ScalarSpan& s, double y, double tol, const SolveLimits& limits) {
  if (s.is_zero()) throw NoSolutionError("scalar_solve: the zero span is not surjective");
  if (!(tol > 0.0)) throw DomainError("scalar_solve: tolerance must be positive");
  if (!std::isfinite(y)) throw DomainError("scalar_solve: target must be finite");

  auto residual = [&](double t) { return s(t) - y; };
  if (std::fabs(residual(0.0)) <= tol) return 0.0;

  // Scan shells [T/2, T] and [-T, -T/2] outward from zero and take the first
  // sign change: near roots are far better conditioned than the one the
  // leading term guarantees at large |t|. The limits at +-inf ensure a sign
  // change eventually appears.
  double lo = 0.0;
  double hi = 0.0;
  bool bracketed = false;
  double inner = 0.0;
  double r_pos = residual(0.0);
  double r_neg = r_pos;
  for (unsigned i = 0; i <= limits.max_doublings && !bracketed; ++i) {
    const double outer = std::ldexp(1.0, static_cast<int>(i));
    const double rp = residual(outer);
    const double rn = residual(-outer);
    if (std::signbit(rp) != std::signbit(r_pos) || rp == 0.0) {
      lo = inner;
      hi = outer;
      bracketed = true;
    } else if (std::signbit(rn) != std::signbit(r_neg) || rn == 0.0) {
      lo = -outer;
      hi = -inner;
      bracketed = true;
    }
    inner = outer;
    r_pos = rp;
    r_neg = rn;
  }
  if (!bracketed) throw ResourceError("scalar_solve: no bracket within the expansion cap");
  // Orient so that residual(lo) <= 0 <= residual(hi) after multiplying by sigma.
  const double sigma = residual(hi) >= residual(lo) ? 1.0 : -1.0;

  // Invariant: sigma * residual(lo) <= 0 <= sigma * residual(hi).
  double best = 0.0;
  double best_residual = kInf;
  for (unsigned i = 0; i < limits.max_bisections; ++i) {
    const double mid = lo + (hi - lo) / 2.0;
    const double r = residual(mid);
    if (std::fabs(r) < best_residual) {
      best = mid;
      best_residual = std::fabs(r);
    }
    if (best_residual <= tol) return best;
    if (mid <= lo || mid >= hi) break;
    if (sigma * r < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  for (double end : {lo, hi}) {
    if (std::fabs(residual(end)) <= tol) return end;
  }
  throw ResourceError("scalar_solve: tolerance " + format_real(tol) +
                      " is below the resolution of double near t = " + format_real(best));
}

VectorSpanMember::VectorSpanMember(std::vector<VectorTerm> terms, std::size_t arity)
    : arity_(arity) {
  for (VectorTerm& term : terms) {
    if (term.exponents.size() != arity) {
      throw StructuralError("vector span term has " + std::to_string(term.exponents.size()) +
                            " exponents, expected " + std::to_string(arity));
    }
    for (double r : term.exponents) require_exponent(r, "VectorSpanMember");
    if (!std::isfinite(term.coefficient)) throw DomainError("VectorSpanMember: non-finite coefficient");
    auto same = std::find_if(terms_.begin(), terms_.end(),
                             [&](const VectorTerm& t) { return t.exponents == term.exponents; });
    if (same != terms_.end()) {
      same->coefficient += term.coefficient;
    } else {
      terms_.push_back(std::move(term));
    }
  }
  std::erase_if(terms_, [](const VectorTerm& t) { return t.coefficient == 0.0; });
}

std::vector<double> VectorSpanMember::operator()(std::span<const double> x) const {
  if (x.size() != arity_) {
    throw StructuralError("vector span member of arity " + std::to_string(arity_) +
                          " applied to a point of arity " + std::to_string(x.size()));
  }
  const std::vector<ScalarSpan> spans = component_reduce(*this);
  std::vector<double> out(arity_);
  for (std::size_t j = 0; j < arity_; ++j) out[j] = spans[j](x[j]);
  return out;
}

VectorSpanMember VectorSpanMember::scaled(double factor) const {
  std::vector<VectorTerm> terms = terms_;
  for (VectorTerm& t : terms) t.coefficient *= factor;
  return {std::move(terms), arity_};
}

VectorSpanMember VectorSpanMember::operator+(const VectorSpanMember& rhs) const {
  if (rhs.arity_ != arity_) throw StructuralError("adding span members of different arity");
  std::vector<VectorTerm> terms = terms_;
  terms.insert(terms.end(), rhs.terms_.begin(), rhs.terms_.end());
  return {std::move(terms), arity_};
}

std::string VectorSpanMember::describe() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const VectorTerm& term : terms_) {
    if (!first) os << " + ";
    os << format_real(term.coefficient) << "*phi_(";
    for (std::size_t j = 0; j < term.exponents.size(); ++j) {
      os << (j ? "," : "") << format_real(term.exponents[j]);
    }
    os << ")";
    first = false;
  }
  return os.str();
}

std::vector<ScalarSpan> component_reduce(const VectorSpanMember& v) {
  std::vector<ScalarSpan> out;
  out.reserve(v.arity());
  std::vector<SpanTerm> pairs;
  for (std::size_t j = 0; j < v.arity(); ++j) {
    pairs.clear();
    for (const VectorTerm& term : v.terms()) pairs.push_back({term.coefficient, term.exponents[j]});
    out.push_back(make_scalar_span(pairs));
  }
  return out;
}

std::vector<VectorSpanMember> make_diagonal_family(std::span<const double> exponents,
                                                   std::size_t arity) {
  if (arity == 0) throw DomainError("make_diagonal_family: arity must be positive");
  std::vector<double> seen;
  std::vector<VectorSpanMember> family;
  for (double r : exponents) {
    require_exponent(r, "make_diagonal_family");
    if (std::find(seen.begin(), seen.end(), r) != seen.end()) {
      throw DomainError("make_diagonal_family: duplicate exponent " + format_real(r));
    }
    seen.push_back(r);
    family.emplace_back(std::vector<VectorTerm>{{1.0, std::vector<double>(arity, r)}}, arity);
  }
  return family;
}

VectorSpanMember linear_combination(std::span<const double> coefficients,
                                    std::span<const VectorSpanMember> members) {
  if (coefficients.size() != members.size()) {
    throw StructuralError("linear_combination: coefficient count does not match member count");
  }
  if (members.empty()) throw StructuralError("linear_combination: empty family");
  VectorSpanMember sum({}, members.front().arity());
  for (std::size_t i = 0; i < members.size(); ++i) sum = sum + members[i].scaled(coefficients[i]);
  return sum;
}

}  // namespace surj
