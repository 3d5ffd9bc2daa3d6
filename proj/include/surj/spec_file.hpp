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
#include <string>
#include <string_view>
#include <vector>

#include "surj/certify.hpp"
#include "surj/errors.hpp"
#include "surj/expr.hpp"
#include "surj/phi.hpp"

// Declarative pipeline description (YAML):
//
//   base:        {extend_to_line: true, lift_dimension: 1, project_lift: 2}
//   family:      {exponents: [...], coefficients: [...]}   diagonal family
//             or {members: [{coefficient: c, exponents: [...]}, ...]}
//                optional sampling: {points: 32, low: -8, high: 8}
//   certify:     {box: [[lo, hi], ...] or [lo, hi], grid: g, epsilon: e,
//                 budget: N, seed: S}
//   eval:        {depth: 16, precision: 1e-6}
//   output:      {report: path}
//
// Reals may be written as numbers or quoted decimal strings.

namespace surj {

/// Schema or syntax problem, message prefixed with "origin:line:column: ".
class SpecError : public StructuralError {
 public:
  using StructuralError::StructuralError;
};

struct BaseSpec {
  unsigned lifts = 0;
  /// Domain arity of the projection lift; 0 leaves the base in S_{1,n}.
  std::size_t project = 0;
};

struct SamplingSpec {
  std::size_t points = 32;
  double low = -8.0;
  double high = 8.0;
};

struct FamilySpec {
  /// Diagonal family exponents; empty when explicit terms are given.
  std::vector<double> exponents;
  std::vector<double> coefficients;
  /// Terms of a single explicitly written member.
  std::vector<VectorTerm> terms;
  SamplingSpec sampling;
};

struct CertifySpec {
  BoxSpec box;
  double epsilon = 1e-3;
  std::optional<std::size_t> budget;
  std::optional<std::uint64_t> seed;
};

struct EvalSpec {
  unsigned depth = 16;
  double precision = 1e-6;
};

struct SpecFile {
  BaseSpec base;
  std::optional<FamilySpec> family;
  std::optional<CertifySpec> certify;
  EvalSpec eval;
  std::optional<std::string> report;
  std::size_t domain_arity() const { return base.project == 0 ? 1 : base.project; }
  std::size_t codomain_arity() const { return 2 + base.lifts; }
};

SpecFile parse_spec(std::string_view text, const std::string& origin = "<spec>");
/// Reads and parses a file; unreadable files raise SpecError too.
SpecFile load_spec(const std::string& path);

/// The concrete objects a spec describes.
struct Pipeline {
  FunctionExpr base;
  /// Diagonal family members (or the single explicit member).
  std::vector<VectorSpanMember> members;
  /// sum_i c_i members[i], composed after the base; empty without a family.
  std::optional<VectorSpanMember> combination;
  /// combination o base, or base alone.
  FunctionExpr function;
};

Pipeline build_pipeline(const SpecFile& spec, const FactoryLimits& limits = {});

}  // namespace surj
