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

#include "surj/spec_file.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace surj {

namespace {

class Reader {
 public:
  explicit Reader(std::string origin) : origin_(std::move(origin)) {}

  [[noreturn]] void fail(const YAML::Mark& mark, const std::string& message) const {
    const int line = mark.line < 0 ? 1 : mark.line + 1;
    const int column = mark.column < 0 ? 1 : mark.column + 1;
    throw SpecError(origin_ + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message);
  }
  [[noreturn]] void fail(const YAML::Node& node, const std::string& message) const {
    fail(node.Mark(), message);
  }

  // Mapping with only the listed keys.
  void expect_map(const YAML::Node& node, const std::string& section,
                  std::initializer_list<std::string_view> allowed) const {
    if (!node.IsMap()) fail(node, "'" + section + "' must be a mapping");
    std::set<std::string> seen;
    for (const auto& kv : node) {
      const std::string key = kv.first.Scalar();
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        fail(kv.first, "unknown key '" + key + "' in '" + section + "'");
      }
      if (!seen.insert(key).second) fail(kv.first, "duplicate key '" + key + "' in '" + section + "'");
    }
  }

  YAML::Node require(const YAML::Node& map, const std::string& key, const std::string& section) const {
    const YAML::Node v = map[key];
    if (!v) fail(map, "'" + section + "' is missing required key '" + key + "'");
    return v;
  }

  double real(const YAML::Node& node, const std::string& what) const {
    if (!node.IsScalar()) fail(node, what + " must be a number");
    std::string_view text = node.Scalar();
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(value)) {
      fail(node, what + " must be a finite decimal number, got '" + node.Scalar() + "'");
    }
    return value;
  }

  std::uint64_t integer(const YAML::Node& node, const std::string& what, std::uint64_t min,
                        std::uint64_t max = std::numeric_limits<std::uint64_t>::max()) const {
    if (!node.IsScalar()) fail(node, what + " must be an integer");
    const std::string& text = node.Scalar();
    std::uint64_t value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
      fail(node, what + " must be a non-negative integer, got '" + text + "'");
    }
    if (value < min || value > max) {
      fail(node, what + " must lie in [" + std::to_string(min) + ", " + std::to_string(max) + "]");
    }
    return value;
  }

  bool boolean(const YAML::Node& node, const std::string& what) const {
    if (node.IsScalar()) {
      const std::string& s = node.Scalar();
      if (s == "true") return true;
      if (s == "false") return false;
    }
    fail(node, what + " must be true or false");
  }

  std::vector<double> reals(const YAML::Node& node, const std::string& what) const {
    if (!node.IsSequence()) fail(node, what + " must be a list");
    std::vector<double> out;
    for (const auto& item : node) out.push_back(real(item, what + " entry"));
    return out;
  }

  std::vector<double> exponents(const YAML::Node& node, const std::string& what) const {
    const std::vector<double> out = reals(node, what);
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (!(out[i] > 0.0)) fail(node[i], what + " must be positive");
    }
    return out;
  }

 private:
  std::string origin_;
};

BaseSpec read_base(const Reader& r, const YAML::Node& node) {
  r.expect_map(node, "base", {"extend_to_line", "lift_dimension", "project_lift"});
  BaseSpec base;
  if (const auto start = node["extend_to_line"]) {
    if (!r.boolean(start, "base.extend_to_line")) {
      r.fail(start, "base.extend_to_line must be true: every pipeline starts from the line surjection");
    }
  }
  if (const auto lifts = node["lift_dimension"]) {
    base.lifts = static_cast<unsigned>(r.integer(lifts, "base.lift_dimension", 0, 64));
  }
  if (const auto m = node["project_lift"]) {
    base.project = static_cast<std::size_t>(r.integer(m, "base.project_lift", 1, 1U << 20));
  }
  return base;
}

FamilySpec read_family(const Reader& r, const YAML::Node& node, std::size_t arity) {
  r.expect_map(node, "family", {"exponents", "coefficients", "members", "sampling"});
  FamilySpec family;
  const YAML::Node exps = node["exponents"];
  const YAML::Node members = node["members"];
  if (exps && members) r.fail(members, "family takes either 'exponents' or 'members', not both");
  if (!exps && !members) r.fail(node, "family needs 'exponents' or 'members'");

  if (exps) {
    family.exponents = r.exponents(exps, "family.exponents");
    if (family.exponents.empty()) r.fail(exps, "family.exponents must not be empty");
    for (std::size_t i = 0; i < family.exponents.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (family.exponents[i] == family.exponents[j]) {
          r.fail(exps[i], "family.exponents entries must be distinct");
        }
      }
    }
    if (const auto c = node["coefficients"]) {
      family.coefficients = r.reals(c, "family.coefficients");
      if (family.coefficients.size() != family.exponents.size()) {
        r.fail(c, "family.coefficients needs one entry per exponent (" +
                      std::to_string(family.exponents.size()) + ")");
      }
    } else {
      family.coefficients.assign(family.exponents.size(), 1.0);
    }
  } else {
    if (const auto c = node["coefficients"]) r.fail(c, "family.coefficients applies to 'exponents' only");
    if (!members.IsSequence() || members.size() == 0) r.fail(members, "family.members must be a non-empty list");
    for (const auto& m : members) {
      r.expect_map(m, "family.members entry", {"coefficient", "exponents"});
      VectorTerm term;
      term.coefficient = r.real(r.require(m, "coefficient", "family.members entry"), "coefficient");
      const YAML::Node e = r.require(m, "exponents", "family.members entry");
      term.exponents = r.exponents(e, "family.members exponents");
      if (term.exponents.size() != arity) {
        r.fail(e, "member exponent vector has " + std::to_string(term.exponents.size()) +
                      " entries but the base maps into R^" + std::to_string(arity));
      }
      family.terms.push_back(std::move(term));
    }
  }

  if (const auto s = node["sampling"]) {
    r.expect_map(s, "family.sampling", {"points", "low", "high"});
    if (const auto p = s["points"]) family.sampling.points = r.integer(p, "family.sampling.points", 1, 100000);
    if (const auto lo = s["low"]) family.sampling.low = r.real(lo, "family.sampling.low");
    if (const auto hi = s["high"]) family.sampling.high = r.real(hi, "family.sampling.high");
    if (!(family.sampling.low < family.sampling.high)) r.fail(s, "family.sampling needs low < high");
  }
  return family;
}

CertifySpec read_certify(const Reader& r, const YAML::Node& node, std::size_t arity) {
  r.expect_map(node, "certify", {"box", "grid", "epsilon", "budget", "seed"});
  CertifySpec c;
  const YAML::Node box = r.require(node, "box", "certify");
  if (!box.IsSequence() || box.size() == 0) r.fail(box, "certify.box must be a list");
  auto read_pair = [&](const YAML::Node& p) {
    if (!p.IsSequence() || p.size() != 2) r.fail(p, "certify.box entries must be [low, high] pairs");
    const double low = r.real(p[0], "box bound");
    const double high = r.real(p[1], "box bound");
    if (!(low < high)) r.fail(p, "certify.box needs low < high");
    return std::pair{low, high};
  };
  if (box[0].IsScalar()) {
    // [low, high]: the same interval on every coordinate.
    c.box.bounds.assign(arity, read_pair(box));
  } else {
    if (box.size() != arity) {
      r.fail(box, "certify.box has " + std::to_string(box.size()) +
                      " intervals but the pipeline maps into R^" + std::to_string(arity));
    }
    for (const auto& p : box) c.box.bounds.push_back(read_pair(p));
  }
  c.box.grid = r.integer(r.require(node, "grid", "certify"), "certify.grid", 2, 1U << 20);
  const YAML::Node eps = r.require(node, "epsilon", "certify");
  c.epsilon = r.real(eps, "certify.epsilon");
  if (!(c.epsilon > 0.0)) r.fail(eps, "certify.epsilon must be positive");
  if (const auto b = node["budget"]) c.budget = r.integer(b, "certify.budget", 1);
  if (const auto s = node["seed"]) c.seed = r.integer(s, "certify.seed", 0);
  return c;
}

EvalSpec read_eval(const Reader& r, const YAML::Node& node) {
  r.expect_map(node, "eval", {"depth", "precision"});
  EvalSpec e;
  if (const auto d = node["depth"]) e.depth = static_cast<unsigned>(r.integer(d, "eval.depth", 1, 1U << 16));
  if (const auto p = node["precision"]) {
    e.precision = r.real(p, "eval.precision");
    if (!(e.precision > 0.0)) r.fail(p, "eval.precision must be positive");
  }
  return e;
}

}  // namespace

SpecFile parse_spec(std::string_view text, const std::string& origin) {
  const Reader r(origin);
  YAML::Node loaded;
  try {
    loaded = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    r.fail(e.mark, "malformed YAML: " + e.msg);
  }
  const YAML::Node& root = loaded;
  if (!root || root.IsNull()) r.fail(YAML::Mark{}, "empty spec");
  r.expect_map(root, "spec", {"base", "family", "certify", "eval", "output"});

  SpecFile spec;
  spec.base = read_base(r, r.require(root, "base", "spec"));
  if (const auto f = root["family"]) spec.family = read_family(r, f, spec.codomain_arity());
  if (const auto c = root["certify"]) spec.certify = read_certify(r, c, spec.codomain_arity());
  if (const auto e = root["eval"]) spec.eval = read_eval(r, e);
  if (const auto o = root["output"]) {
    r.expect_map(o, "output", {"report"});
    if (const auto p = o["report"]) {
      if (!p.IsScalar() || p.Scalar().empty()) r.fail(p, "output.report must be a path");
      spec.report = p.Scalar();
    }
  }
  return spec;
}

SpecFile load_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError(path + ":1:1: cannot open spec file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_spec(text.str(), path);
}

Pipeline build_pipeline(const SpecFile& spec, const FactoryLimits& limits) {
  FunctionExpr base = extend_to_line();
  for (unsigned i = 0; i < spec.base.lifts; ++i) base = lift_dimension(base, limits);
  if (spec.base.project != 0) base = project_lift(base, spec.base.project, limits);

  Pipeline p{base, {}, std::nullopt, base};
  if (!spec.family) return p;
  const FamilySpec& fam = *spec.family;
  const std::size_t n = base.codomain_arity();
  if (!fam.exponents.empty()) {
    p.members = make_diagonal_family(fam.exponents, n);
    p.combination = linear_combination(fam.coefficients, p.members);
  } else {
    p.members.emplace_back(fam.terms, n);
    p.combination = p.members.front();
  }
  p.function = phi_compose(*p.combination, base);
  return p;
}

}  // namespace surj
