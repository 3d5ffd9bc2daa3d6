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

#include "surj/certify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "surj/errors.hpp"
#include "surj/format.hpp"

namespace surj {

std::size_t BoxSpec::target_count() const {
  std::size_t total = 1;
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (total > std::numeric_limits<std::size_t>::max() / std::max<std::size_t>(grid, 1)) {
      return std::numeric_limits<std::size_t>::max();
    }
    total *= grid;
  }
  return total;
}

void BoxSpec::validate(std::size_t budget) const {
  if (bounds.empty()) throw DomainError("box: no coordinates");
  if (grid < 2) throw DomainError("box: grid must have at least 2 points per coordinate");
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    const auto [low, high] = bounds[i];
    if (!std::isfinite(low) || !std::isfinite(high) || !(low < high)) {
      throw DomainError("box: coordinate " + std::to_string(i + 1) + " needs low < high");
    }
  }
  if (target_count() > budget) {
    throw ResourceError("box: " + std::to_string(grid) + "^" + std::to_string(bounds.size()) +
                        " targets exceed the budget of " + std::to_string(budget));
  }
}

std::vector<std::vector<double>> BoxSpec::targets() const {
  const std::size_t n = bounds.size();
  const std::size_t total = target_count();
  std::vector<std::vector<double>> out;
  out.reserve(total);
  std::vector<std::size_t> index(n, 0);
  for (std::size_t t = 0; t < total; ++t) {
    std::vector<double> target(n);
    for (std::size_t c = 0; c < n; ++c) {
      const auto [low, high] = bounds[c];
      target[c] = index[c] + 1 == grid
                      ? high
                      : low + (high - low) * static_cast<double>(index[c]) / static_cast<double>(grid - 1);
    }
    out.push_back(std::move(target));
    for (std::size_t c = n; c-- > 0;) {
      if (++index[c] < grid) break;
      index[c] = 0;
    }
  }
  return out;
}

double CoverageCertificate::max_error() const {
  double worst_error = 0.0;
  for (const Witness& w : witnesses) worst_error = std::max(worst_error, w.error);
  return worst_error;
}

std::optional<DegeneracyWitness> detect_degenerate(const VectorSpanMember& v) {
  const std::vector<ScalarSpan> spans = component_reduce(v);
  for (std::size_t j = 0; j < spans.size(); ++j) {
    if (spans[j].is_zero()) return DegeneracyWitness{j};
  }
  return std::nullopt;
}

namespace {

double sup_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
  return d;
}

Witness search(const FunctionExpr& f, const std::vector<double>& target, double epsilon,
               const PreimageOptions& options) {
  Witness w;
  w.target = target;
  try {
    PreimageResult r = preimage(f, target, epsilon, options);
    w.preimage = std::move(r.point);
    w.depth = r.depth;
    w.error = r.achieved_error;
  } catch (const RefinementFailure& e) {
    w.preimage = e.best().point;
    w.depth = e.best().depth;
    w.error = e.best().achieved_error;
    w.diagnostic = e.what();
  } catch (const ResourceError& e) {
    w.error = std::numeric_limits<double>::infinity();
    w.diagnostic = e.what();
  }
  return w;
}

template <typename Job>
void parallel_for(std::size_t count, unsigned threads, Job&& job) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) job(i);
  };
  if (threads <= 1) {
    worker();
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
}

}  // namespace

CoverageCertificate certify_surjective_on_box(const FunctionExpr& f, const BoxSpec& box,
                                              double epsilon, const CertifyOptions& options) {
  if (!(epsilon > 0.0)) throw DomainError("certify: epsilon must be positive");
  if (box.bounds.size() != f.codomain_arity()) {
    throw StructuralError("certify: box has " + std::to_string(box.bounds.size()) +
                          " coordinates, function maps into R^" +
                          std::to_string(f.codomain_arity()));
  }
  box.validate(options.target_budget);
  for (const VectorSpanMember* member : span_members(f)) {
    if (member->is_zero()) throw DegenerateMemberError(0, "certify: the zero span member is not surjective");
    if (auto d = detect_degenerate(*member)) {
      throw DegenerateMemberError(
          d->coordinate, "certify: span member " + member->describe() + " is degenerate: coordinate " +
                             std::to_string(d->coordinate + 1) +
                             " reduces to the zero span (see detect_degenerate)");
    }
  }

  CoverageCertificate cert;
  cert.function = f.describe();
  cert.box = box;
  cert.epsilon = epsilon;
  const auto targets = box.targets();
  cert.witnesses.resize(targets.size());
  parallel_for(targets.size(), options.threads, [&](std::size_t i) {
    cert.witnesses[i] = search(f, targets[i], epsilon, options.preimage);
  });

  // Deterministic reduction in target order.
  cert.status = CoverageStatus::Certified;
  double worst_error = -1.0;
  for (std::size_t i = 0; i < cert.witnesses.size(); ++i) {
    const double e = cert.witnesses[i].error;
    if (!(e <= epsilon)) cert.status = CoverageStatus::Failed;
    if (e > worst_error || std::isnan(e)) {
      worst_error = e;
      cert.worst = i;
    }
  }
  return cert;
}

double reverify(const FunctionExpr& f, const CoverageCertificate& certificate) {
  double worst = 0.0;
  for (const Witness& w : certificate.witnesses) {
    if (w.preimage.empty()) return std::numeric_limits<double>::infinity();
    const EvalResult r = evaluate(f, {w.preimage, std::max(1U, w.depth), certificate.epsilon});
    worst = std::max(worst, sup_distance(r.value, w.target));
  }
  return worst;
}

// ---------------------------------------------------------------------------

std::size_t numerical_rank(std::vector<std::vector<double>> m, double tol) {
  const std::size_t rows = m.size();
  if (rows == 0) return 0;
  const std::size_t cols = m.front().size();
  for (auto& row : m) {
    double scale = 0.0;
    for (double v : row) scale = std::max(scale, std::fabs(v));
    if (scale > 0.0) {
      for (double& v : row) v /= scale;
    }
  }
  std::vector<std::size_t> col_order(cols);
  for (std::size_t j = 0; j < cols; ++j) col_order[j] = j;

  double largest = 0.0;
  std::size_t rank = 0;
  for (; rank < std::min(rows, cols); ++rank) {
    std::size_t pr = rank, pc = rank;
    double pivot = 0.0;
    for (std::size_t i = rank; i < rows; ++i) {
      for (std::size_t j = rank; j < cols; ++j) {
        const double v = std::fabs(m[i][col_order[j]]);
        if (v > pivot) {
          pivot = v;
          pr = i;
          pc = j;
        }
      }
    }
    if (rank == 0) largest = pivot;
    if (pivot == 0.0 || pivot <= tol * largest) break;
    std::swap(m[rank], m[pr]);
    std::swap(col_order[rank], col_order[pc]);
    const std::size_t c = col_order[rank];
    for (std::size_t i = rank + 1; i < rows; ++i) {
      const double factor = m[i][c] / m[rank][c];
      if (factor == 0.0) continue;
      for (std::size_t j = rank; j < cols; ++j) m[i][col_order[j]] -= factor * m[rank][col_order[j]];
    }
  }
  return rank;
}

IndependenceReport independence_report(std::span<const FunctionExpr> family,
                                       std::span<const Point> points, double tol, unsigned depth) {
  if (points.size() < family.size()) {
    throw DomainError("independence_report: need at least as many points as functions");
  }
  IndependenceReport report;
  report.tolerance = tol;
  report.points.assign(points.begin(), points.end());
  report.rows = family.size();
  std::vector<std::vector<double>> matrix;
  for (const FunctionExpr& fn : family) {
    report.family.push_back(fn.describe());
    std::vector<double> row;
    for (std::size_t j = 0; j < points.size(); ++j) {
      try {
        const EvalResult r = evaluate(fn, {points[j], depth, 1.0});
        row.insert(row.end(), r.value.begin(), r.value.end());
      } catch (const std::exception& e) {
        throw SampleEvaluationError(j, "independence_report: evaluating " + fn.describe() +
                                           " at sample point " + std::to_string(j) +
                                           " failed: " + e.what());
      }
    }
    if (!matrix.empty() && row.size() != matrix.front().size()) {
      throw StructuralError("independence_report: family members have different codomains");
    }
    matrix.push_back(std::move(row));
  }
  report.cols = matrix.empty() ? 0 : matrix.front().size();
  report.rank = numerical_rank(std::move(matrix), tol);
  return report;
}

RankComparison composition_preserves_rank(std::span<const VectorSpanMember> family,
                                          const FunctionExpr& base, std::span<const Point> points,
                                          double tol, unsigned depth) {
  std::vector<Point> images;
  images.reserve(points.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    try {
      images.push_back(to_point(evaluate(base, {points[j], depth, 1.0}).value));
    } catch (const std::exception& e) {
      throw SampleEvaluationError(j, "composition_preserves_rank: base evaluation failed at point " +
                                         std::to_string(j) + ": " + e.what());
    }
  }
  std::vector<FunctionExpr> direct;
  std::vector<FunctionExpr> composed;
  for (const VectorSpanMember& member : family) {
    direct.push_back(phi_compose(member));
    composed.push_back(phi_compose(member, base));
  }
  return {independence_report(direct, images, tol, depth),
          independence_report(composed, points, tol, depth)};
}

std::vector<Point> grid_sample_points(std::size_t count, std::size_t arity, double lo, double hi) {
  std::vector<Point> out;
  const double total = static_cast<double>(count * arity);
  for (std::size_t j = 0; j < count; ++j) {
    std::vector<double> p(arity);
    for (std::size_t c = 0; c < arity; ++c) {
      p[c] = lo + (hi - lo) * static_cast<double>(j * arity + c + 1) / total;
    }
    out.push_back(to_point(p));
  }
  return out;
}

std::vector<Point> random_sample_points(std::size_t count, std::size_t arity, std::uint64_t seed,
                                        double lo, double hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<Point> out;
  for (std::size_t j = 0; j < count; ++j) {
    std::vector<double> p(arity);
    for (double& v : p) v = dist(rng);
    out.push_back(to_point(p));
  }
  return out;
}

}  // namespace surj
