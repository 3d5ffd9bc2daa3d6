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

#include "surj/report.hpp"

#include <istream>
#include <ostream>

#include "surj/errors.hpp"
#include "surj/format.hpp"

namespace surj {

namespace {

Json reals(const std::vector<double>& values) {
  Json out = Json::array();
  for (double v : values) out.push_back(format_real(v));
  return out;
}

Json exact(const Point& values) {
  Json out = Json::array();
  for (const Dyadic& v : values) out.push_back(v.to_decimal());
  return out;
}

}  // namespace

Json certificate_json(const CoverageCertificate& c) {
  Json box = Json::object();
  Json bounds = Json::array();
  for (const auto& [low, high] : c.box.bounds) bounds.push_back({format_real(low), format_real(high)});
  box["bounds"] = std::move(bounds);
  box["grid"] = c.box.grid;

  Json witnesses = Json::array();
  for (const Witness& w : c.witnesses) {
    Json j = Json::object();
    j["target"] = reals(w.target);
    j["preimage"] = exact(w.preimage);
    j["depth"] = w.depth;
    j["error"] = format_real(w.error);
    j["hit"] = w.error <= c.epsilon;
    if (!w.diagnostic.empty()) j["diagnostic"] = w.diagnostic;
    witnesses.push_back(std::move(j));
  }

  Json out = Json::object();
  out["function"] = c.function;
  out["epsilon"] = format_real(c.epsilon);
  out["box"] = std::move(box);
  out["status"] = c.certified() ? "Certified" : "Failed";
  out["target_count"] = c.witnesses.size();
  out["max_error"] = format_real(c.max_error());
  if (c.worst) {
    out["worst_target"] = *c.worst;
  } else {
    out["worst_target"] = nullptr;
  }
  out["witnesses"] = std::move(witnesses);
  return out;
}

Json independence_json(const IndependenceReport& r) {
  Json points = Json::array();
  for (const Point& p : r.points) points.push_back(reals(to_doubles(p)));
  Json out = Json::object();
  out["family"] = r.family;
  out["rows"] = r.rows;
  out["cols"] = r.cols;
  out["rank"] = r.rank;
  out["tolerance"] = format_real(r.tolerance);
  out["full_rank"] = r.full_rank();
  out["points"] = std::move(points);
  return out;
}

Json rank_comparison_json(const RankComparison& c) {
  Json out = Json::object();
  out["ranks_equal"] = c.equal();
  out["composed"] = independence_json(c.composed);
  out["direct"] = independence_json(c.direct);
  return out;
}

std::string render_report(const Json& report) { return report.dump(2) + "\n"; }

void write_trace_csv(std::ostream& out, unsigned depth, const std::vector<PlanePoint>& trace) {
  out << "t,x,y\n";
  const auto exponent = -2 * static_cast<std::int64_t>(depth);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out << Dyadic(BigInt(i), exponent).to_decimal() << ',' << trace[i].x.to_decimal() << ','
        << trace[i].y.to_decimal() << '\n';
  }
}

std::vector<TraceRow> read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "t,x,y") throw DomainError("trace csv: missing 't,x,y' header");
  std::vector<TraceRow> rows;
  while (std::getline(in, line)) {
    const auto a = line.find(',');
    const auto b = a == std::string::npos ? a : line.find(',', a + 1);
    if (b == std::string::npos) throw DomainError("trace csv: malformed row '" + line + "'");
    rows.push_back({Dyadic::parse(line.substr(0, a)), Dyadic::parse(line.substr(a + 1, b - a - 1)),
                    Dyadic::parse(line.substr(b + 1))});
  }
  return rows;
}

}  // namespace surj
