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

#include "surj/commands.hpp"

#include <exception>
#include <fstream>
#include <new>
#include <ostream>
#include <sstream>
#include <vector>

#include "surj/certify.hpp"
#include "surj/errors.hpp"
#include "surj/expr.hpp"
#include "surj/format.hpp"
#include "surj/report.hpp"
#include "surj/spec_file.hpp"

namespace surj::cli {

namespace {

// Unwritable outputs count as invalid arguments.
class OutputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const DegenerateMemberError& e) {
    err << "error: degenerate span member: coordinate " << e.coordinate() + 1 << "\n  " << e.what() << '\n';
    return kDegenerate;
  } catch (const NoSolutionError& e) {
    err << "error: " << e.what() << '\n';
    return kDegenerate;
  } catch (const ResourceError& e) {
    err << "error: resource limit: " << e.what() << '\n';
    return kResource;
  } catch (const std::bad_alloc&) {
    err << "error: resource limit: out of memory\n";
    return kResource;
  } catch (const SpecError& e) {
    err << e.what() << '\n';
    return kValidation;
  } catch (const std::invalid_argument& e) {  // StructuralError, OutputError
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kResource;
  }
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw OutputError("cannot open '" + path + "' for writing");
  file << contents;
  file.close();
  if (!file) throw OutputError("failed writing '" + path + "'");
}

Point parse_point(const std::string& text) {
  Point out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    std::string piece = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    const auto first = piece.find_first_not_of(" \t");
    const auto last = piece.find_last_not_of(" \t");
    piece = first == std::string::npos ? "" : piece.substr(first, last - first + 1);
    out.push_back(Dyadic::parse(piece));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

int cmd_trace(const TraceCommand& cmd, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto trace = curve_trace(cmd.depth, cmd.cap);
    std::ostringstream csv;
    write_trace_csv(csv, cmd.depth, trace);
    write_file(cmd.out, csv.str());
    out << "wrote " << trace.size() << " rows to " << cmd.out << '\n';
    return kOk;
  });
}

int cmd_eval(const EvalCommand& cmd, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SpecFile spec = load_spec(cmd.spec);
    const Pipeline pipeline = build_pipeline(spec);
    const EvalRequest request{parse_point(cmd.point), cmd.depth.value_or(spec.eval.depth),
                              spec.eval.precision};
    const EvalResult r = evaluate(pipeline.function, request);
    for (std::size_t i = 0; i < r.value.size(); ++i) out << (i ? " " : "") << format_real(r.value[i]);
    out << "\nrefinement_bound " << format_real(r.refinement_bound) << '\n';
    return kOk;
  });
}

int cmd_certify(const CertifyCommand& cmd, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SpecFile spec = load_spec(cmd.spec);
    if (!spec.certify) throw SpecError(cmd.spec + ":1:1: spec has no 'certify' section");
    const std::optional<std::string> report_path = cmd.report ? cmd.report : spec.report;
    if (!report_path) throw OutputError("no report path: pass --report or set output.report");
    const Pipeline pipeline = build_pipeline(spec);
    const std::optional<std::uint64_t> seed = cmd.seed ? cmd.seed : spec.certify->seed;

    CertifyOptions options;
    options.target_budget = cmd.budget.value_or(spec.certify->budget.value_or(kDefaultTargetBudget));
    options.threads = cmd.threads;
    const CoverageCertificate cert =
        certify_surjective_on_box(pipeline.function, spec.certify->box, spec.certify->epsilon, options);

    std::optional<RankComparison> ranks;
    if (pipeline.members.size() >= 2) {
      const SamplingSpec& s = spec.family->sampling;
      const std::size_t m = pipeline.base.domain_arity();
      const std::vector<Point> points = seed ? random_sample_points(s.points, m, *seed, s.low, s.high)
                                             : grid_sample_points(s.points, m, s.low, s.high);
      ranks = composition_preserves_rank(pipeline.members, pipeline.base, points);
    }
    const bool full_rank = !ranks || (ranks->composed.full_rank() && ranks->equal());
    const int code = cert.certified() && full_rank ? kOk : kNotCertified;

    Json report = Json::object();
    report["tool"] = "surjection certify";
    report["format_version"] = 1;
    if (seed) {
      report["seed"] = *seed;
    } else {
      report["seed"] = nullptr;
    }
    Json pipe = Json::object();
    pipe["base"] = pipeline.base.describe();
    pipe["function"] = pipeline.function.describe();
    pipe["domain_arity"] = pipeline.function.domain_arity();
    pipe["codomain_arity"] = pipeline.function.codomain_arity();
    report["pipeline"] = std::move(pipe);
    report["certificate"] = certificate_json(cert);
    if (ranks) {
      report["independence"] = rank_comparison_json(*ranks);
    } else {
      report["independence"] = nullptr;
    }
    report["exit_code"] = code;
    write_file(*report_path, render_report(report));

    std::size_t hits = 0;
    for (const Witness& w : cert.witnesses) hits += w.error <= cert.epsilon ? 1 : 0;
    out << (cert.certified() ? "Certified" : "Failed") << ": " << hits << "/" << cert.witnesses.size()
        << " targets within " << format_real(cert.epsilon) << " (max error "
        << format_real(cert.max_error()) << ")\n";
    if (ranks) {
      out << "independence: rank " << ranks->composed.rank << " of " << ranks->composed.rows
          << " after composition, " << ranks->direct.rank << " before\n";
    }
    out << "report: " << *report_path << '\n';
    return code;
  });
}

}  // namespace surj::cli
