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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "doctest.h"
#include "surj/commands.hpp"
#include "surj/report.hpp"
#include "surj/spec_file.hpp"

namespace fs = std::filesystem;
namespace cli = surj::cli;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("surj_cli_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int n = 0;
    return n;
  }
  std::string file(const std::string& name, const std::string& contents = "") const {
    const fs::path p = path / name;
    if (!contents.empty()) std::ofstream(p) << contents;
    return p.string();
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run eval(const std::string& spec, const std::string& point, std::optional<unsigned> depth = {}) {
  std::ostringstream out, err;
  const int code = cli::cmd_eval({spec, point, depth}, out, err);
  return {code, out.str(), err.str()};
}

Run certify(const std::string& spec, const std::string& report,
            std::optional<std::uint64_t> seed = {}, std::optional<std::size_t> budget = {}) {
  std::ostringstream out, err;
  cli::CertifyCommand cmd{spec, report, budget, seed, 0};
  const int code = cli::cmd_certify(cmd, out, err);
  return {code, out.str(), err.str()};
}

const char* kSpecK3 = R"(base:
  extend_to_line: true
  project_lift: 2
family:
  exponents: ["0.5", "1", "1.5"]
certify:
  box: [[-5, 5], [-5, 5]]
  grid: 9
  epsilon: "1e-3"
)";

}  // namespace

TEST_CASE("trace writes one row per cell and reads back exactly") {
  TempDir dir;
  for (unsigned k : {0U, 1U, 6U}) {
    const std::string path = dir.file("trace.csv");
    std::ostringstream out, err;
    REQUIRE(cli::cmd_trace({k, path, surj::kDefaultTraceCap}, out, err) == cli::kOk);
    std::ifstream in(path);
    const auto rows = surj::read_trace_csv(in);
    const auto trace = surj::curve_trace(k);
    REQUIRE(rows.size() == trace.size());
    CHECK(rows.size() == (std::size_t{1} << (2 * k)));
    std::set<std::string> distinct;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(rows[i].x == trace[i].x);
      CHECK(rows[i].y == trace[i].y);
      CHECK(rows[i].t == surj::Dyadic(surj::BigInt(i), -2 * static_cast<std::int64_t>(k)));
      distinct.insert(rows[i].x.to_decimal() + "," + rows[i].y.to_decimal());
    }
    CHECK(distinct.size() == rows.size());
  }
  const std::string csv = slurp(dir.file("trace.csv"));
  CHECK(csv.rfind("t,x,y\n0,0.0078125,0.0078125\n", 0) == 0);

  std::ostringstream out, err;
  CHECK(cli::cmd_trace({13, dir.file("big.csv"), 12}, out, err) == cli::kResource);
  CHECK(cli::cmd_trace({2, (dir.path / "missing" / "x.csv").string(), 12}, out, err) == cli::kValidation);
  CHECK(cli::cmd_trace({7, dir.file("small.csv"), 6}, out, err) == cli::kResource);
  CHECK(cli::cmd_trace({7, dir.file("small.csv"), 7}, out, err) == cli::kOk);
}

TEST_CASE("eval") {
  TempDir dir;
  const std::string base = dir.file("base.yaml", "base: {extend_to_line: true}\n");
  const Run zero = eval(base, "-0.5");
  CHECK(zero.code == cli::kOk);
  CHECK(zero.out == "0 0\nrefinement_bound 0\n");

  const std::string proj = dir.file("proj.yaml", "base: {project_lift: 3}\neval: {depth: 20}\n");
  const Run a = eval(proj, "1.8, 2, 3");
  const Run b = eval(proj, "1.8,-100,0.001");
  CHECK(a.code == cli::kOk);
  CHECK(a.out == b.out);
  CHECK(a.out != eval(proj, "1.8,2,3", 5).out);

  const Run arity = eval(proj, "1,2");
  CHECK(arity.code == cli::kValidation);
  CHECK(eval(proj, "1,x,3").code == cli::kValidation);
  CHECK(eval(proj, "1,2,3", 1000).code == cli::kResource);
  CHECK(eval(dir.file("none.yaml"), "1").code == cli::kValidation);

  const std::string bad = dir.file("bad.yaml", "base:\n  project_lift: 2\n  colour: blue\n");
  const Run r = eval(bad, "1,2");
  CHECK(r.code == cli::kValidation);
  CHECK(r.err.find("bad.yaml:3:3: unknown key 'colour'") != std::string::npos);

  const std::string broken = dir.file("broken.yaml", "base:\n  project_lift: [2\n");
  const Run s = eval(broken, "1,2");
  CHECK(s.code == cli::kValidation);
  CHECK(s.err.find("broken.yaml:") != std::string::npos);

  const std::string phi = dir.file("phi.yaml", "base: {lift_dimension: 1}\nfamily: {exponents: [1]}\n");
  const Run p = eval(phi, "0");
  CHECK(p.out == "0 0 0\nrefinement_bound 0\n");
}

TEST_CASE("certify: diagonal family over a plane pipeline") {
  TempDir dir;
  const std::string spec = dir.file("k3.yaml", kSpecK3);
  const std::string report = dir.file("report.json");
  const Run r = certify(spec, report);
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("Certified: 81/81") != std::string::npos);
  const auto json = surj::Json::parse(slurp(report));
  CHECK(json["certificate"]["status"] == "Certified");
  CHECK(json["certificate"]["witnesses"].size() == 81);
  CHECK(json["independence"]["composed"]["rank"] == 3);
  CHECK(json["seed"].is_null());

  // Determinism.
  const std::string first = slurp(report);
  REQUIRE(certify(spec, report).code == cli::kOk);
  CHECK(slurp(report) == first);

  // A seed changes the sample points, is recorded, and is itself reproducible.
  REQUIRE(certify(spec, report, 17).code == cli::kOk);
  const std::string seeded = slurp(report);
  CHECK(surj::Json::parse(seeded)["seed"] == 17);
  CHECK(seeded != first);
  REQUIRE(certify(spec, report, 17).code == cli::kOk);
  CHECK(slurp(report) == seeded);

  // Witnesses re-verify from the report alone.
  surj::SpecFile parsed = surj::load_spec(spec);
  const surj::Pipeline pipe = surj::build_pipeline(parsed);
  for (const auto& w : json["certificate"]["witnesses"]) {
    surj::Point x;
    for (const auto& c : w["preimage"]) x.push_back(surj::Dyadic::parse(c.get<std::string>()));
    const auto v = surj::evaluate(pipe.function, {x, w["depth"].get<unsigned>(), 1e-3}).value;
    for (std::size_t i = 0; i < v.size(); ++i) {
      CHECK(std::fabs(v[i] - std::stod(w["target"][i].get<std::string>())) <= 1e-3);
    }
  }

  CHECK(certify(spec, report, std::nullopt, 80).code == cli::kResource);
}

TEST_CASE("certify exit codes") {
  TempDir dir;
  const std::string report = dir.file("r.json");
  const std::string edge = dir.file("edge.yaml", R"(base: {project_lift: 2}
family:
  members:
    - {coefficient: 1, exponents: [1, 2]}
    - {coefficient: -1, exponents: [1, 3]}
certify: {box: [-1, 1], grid: 3, epsilon: 1e-3}
)");
  const Run e = certify(edge, report);
  CHECK(e.code == cli::kDegenerate);
  CHECK(e.err.find("coordinate 1") != std::string::npos);

  const std::string zero = dir.file("zero.yaml", R"(base: {}
family: {exponents: [1, 2], coefficients: [0, 0]}
certify: {box: [-1, 1], grid: 3, epsilon: 1e-3}
)");
  CHECK(certify(zero, report).code == cli::kDegenerate);

  // Samples with t <= 0 all map to the origin, so no member is separated.
  const std::string few = dir.file("few.yaml", R"(base: {}
family:
  exponents: [1, 2, 3]
  sampling: {points: 8, low: -2, high: -1}
certify: {box: [-1, 1], grid: 3, epsilon: 1e-3}
)");
  const Run f = certify(few, report);
  CHECK(f.code == cli::kNotCertified);
  CHECK(surj::Json::parse(slurp(report))["independence"]["composed"]["full_rank"] == false);

  // An unreachable tolerance fails the certificate instead of aborting.
  const std::string tight = dir.file("tight.yaml", R"(base: {lift_dimension: 1}
certify: {box: [-3, 3], grid: 2, epsilon: 1e-40}
)");
  const Run t = certify(tight, report);
  CHECK(t.code == cli::kNotCertified);
  CHECK(surj::Json::parse(slurp(report))["certificate"]["status"] == "Failed");

  const std::string no_cert = dir.file("nocert.yaml", "base: {}\n");
  CHECK(certify(no_cert, report).code == cli::kValidation);
  std::ostringstream out, err;
  CHECK(cli::cmd_certify({dir.file("k3.yaml", kSpecK3), std::nullopt, {}, {}, 0}, out, err) ==
        cli::kValidation);
  const std::string with_output =
      dir.file("out.yaml", std::string(kSpecK3) + "output: {report: " + dir.file("o.json") + "}\n");
  CHECK(cli::cmd_certify({with_output, std::nullopt, {}, {}, 0}, out, err) == cli::kOk);
  CHECK(fs::exists(dir.path / "o.json"));
}

TEST_CASE("spec validation is line anchored") {
  auto message = [](const std::string& text) -> std::string {
    try {
      (void)surj::parse_spec(text, "s.yaml");
    } catch (const surj::SpecError& e) {
      return e.what();
    }
    return "";
  };
  CHECK(message("") == "s.yaml:1:1: empty spec");
  CHECK(message("base: {}\nextra: 1\n") == "s.yaml:2:1: unknown key 'extra' in 'spec'");
  CHECK(message("family: {exponents: [1]}\n").find("missing required key 'base'") != std::string::npos);
  CHECK(message("base: {extend_to_line: false}\n").rfind("s.yaml:1:24:", 0) == 0);
  CHECK(message("base: {lift_dimension: -1}\n").rfind("s.yaml:1:24:", 0) == 0);
  CHECK(message("base: {project_lift: 0}\n").find("project_lift must lie in") != std::string::npos);
  CHECK(message("base: {}\nfamily: {exponents: [1, 2, 1]}\n").rfind("s.yaml:2:28:", 0) == 0);
  CHECK(message("base: {}\nfamily: {exponents: [1, -2]}\n").find("must be positive") != std::string::npos);
  CHECK(message("base: {}\nfamily: {exponents: [1, abc]}\n").find("'abc'") != std::string::npos);
  CHECK(message("base: {}\nfamily: {exponents: [1], coefficients: [1, 2]}\n").find("one entry per") !=
        std::string::npos);
  CHECK(message("base: {}\nfamily:\n  members:\n    - {coefficient: 1, exponents: [1, 2, 3]}\n")
            .rfind("s.yaml:4:35:", 0) == 0);
  CHECK(message("base: {}\nfamily: {exponents: [1], members: []}\n").find("either") != std::string::npos);
  CHECK(message("base: {}\ncertify: {box: [[0, 1]], grid: 3, epsilon: 0.1}\n").find("R^2") !=
        std::string::npos);
  CHECK(message("base: {}\ncertify: {box: [1, 0], grid: 3, epsilon: 0.1}\n").find("low < high") !=
        std::string::npos);
  CHECK(message("base: {}\ncertify: {box: [0, 1], grid: 1, epsilon: 0.1}\n").find("grid") !=
        std::string::npos);
  CHECK(message("base: {}\ncertify: {box: [0, 1], grid: 3, epsilon: 0}\n").find("positive") !=
        std::string::npos);
  CHECK(message("base: {}\ncertify: {box: [0, 1], grid: 3}\n").find("'epsilon'") != std::string::npos);
  CHECK(message("base: {}\noutput: {report: out.json, format: csv}\n").find("'format'") != std::string::npos);

  const surj::SpecFile ok = surj::parse_spec(R"(base: {lift_dimension: 1, project_lift: 2}
family:
  exponents: ["1", "2.5"]
  coefficients: ["1", "-1"]
  sampling: {points: 12, low: 0.1, high: 4}
certify: {box: [-10, 10], grid: 11, epsilon: "1e-3", budget: 5000, seed: 3}
eval: {depth: 12, precision: 1e-4}
output: {report: r.json}
)");
  CHECK(ok.domain_arity() == 2);
  CHECK(ok.codomain_arity() == 3);
  CHECK(ok.family->coefficients == std::vector<double>{1, -1});
  CHECK(ok.family->sampling.points == 12);
  CHECK(ok.certify->box.bounds.size() == 3);
  CHECK(ok.certify->seed == 3u);
  CHECK(ok.eval.depth == 12);
  CHECK(*ok.report == "r.json");
  const surj::Pipeline p = surj::build_pipeline(ok);
  CHECK(p.function.domain_arity() == 2);
  CHECK(p.function.codomain_arity() == 3);
  CHECK(p.members.size() == 2);
  CHECK_THROWS_AS(surj::build_pipeline(surj::parse_spec("base: {lift_dimension: 5}\n")), surj::ResourceError);
}

TEST_CASE("binary: argument errors exit 2, help exits 0") {
  const std::string bin = SURJECTION_BIN;
  auto run = [&](const std::string& args) {
    const int status = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  CHECK(run("") == 2);
  CHECK(run("--help") == 0);
  CHECK(run("trace --depth x --out /dev/null") == 2);
  CHECK(run("trace --out /dev/null") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("trace --depth 1 --out /dev/null") == 0);
  CHECK(run("trace --depth 20 --out /dev/null") == 3);
}
