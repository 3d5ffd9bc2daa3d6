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

// surjection: trace Hilbert curves, evaluate spec-defined surjections and
// certify them on boxes.

#include <iostream>

#include "CLI11.hpp"
#include "surj/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Continuous surjections R^m -> R^n: trace, evaluate, certify"};
  app.require_subcommand(1);

  surj::cli::TraceCommand trace;
  auto* trace_cmd = app.add_subcommand("trace", "Write the depth-K Hilbert cell centers as CSV");
  trace_cmd->add_option("--depth", trace.depth, "Curve depth K")->required();
  trace_cmd->add_option("--out", trace.out, "Output CSV path")->required();
  trace_cmd->add_option("--cap", trace.cap, "Largest accepted depth")->capture_default_str();

  surj::cli::EvalCommand eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate the spec's pipeline at a point");
  eval_cmd->add_option("--spec", eval.spec, "Spec file (YAML)")->required();
  eval_cmd->add_option("--point", eval.point, "Comma-separated coordinates")->required();
  eval_cmd->add_option("--depth", eval.depth, "Curve depth (default: eval.depth or 16)");

  surj::cli::CertifyCommand certify;
  auto* certify_cmd = app.add_subcommand("certify", "Certify epsilon-surjectivity on the spec's box");
  certify_cmd->add_option("--spec", certify.spec, "Spec file (YAML)")->required();
  certify_cmd->add_option("--report", certify.report, "Report path (default: output.report)");
  certify_cmd->add_option("--budget", certify.budget, "Largest accepted number of targets");
  certify_cmd->add_option("--seed", certify.seed, "Seed for independence sample points");
  certify_cmd->add_option("--threads", certify.threads, "Worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return surj::cli::kValidation;
  }

  if (*trace_cmd) return surj::cli::cmd_trace(trace, std::cout, std::cerr);
  if (*eval_cmd) return surj::cli::cmd_eval(eval, std::cout, std::cerr);
  return surj::cli::cmd_certify(certify, std::cout, std::cerr);
}
