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
#include <iosfwd>
#include <optional>
#include <string>

#include "surj/curve.hpp"

// The three subcommands of the `surjection` tool. Each returns its process
// exit code and writes human-readable text to `out` / `err`.

namespace surj::cli {

enum ExitCode : int {
  kOk = 0,
  /// Certificate Failed or family rank deficient.
  kNotCertified = 1,
  kValidation = 2,
  kResource = 3,
  kDegenerate = 4,
};

struct TraceCommand {
  unsigned depth = 0;
  std::string out;
  unsigned cap = kDefaultTraceCap;
};

struct EvalCommand {
  std::string spec;
  /// Comma-separated decimals.
  std::string point;
  std::optional<unsigned> depth;
};

struct CertifyCommand {
  std::string spec;
  /// Falls back to output.report in the spec.
  std::optional<std::string> report;
  std::optional<std::size_t> budget;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
};

int cmd_trace(const TraceCommand& cmd, std::ostream& out, std::ostream& err);
int cmd_eval(const EvalCommand& cmd, std::ostream& out, std::ostream& err);
int cmd_certify(const CertifyCommand& cmd, std::ostream& out, std::ostream& err);

}  // namespace surj::cli
