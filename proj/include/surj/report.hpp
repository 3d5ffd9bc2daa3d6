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

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "surj/certify.hpp"
#include "surj/curve.hpp"

// Report serialization. Reals are 17-significant-digit decimal strings;
// preimage coordinates are exact decimals so witnesses re-verify bit for bit.

namespace surj {

using Json = nlohmann::ordered_json;

Json certificate_json(const CoverageCertificate& certificate);
Json independence_json(const IndependenceReport& report);
Json rank_comparison_json(const RankComparison& comparison);
/// Two-space indented JSON with a trailing newline.
std::string render_report(const Json& report);

/// `t,x,y` header, then one row per cell: parameter i / 4^k and the cell
/// center, all as exact decimals.
void write_trace_csv(std::ostream& out, unsigned depth, const std::vector<PlanePoint>& trace);

struct TraceRow {
  Dyadic t, x, y;
};
/// Inverse of write_trace_csv; throws DomainError on malformed rows.
std::vector<TraceRow> read_trace_csv(std::istream& in);

}  // namespace surj
