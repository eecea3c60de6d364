/* Copyright 2026 The QEM Bounds Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef QEM_RUNNER_HPP_
#define QEM_RUNNER_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qem/report.hpp"

namespace qem {

enum class Command { kBound, kLayered, kPec, kExtrapolate, kVd, kSubfid, kSweep, kVerify };

std::string_view command_name(Command c);
// Throws ParseError.
Command parse_command(std::string_view name);

// Every recognized key with its default value.
const Json& default_config();

// Assigns a value at a dotted path such as "shape.b_max". Strings are
// coerced to the type of the default; shorthand forms are expanded:
// noise "dephasing:0.1[:extra]", shape "Q,K[,n]", lists "0.1,0.2" and
// ranges "1:10[:step]". Throws UnknownParameter and ParseError.
void set_config_value(Json& cfg, std::string_view path, const Json& value);

// Defaults overlaid with raw. Throws UnknownParameter and ParseError.
Json normalize_config(const Json& raw);
Json parse_config_text(std::string_view text);

struct RunResult {
  std::string text;
  std::string format;           // "json" or "csv"
  bool numerical_flag = false;  // a numerical check inside the report failed
};

// Executes the configured command and renders its report.
RunResult run_command(const Json& raw_config);
// Parameter sweep over one config value; one row per grid point.
RunResult emit_sweep(const Json& raw_config);

// Column order of sweep and single-row CSV output.
const std::vector<std::string>& csv_columns();

// Invariant suite behind the verify command: [{name, passed, worst}, ...].
Json verify_invariants(std::uint64_t seed);

}  // namespace qem

#endif  // QEM_RUNNER_HPP_
