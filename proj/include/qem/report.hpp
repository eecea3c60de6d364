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

#ifndef QEM_REPORT_HPP_
#define QEM_REPORT_HPP_

#include <string>

#include "json.hpp"
#include "qem/bounds.hpp"
#include "qem/linalg.hpp"
#include "qem/mitigation.hpp"
#include "qem/subfid.hpp"

namespace qem {

using Json = nlohmann::ordered_json;

// Rounds to 12 significant digits so that reports are stable under
// last-bit noise. Non-finite values pass through.
double round_sig12(double x);
// Rounded number, or null when x is not finite.
Json json_number(double x);
// %.12g; "inf", "-inf" and "nan" for non-finite values.
std::string format_sig12(double x);

// Row-major array of [re, im] pairs.
Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

// {Q, K, n, b_max}
Json shape_json(std::size_t inputs, std::size_t experiments, std::size_t qubits, double max_bias);
Json to_json(const ProtocolShape& shape);
Json to_json(const BoundReport& report);
Json to_json(const OverlapEstimate& est);

// {protocol, shape, M, seed, mean, truth, spread_declared, spread_observed,
// bound_report}
Json protocol_run_json(const MitigationProtocolSpec& spec, const MitigationRun& run, double truth,
                       const BoundReport& bound);

// Deterministic text form: two-space indent, trailing newline.
std::string dump_report(const Json& j);

}  // namespace qem

#endif  // QEM_REPORT_HPP_
