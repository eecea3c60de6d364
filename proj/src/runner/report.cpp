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

#include "qem/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "qem/errors.hpp"

namespace qem {

double round_sig12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

Json json_number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round_sig12(x) + 0.0;
}

std::string format_sig12(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x + 0.0);
  return buf;
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(Json::array({json_number(m(i, j).real()), json_number(m(i, j).imag())}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) {
    fail(ErrorCode::kParseError, "matrix must be an array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      fail(ErrorCode::kParseError, "matrix rows differ in length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Json& e = row[static_cast<std::size_t>(c)];
      if (e.is_number()) {
        m(i, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(i, c) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        fail(ErrorCode::kParseError, "matrix entries are numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

Json shape_json(std::size_t inputs, std::size_t experiments, std::size_t qubits, double max_bias) {
  Json j;
  j["Q"] = inputs;
  j["K"] = experiments;
  j["n"] = qubits;
  j["b_max"] = json_number(max_bias);
  return j;
}

Json to_json(const ProtocolShape& shape) {
  return shape_json(shape.inputs, shape.experiments, shape.qubits, shape.max_bias);
}

Json to_json(const BoundReport& r) {
  Json j;
  j["numerator"] = json_number(r.numerator);
  j["denominator"] = json_number(r.denominator);
  j["relaxation"] = relaxation_name(r.relaxation);
  j["bound_value"] = json_number(r.bound_value);
  j["pair_description"] = r.pair_description;
  j["shape"] = shape_json(r.inputs, r.experiments, r.qubits, r.max_bias);
  return j;
}

Json to_json(const OverlapEstimate& e) {
  Json j;
  j["value"] = json_number(e.value);
  j["shots"] = e.shots;
  j["std_error"] = json_number(e.std_error);
  j["method"] = overlap_method_name(e.method);
  return j;
}

Json protocol_run_json(const MitigationProtocolSpec& spec, const MitigationRun& run, double truth,
                       const BoundReport& bound) {
  Json j;
  j["protocol"] = spec.protocol;
  j["shape"] = to_json(spec.shape);
  j["M"] = run.rounds;
  j["seed"] = run.seed;
  j["mean"] = json_number(run.mean);
  j["truth"] = json_number(truth);
  j["spread_declared"] = json_number(spec.spread());
  j["spread_observed"] = json_number(run.empirical_spread);
  j["bound_report"] = to_json(bound);
  return j;
}

std::string dump_report(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace qem
