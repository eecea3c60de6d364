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

#include "qem/runner.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <regex>
#include <sstream>
#include <string>

#include "qem/bounds.hpp"
#include "qem/channel.hpp"
#include "qem/circuit.hpp"
#include "qem/distance.hpp"
#include "qem/errors.hpp"
#include "qem/extrapolation.hpp"
#include "qem/pauli.hpp"
#include "qem/pec.hpp"
#include "qem/state.hpp"
#include "qem/subfid.hpp"
#include "qem/virtual_distillation.hpp"

namespace qem {

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.emplace_back(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == s.npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(std::string_view text, std::string_view what) {
  const std::string s = trim(text);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
    fail(ErrorCode::kParseError, "expected a number for " + std::string(what) + ", got '" + s + "'");
  }
  return v;
}

std::uint64_t parse_unsigned(std::string_view text, std::string_view what) {
  const std::string s = trim(text);
  if (s.empty() || s.find_first_not_of("0123456789") != s.npos) {
    fail(ErrorCode::kParseError,
         "expected a non-negative integer for " + std::string(what) + ", got '" + s + "'");
  }
  errno = 0;
  const unsigned long long v = std::strtoull(s.c_str(), nullptr, 10);
  if (errno == ERANGE) fail(ErrorCode::kParseError, std::string(what) + " is out of range");
  return v;
}

Json unsigned_from(const Json& v, std::string_view what) {
  if (v.is_string()) return parse_unsigned(v.get<std::string>(), what);
  if (v.is_number_unsigned()) return v;
  if (v.is_number()) {
    const double d = v.get<double>();
    if (d >= 0.0 && std::floor(d) == d && d < 1.8e19) return static_cast<std::uint64_t>(d);
  }
  fail(ErrorCode::kParseError, std::string(what) + " must be a non-negative integer");
}

Json double_from(const Json& v, std::string_view what) {
  if (v.is_string()) return parse_double(v.get<std::string>(), what);
  if (v.is_number()) return v.get<double>();
  fail(ErrorCode::kParseError, std::string(what) + " must be a number");
}

// "a:b[:step]" or "x,y,z".
Json number_list_from_string(std::string_view text, std::string_view what) {
  Json out = Json::array();
  if (trim(text).empty()) return out;
  if (text.find(':') != text.npos) {
    const auto parts = split(text, ':');
    if (parts.size() < 2 || parts.size() > 3) {
      fail(ErrorCode::kParseError, "range for " + std::string(what) + " is start:stop[:step]");
    }
    const double a = parse_double(parts[0], what), b = parse_double(parts[1], what);
    const double step = parts.size() == 3 ? parse_double(parts[2], what) : 1.0;
    if (!(step > 0.0)) fail(ErrorCode::kParseError, "range step must be positive");
    const bool integral = std::floor(a) == a && std::floor(step) == step && a >= 0.0;
    for (std::size_t i = 0;; ++i) {
      const double x = round_sig12(a + static_cast<double>(i) * step);
      if (x > b + 1e-9 * std::max(1.0, std::abs(b))) break;
      if (integral) {
        out.push_back(static_cast<std::uint64_t>(x));
      } else {
        out.push_back(x);
      }
      if (i > 1000000) fail(ErrorCode::kParseError, "range is too long");
    }
    return out;
  }
  for (const auto& p : split(text, ',')) {
    const std::string t = trim(p);
    if (t.find_first_not_of("0123456789") == t.npos && !t.empty()) {
      out.push_back(parse_unsigned(t, what));
    } else {
      out.push_back(parse_double(t, what));
    }
  }
  return out;
}

Json number_list_from(const Json& v, std::string_view what) {
  if (v.is_string()) return number_list_from_string(v.get<std::string>(), what);
  if (v.is_number()) return Json::array({v});
  if (v.is_array()) {
    for (const auto& e : v) {
      if (!e.is_number()) fail(ErrorCode::kParseError, std::string(what) + " must hold numbers");
    }
    return v;
  }
  fail(ErrorCode::kParseError, std::string(what) + " must be a list of numbers");
}

Json coerce(const Json& def, const Json& value, const std::string& path) {
  if (path == "shape.n") return value.is_null() ? Json(nullptr) : unsigned_from(value, path);
  if (path == "extrapolation.boosts") {
    return value.is_null() ? Json(nullptr) : number_list_from(value, path);
  }
  if (def.is_boolean()) {
    if (value.is_boolean()) return value;
    if (value.is_string()) {
      const std::string s = value.get<std::string>();
      if (s == "true" || s == "1") return true;
      if (s == "false" || s == "0") return false;
    }
    fail(ErrorCode::kParseError, path + " must be true or false");
  }
  if (def.is_number_unsigned()) return unsigned_from(value, path);
  if (def.is_number()) return double_from(value, path);
  if (def.is_array()) return number_list_from(value, path);
  if (def.is_string()) {
    if (!value.is_string()) fail(ErrorCode::kParseError, path + " must be a string");
    return value;
  }
  fail(ErrorCode::kParseError, "cannot assign " + path);
}

Json expand_noise(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() < 2 || parts.size() > 3) {
    fail(ErrorCode::kParseError, "noise is model:rate[:qubits_or_dim]");
  }
  Json j = Json::object();
  j["model"] = trim(parts[0]);
  j["rate"] = parse_double(parts[1], "noise rate");
  if (parts.size() == 3) {
    const ChannelKind kind = parse_channel_kind(trim(parts[0]));
    j[kind == ChannelKind::kDepolarizingD ? "dim" : "qubits"] =
        parse_unsigned(parts[2], "noise size");
  }
  return j;
}

Json expand_shape(std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() < 2 || parts.size() > 3) fail(ErrorCode::kParseError, "shape is Q,K[,n]");
  Json j = Json::object();
  j["Q"] = parse_unsigned(parts[0], "Q");
  j["K"] = parse_unsigned(parts[1], "K");
  if (parts.size() == 3) j["n"] = parse_unsigned(parts[2], "n");
  return j;
}

void assign(Json& node, const Json& def, const Json& value, const std::string& path) {
  if (def.is_object()) {
    Json expanded = value;
    if (value.is_string() && path == "noise") expanded = expand_noise(value.get<std::string>());
    if (value.is_string() && path == "shape") expanded = expand_shape(value.get<std::string>());
    if (!expanded.is_object()) fail(ErrorCode::kParseError, path + " must be an object");
    for (const auto& [key, v] : expanded.items()) {
      if (!def.contains(key)) fail(ErrorCode::kUnknownParameter, "unknown config key " + path + "." + key);
      assign(node[key], def[key], v, path + "." + key);
    }
    return;
  }
  node = coerce(def, value, path);
}

std::uint64_t u64(const Json& cfg, const char* a, const char* b = nullptr) {
  return (b ? cfg.at(a).at(b) : cfg.at(a)).get<std::uint64_t>();
}
double dbl(const Json& cfg, const char* a, const char* b = nullptr) {
  return (b ? cfg.at(a).at(b) : cfg.at(a)).get<double>();
}
std::string str(const Json& cfg, const char* a, const char* b = nullptr) {
  return (b ? cfg.at(a).at(b) : cfg.at(a)).get<std::string>();
}

QuantumChannel make_channel(const Json& cfg) {
  const Json& n = cfg.at("noise");
  ChannelParams p;
  p.rate = n.at("rate").get<double>();
  p.dim = n.at("dim").get<std::size_t>();
  p.qubits = n.at("qubits").get<std::size_t>();
  return standard_channel(parse_channel_kind(n.at("model").get<std::string>()), p);
}

std::size_t channel_qubits(const QuantumChannel& ch) {
  if (!is_power_of_two(ch.dim_in())) {
    fail(ErrorCode::kDimensionNotPowerOfTwo, "noise model must act on qubits for this command");
  }
  return qubit_count(ch.dim_in());
}

std::size_t shape_qubits(const Json& cfg, std::size_t fallback) {
  const Json& n = cfg.at("shape").at("n");
  return n.is_null() ? fallback : n.get<std::size_t>();
}

void check_shape_qubits(const Json& cfg, std::size_t actual) {
  const Json& n = cfg.at("shape").at("n");
  if (!n.is_null() && n.get<std::size_t>() != actual) {
    fail(ErrorCode::kDimensionMismatch, "shape n does not match the noise model");
  }
}

struct ParsedObservable {
  Observable observable;
  std::string pauli;  // empty unless a bare Pauli string times a scalar
};

// "X/2", "-0.5*XZ", "ZZ".
ParsedObservable parse_observable(std::string_view text, std::size_t qubits) {
  static const std::regex re(R"(^\s*([+-]?)\s*(?:([0-9.eE+-]+)\s*\*)?\s*([IXYZ]+)\s*(?:/\s*([0-9.eE+-]+))?\s*$)");
  std::cmatch m;
  const std::string s(text);
  if (!std::regex_match(s.c_str(), m, re)) {
    fail(ErrorCode::kParseError, "observable is [sign][scale*]PAULI[/divisor], got '" + s + "'");
  }
  double scale = m[1].str() == "-" ? -1.0 : 1.0;
  if (m[2].matched) scale *= parse_double(m[2].str(), "observable scale");
  if (m[4].matched) scale /= parse_double(m[4].str(), "observable divisor");
  const std::string label = m[3].str();
  if (label.size() != qubits) {
    fail(ErrorCode::kDimensionMismatch,
         "observable acts on " + std::to_string(label.size()) + " qubits, expected " +
             std::to_string(qubits));
  }
  const bool identity = label.find_first_not_of('I') == label.npos;
  return {Observable::pauli(label, scale), identity ? std::string() : label};
}

// Named product state, "haar:<seed>" or "mixed".
DensityMatrix parse_state(std::string_view text, std::size_t qubits) {
  const std::string s = trim(text);
  const std::size_t dim = std::size_t{1} << qubits;
  if (s == "mixed") return DensityMatrix::maximally_mixed(dim);
  if (s.rfind("haar:", 0) == 0) return haar_random_state(dim, parse_unsigned(s.substr(5), "state seed"));
  return DensityMatrix::pure(named_ket(s, qubits));
}

Vector parse_ket(std::string_view text, std::size_t qubits) {
  const std::string s = trim(text);
  if (s.rfind("haar:", 0) == 0) {
    return haar_random_ket(std::size_t{1} << qubits, parse_unsigned(s.substr(5), "state seed"));
  }
  if (s == "mixed") fail(ErrorCode::kInvalidArgument, "this command needs a pure ideal state");
  return named_ket(s, qubits);
}

PairSearch pair_search(const Json& cfg) {
  PairSearch ps;
  const std::string mode = str(cfg, "pairs", "mode");
  if (mode == "presets") {
    ps.mode = PairSearch::Mode::kPresets;
  } else if (mode == "random") {
    ps.mode = PairSearch::Mode::kRandom;
  } else {
    fail(ErrorCode::kParseError, "pairs.mode is presets or random");
  }
  ps.samples = u64(cfg, "pairs", "samples");
  ps.seed = u64(cfg, "pairs", "seed");
  return ps;
}

AccuracySpec accuracy(const Json& cfg) {
  AccuracySpec acc{dbl(cfg, "accuracy", "delta"), dbl(cfg, "accuracy", "fail")};
  acc.validate();
  return acc;
}

Json required_rounds(const BoundReport& r, const AccuracySpec& acc) {
  if (r.status != BoundStatus::kFinite) return nullptr;
  return sample_count_bound(r, acc);
}

Json config_subset(const Json& cfg, std::initializer_list<const char*> keys) {
  Json out;
  for (const char* k : keys) out[k] = cfg.at(k);
  return out;
}

Json report_header(const Json& cfg, std::initializer_list<const char*> keys) {
  Json j;
  j["command"] = cfg.at("command");
  j["config"] = config_subset(cfg, keys);
  return j;
}

void append(Json& dst, const Json& src) {
  for (const auto& [k, v] : src.items()) dst[k] = v;
}

struct Report {
  Json json;
  bool numerical_flag = false;
};

Report run_bound(const Json& cfg) {
  const QuantumChannel ch = make_channel(cfg);
  check_shape_qubits(cfg, channel_qubits(ch));
  const ProtocolShape shape = ProtocolShape::uniform(ch, u64(cfg, "shape", "Q"),
                                                     u64(cfg, "shape", "K"), dbl(cfg, "shape", "b_max"));
  const BoundReport r = optimize_bound_over_pairs(
      shape, parse_relaxation(str(cfg, "relaxation")), pair_search(cfg));
  Json j = report_header(cfg, {"command", "noise", "shape", "accuracy", "relaxation", "pairs"});
  j["bound_report"] = to_json(r);
  j["bound_status"] = bound_status_name(r.status);
  j["M_required"] = required_rounds(r, accuracy(cfg));
  return {j, false};
}

std::vector<double> layered_rates(const Json& cfg, std::size_t experiments) {
  std::vector<double> rates;
  for (const auto& e : cfg.at("circuit").at("eps")) rates.push_back(e.get<double>());
  if (rates.size() == 1) rates.assign(experiments, rates.front());
  return rates;
}

Report run_layered(const Json& cfg) {
  const std::size_t n = u64(cfg, "circuit", "n"), depth = u64(cfg, "circuit", "L");
  const std::size_t q = u64(cfg, "shape", "Q"), k = u64(cfg, "shape", "K");
  const std::vector<double> rates = layered_rates(cfg, k);
  const BoundReport r = layered_depolarizing_report(n, q, k, dbl(cfg, "shape", "b_max"), rates, depth);
  Json j = report_header(cfg, {"command", "shape", "accuracy", "circuit"});
  j["bound_report"] = to_json(r);
  j["bound_status"] = bound_status_name(r.status);
  j["M_required"] = required_rounds(r, accuracy(cfg));
  bool flag = false;
  if (cfg.at("circuit").at("simulate").get<bool>()) {
    const LayeredCircuitConfig circuit = random_layered_circuit(n, depth, rates, u64(cfg, "circuit", "seed"));
    const LayeredProofChain chain = layered_proof_chain(circuit, q, DensityMatrix::pure(named_ket("zero", n)),
                                               DensityMatrix::pure(named_ket("one", n)));
    Json c;
    c["pair_description"] = "zero^" + std::to_string(n) + " vs one^" + std::to_string(n);
    c["trace_product"] = json_number(chain.trace_product);
    c["split_to_mixed"] = json_number(chain.split_to_mixed);
    c["per_experiment_sum"] = json_number(chain.per_experiment_sum);
    c["pinsker_sum"] = json_number(chain.pinsker_sum);
    c["envelope_sum"] = json_number(chain.envelope_sum);
    c["analytic_denominator"] = json_number(chain.analytic_denominator);
    c["worst_violation"] = json_number(chain.worst_violation());
    c["holds"] = chain.worst_violation() <= 1e-9;
    flag = !c["holds"].get<bool>();
    j["chain"] = c;
  }
  return {j, flag};
}

BoundReport protocol_bound(const Json& cfg, const ProtocolShape& shape) {
  return optimize_bound_over_pairs(shape, parse_relaxation(str(cfg, "relaxation")), pair_search(cfg));
}

Json protocol_report(const Json& cfg, std::initializer_list<const char*> keys,
                     const MitigationProtocolSpec& spec, const DensityMatrix& psi,
                     const Observable& a) {
  const MitigationRun run = run_mitigation(spec, psi, u64(cfg, "rounds"), u64(cfg, "seed"));
  const BoundReport bound = protocol_bound(cfg, spec.shape);
  Json j = report_header(cfg, keys);
  append(j, protocol_run_json(spec, run, expectation(a, psi), bound));
  j["bound_status"] = bound_status_name(bound.status);
  j["std_dev"] = json_number(run.std_dev);
  j["exact_mean"] = json_number(exact_expectation(spec, psi));
  j["M_required"] = hoeffding_samples(spec.spread(), accuracy(cfg));
  j["bias_description"] = spec.bias_description;
  return j;
}

Report run_pec(const Json& cfg) {
  const QuantumChannel ch = make_channel(cfg);
  const std::size_t n = channel_qubits(ch);
  const ParsedObservable obs = parse_observable(str(cfg, "observable"), n);
  const DensityMatrix psi = parse_state(str(cfg, "state"), n);
  const QuasiProbDecomposition q = quasiprob_decompose(ch);
  const MitigationProtocolSpec spec = pec_spec(ch, q, obs.observable);
  Json j = protocol_report(cfg, {"command", "seed", "noise", "accuracy", "relaxation", "pairs",
                                 "observable", "state", "rounds"},
                           spec, psi, obs.observable);
  Json d;
  d["labels"] = q.basis_labels;
  Json coeffs = Json::array();
  for (double c : q.coefficients) coeffs.push_back(json_number(c));
  d["coefficients"] = coeffs;
  d["gamma"] = json_number(q.gamma);
  j["decomposition"] = d;
  return {j, false};
}

Report run_extrapolate(const Json& cfg) {
  const Json& e = cfg.at("extrapolation");
  const std::size_t n = shape_qubits(cfg, 1);
  const NoiseFamily family = noise_family(e.at("family").get<std::string>(), n);
  ExtrapolationConfig rc;
  if (e.at("boosts").is_null()) {
    rc = richardson_coefficients(static_cast<std::size_t>(e.at("order").get<std::uint64_t>()));
  } else {
    rc = richardson_coefficients(e.at("boosts").get<std::vector<double>>());
  }
  const ParsedObservable obs = parse_observable(str(cfg, "observable"), n);
  const DensityMatrix psi = parse_state(str(cfg, "state"), n);
  const MitigationProtocolSpec spec =
      extrapolation_spec(family, e.at("strength").get<double>(), rc, obs.observable);
  Json j = protocol_report(cfg, {"command", "seed", "shape", "accuracy", "relaxation", "pairs",
                                 "observable", "state", "rounds", "extrapolation"},
                           spec, psi, obs.observable);
  Json boosts = Json::array(), coeffs = Json::array();
  for (double c : rc.boosts) boosts.push_back(json_number(c));
  for (double c : rc.coefficients) coeffs.push_back(json_number(c));
  j["boosts"] = boosts;
  j["coefficients"] = coeffs;
  j["bias_bound"] = json_number(spec.shape.max_bias);
  return {j, false};
}

Report run_vd(const Json& cfg) {
  const Json& v = cfg.at("vd");
  const std::size_t n = shape_qubits(cfg, 1);
  const std::size_t copies = v.at("copies").get<std::size_t>();
  const SpectralModel model = SpectralModel::uniform(parse_ket(str(cfg, "state"), n), v.at("lambda").get<double>());
  const ParsedObservable obs = parse_observable(str(cfg, "observable"), n);
  const VirtualDistillationSpec vd =
      vd_spec(model, copies, obs.observable, {v.at("search_samples").get<std::size_t>(), u64(cfg, "seed")});
  Json j = protocol_report(cfg, {"command", "seed", "shape", "accuracy", "relaxation", "pairs",
                                 "observable", "state", "rounds", "vd"},
                           vd.spec, model.ideal_state(), obs.observable);
  j["bias_bound"] = json_number(vd.bias_bound);
  j["spread_for_observable"] = json_number(vd.spread_for_observable);
  j["single_pauli_witness"] = json_number(vd.single_pauli_witness);
  j["best_found_spread"] = json_number(vd.best_found_spread);
  j["best_found_method"] = vd.best_found_method;
  if (!obs.pauli.empty()) {
    const VdProbability p = vd_outcome_probability(model.noisy_state(), pauli_string_matrix(obs.pauli), copies);
    Json pj;
    pj["closed_form"] = json_number(p.closed_form);
    pj["circuit"] = json_number(p.circuit);
    j["p0"] = pj;
  }
  return {j, false};
}

Report run_subfid(const Json& cfg) {
  const QuantumChannel ch = make_channel(cfg);
  const std::size_t n = channel_qubits(ch);
  check_shape_qubits(cfg, n);
  const DensityMatrix psi = parse_state(str(cfg, "state"), n);
  const DensityMatrix phi = parse_state(str(cfg, "witness"), n);
  const DensityMatrix rho = ch.apply(psi), sigma = ch.apply(phi);
  const SubFidelityEstimate est =
      estimate_subfidelity(rho, sigma, u64(cfg, "subfid", "shots"), u64(cfg, "seed"));
  const ProtocolShape shape = ProtocolShape::uniform(ch, u64(cfg, "shape", "Q"),
                                                     u64(cfg, "shape", "K"), dbl(cfg, "shape", "b_max"));
  const double copies = static_cast<double>(shape.inputs * shape.experiments);
  const std::string pair = str(cfg, "state") + " vs " + str(cfg, "witness");
  const BoundReport from_estimate = spread_bound_from_overlap(
      shape, trace_distance(psi, phi), std::pow(std::clamp(est.value, 0.0, 1.0), copies),
      Relaxation::kSubFidelity, pair + " (estimated)");
  const BoundReport from_fidelity = spread_bound_from_pair(shape, psi, phi, Relaxation::kFidelity, pair);
  const BoundReport from_exact = spread_bound_from_pair(shape, psi, phi, Relaxation::kSubFidelity, pair);

  Json j = report_header(cfg, {"command", "seed", "noise", "shape", "state", "witness", "subfid"});
  Json e;
  e["value"] = json_number(est.value);
  e["ci"] = json_number(est.ci);
  e["at_boundary"] = est.at_boundary;
  e["first_term_bound"] = json_number(est.first_term_bound);
  e["overlap"] = to_json(est.overlap);
  e["cycle"] = to_json(est.cycle);
  e["cycle_imag_mean"] = json_number(est.cycle_imag_mean);
  e["cycle_imag_std_error"] = json_number(est.cycle_imag_std_error);
  j["estimate"] = e;
  Json x;
  x["sub_fidelity"] = json_number(sub_fidelity(rho, sigma));
  x["fidelity"] = json_number(fidelity(rho, sigma));
  x["overlap"] = json_number(trace_product(rho.matrix(), sigma.matrix()).real());
  x["trace_distance"] = json_number(trace_distance(rho, sigma));
  j["exact"] = x;
  j["bound_report"] = to_json(from_estimate);
  j["bound_status"] = bound_status_name(from_estimate.status);
  j["bound_ci"] = json_number(overlap_bound_std_error(shape, trace_distance(psi, phi), est.value, est.ci));
  j["bound_from_exact_sub_fidelity"] = to_json(from_exact);
  j["bound_from_fidelity"] = to_json(from_fidelity);
  return {j, false};
}

Report run_verify(const Json& cfg) {
  Json j = report_header(cfg, {"command", "seed"});
  const Json checks = verify_invariants(u64(cfg, "seed"));
  bool all = true;
  for (const auto& c : checks) all = all && c.at("passed").get<bool>();
  j["checks"] = checks;
  j["all_passed"] = all;
  return {j, !all};
}

Report run_single(const Json& cfg) {
  switch (parse_command(str(cfg, "command"))) {
    case Command::kBound: return run_bound(cfg);
    case Command::kLayered: return run_layered(cfg);
    case Command::kPec: return run_pec(cfg);
    case Command::kExtrapolate: return run_extrapolate(cfg);
    case Command::kVd: return run_vd(cfg);
    case Command::kSubfid: return run_subfid(cfg);
    case Command::kVerify: return run_verify(cfg);
    case Command::kSweep: break;
  }
  fail(ErrorCode::kInvalidArgument, "sweep cannot be nested");
}

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_number_float()) return format_sig12(v.get<double>());
  if (v.is_number()) return v.dump();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") != s.npos) {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  }
  return s;
}

Json lookup(const Json& j, std::initializer_list<const char*> path) {
  const Json* node = &j;
  for (const char* k : path) {
    if (!node->is_object() || !node->contains(k)) return nullptr;
    node = &node->at(k);
  }
  return *node;
}

std::vector<std::string> csv_row(const Json& report, const Json& parameter, const Json& value) {
  const Json est = lookup(report, {"estimate", "value"});
  const Json rows[] = {
      parameter,
      value,
      report.at("command"),
      lookup(report, {"bound_status"}),
      lookup(report, {"bound_report", "relaxation"}),
      lookup(report, {"bound_report", "numerator"}),
      lookup(report, {"bound_report", "denominator"}),
      lookup(report, {"bound_report", "bound_value"}),
      lookup(report, {"bound_report", "shape", "Q"}),
      lookup(report, {"bound_report", "shape", "K"}),
      lookup(report, {"bound_report", "shape", "n"}),
      lookup(report, {"bound_report", "shape", "b_max"}),
      lookup(report, {"M_required"}),
      lookup(report, {"M"}),
      lookup(report, {"seed"}),
      lookup(report, {"mean"}),
      lookup(report, {"std_dev"}),
      lookup(report, {"truth"}),
      lookup(report, {"spread_declared"}),
      lookup(report, {"spread_observed"}),
      est,
      lookup(report, {"estimate", "ci"}),
  };
  std::vector<std::string> cells;
  for (const auto& r : rows) cells.push_back(csv_cell(r));
  return cells;
}

std::string join_row(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  return line + "\n";
}

std::string csv_table(const Json& config, const std::vector<std::vector<std::string>>& rows) {
  std::string out = "# config: " + config.dump() + "\n";
  out += join_row(csv_columns());
  for (const auto& r : rows) out += join_row(r);
  return out;
}

// Short sweep names; "eps" means the per-layer rate for layered circuits and
// the channel rate otherwise.
std::string sweep_path(const std::string& name, Command target) {
  static const std::pair<const char*, const char*> aliases[] = {
      {"L", "circuit.L"},         {"Q", "shape.Q"},           {"K", "shape.K"},
      {"b_max", "shape.b_max"},   {"bias", "shape.b_max"},    {"rate", "noise.rate"},
      {"delta", "accuracy.delta"}, {"fail", "accuracy.fail"}, {"strength", "extrapolation.strength"},
      {"order", "extrapolation.order"}, {"lambda", "vd.lambda"}, {"copies", "vd.copies"},
      {"shots", "subfid.shots"},
  };
  if (name == "eps") return target == Command::kLayered ? "circuit.eps" : "noise.rate";
  if (name == "n") return target == Command::kLayered ? "circuit.n" : "shape.n";
  for (const auto& [alias, path] : aliases) {
    if (name == alias) return path;
  }
  const Json* node = &default_config();
  for (const auto& part : split(name, '.')) {
    if (!node->is_object() || !node->contains(part)) {
      fail(ErrorCode::kUnknownParameter, "unknown sweep parameter '" + name + "'");
    }
    node = &node->at(part);
  }
  if (node->is_object() || name == "command" || name.rfind("sweep", 0) == 0 ||
      name.rfind("output", 0) == 0) {
    fail(ErrorCode::kUnknownParameter, "'" + name + "' cannot be swept");
  }
  return name;
}

RunResult render(const Json& cfg, const Report& r) {
  const std::string format = str(cfg, "output", "format");
  if (format == "json" || format == "auto") return {dump_report(r.json), "json", r.numerical_flag};
  if (format == "csv") {
    if (parse_command(str(cfg, "command")) == Command::kVerify) {
      fail(ErrorCode::kInvalidArgument, "verify reports are JSON only");
    }
    return {csv_table(r.json.at("config"), {csv_row(r.json, nullptr, nullptr)}), "csv", r.numerical_flag};
  }
  fail(ErrorCode::kParseError, "output.format is auto, json or csv");
}

template <typename F>
auto with_json_errors(F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParseError, std::string("config: ") + e.what());
  }
}

}  // namespace

std::string_view command_name(Command c) {
  switch (c) {
    case Command::kBound: return "bound";
    case Command::kLayered: return "layered";
    case Command::kPec: return "pec";
    case Command::kExtrapolate: return "extrapolate";
    case Command::kVd: return "vd";
    case Command::kSubfid: return "subfid";
    case Command::kSweep: return "sweep";
    case Command::kVerify: return "verify";
  }
  return "unknown";
}

Command parse_command(std::string_view name) {
  for (Command c : {Command::kBound, Command::kLayered, Command::kPec, Command::kExtrapolate,
                    Command::kVd, Command::kSubfid, Command::kSweep, Command::kVerify}) {
    if (command_name(c) == name) return c;
  }
  fail(ErrorCode::kParseError, "unknown command '" + std::string(name) + "'");
}

const Json& default_config() {
  static const Json defaults = Json::parse(R"({
    "command": "bound",
    "seed": 0,
    "noise": {"model": "dephasing", "rate": 0.1, "qubits": 1, "dim": 2},
    "shape": {"Q": 1, "K": 1, "n": null, "b_max": 0.0},
    "accuracy": {"delta": 0.05, "fail": 0.05},
    "relaxation": "trace_product",
    "pairs": {"mode": "presets", "samples": 64, "seed": 0},
    "circuit": {"n": 1, "L": 1, "eps": [0.1], "simulate": false, "seed": 0},
    "observable": "X/2",
    "state": "plus",
    "witness": "minus",
    "rounds": 1000,
    "extrapolation": {"family": "double_dephasing", "strength": 0.05, "order": 1, "boosts": null},
    "vd": {"lambda": 0.8, "copies": 2, "search_samples": 256},
    "subfid": {"shots": 10000},
    "sweep": {"target": "layered", "parameter": "L", "grid": []},
    "output": {"path": "-", "format": "auto"}
  })");
  return defaults;
}

void set_config_value(Json& cfg, std::string_view path, const Json& value) {
  with_json_errors([&] {
    const auto parts = split(path, '.');
    const Json* def = &default_config();
    Json* node = &cfg;
    std::string walked;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const std::string& key = parts[i];
      walked += (i ? "." : "") + key;
      if (!def->is_object() || !def->contains(key)) {
        fail(ErrorCode::kUnknownParameter, "unknown config key " + walked);
      }
      def = &def->at(key);
      if (!node->contains(key)) (*node)[key] = *def;
      node = &(*node)[key];
    }
    assign(*node, *def, value, std::string(path));
    return 0;
  });
}

Json normalize_config(const Json& raw) {
  if (!raw.is_object()) fail(ErrorCode::kParseError, "config must be a JSON object");
  Json cfg = default_config();
  for (const auto& [key, value] : raw.items()) set_config_value(cfg, key, value);
  parse_command(str(cfg, "command"));
  return cfg;
}

Json parse_config_text(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParseError, std::string("config is not valid JSON: ") + e.what());
  }
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "parameter", "value", "command", "status", "relaxation", "numerator", "denominator",
      "bound_value", "Q", "K", "n", "b_max", "M_required", "M", "seed", "mean", "std_dev",
      "truth", "spread_declared", "spread_observed", "estimate", "ci"};
  return cols;
}

RunResult run_command(const Json& raw_config) {
  return with_json_errors([&] {
    const Json cfg = normalize_config(raw_config);
    if (parse_command(str(cfg, "command")) == Command::kSweep) return emit_sweep(cfg);
    return render(cfg, run_single(cfg));
  });
}

RunResult emit_sweep(const Json& raw_config) {
  return with_json_errors([&] {
    Json cfg = normalize_config(raw_config);
    cfg["command"] = "sweep";
    const Command target = parse_command(str(cfg, "sweep", "target"));
    if (target == Command::kSweep || target == Command::kVerify) {
      fail(ErrorCode::kInvalidArgument, "sweep target must be a single report command");
    }
    const std::string name = str(cfg, "sweep", "parameter");
    const std::string path = sweep_path(name, target);
    const Json& grid = cfg.at("sweep").at("grid");
    if (grid.empty()) fail(ErrorCode::kEmptyGrid, "sweep grid is empty");

    Json base = cfg;
    base.erase("sweep");
    base["command"] = std::string(command_name(target));
    std::vector<std::vector<std::string>> rows;
    Json reports = Json::array();
    bool flag = false;
    for (const auto& v : grid) {
      Json point = base;
      set_config_value(point, path, v);
      const Report r = run_single(point);
      flag = flag || r.numerical_flag;
      rows.push_back(csv_row(r.json, name, v));
      reports.push_back(r.json);
    }
    Json embedded = cfg;
    embedded.erase("output");
    std::string format = str(cfg, "output", "format");
    if (format == "auto") format = "csv";
    if (format == "csv") return RunResult{csv_table(embedded, rows), "csv", flag};
    if (format != "json") fail(ErrorCode::kParseError, "output.format is json or csv");
    Json j;
    j["command"] = "sweep";
    j["config"] = embedded;
    j["columns"] = csv_columns();
    j["reports"] = reports;
    return RunResult{dump_report(j), "json", flag};
  });
}

}  // namespace qem
