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

#include "qem/qem.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <new>
#include <set>
#include <string>
#include <vector>

#include <unistd.h>

#include "qem/bounds.hpp"
#include "qem/channel.hpp"
#include "qem/distance.hpp"
#include "qem/errors.hpp"
#include "qem/mitigation.hpp"
#include "qem/runner.hpp"
#include "qem/state.hpp"

struct qem_config {
  qem::Json json;
  std::set<std::string> explicit_paths;
};

struct qem_result {
  qem::RunResult run;
};

struct qem_state {
  qem::DensityMatrix rho;
};

struct qem_channel {
  qem::QuantumChannel ch;
};

namespace {

thread_local std::string last_error;

qem_status record(qem_status s, const std::string& message) {
  last_error = message;
  return s;
}

template <typename F>
qem_status guard(F&& f) {
  try {
    f();
    last_error.clear();
    return QEM_OK;
  } catch (const qem::Error& e) {
    return record(static_cast<qem_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return record(QEM_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(QEM_INTERNAL, e.what());
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) qem::fail(qem::ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

void note_paths(qem_config& cfg, const qem::Json& j, const std::string& prefix) {
  for (const auto& [k, v] : j.items()) {
    const std::string path = prefix.empty() ? k : prefix + "." + k;
    cfg.explicit_paths.insert(path);
    if (v.is_object()) note_paths(cfg, v, path);
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* qem_version(void) { return "1.0.0"; }

const char* qem_status_name(qem_status status) {
  static thread_local std::string name;
  name = std::string(qem::error_code_name(static_cast<qem::ErrorCode>(status)));
  return name.c_str();
}

int qem_status_is_numerical(qem_status status) {
  return qem::is_numerical(static_cast<qem::ErrorCode>(status)) ? 1 : 0;
}

const char* qem_last_error(void) { return last_error.c_str(); }

void qem_string_free(char* s) { std::free(s); }

qem_status qem_config_new(qem_config** out) {
  return guard([&] {
    require(out, "out");
    *out = new qem_config{qem::default_config(), {}};
  });
}

qem_status qem_config_parse(const char* json_text, qem_config** out) {
  return guard([&] {
    require(json_text, "json_text");
    require(out, "out");
    const qem::Json raw = qem::parse_config_text(json_text);
    auto cfg = std::make_unique<qem_config>();
    cfg->json = qem::normalize_config(raw);
    note_paths(*cfg, raw, "");
    *out = cfg.release();
  });
}

qem_status qem_config_set(qem_config* cfg, const char* path, const char* value) {
  return guard([&] {
    require(cfg, "cfg");
    require(path, "path");
    require(value, "value");
    qem::set_config_value(cfg->json, path, qem::Json(std::string(value)));
    cfg->explicit_paths.insert(path);
  });
}

qem_status qem_config_set_json(qem_config* cfg, const char* path, const char* json_value) {
  return guard([&] {
    require(cfg, "cfg");
    require(path, "path");
    require(json_value, "json_value");
    qem::set_config_value(cfg->json, path, qem::parse_config_text(json_value));
    cfg->explicit_paths.insert(path);
  });
}

int qem_config_has(const qem_config* cfg, const char* path) {
  if (cfg == nullptr || path == nullptr) return 0;
  return cfg->explicit_paths.count(path) ? 1 : 0;
}

qem_status qem_config_get(const qem_config* cfg, const char* path, char** out) {
  return guard([&] {
    require(cfg, "cfg");
    require(path, "path");
    require(out, "out");
    const qem::Json* node = &cfg->json;
    const std::string p(path);
    std::size_t start = 0;
    while (true) {
      const std::size_t dot = p.find('.', start);
      const std::string key = p.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
      if (!node->is_object() || !node->contains(key)) {
        qem::fail(qem::ErrorCode::kUnknownParameter, "unknown config key " + p);
      }
      node = &node->at(key);
      if (dot == std::string::npos) break;
      start = dot + 1;
    }
    *out = copy_string(node->is_string() ? node->get<std::string>() : node->dump());
  });
}

qem_status qem_config_to_json(const qem_config* cfg, char** out) {
  return guard([&] {
    require(cfg, "cfg");
    require(out, "out");
    *out = copy_string(qem::dump_report(cfg->json));
  });
}

void qem_config_free(qem_config* cfg) { delete cfg; }

qem_status qem_run(const qem_config* cfg, qem_result** out) {
  return guard([&] {
    require(cfg, "cfg");
    require(out, "out");
    *out = new qem_result{qem::run_command(cfg->json)};
  });
}

qem_status qem_sweep(const qem_config* cfg, qem_result** out) {
  return guard([&] {
    require(cfg, "cfg");
    require(out, "out");
    *out = new qem_result{qem::emit_sweep(cfg->json)};
  });
}

const char* qem_result_text(const qem_result* result) {
  return result ? result->run.text.c_str() : "";
}

const char* qem_result_format(const qem_result* result) {
  return result ? result->run.format.c_str() : "";
}

int qem_result_numerical_flag(const qem_result* result) {
  return result && result->run.numerical_flag ? 1 : 0;
}

qem_status qem_result_write(const qem_result* result, const char* path) {
  return guard([&] {
    require(result, "result");
    require(path, "path");
    const std::string& text = result->run.text;
    if (std::strcmp(path, "-") == 0) {
      std::fwrite(text.data(), 1, text.size(), stdout);
      std::fflush(stdout);
      return;
    }
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
      std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
      if (!f) qem::fail(qem::ErrorCode::kIoError, "cannot open " + tmp.string());
      f.write(text.data(), static_cast<std::streamsize>(text.size()));
      f.close();
      if (!f) qem::fail(qem::ErrorCode::kIoError, "cannot write " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
      std::filesystem::remove(tmp, ec);
      qem::fail(qem::ErrorCode::kIoError, "cannot rename onto " + target.string());
    }
  });
}

void qem_result_free(qem_result* result) { delete result; }

qem_status qem_state_named(const char* name, size_t qubits, qem_state** out) {
  return guard([&] {
    require(name, "name");
    require(out, "out");
    if (qubits < 1 || qubits > 14) qem::fail(qem::ErrorCode::kInvalidDimension, "qubits must be 1..14");
    const std::string s(name);
    const std::size_t dim = std::size_t{1} << qubits;
    if (s == "mixed") {
      *out = new qem_state{qem::DensityMatrix::maximally_mixed(dim)};
    } else if (s.rfind("haar:", 0) == 0) {
      *out = new qem_state{qem::haar_random_state(dim, std::stoull(s.substr(5)))};
    } else {
      *out = new qem_state{qem::DensityMatrix::pure(qem::named_ket(s, qubits))};
    }
  });
}

qem_status qem_state_from_entries(const double* re_im, size_t dim, qem_state** out) {
  return guard([&] {
    require(re_im, "re_im");
    require(out, "out");
    if (dim < 1) qem::fail(qem::ErrorCode::kInvalidDimension, "dimension must be positive");
    const auto d = static_cast<Eigen::Index>(dim);
    qem::Matrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        const std::size_t k = 2 * static_cast<std::size_t>(i * d + j);
        m(i, j) = qem::Complex(re_im[k], re_im[k + 1]);
      }
    }
    *out = new qem_state{qem::DensityMatrix::from_matrix(m)};
  });
}

size_t qem_state_dim(const qem_state* state) { return state ? state->rho.dim() : 0; }

void qem_state_free(qem_state* state) { delete state; }

qem_status qem_channel_standard(const char* spec, qem_channel** out) {
  return guard([&] {
    require(spec, "spec");
    require(out, "out");
    qem::Json cfg = qem::default_config();
    qem::set_config_value(cfg, "noise", qem::Json(std::string(spec)));
    const qem::Json& n = cfg.at("noise");
    qem::ChannelParams p;
    p.rate = n.at("rate").get<double>();
    p.dim = n.at("dim").get<std::size_t>();
    p.qubits = n.at("qubits").get<std::size_t>();
    *out = new qem_channel{
        qem::standard_channel(qem::parse_channel_kind(n.at("model").get<std::string>()), p)};
  });
}

qem_status qem_channel_apply(const qem_channel* ch, const qem_state* in, qem_state** out) {
  return guard([&] {
    require(ch, "ch");
    require(in, "in");
    require(out, "out");
    *out = new qem_state{ch->ch.apply(in->rho)};
  });
}

void qem_channel_free(qem_channel* ch) { delete ch; }

#define QEM_DISTANCE(fn, impl)                                              \
  qem_status fn(const qem_state* a, const qem_state* b, double* out) {      \
    return guard([&] {                                                      \
      require(a, "a");                                                      \
      require(b, "b");                                                      \
      require(out, "out");                                                  \
      *out = impl(a->rho, b->rho);                                          \
    });                                                                     \
  }

QEM_DISTANCE(qem_trace_distance, qem::trace_distance)
QEM_DISTANCE(qem_fidelity, qem::fidelity)
QEM_DISTANCE(qem_sub_fidelity, qem::sub_fidelity)
QEM_DISTANCE(qem_relative_entropy, qem::relative_entropy)

#undef QEM_DISTANCE

qem_status qem_spread_bound(const qem_channel* ch, size_t inputs, size_t experiments,
                            double max_bias, const char* relaxation, double* out) {
  return guard([&] {
    require(ch, "ch");
    require(relaxation, "relaxation");
    require(out, "out");
    const auto shape = qem::ProtocolShape::uniform(ch->ch, inputs, experiments, max_bias);
    *out = qem::optimize_bound_over_pairs(shape, qem::parse_relaxation(relaxation), {})
               .bound_value;
  });
}

qem_status qem_layered_bound(size_t qubits, size_t inputs, size_t experiments, double max_bias,
                             const double* rates, size_t rate_count, size_t depth, double* out) {
  return guard([&] {
    require(rates, "rates");
    require(out, "out");
    *out = qem::layered_depolarizing_bound(qubits, inputs, experiments, max_bias,
                                       std::vector<double>(rates, rates + rate_count), depth);
  });
}

qem_status qem_hoeffding_samples(double spread, double delta, double failure_prob,
                                 uint64_t* out) {
  return guard([&] {
    require(out, "out");
    *out = qem::hoeffding_samples(spread, {delta, failure_prob});
  });
}

}  // extern "C"
