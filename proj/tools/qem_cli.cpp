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

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qem/qem.h"

namespace {

struct Flag {
  const char* name;
  const char* path;
  const char* help;
  std::vector<std::string> commands;  // empty: every command
};

const std::vector<Flag>& flags() {
  static const std::vector<Flag> table = {
      {"--noise", "noise", "noise model, e.g. dephasing:0.1 or local_depolarizing:0.1:2",
       {"bound", "pec", "subfid", "sweep"}},
      {"--shape", "shape", "Q,K[,n]", {"bound", "layered", "subfid", "extrapolate", "vd", "sweep"}},
      {"--bias", "shape.b_max", "declared maximum bias b_max", {"bound", "layered", "subfid", "sweep"}},
      {"--relaxation", "relaxation", "exact_K1 | trace_product | fidelity | sub_fidelity",
       {"bound", "pec", "extrapolate", "vd", "sweep"}},
      {"--pairs", "pairs.mode", "witness pairs: presets | random", {"bound", "pec", "extrapolate", "vd", "sweep"}},
      {"--samples", "pairs.samples", "random witness pairs to try", {"bound", "pec", "extrapolate", "vd", "sweep"}},
      {"--n", "circuit.n", "qubits of the layered circuit", {"layered", "sweep"}},
      {"--L", "circuit.L", "circuit depth", {"layered", "sweep"}},
      {"--eps", "circuit.eps", "per-experiment noise rate(s), comma separated", {"layered", "sweep"}},
      {"--circuit-seed", "circuit.seed", "seed of the random layers", {"layered", "sweep"}},
      {"--obs", "observable", "observable such as X/2 or 0.5*XZ", {"pec", "extrapolate", "vd", "sweep"}},
      {"--state", "state", "ideal state: zero, plus, ..., haar:<seed>, mixed",
       {"pec", "extrapolate", "vd", "subfid", "sweep"}},
      {"--witness", "witness", "second state of the pair", {"subfid", "sweep"}},
      {"--rounds", "rounds", "Monte Carlo rounds M", {"pec", "extrapolate", "vd", "sweep"}},
      {"--delta", "accuracy.delta", "target accuracy", {"bound", "layered", "pec", "extrapolate", "vd", "sweep"}},
      {"--fail", "accuracy.fail", "failure probability", {"bound", "layered", "pec", "extrapolate", "vd", "sweep"}},
      {"--family", "extrapolation.family", "depolarizing | dephasing | double_dephasing | continuous_dephasing",
       {"extrapolate", "sweep"}},
      {"--strength", "extrapolation.strength", "base noise strength", {"extrapolate", "sweep"}},
      {"--order", "extrapolation.order", "Richardson order R", {"extrapolate", "sweep"}},
      {"--boosts", "extrapolation.boosts", "explicit boost factors, comma separated", {"extrapolate", "sweep"}},
      {"--lambda", "vd.lambda", "dominant eigenvalue of the noisy state", {"vd", "sweep"}},
      {"--copies", "vd.copies", "copies Q", {"vd", "sweep"}},
      {"--shots", "subfid.shots", "shots per estimated quantity", {"subfid", "sweep"}},
      {"--target", "sweep.target", "command to sweep", {"sweep"}},
      {"--param", "sweep.parameter", "parameter name or dotted config path", {"sweep"}},
      {"--grid", "sweep.grid", "values: a,b,c or start:stop[:step]", {"sweep"}},
      {"--seed", "seed", "64-bit seed (default: $QEM_SEED, else 0)", {}},
      {"--format", "output.format", "auto | json | csv", {}},
      {"--output", "output.path", "report path, - for stdout", {}},
  };
  return table;
}

int exit_code(qem_status s) {
  if (s == QEM_OK) return 0;
  if (qem_status_is_numerical(s)) return 3;
  if (s == QEM_IO_ERROR || s == QEM_INTERNAL) return 1;
  return 2;
}

int report_failure(qem_status s) {
  std::fprintf(stderr, "qem: %s: %s\n", qem_status_name(s), qem_last_error());
  return exit_code(s);
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return std::nullopt;
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct Invocation {
  std::string command;
  std::string config_path;
  std::map<std::string, std::string> values;  // flag name -> text
  std::vector<std::string> sets;
  bool simulate = false;
};

int execute(const Invocation& inv) {
  qem_config* cfg = nullptr;
  qem_status s;
  if (!inv.config_path.empty()) {
    const auto text = read_file(inv.config_path);
    if (!text) {
      std::fprintf(stderr, "qem: cannot read config %s\n", inv.config_path.c_str());
      return 2;
    }
    s = qem_config_parse(text->c_str(), &cfg);
  } else {
    s = qem_config_new(&cfg);
  }
  if (s != QEM_OK) return report_failure(s);
  std::unique_ptr<qem_config, decltype(&qem_config_free)> owner(cfg, qem_config_free);

  auto set = [&](const std::string& path, const std::string& value) {
    const qem_status st = qem_config_set(cfg, path.c_str(), value.c_str());
    return st;
  };
  if ((s = set("command", inv.command)) != QEM_OK) return report_failure(s);
  for (const auto& f : flags()) {
    const auto it = inv.values.find(f.name);
    if (it != inv.values.end() && (s = set(f.path, it->second)) != QEM_OK) return report_failure(s);
  }
  if (inv.simulate && (s = set("circuit.simulate", "true")) != QEM_OK) return report_failure(s);
  for (const auto& kv : inv.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "qem: --set expects path=value, got '%s'\n", kv.c_str());
      return 2;
    }
    if ((s = set(kv.substr(0, eq), kv.substr(eq + 1))) != QEM_OK) return report_failure(s);
  }
  if (!qem_config_has(cfg, "seed")) {
    if (const char* env = std::getenv("QEM_SEED"); env != nullptr && *env != '\0') {
      if ((s = set("seed", env)) != QEM_OK) return report_failure(s);
    }
  }

  qem_result* result = nullptr;
  if ((s = qem_run(cfg, &result)) != QEM_OK) return report_failure(s);
  std::unique_ptr<qem_result, decltype(&qem_result_free)> result_owner(result, qem_result_free);

  char* path = nullptr;
  if ((s = qem_config_get(cfg, "output.path", &path)) != QEM_OK) return report_failure(s);
  const std::string out_path(path);
  qem_string_free(path);
  if ((s = qem_result_write(result, out_path.c_str())) != QEM_OK) return report_failure(s);
  if (qem_result_numerical_flag(result)) {
    std::fprintf(stderr, "qem: numerical check failed; see report\n");
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sampling-overhead bounds and error-mitigation protocol simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", qem_version());

  const std::vector<std::pair<const char*, const char*>> commands = {
      {"bound", "spread lower bound for a noise model and (Q, K) shape"},
      {"layered", "closed-form bound for layered circuits under local depolarizing noise"},
      {"pec", "probabilistic error cancellation run"},
      {"extrapolate", "Richardson extrapolation run"},
      {"vd", "virtual distillation run"},
      {"subfid", "shot-based sub-fidelity estimate and the bound it implies"},
      {"sweep", "one report row per grid value of a parameter (CSV)"},
      {"verify", "run the invariant suite"},
  };

  Invocation inv;
  std::map<std::string, std::string> raw;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", inv.config_path, "JSON config file; flags override it");
    sub->add_option("--set", inv.sets, "override any config path: path=value");
    for (const auto& f : flags()) {
      if (!f.commands.empty() &&
          std::find(f.commands.begin(), f.commands.end(), name) == f.commands.end()) {
        continue;
      }
      sub->add_option_function<std::string>(
          f.name, [&inv, n = std::string(f.name)](const std::string& v) { inv.values[n] = v; },
          f.help);
    }
    if (std::string(name) == "layered" || std::string(name) == "sweep") {
      sub->add_flag("--simulate", inv.simulate, "also evaluate the proof chain on a random circuit");
    }
    sub->callback([&inv, n = std::string(name)] { inv.command = n; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  return execute(inv);
}
