// Copyright 2026 The tprs Authors
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

// tprs: command-line front end for the experiment harness.
//
// Exit codes: 0 success, 2 validation error, 3 resource or budget limit,
// 4 bound-check failure.

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tprs/tprs.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitResource = 3;
constexpr int kExitBoundFailure = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  tprs::require(static_cast<bool>(in), tprs::ErrorKind::InvalidArgument, "cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Options write into `flags`; only options given on the command line are
// copied over the config file values.
class Overrides {
 public:
  template <class T>
  void add(CLI::App& app, const std::string& name, T tprs::ExperimentConfig::*field, const std::string& help) {
    CLI::Option* opt = app.add_option(name, flags_.*field, help);
    if constexpr (requires(T v) { v.begin(); } && !std::is_same_v<T, std::string>) opt->delimiter(',');
    apply_.push_back([this, opt, field](tprs::ExperimentConfig& cfg) {
      if (opt->count() > 0) cfg.*field = flags_.*field;
    });
  }

  void apply(tprs::ExperimentConfig& cfg) const {
    for (const auto& f : apply_) f(cfg);
  }

 private:
  tprs::ExperimentConfig flags_;
  std::vector<std::function<void(tprs::ExperimentConfig&)>> apply_;
};

int run(int argc, char** argv) {
  CLI::App app{"Pseudorandom-state resource experiments", "tprs"};
  app.set_version_flag("--version", std::string(TPRS_VERSION));
  app.fallthrough();
  app.require_subcommand(0, 1);

  using C = tprs::ExperimentConfig;
  Overrides o;
  std::string config_path;
  bool print_config = false;
  app.add_option("--config", config_path, "JSON config file; flags override its fields");
  app.add_flag("--print-config", print_config, "print the resolved config and exit");
  o.add(app, "--seed", &C::seed, "root seed");
  o.add(app, "--samples", &C::samples, "Monte-Carlo samples");
  o.add(app, "--threads", &C::threads, "worker threads (results do not depend on it)");
  o.add(app, "--out", &C::out, "output file (default stdout)");
  o.add(app, "--format", &C::format, "csv or json");
  o.add(app, "--n", &C::n, "qubit count");
  o.add(app, "--t", &C::t, "copy count");
  o.add(app, "--m", &C::m, "subset sizes, comma separated");
  o.add(app, "--mexp", &C::mexp, "log2 subset sizes, comma separated");
  o.add(app, "--kind", &C::kind, "subset or subset-phase");
  o.add(app, "--members", &C::members, "subset members as integers");
  o.add(app, "--phases", &C::phases, "phase bit per member");
  o.add(app, "--T,--growth", &C::growth, "observer growth class, e.g. log, poly, polyf:log");
  o.add(app, "--classes", &C::classes, "growth classes for sweep");
  o.add(app, "--ns", &C::ns, "qubit counts for sweep and advise");
  o.add(app, "--measure", &C::measure, "coherence, coherence-hs, entanglement, collision-entanglement, magic");
  o.add(app, "--alpha", &C::alpha, "Renyi order for magic");
  o.add(app, "--n-a", &C::n_a, "qubits in subsystem A (0 = balanced)");
  o.add(app, "--e1", &C::e1, "first ensemble (high-resource side)");
  o.add(app, "--e2", &C::e2, "second ensemble (low-resource side)");
  o.add(app, "--prop", &C::prop, "coherence, entanglement or magic");
  o.add(app, "--eta", &C::eta, "advantage expression in n, e.g. 2^(-n)");
  o.add(app, "--repeat", &C::repeat, "repetition growth class for closure checks");
  o.add(app, "--fit", &C::fit, "fit bound constants at the first size");
  o.add(app, "--c", &C::c, "subset-phase or hybrid bound constant");
  o.add(app, "--c1", &C::c1, "subset bound constant of the t m / 2^n term");
  o.add(app, "--c2", &C::c2, "subset bound constant of the t^2 / m term");
  o.add(app, "--kappa", &C::kappa, "constant standing in for omega(1) in table bounds");
  o.add(app, "--budget-c", &C::budget_c, "distinguisher budget constant");
  o.add(app, "--dim-cap", &C::dim_cap, "dense dimension cap");
  o.add(app, "--enumeration-budget", &C::enumeration_budget, "exact enumeration budget");

  for (const auto& name : tprs::command_names()) app.add_subcommand(name, "run the " + name + " experiment");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    tprs::ExperimentConfig cfg;
    if (!config_path.empty()) cfg = tprs::parse_config(read_file(config_path));
    o.apply(cfg);
    const auto chosen = app.get_subcommands();
    if (!chosen.empty()) cfg.command = chosen.front()->get_name();

    if (print_config) {
      std::cout << tprs::config_to_json(cfg).dump(2) << '\n';
      return kExitOk;
    }

    const tprs::ExperimentReport rep = tprs::run_experiment(cfg);
    const std::string text = cfg.format == "json" ? tprs::to_json(rep) : tprs::to_csv(rep);
    if (cfg.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(cfg.out, std::ios::binary);
      tprs::require(static_cast<bool>(out), tprs::ErrorKind::InvalidArgument, "cannot write " + cfg.out);
      out << text;
    }
    for (const auto& note : rep.notes) std::cerr << note << '\n';
    return rep.bound_failure ? kExitBoundFailure : kExitOk;
  } catch (const tprs::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return tprs::is_resource_error(e.kind()) ? kExitResource : kExitValidation;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
