// Copyright 2026 The causalkit Authors
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

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "causalkit/dataset.hpp"
#include "causalkit/experiment.hpp"
#include "causalkit/lingam.hpp"
#include "causalkit/serialize.hpp"
#include "causalkit/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace causalkit;

namespace {

// ---------------------------------------------------------------------------
// Manifests

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buffer[65536];
  while (in) {
    in.read(buffer, sizeof(buffer));
    if (in.gcount() > 0)
      EVP_DigestUpdate(ctx, buffer, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_DigestFinal_ex(ctx, digest, &length);
  EVP_MD_CTX_free(ctx);

  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xF]);
  }
  return out;
}

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

fs::path manifest_path(const fs::path& primary_out) {
  fs::path p = primary_out;
  p.replace_extension(".manifest.json");
  return p;
}

void write_json_file(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write file: " + path.string());
  out << j.dump(2) << "\n";
  if (!out) throw ValidationError("write failed: " + path.string());
}

/// Every command leaves a manifest next to its primary output. Timing
/// lives only here, never in the primary output, so reruns with the same
/// flags stay byte-identical.
void write_manifest(const fs::path& primary_out, const std::string& command,
                    std::uint64_t seed, const json& config,
                    const std::vector<fs::path>& inputs,
                    const std::vector<fs::path>& outputs, double duration_ms,
                    std::optional<std::size_t> n = std::nullopt) {
  json manifest;
  manifest["command"] = command;
  manifest["version"] = std::string(kVersion);
  manifest["seed"] = seed;
  manifest["config"] = config;
  json input_list = json::array();
  for (const fs::path& input : inputs)
    input_list.push_back(
        {{"path", input.string()}, {"sha256", sha256_file(input)}});
  manifest["inputs"] = std::move(input_list);
  json output_list = json::array();
  for (const fs::path& output : outputs) output_list.push_back(output.string());
  manifest["outputs"] = std::move(output_list);
  if (n) manifest["n"] = *n;
  manifest["duration_ms"] = duration_ms;
  write_json_file(manifest_path(primary_out), manifest);
}

// ---------------------------------------------------------------------------
// Shared kernel flags

struct KernelFlags {
  std::string kind = "quantum";
  int qubits = 5;
  int depth = 2;
  std::string bandwidth = "median";
  std::string mode = "exact";
  std::uint64_t shots = 8192;
  double noise_p01 = 0.0;
  double noise_p10 = 0.0;
  bool mitigate = false;
  std::uint64_t cal_shots = 100000;
  double scale = 2.0;

  CLI::Option* qubits_opt = nullptr;
  CLI::Option* depth_opt = nullptr;
  CLI::Option* p01_opt = nullptr;
  CLI::Option* p10_opt = nullptr;
};

void add_kernel_flags(CLI::App* cmd, KernelFlags& f) {
  cmd->add_option("--kernel", f.kind, "Kernel kind")
      ->check(CLI::IsMember({"quantum", "gaussian"}))
      ->capture_default_str();
  f.qubits_opt = cmd->add_option("--qubits", f.qubits,
                                 "Qubit count (default 5; 4 with noise)")
                     ->check(CLI::PositiveNumber);
  f.depth_opt = cmd->add_option("--depth", f.depth,
                                "Diagonal layer count (default 2; 1 with noise)")
                    ->check(CLI::PositiveNumber);
  cmd->add_option("--bandwidth", f.bandwidth,
                  "Gaussian bandwidth: 'median' or a positive number")
      ->capture_default_str();
  cmd->add_option("--mode", f.mode, "Kernel evaluation mode")
      ->check(CLI::IsMember({"exact", "shots"}))
      ->capture_default_str();
  cmd->add_option("--shots", f.shots, "Shots per kernel entry (shot mode)")
      ->capture_default_str();
  f.p01_opt = cmd->add_option("--noise-p01", f.noise_p01,
                              "P(read 1 | true 0) readout flip rate");
  f.p10_opt = cmd->add_option("--noise-p10", f.noise_p10,
                              "P(read 0 | true 1) readout flip rate");
  cmd->add_flag("--mitigate", f.mitigate,
                "Apply calibration-matrix readout mitigation");
  cmd->add_option("--cal-shots", f.cal_shots,
                  "Shots per basis state when building the calibration matrix")
      ->capture_default_str();
  cmd->add_option("--scale", f.scale, "Feature-map input scale")
      ->capture_default_str();
}

KernelConfig make_kernel_config(const KernelFlags& f, std::uint64_t seed) {
  KernelConfig k;
  k.kind = f.kind == "quantum" ? KernelKind::quantum : KernelKind::gaussian;

  const bool noise_given = f.p01_opt->count() > 0 || f.p10_opt->count() > 0;
  k.circuit.qubits = f.qubits_opt->count() > 0
                         ? f.qubits
                         : (noise_given ? kDefaultNoisyCircuit.qubits
                                        : kDefaultExactCircuit.qubits);
  k.circuit.depth = f.depth_opt->count() > 0
                        ? f.depth
                        : (noise_given ? kDefaultNoisyCircuit.depth
                                       : kDefaultExactCircuit.depth);

  if (f.bandwidth != "median") {
    try {
      k.bandwidth = std::stod(f.bandwidth);
    } catch (const std::exception&) {
      throw ValidationError("--bandwidth must be 'median' or a number, got '" +
                            f.bandwidth + "'");
    }
    if (!(*k.bandwidth > 0.0))
      throw ValidationError("--bandwidth must be positive");
  }

  k.mode = f.mode == "exact" ? KernelMode::exact : KernelMode::shots;
  k.shots = f.shots;
  k.seed = seed;

  if (k.kind == KernelKind::gaussian) {
    if (k.mode == KernelMode::shots)
      throw ValidationError("shot mode applies to the quantum kernel only");
    if (noise_given || f.mitigate)
      throw ValidationError(
          "readout noise and mitigation apply to the quantum kernel only");
    return k;
  }

  if (k.mode == KernelMode::exact && (noise_given || f.mitigate))
    throw ValidationError("readout noise and mitigation require --mode shots");

  if (noise_given) {
    k.noise = ReadoutNoiseModel{f.noise_p01, f.noise_p10};
    k.noise->validate();
  }
  if (f.mitigate) {
    const ReadoutNoiseModel model = k.noise.value_or(ReadoutNoiseModel{});
    k.calibration = build_calibration_matrix(
        k.circuit.qubits, model, f.cal_shots, derive_seed(seed, 0xCA1, 0));
  }
  return k;
}

// ---------------------------------------------------------------------------
// Input helpers

std::vector<std::string> read_header(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFoundError("cannot open file: " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.empty())
    throw HeaderMissingError("missing header row: " + path.string());
  return detail::split_csv_line(line);
}

// ---------------------------------------------------------------------------
// Subcommands

struct GenArgs {
  std::size_t n = 100;
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen(const GenArgs& args) {
  Stopwatch watch;
  SyntheticSpec spec;
  spec.n = args.n;
  spec.seed = args.seed;
  const DataMatrix dm = gen_synthetic(spec);
  write_csv(dm, args.out);
  write_manifest(args.out, "gen", args.seed,
                 json{{"n", args.n}, {"seed", args.seed}}, {}, {args.out},
                 watch.elapsed_ms(), dm.n());
  std::cout << "wrote " << dm.n() << " samples to " << args.out << "\n";
  return 0;
}

struct PrepArgs {
  std::string kind = "generic";
  std::string input;
  std::string out;
  std::vector<std::string> vars;
  std::vector<std::string> missing_tokens;
  std::vector<std::string> zero_missing;
  std::size_t subsample_k = 0;
  std::uint64_t seed = 0;
};

int run_prep(const PrepArgs& args) {
  Stopwatch watch;
  std::vector<std::string> vars = args.vars;
  MissingPolicy policy{args.missing_tokens, args.zero_missing};
  if (args.kind == "heart") {
    if (vars.empty()) vars = {"age", "cp", "exang"};
    if (policy.missing_tokens.empty()) policy.missing_tokens = {"?"};
  } else if (args.kind == "pima") {
    if (vars.empty()) vars = {"age", "insulin", "glucose"};
    if (policy.zero_as_missing_columns.empty())
      policy.zero_as_missing_columns = {"insulin", "glucose"};
  } else if (vars.empty()) {
    vars = read_header(args.input);
  }

  DataMatrix dm = load_csv(args.input, policy, vars);
  if (args.subsample_k > 0) dm = subsample(dm, args.subsample_k, args.seed);
  write_csv(dm, args.out);

  json config;
  config["kind"] = args.kind;
  config["variables"] = vars;
  config["missing_tokens"] = policy.missing_tokens;
  config["zero_as_missing"] = policy.zero_as_missing_columns;
  config["subsample"] = args.subsample_k;
  config["seed"] = args.seed;
  write_manifest(args.out, "prep", args.seed, config, {args.input}, {args.out},
                 watch.elapsed_ms(), dm.n());
  std::cout << "prepared " << dm.n() << " samples x " << dm.p()
            << " variables to " << args.out << "\n";
  return 0;
}

struct DiscoverArgs {
  std::string input;
  std::vector<std::string> vars;
  KernelFlags kernel;
  double epsilon = 1e-3;
  double prune_threshold = 0.1;
  std::uint64_t seed = 0;
  std::string out;
  std::string dot;
};

int run_discover(const DiscoverArgs& args) {
  Stopwatch watch;
  const std::vector<std::string> vars =
      args.vars.empty() ? read_header(args.input) : args.vars;
  const DataMatrix dm = load_csv(args.input, MissingPolicy{}, vars);

  DiscoveryConfig cfg;
  cfg.kernel = make_kernel_config(args.kernel, args.seed);
  cfg.feature_map.scale = args.kernel.scale;
  cfg.nocco.epsilon = args.epsilon;
  cfg.prune_threshold = args.prune_threshold;
  cfg.master_seed = args.seed;

  const CausalModel model = discover(dm, cfg);
  write_json_file(args.out, model_to_json(model, cfg));

  std::vector<fs::path> outputs{args.out};
  if (!args.dot.empty()) {
    std::ofstream dot_out(args.dot);
    if (!dot_out) throw ValidationError("cannot write file: " + args.dot);
    dot_out << model_to_dot(model);
    outputs.push_back(args.dot);
  }
  write_manifest(args.out, "discover", args.seed,
                 discovery_config_to_json(cfg), {args.input}, outputs,
                 watch.elapsed_ms(), dm.n());

  std::cout << "ordering:";
  for (const int v : model.ordering)
    std::cout << " " << model.variables[static_cast<std::size_t>(v)];
  std::cout << "\nedges:\n";
  bool any = false;
  for (std::size_t i = 0; i < model.adjacency.size(); ++i) {
    for (std::size_t j = 0; j < model.adjacency.size(); ++j) {
      if (!model.adjacency[i][j]) continue;
      any = true;
      char strength[32];
      std::snprintf(strength, sizeof(strength), "%.2f",
                    model.strengths(static_cast<Eigen::Index>(i),
                                    static_cast<Eigen::Index>(j)));
      std::cout << "  " << model.variables[j] << " -> " << model.variables[i]
                << " (" << strength << ")\n";
    }
  }
  if (!any) std::cout << "  (none)\n";
  return 0;
}

struct GramArgs {
  std::string input;
  std::string var;
  KernelFlags kernel;
  std::uint64_t seed = 0;
  std::string out;
};

int run_gram(const GramArgs& args) {
  Stopwatch watch;
  const DataMatrix dm = load_csv(args.input, MissingPolicy{}, {args.var});
  const std::vector<double>& series = dm.values[0];
  if (is_constant(series))
    throw ConstantSeriesError("variable '" + args.var + "' is constant");

  const KernelConfig kcfg = make_kernel_config(args.kernel, args.seed);
  const FeatureMapConfig fcfg{args.kernel.scale};
  const GramMatrix g = gram(series, kcfg, fcfg);

  std::ofstream out(args.out);
  if (!out) throw ValidationError("cannot write file: " + args.out);
  for (Eigen::Index i = 0; i < g.entries.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.entries.cols(); ++j) {
      if (j) out << ',';
      out << detail::format_double(g.entries(i, j));
    }
    out << '\n';
  }
  if (!out) throw ValidationError("write failed: " + args.out);

  json sidecar;
  sidecar["kind"] = kcfg.kind == KernelKind::quantum ? "quantum" : "gaussian";
  sidecar["n"] = g.n();
  sidecar["config"] = kernel_config_to_json(kcfg);
  sidecar["min_eigenvalue"] = min_eigenvalue(g);
  if (kcfg.kind == KernelKind::quantum && kcfg.mode == KernelMode::shots &&
      g.n() >= 2) {
    // Histogram of the (0, 1) entry's circuit, same seed the Gram used.
    const std::vector<double> standardized = standardize_or_zero(series);
    const double a0 = feature_map(standardized[0], fcfg);
    const double a1 = feature_map(standardized[1], fcfg);
    sidecar["diagnostic_histogram"] = kernel_shot_histogram(
        a0, a1, kcfg.circuit, kcfg.shots, derive_seed(kcfg.seed, 0, 1),
        kcfg.noise);
  }

  fs::path sidecar_path = fs::path(args.out);
  sidecar_path.replace_extension(".json");
  if (sidecar_path == fs::path(args.out))
    sidecar_path = fs::path(args.out + ".meta.json");
  write_json_file(sidecar_path, sidecar);

  write_manifest(args.out, "gram", args.seed, kernel_config_to_json(kcfg),
                 {args.input}, {args.out, sidecar_path}, watch.elapsed_ms(),
                 g.n());
  std::cout << "wrote " << g.n() << "x" << g.n() << " gram matrix to "
            << args.out << "\n";
  return 0;
}

struct Table1Args {
  int datasets = 100;
  std::size_t n = 100;
  std::uint64_t seed = 0;
  double epsilon = 1e-3;
  double prune_threshold = 0.1;
  int qubits = 5;
  int depth = 2;
  double scale = 2.0;
  std::string bandwidth = "median";
  int jobs = 1;
  std::string out;
};

int run_table1(const Table1Args& args) {
  Stopwatch watch;
  Table1Config cfg;
  cfg.dataset_count = args.datasets;
  cfg.samples_per_dataset = args.n;
  cfg.seed_base = args.seed;
  cfg.epsilon = args.epsilon;
  cfg.prune_threshold = args.prune_threshold;
  cfg.circuit = IqpCircuitSpec{args.qubits, args.depth};
  cfg.feature_map.scale = args.scale;
  cfg.jobs = args.jobs;
  if (args.bandwidth != "median") {
    try {
      cfg.gaussian_bandwidth = std::stod(args.bandwidth);
    } catch (const std::exception&) {
      throw ValidationError("--bandwidth must be 'median' or a number, got '" +
                            args.bandwidth + "'");
    }
    if (!(*cfg.gaussian_bandwidth > 0.0))
      throw ValidationError("--bandwidth must be positive");
  }

  const Table1Report report = causalkit::run_table1(cfg);
  write_json_file(args.out, table1_report_to_json(report, cfg));
  write_manifest(args.out, "table1", args.seed, table1_config_to_json(cfg), {},
                 {args.out}, watch.elapsed_ms());

  std::cout << "datasets: " << report.dataset_count
            << " (completed " << report.completed << ")\n";
  std::cout << "correct structures:  both=" << report.both
            << "  neither=" << report.neither
            << "  only_quantum=" << report.only_quantum
            << "  only_gaussian=" << report.only_gaussian << "\n";
  std::cout << "quantum kernel:  structures " << report.quantum_structure_total
            << "/" << report.completed << ", orderings "
            << report.quantum_ordering_total << "/" << report.completed
            << "\n";
  std::cout << "gaussian kernel: structures "
            << report.gaussian_structure_total << "/" << report.completed
            << ", orderings " << report.gaussian_ordering_total << "/"
            << report.completed << "\n";

  const double completion = static_cast<double>(report.completed) /
                            static_cast<double>(report.dataset_count);
  if (completion < 0.9) {
    std::cerr << "error: only " << report.completed << " of "
              << report.dataset_count << " datasets completed\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DirectLiNGAM causal discovery with quantum or Gaussian "
               "kernel independence measures"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand(
      "gen", "Generate a synthetic three-variable benchmark dataset");
  gen->add_option("--n", gen_args.n, "Sample count")->capture_default_str();
  gen->add_option("--seed", gen_args.seed, "Generator seed")
      ->capture_default_str();
  gen->add_option("--out", gen_args.out, "Output CSV path")->required();

  PrepArgs prep_args;
  CLI::App* prep = app.add_subcommand(
      "prep", "Clean (and optionally subsample) a CSV dataset");
  prep->add_option("--kind", prep_args.kind,
                   "Dataset kind: heart, pima or generic")
      ->check(CLI::IsMember({"heart", "pima", "generic"}))
      ->capture_default_str();
  prep->add_option("--input", prep_args.input, "Input CSV path")->required();
  prep->add_option("--out", prep_args.out, "Output CSV path")->required();
  prep->add_option("--vars", prep_args.vars,
                   "Variables to keep (comma separated)")
      ->delimiter(',');
  prep->add_option("--missing-token", prep_args.missing_tokens,
                   "Cell text treated as missing (repeatable)");
  prep->add_option("--zero-missing", prep_args.zero_missing,
                   "Column whose zeros mean missing (repeatable)");
  prep->add_option("--subsample", prep_args.subsample_k,
                   "Subsample size (0 keeps everything)")
      ->capture_default_str();
  prep->add_option("--seed", prep_args.seed, "Subsample seed")
      ->capture_default_str();

  DiscoverArgs discover_args;
  CLI::App* discover = app.add_subcommand(
      "discover", "Run causal discovery on a prepared CSV dataset");
  discover->add_option("--input", discover_args.input, "Input CSV path")
      ->required();
  discover->add_option("--vars", discover_args.vars,
                       "Variables to analyse (default: all columns)")
      ->delimiter(',');
  add_kernel_flags(discover, discover_args.kernel);
  discover->add_option("--epsilon", discover_args.epsilon,
                       "Independence regularization constant")
      ->capture_default_str();
  discover->add_option("--prune", discover_args.prune_threshold,
                       "Standardized-strength pruning threshold")
      ->capture_default_str();
  discover->add_option("--seed", discover_args.seed, "Master seed")
      ->capture_default_str();
  discover->add_option("--out", discover_args.out, "Output model JSON path")
      ->required();
  discover->add_option("--dot", discover_args.dot,
                       "Optional Graphviz output path");

  GramArgs gram_args;
  CLI::App* gram_cmd = app.add_subcommand(
      "gram", "Dump the Gram matrix of one variable as CSV plus sidecar");
  gram_cmd->add_option("--input", gram_args.input, "Input CSV path")
      ->required();
  gram_cmd->add_option("--var", gram_args.var, "Variable name")->required();
  add_kernel_flags(gram_cmd, gram_args.kernel);
  gram_cmd->add_option("--seed", gram_args.seed, "Master seed (shot mode)")
      ->capture_default_str();
  gram_cmd->add_option("--out", gram_args.out, "Output CSV path")->required();

  Table1Args table1_args;
  CLI::App* table1 = app.add_subcommand(
      "table1",
      "Compare quantum and Gaussian kernels over many synthetic datasets");
  table1->add_option("--datasets", table1_args.datasets, "Dataset count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  table1->add_option("--n", table1_args.n, "Samples per dataset")
      ->capture_default_str();
  table1->add_option("--seed", table1_args.seed, "Seed base")
      ->capture_default_str();
  table1->add_option("--epsilon", table1_args.epsilon,
                     "Independence regularization constant")
      ->capture_default_str();
  table1->add_option("--prune", table1_args.prune_threshold,
                     "Standardized-strength pruning threshold")
      ->capture_default_str();
  table1->add_option("--qubits", table1_args.qubits, "Qubit count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  table1->add_option("--depth", table1_args.depth, "Diagonal layer count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  table1->add_option("--scale", table1_args.scale, "Feature-map input scale")
      ->capture_default_str();
  table1->add_option("--bandwidth", table1_args.bandwidth,
                     "Gaussian bandwidth: 'median' or a positive number")
      ->capture_default_str();
  table1->add_option("--jobs", table1_args.jobs, "Parallel workers")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  table1->add_option("--out", table1_args.out, "Output report JSON path")
      ->required();

  int exit_code = 0;
  gen->callback([&]() { exit_code = run_gen(gen_args); });
  prep->callback([&]() { exit_code = run_prep(prep_args); });
  discover->callback([&]() { exit_code = run_discover(discover_args); });
  gram_cmd->callback([&]() { exit_code = run_gram(gram_args); });
  table1->callback([&]() { exit_code = run_table1(table1_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
