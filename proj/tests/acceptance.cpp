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

// End-to-end acceptance suite. Each criterion prints exactly one
// PASS/FAIL/SKIP line; the process exits nonzero when any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "causalkit/dataset.hpp"
#include "causalkit/experiment.hpp"
#include "causalkit/independence.hpp"
#include "causalkit/kernels.hpp"
#include "causalkit/lingam.hpp"
#include "causalkit/quantum.hpp"

namespace fs = std::filesystem;
using namespace causalkit;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Criterion {
  int id;
  std::string summary;
  bool pass = false;
  bool skipped = false;
  std::string note;
  double seconds = 0.0;
};

struct Check {
  bool ok = true;
  std::string note;

  void require(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      note = what;
    }
  }
};

std::string g_cli_path;
std::string g_heart_path;
std::string g_pima_path;

// -- criterion 1 -------------------------------------------------------------

Check closed_form_oracle() {
  Check check;
  const IqpCircuitSpec spec{1, 1};
  Rng rng(101);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const double a = rng.next_double() * 8.0 * kPi - 4.0 * kPi;
    const double b = rng.next_double() * 8.0 * kPi - 4.0 * kPi;
    const double expected = std::pow(std::cos((a - b) / 2.0), 2);
    worst = std::max(worst, std::abs(kernel_exact(a, b, spec) - expected));
  }
  check.require(worst < 1e-12,
                "max deviation from cos^2((a-b)/2) was " +
                    std::to_string(worst));
  if (check.ok) check.note = "1000 random pairs within 1e-12";
  return check;
}

// -- criterion 2 -------------------------------------------------------------

Check dual_path_equivalence() {
  Check check;
  Rng rng(202);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    IqpCircuitSpec spec;
    spec.qubits = 1 + static_cast<int>(rng.next_below(6));
    spec.depth = 1 + static_cast<int>(rng.next_below(2));
    const double a = rng.next_double() * 6.0 * kPi - 3.0 * kPi;
    const double b = rng.next_double() * 6.0 * kPi - 3.0 * kPi;
    const double inversion = kernel_exact(a, b, spec);
    const double overlap =
        build_iqp_state(a, spec).fidelity(build_iqp_state(b, spec));
    worst = std::max(worst, std::abs(inversion - overlap));
  }
  check.require(worst < 1e-12,
                "max inversion-vs-overlap gap was " + std::to_string(worst));
  if (check.ok) check.note = "200 random circuit configurations within 1e-12";
  return check;
}

// -- criterion 3 -------------------------------------------------------------

Check property_suites() {
  Check check;
  Rng rng(303);

  // Gram symmetry, unit diagonal, PSD; centered rows sum to zero.
  for (int trial = 0; trial < 5 && check.ok; ++trial) {
    std::vector<double> series(20);
    for (double& v : series) v = rng.next_laplace(0.0, 1.0);
    for (const KernelKind kind :
         {KernelKind::quantum, KernelKind::gaussian}) {
      KernelConfig kcfg;
      kcfg.kind = kind;
      kcfg.circuit = IqpCircuitSpec{3, 2};
      const GramMatrix g = gram(series, kcfg, FeatureMapConfig{});
      check.require(
          (g.entries - g.entries.transpose()).cwiseAbs().maxCoeff() < 1e-9,
          "gram not symmetric");
      check.require(
          (g.entries.diagonal().array() - 1.0).abs().maxCoeff() < 1e-9,
          "gram diagonal not unit");
      check.require(min_eigenvalue(g) >= -1e-8, "gram not PSD");
      const GramMatrix centered = center_gram(g);
      for (Eigen::Index i = 0; i < centered.entries.rows(); ++i)
        check.require(std::abs(centered.entries.row(i).sum()) < 1e-8,
                      "centered gram row sum nonzero");
    }
  }

  // Statevector unit norm through random circuits.
  for (int trial = 0; trial < 20 && check.ok; ++trial) {
    IqpCircuitSpec spec;
    spec.qubits = 1 + static_cast<int>(rng.next_below(6));
    spec.depth = 1 + static_cast<int>(rng.next_below(2));
    const Statevector state =
        build_iqp_state(rng.next_double() * 8.0 - 4.0, spec);
    check.require(std::abs(state.norm() - 1.0) < 1e-10,
                  "statevector norm drifted");
  }

  // NOCCO nonnegativity and symmetry.
  KernelConfig gaussian;
  gaussian.kind = KernelKind::gaussian;
  for (int trial = 0; trial < 5 && check.ok; ++trial) {
    std::vector<double> x(40), y(40);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = rng.next_laplace(0.0, 1.0);
      y[i] = 0.5 * x[i] + rng.next_laplace(0.0, 1.0);
    }
    const double xy = nocco(x, y, gaussian, FeatureMapConfig{}, NoccoConfig{});
    const double yx = nocco(y, x, gaussian, FeatureMapConfig{}, NoccoConfig{});
    check.require(xy >= 0.0, "nocco negative");
    check.require(std::abs(xy - yx) < 1e-8, "nocco asymmetric");
  }

  // Calibration columns are probability distributions.
  const CalibrationMatrix cal =
      build_calibration_matrix(3, ReadoutNoiseModel{0.03, 0.02}, 20000, 17);
  for (Eigen::Index j = 0; j < cal.response.cols(); ++j) {
    check.require(std::abs(cal.response.col(j).sum() - 1.0) < 1e-9,
                  "calibration column not stochastic");
    check.require(cal.response.col(j).minCoeff() >= 0.0 &&
                      cal.response.col(j).maxCoeff() <= 1.0,
                  "calibration entry outside [0, 1]");
  }

  // OLS residual orthogonality.
  for (int trial = 0; trial < 20 && check.ok; ++trial) {
    std::vector<double> x(60), y(60);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = rng.next_laplace(0.0, 1.0);
      y[i] = 0.4 * x[i] + rng.next_laplace(0.0, 1.0);
    }
    const std::vector<double> r = regress_residual(y, x);
    check.require(std::abs(covariance_pop(r, x)) < 1e-8,
                  "residual not orthogonal to regressor");
  }

  // Strict lower triangularity of B under the discovered ordering.
  for (int trial = 0; trial < 3 && check.ok; ++trial) {
    SyntheticSpec spec;
    spec.n = 80;
    spec.seed = derive_seed(909, trial, 0);
    DiscoveryConfig cfg;
    cfg.kernel.kind = KernelKind::gaussian;
    const CausalModel model = discover(gen_synthetic(spec), cfg);
    const int p = static_cast<int>(model.ordering.size());
    for (int a = 0; a < p; ++a) {
      for (int b = a; b < p; ++b)
        check.require(model.strengths(model.ordering[a], model.ordering[b]) ==
                          0.0,
                      "B not strictly lower triangular under K");
    }
  }

  if (check.ok) check.note = "all property families hold on seeded inputs";
  return check;
}

// -- criterion 4 -------------------------------------------------------------

Check shot_convergence() {
  Check check;
  const IqpCircuitSpec spec{5, 2};
  const std::uint64_t shots = 100000;
  Rng rng(404);
  for (int trial = 0; trial < 50 && check.ok; ++trial) {
    const double a = rng.next_double() * 4.0 - 2.0;
    const double b = rng.next_double() * 4.0 - 2.0;
    const double exact = kernel_exact(a, b, spec);
    const double estimate =
        kernel_shots(a, b, spec, shots, derive_seed(404, trial, 1));
    const double bound =
        5.0 * std::sqrt(exact * (1.0 - exact) / static_cast<double>(shots)) +
        0.005;
    check.require(std::abs(estimate - exact) <= bound,
                  "pair " + std::to_string(trial) + " deviated by " +
                      std::to_string(std::abs(estimate - exact)));
  }
  if (check.ok) check.note = "50 random pairs inside the binomial bound";
  return check;
}

// -- criterion 5 -------------------------------------------------------------

Check mitigation_efficacy() {
  Check check;
  SyntheticSpec data_spec;
  data_spec.n = 30;
  data_spec.seed = 505;
  const std::vector<double> series = gen_synthetic(data_spec).values[0];

  const FeatureMapConfig fcfg{};
  KernelConfig exact_cfg;
  exact_cfg.circuit = kDefaultNoisyCircuit;  // q = 4, d = 1
  const GramMatrix exact = gram(series, exact_cfg, fcfg);

  KernelConfig noisy_cfg = exact_cfg;
  noisy_cfg.mode = KernelMode::shots;
  noisy_cfg.shots = 8192;
  noisy_cfg.seed = 606;
  noisy_cfg.noise = ReadoutNoiseModel{0.02, 0.02};
  const GramMatrix unmitigated = gram(series, noisy_cfg, fcfg);

  KernelConfig mitigated_cfg = noisy_cfg;
  mitigated_cfg.calibration = build_calibration_matrix(
      4, *noisy_cfg.noise, 100000, derive_seed(606, 0xCA1, 0));
  const GramMatrix mitigated = gram(series, mitigated_cfg, fcfg);

  const double n2 = static_cast<double>(series.size() * series.size());
  const double unmitigated_mae =
      (unmitigated.entries - exact.entries).cwiseAbs().sum() / n2;
  const double mitigated_mae =
      (mitigated.entries - exact.entries).cwiseAbs().sum() / n2;
  check.require(mitigated_mae < unmitigated_mae,
                "mitigated MAE " + std::to_string(mitigated_mae) +
                    " not below unmitigated " +
                    std::to_string(unmitigated_mae));
  if (check.ok)
    check.note = "gram MAE mitigated " + std::to_string(mitigated_mae) +
                 " < unmitigated " + std::to_string(unmitigated_mae);
  return check;
}

// -- criterion 6 -------------------------------------------------------------

Check table1_reproduction() {
  Check check;
  Table1Config cfg;
  cfg.dataset_count = 100;
  cfg.samples_per_dataset = 100;
  cfg.seed_base = 2024;
  cfg.jobs = static_cast<int>(
      std::max(1u, std::thread::hardware_concurrency()));
  const Table1Report report = run_table1(cfg);

  check.require(report.completed == 100, "not all datasets completed");
  check.require(report.gaussian_structure_total >= 33 &&
                    report.gaussian_structure_total <= 63,
                "gaussian structure count " +
                    std::to_string(report.gaussian_structure_total) +
                    " outside [33, 63]");
  check.require(report.quantum_structure_total >= 38 &&
                    report.quantum_structure_total <= 68,
                "quantum structure count " +
                    std::to_string(report.quantum_structure_total) +
                    " outside [38, 68]");
  check.require(
      report.quantum_ordering_total >= report.quantum_structure_total,
      "quantum ordering rate below structure rate");
  check.require(
      report.gaussian_ordering_total >= report.gaussian_structure_total,
      "gaussian ordering rate below structure rate");
  if (check.ok)
    check.note = "quantum " + std::to_string(report.quantum_structure_total) +
                 "/100 in [38, 68], gaussian " +
                 std::to_string(report.gaussian_structure_total) +
                 "/100 in [33, 63], orderings " +
                 std::to_string(report.quantum_ordering_total) + "/" +
                 std::to_string(report.gaussian_ordering_total);
  return check;
}

// -- criterion 7 -------------------------------------------------------------

Check large_sample_sanity() {
  Check check;
  SyntheticSpec spec;
  spec.n = 100000;
  spec.seed = 707;
  const DataMatrix dm = gen_synthetic(spec);
  // Ordering fixed to the ground truth; only estimation is under test.
  const Eigen::MatrixXd strengths =
      estimate_strengths(dm, std::vector<int>{0, 1, 2});
  check.require(std::abs(strengths(1, 0) - 0.3) <= 0.02,
                "b10 = " + std::to_string(strengths(1, 0)));
  check.require(std::abs(strengths(2, 1) - 0.3) <= 0.02,
                "b21 = " + std::to_string(strengths(2, 1)));
  check.require(std::abs(strengths(2, 0) - 0.3) <= 0.02,
                "b20 = " + std::to_string(strengths(2, 0)));
  const auto adjacency = prune(strengths, dm, 0.1);
  check.require(adjacency == synthetic_reference_adjacency(),
                "pruned edge set differs from the generating structure");
  if (check.ok)
    check.note = "coefficients within 0.02 of 0.3; pruning exact at n=100000";
  return check;
}

// -- criterion 8 (optional) --------------------------------------------------

struct CliRun {
  int exit_code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args, const fs::path& dir) {
  static int counter = 0;
  const fs::path out_path = dir / ("acc_out_" + std::to_string(counter++));
  const std::string command =
      g_cli_path + " " + args + " > " + out_path.string() + " 2>&1";
  const int status = std::system(command.c_str());
  CliRun run;
  run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_path);
  std::ostringstream ss;
  ss << in.rdbuf();
  run.out = ss.str();
  return run;
}

std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool model_has_edge(const fs::path& model_json, const std::string& from,
                    const std::string& to) {
  // Tiny scan without a JSON dependency in this binary: re-derive from the
  // DOT-like summary is fragile, so parse the arrays by hand.
  // The model file is small; locate variables and adjacency.
  const std::string text = read_bytes(model_json);
  const auto var_pos = text.find("\"variables\"");
  if (var_pos == std::string::npos) return false;
  std::vector<std::string> variables;
  {
    const auto open = text.find('[', var_pos);
    const auto close = text.find(']', open);
    std::string body = text.substr(open + 1, close - open - 1);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto first = item.find('"');
      const auto last = item.rfind('"');
      if (first != std::string::npos && last > first)
        variables.push_back(item.substr(first + 1, last - first - 1));
    }
  }
  int from_idx = -1, to_idx = -1;
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (variables[i] == from) from_idx = static_cast<int>(i);
    if (variables[i] == to) to_idx = static_cast<int>(i);
  }
  if (from_idx < 0 || to_idx < 0) return false;

  const auto adj_pos = text.find("\"adjacency\"");
  if (adj_pos == std::string::npos) return false;
  // adjacency[i][j] == true means j -> i; find row `to`, entry `from`.
  std::size_t cursor = text.find('[', adj_pos);
  for (int row = 0; row <= to_idx; ++row) {
    cursor = text.find('[', cursor + 1);
    if (row < to_idx) cursor = text.find(']', cursor);
  }
  const std::size_t row_end = text.find(']', cursor);
  std::string row_body = text.substr(cursor + 1, row_end - cursor - 1);
  std::stringstream ss(row_body);
  std::string cell;
  for (int col = 0; std::getline(ss, cell, ','); ++col) {
    if (col == from_idx) return cell.find("true") != std::string::npos;
  }
  return false;
}

Check medical_expectations(const fs::path& dir) {
  Check check;
  if (g_heart_path.empty() && g_pima_path.empty()) {
    check.ok = true;
    check.note = "optional; supply --heart/--pima dataset files to run";
    return check;
  }
  std::string observations;
  if (!g_heart_path.empty()) {
    const fs::path prepared = dir / "heart_prepared.csv";
    const fs::path model = dir / "heart_model.json";
    CliRun prep = run_cli("prep --kind heart --input " + g_heart_path +
                              " --out " + prepared.string(),
                          dir);
    if (prep.exit_code != 0) {
      check.require(false, "heart prep failed: " + prep.out);
      return check;
    }
    CliRun disc = run_cli("discover --input " + prepared.string() +
                              " --kernel quantum --out " + model.string(),
                          dir);
    if (disc.exit_code != 0) {
      check.require(false, "heart discover failed: " + disc.out);
      return check;
    }
    observations += model_has_edge(model, "exang", "cp")
                        ? "heart: exang->cp observed; "
                        : "heart: exang->cp NOT observed (expected per the "
                          "documented reference run); ";
  }
  if (!g_pima_path.empty()) {
    const fs::path prepared = dir / "pima_prepared.csv";
    const fs::path model = dir / "pima_model.json";
    CliRun prep = run_cli("prep --kind pima --input " + g_pima_path +
                              " --out " + prepared.string(),
                          dir);
    if (prep.exit_code != 0) {
      check.require(false, "pima prep failed: " + prep.out);
      return check;
    }
    CliRun disc = run_cli("discover --input " + prepared.string() +
                              " --kernel quantum --out " + model.string(),
                          dir);
    if (disc.exit_code != 0) {
      check.require(false, "pima discover failed: " + disc.out);
      return check;
    }
    const bool age_insulin = model_has_edge(model, "age", "insulin");
    const bool insulin_glucose = model_has_edge(model, "insulin", "glucose");
    const bool age_glucose = model_has_edge(model, "age", "glucose");
    observations += std::string("pima: age->insulin ") +
                    (age_insulin ? "observed" : "not observed") +
                    ", insulin->glucose " +
                    (insulin_glucose ? "observed" : "not observed") +
                    ", age->glucose " +
                    (age_glucose ? "observed" : "not observed") + "; ";
  }
  // Documented expectations, not hard assertions: the run itself passing
  // is the criterion; observations are reported for the record.
  check.note = observations;
  return check;
}

// -- criterion 9 -------------------------------------------------------------

Check cli_determinism(const fs::path& dir) {
  Check check;
  const fs::path data = dir / "determinism_data.csv";

  struct Command {
    std::string name;
    std::string args_template;  // {out} placeholder
    std::vector<std::string> extra_outputs;  // extensions replacing .csv/.json
  };

  // Seed dataset for the downstream commands.
  CliRun seed_run =
      run_cli("gen --n 40 --seed 11 --out " + data.string(), dir);
  if (seed_run.exit_code != 0) {
    check.require(false, "seed dataset generation failed");
    return check;
  }

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"gen", "gen --n 50 --seed 1 --out {out}.csv"},
      {"prep", "prep --kind generic --input " + data.string() +
                   " --vars x0,x1 --subsample 20 --seed 3 --out {out}.csv"},
      {"discover-gaussian", "discover --input " + data.string() +
                                " --kernel gaussian --seed 4 --out "
                                "{out}.json --dot {out}.dot"},
      {"discover-quantum-noisy",
       "discover --input " + data.string() +
           " --kernel quantum --qubits 2 --depth 1 --mode shots --shots 256 "
           "--noise-p01 0.02 --noise-p10 0.02 --mitigate --cal-shots 2000 "
           "--seed 5 --out {out}.json"},
      {"gram-shots", "gram --input " + data.string() +
                         " --var x0 --qubits 2 --depth 1 --mode shots "
                         "--shots 512 --seed 6 --out {out}.csv"},
      {"table1", "table1 --datasets 2 --n 30 --qubits 2 --depth 1 --seed 7 "
                 "--out {out}.json"},
  };

  for (const auto& [name, args_template] : commands) {
    std::vector<std::string> first_bytes;
    std::vector<std::string> second_bytes;
    for (int attempt = 0; attempt < 2 && check.ok; ++attempt) {
      const std::string stem =
          (dir / (name + "_run" + std::to_string(attempt))).string();
      std::string args = args_template;
      for (std::size_t pos = args.find("{out}"); pos != std::string::npos;
           pos = args.find("{out}"))
        args.replace(pos, 5, stem);
      const CliRun run = run_cli(args, dir);
      if (run.exit_code != 0) {
        check.require(false, name + " exited with " +
                                 std::to_string(run.exit_code) + ": " +
                                 run.out);
        break;
      }
      std::vector<std::string>& bytes =
          attempt == 0 ? first_bytes : second_bytes;
      for (const char* ext : {".csv", ".json", ".dot"}) {
        const fs::path candidate = stem + ext;
        if (fs::exists(candidate)) bytes.push_back(read_bytes(candidate));
      }
    }
    if (!check.ok) break;
    check.require(!first_bytes.empty(), name + " produced no outputs");
    check.require(first_bytes == second_bytes,
                  name + " outputs differ between identical runs");
  }
  if (check.ok) check.note = "all commands byte-identical across reruns";
  return check;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i) {
    const std::string flag = argv[i];
    if (flag == "--cli") g_cli_path = argv[i + 1];
    if (flag == "--heart") g_heart_path = argv[i + 1];
    if (flag == "--pima") g_pima_path = argv[i + 1];
  }

  std::random_device rd;
  const fs::path work_dir =
      fs::temp_directory_path() /
      ("causalkit_acceptance_" + std::to_string(rd()));
  fs::create_directories(work_dir);

  std::vector<Criterion> criteria;
  auto run = [&](int id, const std::string& summary, double limit_seconds,
                 const std::function<Check()>& fn) {
    Criterion c;
    c.id = id;
    c.summary = summary;
    const auto start = std::chrono::steady_clock::now();
    try {
      const Check check = fn();
      c.pass = check.ok;
      c.note = check.note;
    } catch (const std::exception& e) {
      c.pass = false;
      c.note = std::string("exception: ") + e.what();
    }
    c.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    if (limit_seconds > 0.0 && c.seconds > limit_seconds) {
      c.pass = false;
      c.note += " [exceeded " + std::to_string(limit_seconds) + "s limit]";
    }
    criteria.push_back(std::move(c));
  };

  run(1, "closed-form one-qubit kernel oracle", 1.0, closed_form_oracle);
  run(2, "inversion test matches direct inner product", 10.0,
      dual_path_equivalence);
  run(3, "randomized property suites", 0.0, property_suites);
  run(4, "shot estimates converge to the exact kernel", 60.0,
      shot_convergence);
  run(5, "calibration mitigation reduces gram error", 300.0,
      mitigation_efficacy);
  run(6, "benchmark counts fall in the reference bands", 0.0,
      table1_reproduction);
  run(7, "large-sample strengths and pruning are exact", 60.0,
      large_sample_sanity);

  {
    Criterion c;
    c.id = 8;
    c.summary = "medical-data qualitative expectations";
    const auto start = std::chrono::steady_clock::now();
    if (g_heart_path.empty() && g_pima_path.empty()) {
      c.skipped = true;
      c.pass = true;
      c.note = "optional; supply --heart/--pima dataset files to run";
    } else if (g_cli_path.empty()) {
      c.pass = false;
      c.note = "--cli path required for the medical runs";
    } else {
      try {
        const Check check = medical_expectations(work_dir);
        c.pass = check.ok;
        c.note = check.note;
      } catch (const std::exception& e) {
        c.pass = false;
        c.note = std::string("exception: ") + e.what();
      }
    }
    c.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    criteria.push_back(std::move(c));
  }

  if (g_cli_path.empty()) {
    Criterion c;
    c.id = 9;
    c.summary = "CLI outputs are byte-identical across reruns";
    c.pass = false;
    c.note = "--cli <path> argument missing";
    criteria.push_back(std::move(c));
  } else {
    run(9, "CLI outputs are byte-identical across reruns", 0.0,
        [&]() { return cli_determinism(work_dir); });
  }

  bool all_pass = true;
  for (const Criterion& c : criteria) {
    const char* verdict = c.skipped ? "SKIP" : (c.pass ? "PASS" : "FAIL");
    std::printf("%s criterion %d: %s (%.1fs)%s%s\n", verdict, c.id,
                c.summary.c_str(), c.seconds, c.note.empty() ? "" : " - ",
                c.note.c_str());
    all_pass = all_pass && c.pass;
  }

  std::error_code ec;
  fs::remove_all(work_dir, ec);
  return all_pass ? 0 : 1;
}
