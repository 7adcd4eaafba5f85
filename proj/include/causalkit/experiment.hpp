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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "causalkit/dataset.hpp"
#include "causalkit/lingam.hpp"
#include "causalkit/serialize.hpp"

namespace causalkit {

/// Benchmark harness settings: many synthetic datasets, each run through
/// discovery with both kernel kinds and compared against the generating
/// structure.
struct Table1Config {
  int dataset_count = 100;
  std::size_t samples_per_dataset = 100;
  std::uint64_t seed_base = 0;
  double epsilon = 1e-3;
  double prune_threshold = 0.1;
  IqpCircuitSpec circuit = kDefaultExactCircuit;
  FeatureMapConfig feature_map{};
  std::optional<double> gaussian_bandwidth;
  int jobs = 1;

  void validate() const {
    if (dataset_count < 1) throw ValidationError("dataset count must be >= 1");
    if (samples_per_dataset < 2)
      throw ValidationError("samples per dataset must be >= 2");
    if (jobs < 1) throw ValidationError("jobs must be >= 1");
    circuit.validate();
    feature_map.validate();
  }
};

struct Table1DatasetResult {
  int index = 0;
  std::uint64_t seed = 0;
  bool completed = false;
  std::string error;
  bool quantum_structure = false;
  bool gaussian_structure = false;
  bool quantum_ordering = false;
  bool gaussian_ordering = false;
};

struct Table1Report {
  int dataset_count = 0;
  int completed = 0;
  int both = 0;
  int neither = 0;
  int only_quantum = 0;
  int only_gaussian = 0;
  int quantum_structure_total = 0;
  int gaussian_structure_total = 0;
  int quantum_ordering_total = 0;
  int gaussian_ordering_total = 0;
  std::vector<Table1DatasetResult> details;
};

/// Ground-truth edge set of the synthetic generator:
/// x0 -> x1, x0 -> x2, x1 -> x2 (adjacency[i][j] means j -> i).
inline std::vector<std::vector<bool>> synthetic_reference_adjacency() {
  std::vector<std::vector<bool>> adjacency(3, std::vector<bool>(3, false));
  adjacency[1][0] = true;
  adjacency[2][0] = true;
  adjacency[2][1] = true;
  return adjacency;
}

/// The generator's unique topological order.
inline std::vector<int> synthetic_reference_ordering() { return {0, 1, 2}; }

namespace detail {

inline DiscoveryConfig table1_discovery_config(const Table1Config& cfg,
                                               KernelKind kind,
                                               std::uint64_t master_seed) {
  DiscoveryConfig dcfg;
  dcfg.kernel.kind = kind;
  dcfg.kernel.circuit = cfg.circuit;
  dcfg.kernel.mode = KernelMode::exact;
  dcfg.kernel.bandwidth = cfg.gaussian_bandwidth;
  dcfg.feature_map = cfg.feature_map;
  dcfg.nocco.epsilon = cfg.epsilon;
  dcfg.prune_threshold = cfg.prune_threshold;
  dcfg.master_seed = master_seed;
  return dcfg;
}

inline void table1_evaluate(const Table1Config& cfg, int index,
                            Table1DatasetResult& out) {
  out.index = index;
  out.seed = derive_seed(cfg.seed_base, static_cast<std::uint64_t>(index), 0);
  try {
    SyntheticSpec spec;
    spec.n = cfg.samples_per_dataset;
    spec.seed = out.seed;
    const DataMatrix dm = gen_synthetic(spec);
    const auto reference = synthetic_reference_adjacency();
    const auto reference_ordering = synthetic_reference_ordering();
    const std::uint64_t master =
        derive_seed(cfg.seed_base, static_cast<std::uint64_t>(index), 1);

    const CausalModel quantum = discover(
        dm, table1_discovery_config(cfg, KernelKind::quantum, master));
    const CausalModel gaussian = discover(
        dm, table1_discovery_config(cfg, KernelKind::gaussian, master));

    out.quantum_structure = structure_equal(quantum, reference);
    out.gaussian_structure = structure_equal(gaussian, reference);
    out.quantum_ordering = quantum.ordering == reference_ordering;
    out.gaussian_ordering = gaussian.ordering == reference_ordering;
    out.completed = true;
  } catch (const std::exception& e) {
    out.completed = false;
    out.error = e.what();
  }
}

}  // namespace detail

/// Runs the whole benchmark. Per-dataset seeds derive from the seed base
/// and dataset index, and workers process disjoint index strides, so the
/// report is identical for any job count.
inline Table1Report run_table1(const Table1Config& cfg) {
  cfg.validate();
  Table1Report report;
  report.dataset_count = cfg.dataset_count;
  report.details.assign(static_cast<std::size_t>(cfg.dataset_count), {});

  const int jobs = std::min(cfg.jobs, cfg.dataset_count);
  if (jobs <= 1) {
    for (int i = 0; i < cfg.dataset_count; ++i)
      detail::table1_evaluate(cfg, i, report.details[static_cast<std::size_t>(i)]);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(jobs));
    for (int w = 0; w < jobs; ++w) {
      workers.emplace_back([&cfg, &report, w, jobs]() {
        for (int i = w; i < cfg.dataset_count; i += jobs)
          detail::table1_evaluate(cfg, i,
                                  report.details[static_cast<std::size_t>(i)]);
      });
    }
    for (std::thread& worker : workers) worker.join();
  }

  for (const Table1DatasetResult& d : report.details) {
    if (!d.completed) continue;
    ++report.completed;
    if (d.quantum_structure && d.gaussian_structure) ++report.both;
    if (!d.quantum_structure && !d.gaussian_structure) ++report.neither;
    if (d.quantum_structure && !d.gaussian_structure) ++report.only_quantum;
    if (!d.quantum_structure && d.gaussian_structure) ++report.only_gaussian;
    report.quantum_structure_total += d.quantum_structure ? 1 : 0;
    report.gaussian_structure_total += d.gaussian_structure ? 1 : 0;
    report.quantum_ordering_total += d.quantum_ordering ? 1 : 0;
    report.gaussian_ordering_total += d.gaussian_ordering ? 1 : 0;
  }
  return report;
}

inline nlohmann::json table1_config_to_json(const Table1Config& cfg) {
  nlohmann::json j;
  j["datasets"] = cfg.dataset_count;
  j["samples_per_dataset"] = cfg.samples_per_dataset;
  j["seed_base"] = cfg.seed_base;
  j["epsilon"] = cfg.epsilon;
  j["prune_threshold"] = cfg.prune_threshold;
  j["circuit"] = {{"qubits", cfg.circuit.qubits}, {"depth", cfg.circuit.depth}};
  j["feature_map"] = {{"scale", cfg.feature_map.scale}};
  j["gaussian_bandwidth"] = cfg.gaussian_bandwidth
                                ? nlohmann::json(*cfg.gaussian_bandwidth)
                                : nlohmann::json("median");
  return j;
}

inline nlohmann::json table1_report_to_json(const Table1Report& report,
                                            const Table1Config& cfg) {
  nlohmann::json j;
  j["config"] = table1_config_to_json(cfg);
  j["datasets"] = report.dataset_count;
  j["completed"] = report.completed;
  j["counts"] = {{"both", report.both},
                 {"neither", report.neither},
                 {"only_quantum", report.only_quantum},
                 {"only_gaussian", report.only_gaussian}};
  j["totals"] = {{"quantum_structure", report.quantum_structure_total},
                 {"gaussian_structure", report.gaussian_structure_total},
                 {"quantum_ordering", report.quantum_ordering_total},
                 {"gaussian_ordering", report.gaussian_ordering_total}};
  nlohmann::json details = nlohmann::json::array();
  for (const Table1DatasetResult& d : report.details) {
    nlohmann::json entry = {{"index", d.index},
                            {"seed", d.seed},
                            {"completed", d.completed},
                            {"quantum_structure", d.quantum_structure},
                            {"gaussian_structure", d.gaussian_structure},
                            {"quantum_ordering", d.quantum_ordering},
                            {"gaussian_ordering", d.gaussian_ordering}};
    if (!d.completed) entry["error"] = d.error;
    details.push_back(std::move(entry));
  }
  j["details"] = std::move(details);
  return j;
}

}  // namespace causalkit
