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

#include <cstdio>
#include <string>

#include <json.hpp>

#include "causalkit/lingam.hpp"

namespace causalkit {

inline nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline nlohmann::json kernel_config_to_json(const KernelConfig& kcfg) {
  nlohmann::json j;
  j["kind"] = kcfg.kind == KernelKind::quantum ? "quantum" : "gaussian";
  j["mode"] = kcfg.mode == KernelMode::exact ? "exact" : "shots";
  if (kcfg.kind == KernelKind::quantum) {
    j["circuit"] = {{"qubits", kcfg.circuit.qubits},
                    {"depth", kcfg.circuit.depth}};
    if (kcfg.mode == KernelMode::shots) {
      j["shots"] = kcfg.shots;
      j["seed"] = kcfg.seed;
      j["noise"] = kcfg.noise
                       ? nlohmann::json{{"p01", kcfg.noise->p01},
                                        {"p10", kcfg.noise->p10}}
                       : nlohmann::json(nullptr);
      j["mitigated"] = kcfg.calibration.has_value();
    }
  } else {
    j["bandwidth"] = kcfg.bandwidth ? nlohmann::json(*kcfg.bandwidth)
                                    : nlohmann::json("median");
  }
  return j;
}

inline nlohmann::json discovery_config_to_json(const DiscoveryConfig& cfg) {
  nlohmann::json j;
  j["kernel"] = kernel_config_to_json(cfg.kernel);
  j["feature_map"] = {{"scale", cfg.feature_map.scale}};
  j["nocco"] = {{"epsilon", cfg.nocco.epsilon}};
  j["prune_threshold"] = cfg.prune_threshold;
  j["master_seed"] = cfg.master_seed;
  return j;
}

/// Serializes a discovered model together with the configuration that
/// produced it. Matrices are row-major nested arrays on the raw scale,
/// with the standardized scale alongside.
inline nlohmann::json model_to_json(const CausalModel& model,
                                    const DiscoveryConfig& cfg) {
  nlohmann::json j;
  j["variables"] = model.variables;
  j["ordering"] = model.ordering;
  j["B"] = matrix_to_json(model.strengths);
  j["B_standardized"] = matrix_to_json(model.strengths_standardized);
  j["adjacency"] = model.adjacency;
  nlohmann::json trace = nlohmann::json::array();
  for (std::size_t round = 0; round < model.trace.size(); ++round) {
    nlohmann::json scores = nlohmann::json::array();
    for (const ScoreEntry& entry : model.trace[round].scores)
      scores.push_back(
          {{"variable", entry.variable}, {"score", entry.score}});
    trace.push_back({{"round", round + 1},
                     {"scores", std::move(scores)},
                     {"chosen", model.trace[round].chosen}});
  }
  j["trace"] = std::move(trace);
  j["config"] = discovery_config_to_json(cfg);
  return j;
}

/// Graphviz rendering: one node per variable, one directed edge per
/// adjacency entry, labelled with the raw-scale strength to two decimals.
inline std::string model_to_dot(const CausalModel& model) {
  std::string dot = "digraph causal {\n";
  for (const std::string& name : model.variables)
    dot += "  \"" + name + "\";\n";
  const std::size_t p = model.variables.size();
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      if (!model.adjacency[i][j]) continue;
      char label[32];
      std::snprintf(label, sizeof(label), "%.2f",
                    model.strengths(static_cast<Eigen::Index>(i),
                                    static_cast<Eigen::Index>(j)));
      dot += "  \"" + model.variables[j] + "\" -> \"" + model.variables[i] +
             "\" [label=\"" + label + "\"];\n";
    }
  }
  dot += "}\n";
  return dot;
}

}  // namespace causalkit
