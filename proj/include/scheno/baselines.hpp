// Copyright 2026 the scheno authors
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
#include <vector>

#include "scheno/metric.hpp"

namespace scheno {

// Maximal edge subset in which every edge lies in at least k-2 triangles of
// the subset. Directed graphs are peeled on their undirected projection; the
// result is then the original directed edges whose projection survives, so
// the induced noise E \ truss stays in the graph's own universe.
NodePairSet k_truss(const Graph& g, int k);

// Largest k >= 2 with a non-empty truss; nullopt when the graph is edgeless.
std::optional<int> max_truss_k(const Graph& g);

// A ranked list of candidate schema pairs, best first. May rank non-edges.
using EdgeRanking = std::vector<NodePair>;

struct EvalReport {
  Decomposition decomposition;
  double gain_structure = 0.0;
  RandomGain gain_random;
};

// Evaluate an externally produced schema edge set: noise = E xor schema.
// This is how third-party decompositions are scored without reimplementing
// the tools that produced them.
EvalReport score_external(const Graph& g, const NodePairSet& schema_edges,
                          const NoiseParam& param, int trials = 20, std::uint64_t seed = 0,
                          SearchBudget budget = {}, int workers = 1);

struct SweepRow {
  int k = 0;             // ranked pairs taken as schema
  double k_over_e = 0.0; // k / |E|
  double total = 0.0;
  double gain_structure = 0.0;
  double gain_random_mean = 0.0;
  double gain_random_std = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  bool truncated = false;  // ranking shorter than 2|E|
};

// Score schemas made of the top-k ranked pairs for `steps` k values evenly
// spread over [0, min(2|E|, |ranking|)]. The random baseline for each row
// adds and deletes exactly as many pairs as that row's schema does, sampled
// uniformly from the non-edges and edges respectively; at k = 0 the two
// curves coincide by construction.
SweepResult ranking_sweep(const Graph& g, const EdgeRanking& ranking, int steps,
                          const NoiseParam& param, int trials = 20, std::uint64_t seed = 0,
                          SearchBudget budget = {}, int workers = 1);

}  // namespace scheno
