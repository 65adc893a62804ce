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
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "scheno/metric.hpp"

namespace scheno {

struct GAProgress {
  int generation = 0;
  double best_fitness = 0.0;
  int best_noise_size = 0;
};

struct PopulationMember {
  NodePairSet genome;
  std::optional<double> fitness;  // score(g, genome).total once evaluated
};

struct GAConfig {
  // Population size; defaults to floor((n+400)^1.4), which follows the
  // score's own scale but is expensive on large graphs.
  std::optional<int> population_override;
  double p_swap = 0.6;
  double p_add = 0.2;
  double p_remove = 0.2;
  double mate_keep = 0.5;
  int mutation_events = 1;
  int max_generations = 500;
  int patience = 50;  // stop after this many generations without improvement
  std::uint64_t seed = 0;
  int workers = 1;
  SearchBudget budget{};
  int checkpoint_interval = 0;  // generations between checkpoints; 0 = off
  std::function<void(const GAProgress&)> on_progress;
  std::function<void(int, const std::vector<PopulationMember>&)> on_checkpoint;
};

int default_population_size(int n);

// One mutation event: swap (remove a member, insert a non-member) with
// p_swap, insert with p_add, remove with p_remove. Swap or remove on an
// empty genome falls back to insert; insert (or swap) on a full genome
// falls back to remove.
NodePairSet mutate(const NodePairSet& genome, int n, bool directed, const GAConfig& config,
                   std::mt19937_64& rng);

// Child keeps a&b always and each pair of a^b independently with
// probability mate_keep.
NodePairSet mate(const NodePairSet& a, const NodePairSet& b, const GAConfig& config,
                 std::mt19937_64& rng);

// score(g, genome, param).total; propagates budget errors.
double fitness(const Graph& g, const NodePairSet& genome, const NoiseParam& param,
               SearchBudget budget = {});

struct EvolveResult {
  Decomposition best;
  double best_fitness = 0.0;
  int generations = 0;       // generations actually run
  int budget_errors = 0;     // candidates discarded with fitness -inf
  int distinct_evaluated = 0;
};

// Generation loop: the P members spawn 6P mutants (uniform parents) and 3P
// mated children (parent pairs uniform over the P+6P pool); all 10P
// candidates, originals included, compete and the best P survive. Initial
// population: one empty genome plus P-1 uniform single-pair genomes. Stops
// at max_generations or after `patience` stagnant generations.
// Deterministic for a fixed seed; the result does not depend on workers.
EvolveResult evolve(const Graph& g, const GAConfig& config);

}  // namespace scheno
