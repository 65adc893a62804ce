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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "scheno/ga.hpp"
#include "testutil.hpp"

using namespace scheno;
namespace tu = scheno::testutil;

namespace {

int sym_diff_size(const NodePairSet& a, const NodePairSet& b) {
  std::vector<NodePair> diff;
  std::set_symmetric_difference(a.pairs().begin(), a.pairs().end(), b.pairs().begin(),
                                b.pairs().end(), std::back_inserter(diff));
  return static_cast<int>(diff.size());
}

bool subset_of(const NodePairSet& a, const NodePairSet& b) {
  return std::includes(b.pairs().begin(), b.pairs().end(), a.pairs().begin(), a.pairs().end());
}

}  // namespace

TEST_CASE("default population size follows the documented curve") {
  CHECK(default_population_size(4) == 4455);
  CHECK(default_population_size(10) == 4548);
  CHECK(default_population_size(50) == 5182);
  CHECK(default_population_size(100) == 6005);
}

TEST_CASE("mutation events hit the configured mix") {
  GAConfig config;
  std::mt19937_64 rng(2024);
  NodePairSet genome = tu::random_pair_set(10, false, 10, rng);
  int swaps = 0, adds = 0, removes = 0;
  const int trials = 100000;
  for (int t = 0; t < trials; ++t) {
    NodePairSet out = mutate(genome, 10, false, config, rng);
    if (out.size() == genome.size()) {
      ++swaps;
      CHECK(sym_diff_size(out, genome) == 2);
    } else if (out.size() == genome.size() + 1) {
      ++adds;
      CHECK(subset_of(genome, out));
    } else {
      REQUIRE(out.size() == genome.size() - 1);
      ++removes;
      CHECK(subset_of(out, genome));
    }
  }
  CHECK(std::abs(swaps / double(trials) - 0.6) < 0.01);
  CHECK(std::abs(adds / double(trials) - 0.2) < 0.01);
  CHECK(std::abs(removes / double(trials) - 0.2) < 0.01);
}

TEST_CASE("mutation falls back instead of failing at the boundaries") {
  GAConfig config;
  std::mt19937_64 rng(5);
  NodePairSet empty(4, false, {});
  for (int t = 0; t < 200; ++t) CHECK(mutate(empty, 4, false, config, rng).size() == 1);
  NodePairSet full(3, false, {{0, 1}, {0, 2}, {1, 2}});
  for (int t = 0; t < 200; ++t) {
    NodePairSet out = mutate(full, 3, false, config, rng);
    CHECK(out.size() == 2);
    CHECK(subset_of(out, full));
  }
}

TEST_CASE("several mutation events compound") {
  GAConfig config;
  config.mutation_events = 3;
  config.p_swap = 0.0;
  config.p_add = 1.0;
  config.p_remove = 0.0;
  std::mt19937_64 rng(17);
  NodePairSet empty(8, false, {});
  CHECK(mutate(empty, 8, false, config, rng).size() == 3);
}

TEST_CASE("mating keeps the intersection and samples the difference") {
  GAConfig config;
  std::mt19937_64 rng(31);
  NodePairSet a = tu::random_pair_set(8, false, 8, rng);
  NodePairSet b = tu::random_pair_set(8, false, 8, rng);
  std::vector<NodePair> common;
  std::set_intersection(a.pairs().begin(), a.pairs().end(), b.pairs().begin(), b.pairs().end(),
                        std::back_inserter(common));
  NodePairSet inter(8, false, common);
  const int d = sym_diff_size(a, b);

  double mean_extra = 0.0;
  const int trials = 20000;
  for (int t = 0; t < trials; ++t) {
    NodePairSet child = mate(a, b, config, rng);
    CHECK(subset_of(inter, child));
    for (const NodePair& e : child.pairs()) CHECK((a.contains(e) || b.contains(e)));
    mean_extra += child.size() - inter.size();
  }
  mean_extra /= trials;
  CHECK(mean_extra == doctest::Approx(0.5 * d).epsilon(0.05));

  CHECK(mate(a, a, config, rng) == a);
  CHECK_THROWS_AS(mate(a, NodePairSet(9, false, {}), config, rng), std::invalid_argument);
}

TEST_CASE("fitness is the score total") {
  Graph g = tu::path_graph(6);
  NodePairSet noise(6, false, {{0, 5}});
  NoiseParam param = choose_p(6, false);
  CHECK(fitness(g, noise, param) == score(g, noise, param).total);
}

TEST_CASE("config validation rejects inconsistent settings") {
  Graph g = tu::path_graph(4);
  GAConfig bad;
  bad.p_swap = 0.5;  // no longer sums to 1
  CHECK_THROWS_AS(evolve(g, bad), std::invalid_argument);
  GAConfig tiny_pop;
  tiny_pop.population_override = 1;
  CHECK_THROWS_AS(evolve(g, tiny_pop), std::invalid_argument);
  GAConfig neg;
  neg.mutation_events = 0;
  CHECK_THROWS_AS(evolve(g, neg), std::invalid_argument);
}

TEST_CASE("evolve recovers a planted missing edge") {
  Graph k4e(4, false, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
  GAConfig config;
  config.population_override = 20;
  config.max_generations = 25;
  config.patience = 8;
  config.seed = 1;
  EvolveResult r = evolve(k4e, config);
  CHECK(r.best.noise == NodePairSet(4, false, {{2, 3}}));
  CHECK(r.best_fitness == doctest::Approx(3.242351157295512).epsilon(1e-10));
  CHECK(r.best.schema == tu::complete(4));
  CHECK(r.distinct_evaluated >= 20);
  CHECK(r.budget_errors == 0);
}

TEST_CASE("evolve recovers a spurious edge on a star") {
  std::vector<NodePair> edges;
  for (int i = 1; i <= 8; ++i) edges.emplace_back(0, i);
  edges.emplace_back(1, 2);
  Graph g(9, false, edges);
  GAConfig config;
  config.population_override = 40;
  config.max_generations = 40;
  config.patience = 10;
  config.seed = 3;
  EvolveResult r = evolve(g, config);
  CHECK(r.best.noise == NodePairSet(9, false, {{1, 2}}));
  CHECK(r.best_fitness == doctest::Approx(13.354510363171036).epsilon(1e-10));
}

TEST_CASE("evolve is deterministic for a fixed seed") {
  Graph g = tu::path_graph(7);
  GAConfig config;
  config.population_override = 12;
  config.max_generations = 12;
  config.patience = 6;
  config.seed = 99;
  EvolveResult a = evolve(g, config);
  EvolveResult b = evolve(g, config);
  CHECK(a.best_fitness == b.best_fitness);
  CHECK(a.best.noise == b.best.noise);
  CHECK(a.generations == b.generations);
  CHECK(a.distinct_evaluated == b.distinct_evaluated);
}

TEST_CASE("progress reports a non-decreasing best") {
  Graph g = tu::path_graph(7);
  GAConfig config;
  config.population_override = 10;
  config.max_generations = 15;
  config.patience = 5;
  config.seed = 7;
  std::vector<double> history;
  config.on_progress = [&](const GAProgress& p) { history.push_back(p.best_fitness); };
  EvolveResult r = evolve(g, config);
  REQUIRE_FALSE(history.empty());
  CHECK(std::is_sorted(history.begin(), history.end()));
  CHECK(history.back() == r.best_fitness);
  CHECK(static_cast<int>(history.size()) == r.generations + 1);  // one per generation + start
}

TEST_CASE("checkpoints surface the live population") {
  Graph g = tu::cycle(6);
  GAConfig config;
  config.population_override = 8;
  config.max_generations = 6;
  config.patience = 6;
  config.checkpoint_interval = 2;
  config.seed = 11;
  int calls = 0;
  config.on_checkpoint = [&](int gen, const std::vector<PopulationMember>& members) {
    CHECK(gen % 2 == 0);
    CHECK(members.size() == 8);
    for (const auto& m : members) {
      CHECK(m.fitness.has_value());
      CHECK(m.genome.n() == 6);
    }
    // Survivors arrive sorted best-first.
    for (std::size_t i = 1; i < members.size(); ++i)
      CHECK(*members[i - 1].fitness >= *members[i].fitness);
    ++calls;
  };
  evolve(g, config);
  CHECK(calls >= 2);
}

TEST_CASE("a hopeless budget fails fast") {
  // On the empty 10-node graph neither the empty genome nor any single-pair
  // genome refines to a discrete partition, so a one-node budget makes the
  // whole initial population unscorable.
  Graph g(10, false, {});
  GAConfig config;
  config.population_override = 6;
  config.max_generations = 3;
  config.budget.max_nodes = 1;
  CHECK_THROWS_AS(evolve(g, config), BudgetError);
}

TEST_CASE("zero generations returns the best of the initial population") {
  Graph g = tu::path_graph(5);
  GAConfig config;
  config.population_override = 10;
  config.max_generations = 0;
  config.seed = 2;
  EvolveResult r = evolve(g, config);
  CHECK(r.generations == 0);
  // Initial pool is the empty genome plus single pairs; best is one of those.
  CHECK(r.best.noise.size() <= 1);
}
