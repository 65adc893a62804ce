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

#include <atomic>
#include <random>
#include <stdexcept>
#include <vector>

#include "scheno/baselines.hpp"
#include "scheno/ga.hpp"
#include "scheno/parallel.hpp"
#include "testutil.hpp"

using namespace scheno;
namespace tu = scheno::testutil;

TEST_CASE("resolve_workers maps zero to all threads and keeps requests") {
  CHECK(resolve_workers(1) == 1);
  CHECK(resolve_workers(0) >= 1);
  CHECK(resolve_workers(-3) == resolve_workers(0));
#ifdef _OPENMP
  CHECK(resolve_workers(3) == 3);
#else
  CHECK(resolve_workers(3) == 1);
#endif
}

TEST_CASE("parallel_for covers every index exactly once") {
  for (int workers : {1, 4}) {
    std::vector<std::atomic<int>> hits(257);
    for (auto& h : hits) h = 0;
    parallel_for(257, workers, [&](int i) { hits[static_cast<std::size_t>(i)]++; });
    for (const auto& h : hits) CHECK(h == 1);
  }
  parallel_for(0, 4, [](int) { FAIL("body must not run for an empty range"); });
}

TEST_CASE("scoring a candidate batch is bit-identical across worker counts") {
  Graph g = tu::circulant(24, {1, 3});
  NoiseParam param = choose_p(24, false);
  std::mt19937_64 rng(31415);
  std::vector<NodePairSet> candidates;
  for (int i = 0; i < 60; ++i)
    candidates.push_back(tu::random_pair_set(24, false, 1 + static_cast<int>(rng() % 3), rng));

  auto run = [&](int workers) {
    std::vector<double> totals(candidates.size());
    parallel_for(static_cast<int>(candidates.size()), workers, [&](int i) {
      totals[static_cast<std::size_t>(i)] =
          score(g, candidates[static_cast<std::size_t>(i)], param).total;
    });
    return totals;
  };
  std::vector<double> serial = run(1);
  std::vector<double> parallel = run(4);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) CHECK(serial[i] == parallel[i]);
}

TEST_CASE("gain_over_random is independent of worker count") {
  Graph g = tu::path_graph(9);
  NodePairSet close9(9, false, {{0, 8}});
  NoiseParam param = choose_p(9, false);
  RandomGain serial = gain_over_random(g, close9, param, 12, 21, {}, 1);
  RandomGain fanned = gain_over_random(g, close9, param, 12, 21, {}, 4);
  CHECK(serial.gain == fanned.gain);
  CHECK(serial.baseline_mean == fanned.baseline_mean);
  CHECK(serial.baseline_std == fanned.baseline_std);
}

TEST_CASE("ranking_sweep is independent of worker count") {
  Graph g = tu::cycle(7);
  NoiseParam param = choose_p(7, false);
  EdgeRanking ranking;
  for (std::int64_t i = 0; i < pair_count(7, false); ++i)
    ranking.push_back(index_to_pair(i, 7, false));
  SweepResult serial = ranking_sweep(g, ranking, 6, param, 5, 33, {}, 1);
  SweepResult fanned = ranking_sweep(g, ranking, 6, param, 5, 33, {}, 4);
  REQUIRE(serial.rows.size() == fanned.rows.size());
  for (std::size_t i = 0; i < serial.rows.size(); ++i) {
    CHECK(serial.rows[i].k == fanned.rows[i].k);
    CHECK(serial.rows[i].total == fanned.rows[i].total);
    CHECK(serial.rows[i].gain_structure == fanned.rows[i].gain_structure);
    CHECK(serial.rows[i].gain_random_mean == fanned.rows[i].gain_random_mean);
    CHECK(serial.rows[i].gain_random_std == fanned.rows[i].gain_random_std);
  }
}

TEST_CASE("evolve is independent of worker count") {
  Graph k4e(4, false, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
  GAConfig config;
  config.population_override = 16;
  config.max_generations = 10;
  config.patience = 5;
  config.seed = 8;
  config.workers = 1;
  EvolveResult serial = evolve(k4e, config);
  config.workers = 4;
  EvolveResult fanned = evolve(k4e, config);
  CHECK(serial.best_fitness == fanned.best_fitness);
  CHECK(serial.best.noise == fanned.best.noise);
  CHECK(serial.generations == fanned.generations);
  CHECK(serial.distinct_evaluated == fanned.distinct_evaluated);
}

TEST_CASE("exceptions inside parallel sections surface to the caller") {
  Graph g = tu::johnson(7, 2);
  NodePairSet x(g.n(), false, {{0, 1}});
  NoiseParam param = choose_p(g.n(), false);
  SearchBudget tiny;
  tiny.max_nodes = 10;
  CHECK_THROWS_AS(gain_over_random(g, x, param, 8, 3, tiny, 4), BudgetError);
}
