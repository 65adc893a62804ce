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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "scheno/ga.hpp"
#include "scheno/parallel.hpp"

namespace scheno {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void check_config(const GAConfig& c) {
  if (std::abs(c.p_swap + c.p_add + c.p_remove - 1.0) > 1e-9)
    throw std::invalid_argument("ga: mutation probabilities must sum to 1");
  if (c.p_swap < 0 || c.p_add < 0 || c.p_remove < 0)
    throw std::invalid_argument("ga: mutation probabilities must be non-negative");
  if (c.mate_keep < 0 || c.mate_keep > 1)
    throw std::invalid_argument("ga: mate_keep must be in [0, 1]");
  if (c.mutation_events < 1) throw std::invalid_argument("ga: mutation_events must be >= 1");
  if (c.max_generations < 0 || c.patience < 0)
    throw std::invalid_argument("ga: max_generations and patience must be non-negative");
  if (c.population_override && *c.population_override < 2)
    throw std::invalid_argument("ga: population size must be >= 2");
}

// Uniform pair index outside `member_indices` (sorted). Enumerates the
// complement when it is small; rejection-samples otherwise.
std::int64_t random_absent_index(const std::vector<std::int64_t>& member_indices, std::int64_t m,
                                 std::mt19937_64& rng) {
  const std::int64_t absent = m - static_cast<std::int64_t>(member_indices.size());
  if (absent <= 0) throw std::logic_error("ga: no absent pair to insert");
  if (static_cast<std::int64_t>(member_indices.size()) * 2 >= m) {
    std::uniform_int_distribution<std::int64_t> dist(0, absent - 1);
    std::int64_t rank = dist(rng);
    std::int64_t idx = 0;
    std::size_t at = 0;
    for (;; ++idx) {
      if (at < member_indices.size() && member_indices[at] == idx) {
        ++at;
        continue;
      }
      if (rank == 0) return idx;
      --rank;
    }
  }
  std::uniform_int_distribution<std::int64_t> dist(0, m - 1);
  for (;;) {
    const std::int64_t idx = dist(rng);
    if (!std::binary_search(member_indices.begin(), member_indices.end(), idx)) return idx;
  }
}

std::vector<std::int64_t> genome_indices(const NodePairSet& genome, int n, bool directed) {
  std::vector<std::int64_t> idx;
  idx.reserve(static_cast<std::size_t>(genome.size()));
  for (const NodePair& e : genome.pairs()) idx.push_back(pair_to_index(e, n, directed));
  std::sort(idx.begin(), idx.end());
  return idx;
}

NodePairSet indices_to_set(const std::vector<std::int64_t>& idx, int n, bool directed) {
  std::vector<NodePair> pairs;
  pairs.reserve(idx.size());
  for (std::int64_t i : idx) pairs.push_back(index_to_pair(i, n, directed));
  return NodePairSet(n, directed, std::move(pairs));
}

}  // namespace

int default_population_size(int n) {
  return static_cast<int>(std::floor(std::pow(static_cast<double>(n) + 400.0, 1.4)));
}

NodePairSet mutate(const NodePairSet& genome, int n, bool directed, const GAConfig& config,
                   std::mt19937_64& rng) {
  const std::int64_t m = pair_count(n, directed);
  if (m == 0) return genome;
  std::vector<std::int64_t> idx = genome_indices(genome, n, directed);
  for (int ev = 0; ev < config.mutation_events; ++ev) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double u = unit(rng);
    enum { kSwap, kAdd, kRemove } event =
        u < config.p_swap ? kSwap : (u < config.p_swap + config.p_add ? kAdd : kRemove);
    if (idx.empty()) event = kAdd;
    else if (static_cast<std::int64_t>(idx.size()) == m && event != kRemove) event = kRemove;
    if (event == kSwap || event == kRemove) {
      std::uniform_int_distribution<std::size_t> pick(0, idx.size() - 1);
      const std::size_t victim = pick(rng);
      if (event == kSwap) {
        // Inserted pair is drawn from outside the pre-removal genome, so a
        // swap never re-inserts its own victim and always changes the genome.
        const std::int64_t added = random_absent_index(idx, m, rng);
        idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(victim));
        idx.insert(std::lower_bound(idx.begin(), idx.end(), added), added);
      } else {
        idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(victim));
      }
    } else {
      const std::int64_t added = random_absent_index(idx, m, rng);
      idx.insert(std::lower_bound(idx.begin(), idx.end(), added), added);
    }
  }
  return indices_to_set(idx, n, directed);
}

NodePairSet mate(const NodePairSet& a, const NodePairSet& b, const GAConfig& config,
                 std::mt19937_64& rng) {
  if (a.n() != b.n() || a.directed() != b.directed())
    throw std::invalid_argument("mate: parents live in different universes");
  std::vector<NodePair> child;
  std::set_intersection(a.pairs().begin(), a.pairs().end(), b.pairs().begin(), b.pairs().end(),
                        std::back_inserter(child));
  std::vector<NodePair> diff;
  std::set_symmetric_difference(a.pairs().begin(), a.pairs().end(), b.pairs().begin(),
                                b.pairs().end(), std::back_inserter(diff));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const NodePair& e : diff)
    if (unit(rng) < config.mate_keep) child.push_back(e);
  return NodePairSet(a.n(), a.directed(), std::move(child));
}

double fitness(const Graph& g, const NodePairSet& genome, const NoiseParam& param,
               SearchBudget budget) {
  return score(g, genome, param, budget).total;
}

EvolveResult evolve(const Graph& g, const GAConfig& config) {
  check_config(config);
  const int n = g.n();
  const bool directed = g.directed();
  const NoiseParam param = choose_p(n, directed);
  const std::int64_t m = pair_count(n, directed);
  const int pop_size = config.population_override.value_or(default_population_size(n));

  // Fitness per distinct genome. Budget failures are cached as -inf so a
  // hopeless candidate is charged once, not every generation.
  std::map<NodePairSet, double> cache;
  int budget_errors = 0;

  auto score_all = [&](const std::vector<NodePairSet>& genomes) {
    std::vector<const NodePairSet*> fresh;
    for (const NodePairSet& x : genomes)
      if (!cache.count(x)) {
        cache.emplace(x, kNegInf);  // placeholder keeps `fresh` duplicate-free
        fresh.push_back(&x);
      }
    std::vector<double> vals(fresh.size(), kNegInf);
    std::vector<bool> failed(fresh.size(), false);
    std::vector<std::exception_ptr> errors(fresh.size());
    parallel_for(static_cast<int>(fresh.size()), config.workers, [&](int i) {
      try {
        vals[static_cast<std::size_t>(i)] =
            score(g, *fresh[static_cast<std::size_t>(i)], param, config.budget).total;
      } catch (const BudgetError&) {
        failed[static_cast<std::size_t>(i)] = true;
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    });
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
    for (std::size_t i = 0; i < fresh.size(); ++i) {
      if (failed[i]) ++budget_errors;
      else cache[*fresh[i]] = vals[i];
    }
  };

  auto select_top = [&](std::vector<NodePairSet>& pool) {
    // Fitness desc, then smaller noise, then lexicographic genome: a total
    // order, so selection is deterministic and worker-independent.
    std::sort(pool.begin(), pool.end(), [&](const NodePairSet& x, const NodePairSet& y) {
      const double fx = cache.at(x), fy = cache.at(y);
      if (fx != fy) return fx > fy;
      if (x.size() != y.size()) return x.size() < y.size();
      return x < y;
    });
    if (static_cast<int>(pool.size()) > pop_size)
      pool.resize(static_cast<std::size_t>(pop_size));
  };

  std::vector<NodePairSet> pop;
  pop.reserve(static_cast<std::size_t>(pop_size));
  pop.emplace_back(n, directed, std::vector<NodePair>{});
  {
    std::mt19937_64 rng(splitmix64(config.seed ^ 0xa5a5a5a5a5a5a5a5ULL));
    std::uniform_int_distribution<std::int64_t> dist(0, m > 0 ? m - 1 : 0);
    for (int i = 1; i < pop_size; ++i) {
      std::vector<NodePair> one;
      if (m > 0) one.push_back(index_to_pair(dist(rng), n, directed));
      pop.emplace_back(n, directed, std::move(one));
    }
  }
  score_all(pop);
  select_top(pop);
  if (cache.at(pop.front()) == kNegInf)
    throw BudgetError(config.budget.max_nodes);  // not even one scorable member

  NodePairSet best = pop.front();
  double best_fitness = cache.at(best);
  int generations = 0;
  int stagnant = 0;

  auto report = [&](int gen) {
    if (config.on_progress)
      config.on_progress(GAProgress{gen, best_fitness, best.size()});
    if (config.on_checkpoint && config.checkpoint_interval > 0 &&
        gen % config.checkpoint_interval == 0) {
      std::vector<PopulationMember> members;
      members.reserve(pop.size());
      for (const NodePairSet& x : pop) members.push_back({x, cache.at(x)});
      config.on_checkpoint(gen, members);
    }
  };
  report(0);

  for (int gen = 1; gen <= config.max_generations; ++gen) {
    std::mt19937_64 rng(splitmix64(config.seed ^ (0x6a09e667f3bcc909ULL + 2 * gen)));
    const int cur = static_cast<int>(pop.size());
    std::vector<NodePairSet> pool = pop;
    pool.reserve(static_cast<std::size_t>(10) * cur);
    std::uniform_int_distribution<int> parent(0, cur - 1);
    for (int i = 0; i < 6 * cur; ++i)
      pool.push_back(mutate(pop[static_cast<std::size_t>(parent(rng))], n, directed, config, rng));
    std::uniform_int_distribution<int> mate_parent(0, 7 * cur - 1);
    for (int i = 0; i < 3 * cur; ++i) {
      const NodePairSet& a = pool[static_cast<std::size_t>(mate_parent(rng))];
      const NodePairSet& b = pool[static_cast<std::size_t>(mate_parent(rng))];
      pool.push_back(mate(a, b, config, rng));
    }
    score_all(pool);
    select_top(pool);
    pop = std::move(pool);
    generations = gen;

    const double gen_best = cache.at(pop.front());
    if (gen_best > best_fitness) {
      best_fitness = gen_best;
      best = pop.front();
      stagnant = 0;
    } else {
      ++stagnant;
    }
    report(gen);
    if (stagnant >= config.patience) break;
  }

  EvolveResult out;
  out.best = make_decomposition(g, best, param, config.budget);
  out.best_fitness = best_fitness;
  out.generations = generations;
  out.budget_errors = budget_errors;
  out.distinct_evaluated = static_cast<int>(cache.size());
  return out;
}

}  // namespace scheno
