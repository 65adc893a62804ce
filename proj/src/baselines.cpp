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
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "scheno/baselines.hpp"
#include "scheno/parallel.hpp"

namespace scheno {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Graph undirected_projection(const Graph& g) {
  if (!g.directed()) return g;
  std::vector<NodePair> und;
  und.reserve(g.edges().size());
  for (const NodePair& e : g.edges()) und.push_back(canonical_pair(e.first, e.second, false));
  return Graph(g.n(), false, std::move(und));
}

// Triangle support of each surviving edge, recomputed per round. Peeling
// deletes all under-supported edges at once; the fixpoint is the unique
// maximal solution, so batch order does not matter.
std::vector<NodePair> peel_truss(const Graph& und, int k) {
  std::set<NodePair> alive(und.edges().begin(), und.edges().end());
  const int need = k - 2;
  bool changed = true;
  while (changed && !alive.empty()) {
    changed = false;
    std::vector<NodePair> drop;
    for (const NodePair& e : alive) {
      int support = 0;
      for (int w : und.neighbors(e.first)) {
        if (w == e.second) continue;
        if (alive.count(canonical_pair(e.first, w, false)) &&
            alive.count(canonical_pair(e.second, w, false)))
          ++support;
      }
      if (support < need) drop.push_back(e);
    }
    for (const NodePair& e : drop) alive.erase(e);
    if (!drop.empty()) changed = true;
  }
  return {alive.begin(), alive.end()};
}

// Floyd sampler over positions [0, limit).
std::vector<std::size_t> sample_positions(std::size_t limit, int k, std::mt19937_64& rng) {
  std::set<std::size_t> picked;
  for (std::size_t j = limit - static_cast<std::size_t>(k); j < limit; ++j) {
    std::uniform_int_distribution<std::size_t> dist(0, j);
    const std::size_t t = dist(rng);
    picked.insert(picked.count(t) ? j : t);
  }
  return {picked.begin(), picked.end()};
}

}  // namespace

NodePairSet k_truss(const Graph& g, int k) {
  if (k < 2) throw std::invalid_argument("k_truss: need k >= 2");
  const Graph und = undirected_projection(g);
  std::vector<NodePair> kept = peel_truss(und, k);
  if (!g.directed()) return NodePairSet(g.n(), false, std::move(kept));
  std::set<NodePair> surviving(kept.begin(), kept.end());
  std::vector<NodePair> original;
  for (const NodePair& e : g.edges())
    if (surviving.count(canonical_pair(e.first, e.second, false))) original.push_back(e);
  return NodePairSet(g.n(), true, std::move(original));
}

std::optional<int> max_truss_k(const Graph& g) {
  if (g.edge_count() == 0) return std::nullopt;
  int k = 2;  // the 2-truss is the whole edge set
  while (!k_truss(g, k + 1).empty()) ++k;
  return k;
}

EvalReport score_external(const Graph& g, const NodePairSet& schema_edges,
                          const NoiseParam& param, int trials, std::uint64_t seed,
                          SearchBudget budget, int workers) {
  if (schema_edges.n() != g.n() || schema_edges.directed() != g.directed())
    throw std::invalid_argument("score_external: schema universe does not match graph");
  std::vector<NodePair> noise_pairs;
  std::set_symmetric_difference(g.edges().begin(), g.edges().end(), schema_edges.pairs().begin(),
                                schema_edges.pairs().end(), std::back_inserter(noise_pairs));
  NodePairSet noise(g.n(), g.directed(), std::move(noise_pairs));
  EvalReport rep;
  rep.decomposition = make_decomposition(g, noise, param, budget);
  rep.gain_structure = gain_over_all_structure(g, noise, param, budget);
  rep.gain_random = gain_over_random(g, noise, param, trials, seed, budget, workers);
  return rep;
}

SweepResult ranking_sweep(const Graph& g, const EdgeRanking& ranking, int steps,
                          const NoiseParam& param, int trials, std::uint64_t seed,
                          SearchBudget budget, int workers) {
  if (g.n() != param.n || g.directed() != param.directed)
    throw std::invalid_argument("ranking_sweep: graph universe does not match noise parameter");
  if (steps < 1) throw std::invalid_argument("ranking_sweep: need at least one step");
  if (trials < 1) throw std::invalid_argument("ranking_sweep: need at least one trial");

  std::vector<NodePair> ranked;
  ranked.reserve(ranking.size());
  std::set<NodePair> seen;
  for (const NodePair& e : ranking) {
    const NodePair c = canonical_pair(e.first, e.second, g.directed());
    if (c.first < 0 || c.first >= g.n() || c.second < 0 || c.second >= g.n() ||
        c.first == c.second)
      throw std::invalid_argument("ranking_sweep: invalid pair in ranking");
    if (!seen.insert(c).second)
      throw std::invalid_argument("ranking_sweep: duplicate pair in ranking");
    ranked.push_back(c);
  }

  const std::int64_t want = 2 * static_cast<std::int64_t>(g.edge_count());
  const std::int64_t limit = std::min<std::int64_t>(want, static_cast<std::int64_t>(ranked.size()));
  SweepResult result;
  result.truncated = limit < want;

  std::vector<int> ks;
  for (int i = 0; i < steps; ++i) {
    const int k = steps == 1 ? 0
                             : static_cast<int>(std::llround(static_cast<double>(i) *
                                                             static_cast<double>(limit) /
                                                             (steps - 1)));
    if (ks.empty() || ks.back() != k) ks.push_back(k);
  }

  const NodePairSet empty(g.n(), g.directed(), {});
  const double all_structure = score(g, empty, param, budget).total;

  // Row baselines resample with the row's own add/delete counts, so every
  // non-edge and edge index list is shared read-only across rows.
  std::vector<std::size_t> edge_pos;  // indices into g.edges(); identity, for sampling
  for (std::size_t i = 0; i < g.edges().size(); ++i) edge_pos.push_back(i);
  std::vector<std::int64_t> non_edge_idx;
  const std::int64_t m = pair_count(g.n(), g.directed());
  for (std::int64_t i = 0; i < m; ++i) {
    const NodePair e = index_to_pair(i, g.n(), g.directed());
    if (!g.has_edge(e.first, e.second)) non_edge_idx.push_back(i);
  }

  result.rows.assign(ks.size(), SweepRow{});
  std::vector<std::exception_ptr> errors(ks.size());
  parallel_for(static_cast<int>(ks.size()), workers, [&](int row) {
    try {
      const int k = ks[static_cast<std::size_t>(row)];
      NodePairSet schema(g.n(), g.directed(),
                         std::vector<NodePair>(ranked.begin(), ranked.begin() + k));
      std::vector<NodePair> noise_pairs;
      std::set_symmetric_difference(g.edges().begin(), g.edges().end(), schema.pairs().begin(),
                                    schema.pairs().end(), std::back_inserter(noise_pairs));
      const NodePairSet noise(g.n(), g.directed(), std::move(noise_pairs));
      const NoiseSplit split = split_noise(g, noise);
      const int n_add = split.added.size();
      const int n_del = split.deleted.size();

      SweepRow& out = result.rows[static_cast<std::size_t>(row)];
      out.k = k;
      out.k_over_e = g.edge_count() > 0 ? static_cast<double>(k) / g.edge_count() : 0.0;
      out.total = score(g, noise, param, budget).total;
      out.gain_structure = out.total - all_structure;

      std::vector<double> totals(static_cast<std::size_t>(trials), 0.0);
      for (int t = 0; t < trials; ++t) {
        std::mt19937_64 rng(splitmix64(seed ^ (0x9d5c28f1a42ULL * (k + 1)) ^
                                       (0x2545f4914f6cdd1dULL * (t + 1))));
        std::vector<NodePair> sample;
        for (std::size_t pos : sample_positions(non_edge_idx.size(), n_add, rng))
          sample.push_back(index_to_pair(non_edge_idx[pos], g.n(), g.directed()));
        for (std::size_t pos : sample_positions(edge_pos.size(), n_del, rng))
          sample.push_back(g.edges()[pos]);
        totals[static_cast<std::size_t>(t)] =
            score(g, NodePairSet(g.n(), g.directed(), std::move(sample)), param, budget).total;
      }
      double sum = 0.0;
      for (double v : totals) sum += v;
      const double mean = sum / trials;
      out.gain_random_mean = out.total - mean;
      if (trials >= 2) {
        double ss = 0.0;
        for (double v : totals) ss += (v - mean) * (v - mean);
        out.gain_random_std = std::sqrt(ss / (trials - 1));
      }
    } catch (...) {
      errors[static_cast<std::size_t>(row)] = std::current_exception();
    }
  });
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return result;
}

}  // namespace scheno
