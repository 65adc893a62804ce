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

#include <cmath>
#include <cstdint>
#include <exception>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "scheno/metric.hpp"
#include "scheno/parallel.hpp"

namespace scheno {

namespace {

void check_param(const Graph& g, const NoiseParam& param) {
  if (g.n() != param.n || g.directed() != param.directed)
    throw std::invalid_argument("score: graph universe does not match noise parameter");
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// k distinct pair indices from [0, m), uniform, via Floyd's sampler.
NodePairSet random_pair_set(int n, bool directed, int k, std::mt19937_64& rng) {
  const std::int64_t m = pair_count(n, directed);
  std::set<std::int64_t> picked;
  for (std::int64_t j = m - k; j < m; ++j) {
    std::uniform_int_distribution<std::int64_t> dist(0, j);
    const std::int64_t t = dist(rng);
    picked.insert(picked.count(t) ? j : t);
  }
  std::vector<NodePair> pairs;
  pairs.reserve(picked.size());
  for (std::int64_t idx : picked) pairs.push_back(index_to_pair(idx, n, directed));
  return NodePairSet(n, directed, std::move(pairs));
}

}  // namespace

ScoreBreakdown score(const Graph& g, const NodePairSet& noise, const NoiseParam& param,
                     SearchBudget budget) {
  check_param(g, param);
  const Graph h = xor_apply(g, noise);
  ScoreBreakdown b;
  b.M = pair_count(g.n(), g.directed());
  b.noise_size = noise.size();
  if (noise.empty()) {
    const AutomorphismReport rep = count_automorphisms(h, budget);
    b.log2_aut_H = rep.log2_count;
    b.aut_exact = rep.exact_count;
  } else {
    const OrbitReport orb = orbit_size_of_pair_set(h, noise, budget);
    b.log2_aut_H = orb.aut.log2_count;
    b.aut_exact = orb.aut.exact_count;
    b.log2_orbit_N = orb.log2_orbit;
    b.orbit_exact = orb.exact_orbit;
  }
  b.noise_term = b.noise_size * param.log2_p +
                 static_cast<double>(b.M - b.noise_size) * param.log2_1mp;
  b.total = b.log2_aut_H + b.log2_orbit_N + b.noise_term;
  return b;
}

Decomposition make_decomposition(const Graph& g, const NodePairSet& noise,
                                 const NoiseParam& param, SearchBudget budget) {
  Decomposition d;
  d.graph = g;
  d.noise = noise;
  d.schema = xor_apply(g, noise);
  d.breakdown = score(g, noise, param, budget);
  return d;
}

double gain_over_all_structure(const Graph& g, const NodePairSet& noise, const NoiseParam& param,
                               SearchBudget budget) {
  const NodePairSet empty(g.n(), g.directed(), {});
  return score(g, noise, param, budget).total - score(g, empty, param, budget).total;
}

RandomGain gain_over_random(const Graph& g, const NodePairSet& noise, const NoiseParam& param,
                            int trials, std::uint64_t seed, SearchBudget budget, int workers) {
  check_param(g, param);
  if (trials < 1) throw std::invalid_argument("gain_over_random: need at least one trial");
  const double subject = score(g, noise, param, budget).total;
  const int k = noise.size();

  // Baseline noise sets are derived from (seed, trial) alone, so results do
  // not depend on the worker count or on scheduling.
  std::vector<double> totals(static_cast<std::size_t>(trials), 0.0);
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(trials));
  parallel_for(trials, workers, [&](int t) {
    try {
      std::mt19937_64 rng(splitmix64(seed ^ (0x5851f42d4c957f2dULL * (t + 1))));
      const NodePairSet sample = random_pair_set(g.n(), g.directed(), k, rng);
      totals[static_cast<std::size_t>(t)] = score(g, sample, param, budget).total;
    } catch (...) {
      errors[static_cast<std::size_t>(t)] = std::current_exception();
    }
  });
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  RandomGain out;
  double sum = 0.0;
  for (double v : totals) sum += v;
  out.baseline_mean = sum / trials;
  if (trials >= 2) {
    double ss = 0.0;
    for (double v : totals) ss += (v - out.baseline_mean) * (v - out.baseline_mean);
    out.baseline_std = std::sqrt(ss / (trials - 1));
  }
  out.gain = subject - out.baseline_mean;
  return out;
}

}  // namespace scheno
