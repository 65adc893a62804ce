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
#include <string>

#include "scheno/automorphisms.hpp"
#include "scheno/graph.hpp"

namespace scheno {

// Sum over isomorphism classes of n-node graphs of |Aut(class)|.
struct SumAutValue {
  int n = 0;
  bool directed = false;
  double log2_sum = 0.0;
  std::optional<BigInt> exact;
};

// Range of the shipped table. The undirected range runs to 9 because the
// asymptotic estimate is still unusable there: it yields p <= 0 at n = 8
// and 9 (the series bracket badly underestimates the sum at small n).
int sum_aut_table_max_n(bool directed);

// Exact value by enumerating all labeled graphs and summing |Aut(g)|^2 / n!.
// Feasible range: n <= 7 undirected, n <= 5 directed; errors above.
SumAutValue sum_aut_exact(int n, bool directed);

// Independent exact method: sum over permutation pairs (f, h) of
// 2^{orbits of <f,h> on pair slots} / n!, with f reduced to conjugacy
// classes. Reaches n = 9 undirected / n = 6 directed in seconds; used to
// generate the shipped table and to cross-check sum_aut_exact.
SumAutValue sum_aut_exact_pairs(int n, bool directed);

// Shipped table lookup (undirected n <= 9, directed n <= 5); errors outside.
SumAutValue sum_aut_table(int n, bool directed);

// Asymptotic estimate: Sum|Aut| ~ (2^M / n!) * bracket^2 with the Harary
// series bracket. Only accurate for n beyond the exact table range; the
// series underestimates badly at small n (see docs/README).
SumAutValue sum_aut_estimate(int n, bool directed);

// Noise probability for an (n, directedness) universe, fixed by equating the
// all-structure and all-noise hypotheses: log2(1-p) = (log2 n! - log2 S)/M.
// 0 < p <= 1/2, with equality only at the degenerate point n=2 undirected
// where the two 2-node graph classes are equally symmetric.
struct NoiseParam {
  int n = 0;
  bool directed = false;
  double p = 0.0;
  double log2_p = 0.0;
  double log2_1mp = 0.0;
  enum class Source { kExactTable, kAsymptoticEstimate } source = Source::kExactTable;
};

NoiseParam choose_p(int n, bool directed);

struct ScoreBreakdown {
  double log2_aut_H = 0.0;
  double log2_orbit_N = 0.0;
  int noise_size = 0;
  std::int64_t M = 0;
  double noise_term = 0.0;  // |N| log2 p + (M - |N|) log2(1-p)
  double total = 0.0;       // log2_aut_H + log2_orbit_N + noise_term
  BigInt aut_exact = 1;
  BigInt orbit_exact = 1;
};

// total = log2|Aut(H)| + log2|AO_H(N)| + |N| log2 p + (M-|N|) log2(1-p),
// with H = G xor N.
ScoreBreakdown score(const Graph& g, const NodePairSet& noise, const NoiseParam& param,
                     SearchBudget budget = {});

struct Decomposition {
  Graph graph;
  NodePairSet noise;
  Graph schema;  // xor_apply(graph, noise)
  ScoreBreakdown breakdown;
};

Decomposition make_decomposition(const Graph& g, const NodePairSet& noise,
                                 const NoiseParam& param, SearchBudget budget = {});

// score(g, noise) - score(g, empty), in bits.
double gain_over_all_structure(const Graph& g, const NodePairSet& noise,
                               const NoiseParam& param, SearchBudget budget = {});

struct RandomGain {
  double gain = 0.0;           // score(g, noise) - baseline_mean
  double baseline_mean = 0.0;  // mean score over random same-size noise sets
  double baseline_std = 0.0;   // sample standard deviation (0 when trials < 2)
};

// Baseline: `trials` noise sets of size |noise| sampled uniformly without
// replacement from all M pairs. Deterministic for a fixed seed; results are
// independent of worker count.
RandomGain gain_over_random(const Graph& g, const NodePairSet& noise, const NoiseParam& param,
                            int trials = 20, std::uint64_t seed = 0,
                            SearchBudget budget = {}, int workers = 1);

}  // namespace scheno
