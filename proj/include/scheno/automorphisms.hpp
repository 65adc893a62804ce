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
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "scheno/graph.hpp"

namespace scheno {

using BigInt = boost::multiprecision::cpp_int;

double log2_big(const BigInt& v);

struct SearchBudget {
  std::uint64_t max_nodes = 10'000'000;  // search tree nodes per counting call
};

// Raised when a counting call exceeds its budget. A partial count is never
// returned: a wrong |Aut| would silently corrupt every downstream score.
class BudgetError : public std::runtime_error {
 public:
  std::uint64_t nodes_used;
  explicit BudgetError(std::uint64_t used)
      : std::runtime_error("automorphism search budget exceeded after " +
                           std::to_string(used) + " nodes"),
        nodes_used(used) {}
};

struct AutomorphismReport {
  // Orbit sizes along the search chain; their product is |Aut|.
  std::vector<std::uint64_t> factors;
  BigInt exact_count = 1;
  double log2_count = 0.0;
  std::uint64_t nodes_visited = 0;
};

// Exact |Aut(g)|. Color-preserving when g carries colors. Deterministic.
AutomorphismReport count_automorphisms(const ColoredGraph& g, SearchBudget budget = {});
AutomorphismReport count_automorphisms(const Graph& g, SearchBudget budget = {});

// |Stab| of a pair set via the augmented-graph construction: allEdges =
// E(g) u added; every pair of allEdges becomes auxiliary node(s) colored by
// status (added / deleted / unmodified). Automorphisms of the augmented
// colored graph correspond exactly to permutations of g's nodes preserving
// all three status classes, i.e. the stabilizer.
AutomorphismReport stabilizer_count(const Graph& g, const NodePairSet& added,
                                    const NodePairSet& deleted,
                                    SearchBudget budget = {});

struct OrbitReport {
  AutomorphismReport aut;   // Aut(g)
  AutomorphismReport stab;  // Stab_g(x)
  BigInt exact_orbit = 1;
  double log2_orbit = 0.0;  // log2|Aut| - log2|Stab|
};

// |AO_g(x)| = |Aut(g)| / |Stab_g(x)| by the orbit-stabilizer theorem.
OrbitReport orbit_size_of_pair_set(const Graph& g, const NodePairSet& x,
                                   SearchBudget budget = {});

// Test oracle: |Aut| by enumerating all n! permutations. n <= 9.
std::uint64_t brute_force_aut(const ColoredGraph& g);
std::uint64_t brute_force_aut(const Graph& g);

}  // namespace scheno
