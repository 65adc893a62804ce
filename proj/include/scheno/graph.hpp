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
#include <string>
#include <utility>
#include <vector>

namespace scheno {

// A node pair. Undirected pairs are always stored with the smaller id first;
// directed pairs keep their order. Self-loops are invalid everywhere.
using NodePair = std::pair<int, int>;

NodePair canonical_pair(int a, int b, bool directed);

// Number of possible node pairs: n(n-1)/2 undirected, n(n-1) directed.
std::int64_t pair_count(int n, bool directed);

// Bijection between canonical pairs and [0, pair_count).
std::int64_t pair_to_index(const NodePair& e, int n, bool directed);
NodePair index_to_pair(std::int64_t idx, int n, bool directed);

// An immutable set of node pairs tied to an (n, directedness) universe.
// Pairs are canonical, sorted, and unique.
class NodePairSet {
 public:
  NodePairSet() = default;
  NodePairSet(int n, bool directed, std::vector<NodePair> pairs);

  int n() const { return n_; }
  bool directed() const { return directed_; }
  int size() const { return static_cast<int>(pairs_.size()); }
  bool empty() const { return pairs_.empty(); }
  bool contains(const NodePair& e) const;
  const std::vector<NodePair>& pairs() const { return pairs_; }

  bool operator==(const NodePairSet& o) const {
    return n_ == o.n_ && directed_ == o.directed_ && pairs_ == o.pairs_;
  }
  bool operator<(const NodePairSet& o) const { return pairs_ < o.pairs_; }

 private:
  int n_ = 0;
  bool directed_ = false;
  std::vector<NodePair> pairs_;
};

// An immutable simple graph, directed or undirected, nodes 0..n-1.
class Graph {
 public:
  Graph() = default;
  Graph(int n, bool directed, std::vector<NodePair> edges);

  int n() const { return n_; }
  bool directed() const { return directed_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<NodePair>& edges() const { return edges_; }
  bool has_edge(int a, int b) const;

  // Out-neighbors for directed graphs, all neighbors for undirected.
  const std::vector<int>& neighbors(int v) const { return out_[v]; }
  const std::vector<int>& in_neighbors(int v) const { return directed_ ? in_[v] : out_[v]; }

  NodePairSet edge_set() const;

  bool operator==(const Graph& o) const {
    return n_ == o.n_ && directed_ == o.directed_ && edges_ == o.edges_;
  }

 private:
  int n_ = 0;
  bool directed_ = false;
  std::vector<NodePair> edges_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;  // directed only; aliases out_ layout otherwise
};

// A graph with a node coloring. Automorphisms must preserve colors.
// Colors may be any ints; only the induced partition matters.
struct ColoredGraph {
  Graph graph;
  std::vector<int> colors;

  ColoredGraph() = default;
  explicit ColoredGraph(Graph g);
  ColoredGraph(Graph g, std::vector<int> cols);
};

// Schema from graph and noise: flips every pair in `noise` (edge <-> non-edge).
// Involution: xor_apply(xor_apply(g, N), N) == g.
Graph xor_apply(const Graph& g, const NodePairSet& noise);

// Partition of a noise set relative to g: `added` pairs are absent from g
// (applying the noise inserts them), `deleted` pairs are edges of g.
struct NoiseSplit {
  NodePairSet added;
  NodePairSet deleted;
};
NoiseSplit split_noise(const Graph& g, const NodePairSet& noise);

using Permutation = std::vector<int>;

bool is_permutation(const Permutation& f);
Permutation inverse_permutation(const Permutation& f);

Graph apply_permutation(const Graph& g, const Permutation& f);
NodePairSet apply_permutation(const NodePairSet& x, const Permutation& f);

}  // namespace scheno
