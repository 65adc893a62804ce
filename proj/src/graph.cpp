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

#include "scheno/graph.hpp"

#include <algorithm>

namespace scheno {

namespace {

void check_pair(int a, int b, int n) {
  if (a < 0 || b < 0 || a >= n || b >= n)
    throw std::invalid_argument("node pair (" + std::to_string(a) + "," +
                                std::to_string(b) + ") out of range for n=" +
                                std::to_string(n));
  if (a == b)
    throw std::invalid_argument("self-loop (" + std::to_string(a) + "," +
                                std::to_string(b) + ") not allowed");
}

std::vector<NodePair> canonicalize(int n, bool directed,
                                   std::vector<NodePair> pairs) {
  for (auto& e : pairs) {
    check_pair(e.first, e.second, n);
    e = canonical_pair(e.first, e.second, directed);
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

}  // namespace

NodePair canonical_pair(int a, int b, bool directed) {
  if (!directed && a > b) std::swap(a, b);
  return {a, b};
}

std::int64_t pair_count(int n, bool directed) {
  std::int64_t nn = n;
  return directed ? nn * (nn - 1) : nn * (nn - 1) / 2;
}

std::int64_t pair_to_index(const NodePair& e, int n, bool directed) {
  std::int64_t a = e.first, b = e.second;
  if (directed) return a * (n - 1) + (b > a ? b - 1 : b);
  // a < b: pairs (a, a+1..n-1) laid out consecutively
  return a * n - a * (a + 1) / 2 + (b - a - 1);
}

NodePair index_to_pair(std::int64_t idx, int n, bool directed) {
  if (idx < 0 || idx >= pair_count(n, directed))
    throw std::out_of_range("pair index out of range");
  if (directed) {
    int a = static_cast<int>(idx / (n - 1));
    int b = static_cast<int>(idx % (n - 1));
    if (b >= a) ++b;
    return {a, b};
  }
  int a = 0;
  std::int64_t row = n - 1;
  while (idx >= row) {
    idx -= row;
    --row;
    ++a;
  }
  return {a, a + 1 + static_cast<int>(idx)};
}

NodePairSet::NodePairSet(int n, bool directed, std::vector<NodePair> pairs)
    : n_(n), directed_(directed), pairs_(canonicalize(n, directed, std::move(pairs))) {}

bool NodePairSet::contains(const NodePair& e) const {
  NodePair c = canonical_pair(e.first, e.second, directed_);
  return std::binary_search(pairs_.begin(), pairs_.end(), c);
}

Graph::Graph(int n, bool directed, std::vector<NodePair> edges)
    : n_(n), directed_(directed), edges_(canonicalize(n, directed, std::move(edges))) {
  if (n < 0) throw std::invalid_argument("negative node count");
  out_.resize(n);
  if (directed_) in_.resize(n);
  for (const auto& [a, b] : edges_) {
    out_[a].push_back(b);
    if (directed_)
      in_[b].push_back(a);
    else
      out_[b].push_back(a);
  }
  for (auto& v : out_) std::sort(v.begin(), v.end());
  for (auto& v : in_) std::sort(v.begin(), v.end());
}

bool Graph::has_edge(int a, int b) const {
  if (a < 0 || b < 0 || a >= n_ || b >= n_ || a == b) return false;
  NodePair c = canonical_pair(a, b, directed_);
  const auto& nb = out_[c.first];
  return std::binary_search(nb.begin(), nb.end(), c.second);
}

NodePairSet Graph::edge_set() const { return NodePairSet(n_, directed_, edges_); }

ColoredGraph::ColoredGraph(Graph g)
    : graph(std::move(g)), colors(graph.n(), 0) {}

ColoredGraph::ColoredGraph(Graph g, std::vector<int> cols)
    : graph(std::move(g)), colors(std::move(cols)) {
  if (static_cast<int>(colors.size()) != graph.n())
    throw std::invalid_argument("color vector size does not match node count");
}

Graph xor_apply(const Graph& g, const NodePairSet& noise) {
  if (noise.n() != g.n() || noise.directed() != g.directed())
    throw std::invalid_argument("noise set incompatible with graph");
  std::vector<NodePair> result;
  result.reserve(g.edges().size() + noise.pairs().size());
  // both inputs sorted: symmetric difference by merge
  std::set_symmetric_difference(g.edges().begin(), g.edges().end(),
                                noise.pairs().begin(), noise.pairs().end(),
                                std::back_inserter(result));
  return Graph(g.n(), g.directed(), std::move(result));
}

NoiseSplit split_noise(const Graph& g, const NodePairSet& noise) {
  if (noise.n() != g.n() || noise.directed() != g.directed())
    throw std::invalid_argument("noise set incompatible with graph");
  std::vector<NodePair> added, deleted;
  for (const auto& e : noise.pairs()) {
    if (g.has_edge(e.first, e.second))
      deleted.push_back(e);
    else
      added.push_back(e);
  }
  return {NodePairSet(g.n(), g.directed(), std::move(added)),
          NodePairSet(g.n(), g.directed(), std::move(deleted))};
}

bool is_permutation(const Permutation& f) {
  std::vector<char> seen(f.size(), 0);
  for (int v : f) {
    if (v < 0 || v >= static_cast<int>(f.size()) || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

Permutation inverse_permutation(const Permutation& f) {
  Permutation inv(f.size());
  for (size_t i = 0; i < f.size(); ++i) inv[f[i]] = static_cast<int>(i);
  return inv;
}

Graph apply_permutation(const Graph& g, const Permutation& f) {
  if (static_cast<int>(f.size()) != g.n() || !is_permutation(f))
    throw std::invalid_argument("invalid permutation for graph");
  std::vector<NodePair> edges;
  edges.reserve(g.edges().size());
  for (const auto& [a, b] : g.edges()) edges.emplace_back(f[a], f[b]);
  return Graph(g.n(), g.directed(), std::move(edges));
}

NodePairSet apply_permutation(const NodePairSet& x, const Permutation& f) {
  if (static_cast<int>(f.size()) != x.n() || !is_permutation(f))
    throw std::invalid_argument("invalid permutation for pair set");
  std::vector<NodePair> pairs;
  pairs.reserve(x.pairs().size());
  for (const auto& [a, b] : x.pairs()) pairs.emplace_back(f[a], f[b]);
  return NodePairSet(x.n(), x.directed(), std::move(pairs));
}

}  // namespace scheno
