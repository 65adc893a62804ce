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
//
// Individualization-refinement backtracking, counting |Aut| through the
// orbit-stabilizer factor chain: along the first root-to-leaf path the
// search fixes base nodes b_0, b_1, ...; at each level the orbit of b_l
// under the stabilizer of the earlier base nodes is established by explicit
// existence searches, and |Aut| is the product of those orbit sizes.
// Non-first branches are pruned by refinement-trace comparison (sound: a
// diverging trace cannot host an aligned automorphism) and by orbits of the
// generators discovered so far.

#include "scheno/automorphisms.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <deque>
#include <numeric>

namespace scheno {

double log2_big(const BigInt& v) {
  if (v <= 0) throw std::invalid_argument("log2 of non-positive value");
  unsigned bits = boost::multiprecision::msb(v);
  if (bits <= 52) return std::log2(v.convert_to<double>());
  BigInt top = v >> (bits - 52);
  return std::log2(top.convert_to<double>()) + static_cast<double>(bits - 52);
}

namespace {

// flattened adjacency; undirected graphs use only `out`
struct Csr {
  int n = 0;
  bool directed = false;
  std::vector<int> out_off, out_nbr;
  std::vector<int> in_off, in_nbr;

  static Csr build(const Graph& g) {
    Csr c;
    c.n = g.n();
    c.directed = g.directed();
    c.out_off.assign(c.n + 1, 0);
    for (int v = 0; v < c.n; ++v) c.out_off[v + 1] = c.out_off[v] + static_cast<int>(g.neighbors(v).size());
    c.out_nbr.reserve(c.out_off[c.n]);
    for (int v = 0; v < c.n; ++v)
      c.out_nbr.insert(c.out_nbr.end(), g.neighbors(v).begin(), g.neighbors(v).end());
    if (c.directed) {
      c.in_off.assign(c.n + 1, 0);
      for (int v = 0; v < c.n; ++v) c.in_off[v + 1] = c.in_off[v] + static_cast<int>(g.in_neighbors(v).size());
      c.in_nbr.reserve(c.in_off[c.n]);
      for (int v = 0; v < c.n; ++v)
        c.in_nbr.insert(c.in_nbr.end(), g.in_neighbors(v).begin(), g.in_neighbors(v).end());
    }
    return c;
  }
};

struct Partition {
  std::vector<int> elems;   // nodes in cell order
  std::vector<int> pos;     // pos[v]: index of v in elems
  std::vector<int> cstart;  // per position: start position of its cell
  std::vector<int> clen;    // per position: cell length, valid at cell starts
  int ncells = 0;

  bool discrete(int n) const { return ncells == n; }
};

// One refinement pass to the stable (equitable) partition. Every split is
// appended to a trace; when `expect` is set the emitted trace is compared
// against it instead and refinement aborts on the first mismatch.
class Refiner {
 public:
  explicit Refiner(const Csr& g) : g_(g), n_(g.n), key_(g.n, 0), keyed_(g.n, 0), inq_(g.n, 0) {}

  // queue must be pre-seeded via push(). Returns false on trace mismatch.
  bool run(Partition& p, std::vector<std::uint64_t>* record,
           const std::vector<std::uint64_t>* expect) {
    record_ = record;
    expect_ = expect;
    ei_ = 0;
    bool ok = true;
    while (!queue_.empty()) {
      int s = queue_.front();
      queue_.pop_front();
      inq_[s] = 0;
      if (p.discrete(n_)) continue;  // drain queue flags, nothing to split
      if (!split_by(p, s)) {
        ok = false;
        break;
      }
    }
    if (!ok) {
      while (!queue_.empty()) {
        inq_[queue_.front()] = 0;
        queue_.pop_front();
      }
      return false;
    }
    if (expect_) return ei_ == expect_->size();
    return true;
  }

  void push(int cell_start) {
    if (!inq_[cell_start]) {
      inq_[cell_start] = 1;
      queue_.push_back(cell_start);
    }
  }

 private:
  bool emit(std::uint64_t v) {
    if (expect_) {
      if (ei_ >= expect_->size() || (*expect_)[ei_] != v) return false;
      ++ei_;
    } else if (record_) {
      record_->push_back(v);
    }
    return true;
  }

  bool split_by(Partition& p, int s) {
    int len = p.clen[s];
    splitter_.assign(p.elems.begin() + s, p.elems.begin() + s + len);
    touched_.clear();
    dirty_.clear();
    auto bump = [&](int v, std::int64_t delta) {
      if (!keyed_[v]) {
        keyed_[v] = 1;
        key_[v] = 0;
        dirty_.push_back(v);
      }
      key_[v] += delta;
    };
    if (!g_.directed) {
      for (int u : splitter_)
        for (int i = g_.out_off[u]; i < g_.out_off[u + 1]; ++i) bump(g_.out_nbr[i], 1);
    } else {
      // key packs (#edges v->S, #edges S->v)
      for (int u : splitter_) {
        for (int i = g_.in_off[u]; i < g_.in_off[u + 1]; ++i) bump(g_.in_nbr[i], std::int64_t(1) << 32);
        for (int i = g_.out_off[u]; i < g_.out_off[u + 1]; ++i) bump(g_.out_nbr[i], 1);
      }
    }
    for (int v : dirty_) {
      int c = p.cstart[p.pos[v]];
      if (p.clen[c] > 1 && !inq_touch(c)) touched_.push_back(c);
    }
    std::sort(touched_.begin(), touched_.end());
    bool ok = true;
    for (int c : touched_) {
      if (!split_cell(p, c)) {
        ok = false;
        break;
      }
    }
    for (int v : dirty_) keyed_[v] = 0;
    for (int c : touched_) touch_flag_[c] = 0;
    return ok;
  }

  bool inq_touch(int c) {
    if (touch_flag_.size() != static_cast<size_t>(n_)) touch_flag_.assign(n_, 0);
    if (touch_flag_[c]) return true;
    touch_flag_[c] = 1;
    return false;
  }

  bool split_cell(Partition& p, int c) {
    int len = p.clen[c];
    members_.clear();
    bool uniform = true;
    std::int64_t first_key = keyed_[p.elems[c]] ? key_[p.elems[c]] : 0;
    for (int q = c; q < c + len; ++q) {
      int v = p.elems[q];
      std::int64_t k = keyed_[v] ? key_[v] : 0;
      if (k != first_key) uniform = false;
      members_.push_back({k, v});
    }
    if (uniform) return true;
    std::stable_sort(members_.begin(), members_.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    // fragment boundaries
    if (!emit(static_cast<std::uint64_t>(c))) return false;
    int q = c;
    for (size_t i = 0; i < members_.size();) {
      size_t j = i;
      while (j < members_.size() && members_[j].first == members_[i].first) ++j;
      int frag_start = c + static_cast<int>(i);
      int frag_len = static_cast<int>(j - i);
      if (!emit(static_cast<std::uint64_t>(members_[i].first))) return false;
      if (!emit(static_cast<std::uint64_t>(frag_len))) return false;
      for (size_t t = i; t < j; ++t, ++q) {
        int v = members_[t].second;
        p.elems[q] = v;
        p.pos[v] = q;
        p.cstart[q] = frag_start;
      }
      p.clen[frag_start] = frag_len;
      push(frag_start);
      if (i > 0) ++p.ncells;
      i = j;
    }
    if (!emit(std::uint64_t(0xffffffffu))) return false;  // event terminator
    return true;
  }

  const Csr& g_;
  int n_;
  std::vector<std::int64_t> key_;
  std::vector<char> keyed_;
  std::vector<char> inq_;
  std::vector<char> touch_flag_;
  std::deque<int> queue_;
  std::vector<int> splitter_, touched_, dirty_;
  std::vector<std::pair<std::int64_t, int>> members_;

  std::vector<std::uint64_t>* record_ = nullptr;
  const std::vector<std::uint64_t>* expect_ = nullptr;
  size_t ei_ = 0;
};

class Searcher {
 public:
  Searcher(const Csr& g, const std::vector<int>& colors, SearchBudget budget)
      : g_(g), n_(g.n), colors_(colors), budget_(budget), refiner_(g), uf_(g.n) {
    std::iota(uf_.begin(), uf_.end(), 0);
  }

  AutomorphismReport run() {
    Partition p = initial_partition();
    refiner_.run(p, nullptr, nullptr);
    descend_first_path(p);
    AutomorphismReport rep;
    for (int l = static_cast<int>(levels_.size()) - 1; l >= 0; --l) {
      std::uint64_t f = process_level(l);
      if (f > 1) rep.factors.push_back(f);
    }
    std::reverse(rep.factors.begin(), rep.factors.end());  // root level first
    for (std::uint64_t f : rep.factors) {
      rep.exact_count *= f;
      rep.log2_count += std::log2(static_cast<double>(f));
    }
    rep.nodes_visited = nodes_;
    return rep;
  }

 private:
  struct Level {
    Partition snap;  // before individualization
    int cell_start = 0, cell_len = 0;
    int b = 0;
    std::vector<std::uint64_t> trace;
  };

  Partition initial_partition() {
    Partition p;
    p.elems.resize(n_);
    std::iota(p.elems.begin(), p.elems.end(), 0);
    std::stable_sort(p.elems.begin(), p.elems.end(),
                     [&](int a, int b) { return colors_[a] < colors_[b]; });
    p.pos.resize(n_);
    p.cstart.resize(n_);
    p.clen.assign(n_, 0);
    p.ncells = 0;
    int i = 0;
    while (i < n_) {
      int j = i;
      while (j < n_ && colors_[p.elems[j]] == colors_[p.elems[i]]) ++j;
      for (int q = i; q < j; ++q) {
        p.pos[p.elems[q]] = q;
        p.cstart[q] = i;
      }
      p.clen[i] = j - i;
      ++p.ncells;
      refiner_.push(i);
      i = j;
    }
    return p;
  }

  // smallest non-singleton cell; ties broken by lowest start position
  int target_cell(const Partition& p) const {
    int best = -1, best_len = n_ + 1;
    for (int s = 0; s < n_; s += p.clen[s]) {
      int len = p.clen[s];
      if (len > 1 && len < best_len) {
        best = s;
        best_len = len;
      }
    }
    return best;
  }

  void charge_node() {
    if (++nodes_ > budget_.max_nodes) throw BudgetError(nodes_);
  }

  void individualize(Partition& p, int v) {
    int s = p.cstart[p.pos[v]];
    int len = p.clen[s];
    int pv = p.pos[v];
    std::swap(p.elems[s], p.elems[pv]);
    p.pos[p.elems[pv]] = pv;
    p.pos[v] = s;
    p.clen[s] = 1;
    p.cstart[s] = s;
    for (int q = s + 1; q < s + len; ++q) p.cstart[q] = s + 1;
    p.clen[s + 1] = len - 1;
    ++p.ncells;
    refiner_.push(s);
    refiner_.push(s + 1);
  }

  void descend_first_path(Partition p) {
    while (!p.discrete(n_)) {
      int s = target_cell(p);
      Level lv;
      lv.snap = p;
      lv.cell_start = s;
      lv.cell_len = p.clen[s];
      lv.b = p.elems[s];
      levels_.push_back(std::move(lv));
      charge_node();
      individualize(p, levels_.back().b);
      refiner_.run(p, &levels_.back().trace, nullptr);
    }
    first_leaf_ = p.elems;
  }

  std::uint64_t process_level(int l) {
    const Level& lv = levels_[l];
    // cell membership is frozen in the snapshot; the orbit of b lies inside it
    std::vector<int> cell(lv.snap.elems.begin() + lv.cell_start,
                          lv.snap.elems.begin() + lv.cell_start + lv.cell_len);
    std::vector<int> failed;
    for (int w : cell) {
      if (w == lv.b) continue;
      if (find(w) == find(lv.b)) continue;  // already known to be in the orbit
      bool skip = false;
      for (int f : failed)
        if (find(f) == find(w)) {
          skip = true;
          break;
        }
      if (skip) continue;
      if (!try_map(l, w)) failed.push_back(w);
    }
    std::uint64_t orbit = 0;
    for (int w : cell)
      if (find(w) == find(lv.b)) ++orbit;
    return orbit;
  }

  bool try_map(int l, int w) {
    Partition p = levels_[l].snap;
    charge_node();
    individualize(p, w);
    if (!refiner_.run(p, nullptr, &levels_[l].trace)) return false;
    return exists_leaf(l + 1, p);
  }

  bool exists_leaf(size_t depth, Partition& p) {
    if (depth == levels_.size()) {
      return check_leaf(p);
    }
    const Level& lv = levels_[depth];
    // matching traces imply matching shapes, so the target cell sits at the
    // same start position as on the first path
    if (p.clen[lv.cell_start] != lv.cell_len) return false;
    std::vector<int> cell(p.elems.begin() + lv.cell_start,
                          p.elems.begin() + lv.cell_start + lv.cell_len);
    for (int u : cell) {
      Partition child = p;
      charge_node();
      individualize(child, u);
      if (refiner_.run(child, nullptr, &lv.trace) && exists_leaf(depth + 1, child))
        return true;
    }
    return false;
  }

  bool check_leaf(const Partition& p) {
    if (!p.discrete(n_)) return false;
    perm_.resize(n_);
    for (int i = 0; i < n_; ++i) perm_[first_leaf_[i]] = p.elems[i];
    if (!is_automorphism(perm_)) return false;
    for (int v = 0; v < n_; ++v) unite(v, perm_[v]);
    return true;
  }

  bool is_automorphism(const std::vector<int>& f) const {
    for (int v = 0; v < n_; ++v)
      if (colors_[v] != colors_[f[v]]) return false;
    for (int v = 0; v < n_; ++v) {
      int fv = f[v];
      if (g_.out_off[v + 1] - g_.out_off[v] != g_.out_off[fv + 1] - g_.out_off[fv]) return false;
      for (int i = g_.out_off[v]; i < g_.out_off[v + 1]; ++i) {
        int u = g_.out_nbr[i];
        if (!has_arc(fv, f[u])) return false;
      }
    }
    return true;
  }

  bool has_arc(int a, int b) const {
    auto begin = g_.out_nbr.begin() + g_.out_off[a];
    auto end = g_.out_nbr.begin() + g_.out_off[a + 1];
    return std::binary_search(begin, end, b);
  }

  int find(int v) {
    while (uf_[v] != v) {
      uf_[v] = uf_[uf_[v]];
      v = uf_[v];
    }
    return v;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) uf_[a] = b;
  }

  const Csr& g_;
  int n_;
  const std::vector<int>& colors_;
  SearchBudget budget_;
  Refiner refiner_;
  std::vector<int> uf_;
  std::vector<Level> levels_;
  std::vector<int> first_leaf_;
  std::vector<int> perm_;
  std::uint64_t nodes_ = 0;
};

std::vector<int> normalized_colors(const std::vector<int>& colors) {
  std::vector<int> sorted(colors);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> out(colors.size());
  for (size_t i = 0; i < colors.size(); ++i)
    out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), colors[i]) - sorted.begin());
  return out;
}

}  // namespace

AutomorphismReport count_automorphisms(const ColoredGraph& g, SearchBudget budget) {
  if (g.graph.n() == 0) return {};
  Csr csr = Csr::build(g.graph);
  std::vector<int> colors = normalized_colors(g.colors);
  Searcher s(csr, colors, budget);
  return s.run();
}

AutomorphismReport count_automorphisms(const Graph& g, SearchBudget budget) {
  return count_automorphisms(ColoredGraph(g), budget);
}

AutomorphismReport stabilizer_count(const Graph& g, const NodePairSet& added,
                                    const NodePairSet& deleted, SearchBudget budget) {
  if (added.n() != g.n() || added.directed() != g.directed() ||
      deleted.n() != g.n() || deleted.directed() != g.directed())
    throw std::invalid_argument("pair sets incompatible with graph");
  for (const auto& e : added.pairs())
    if (deleted.contains(e)) throw std::invalid_argument("added and deleted pair sets overlap");

  // allEdges = E u added u deleted with one status per pair
  enum Status { kAdded = 0, kDeleted = 1, kUnmodified = 2 };
  std::vector<std::pair<NodePair, Status>> all;
  for (const auto& e : added.pairs()) all.push_back({e, kAdded});
  for (const auto& e : deleted.pairs())
    if (!added.contains(e)) all.push_back({e, kDeleted});
  for (const auto& e : g.edges())
    if (!added.contains(e) && !deleted.contains(e)) all.push_back({e, kUnmodified});

  int n = g.n();
  std::vector<NodePair> aug_edges;
  std::vector<int> colors;
  int aug_n;
  if (!g.directed()) {
    aug_n = n + static_cast<int>(all.size());
    colors.assign(aug_n, 0);
    int x = n;
    for (const auto& [e, st] : all) {
      colors[x] = 1 + st;
      aug_edges.push_back({e.first, x});
      aug_edges.push_back({x, e.second});
      ++x;
    }
  } else {
    // chain a -> c1 -> c2 -> b; colors encode chain position x status
    aug_n = n + 2 * static_cast<int>(all.size());
    colors.assign(aug_n, 0);
    int x = n;
    for (const auto& [e, st] : all) {
      colors[x] = 1 + st;
      colors[x + 1] = 4 + st;
      aug_edges.push_back({e.first, x});
      aug_edges.push_back({x, x + 1});
      aug_edges.push_back({x + 1, e.second});
      x += 2;
    }
  }
  Graph aug(aug_n, g.directed(), std::move(aug_edges));
  return count_automorphisms(ColoredGraph(std::move(aug), std::move(colors)), budget);
}

OrbitReport orbit_size_of_pair_set(const Graph& g, const NodePairSet& x, SearchBudget budget) {
  OrbitReport rep;
  rep.aut = count_automorphisms(g, budget);
  if (x.empty() || rep.aut.exact_count == 1) {
    rep.stab = rep.aut;
    rep.exact_orbit = 1;
    rep.log2_orbit = 0.0;
    return rep;
  }
  NoiseSplit split = split_noise(g, x);
  rep.stab = stabilizer_count(g, split.added, split.deleted, budget);
  BigInt rem;
  divide_qr(rep.aut.exact_count, rep.stab.exact_count, rep.exact_orbit, rem);
  if (rem != 0)
    throw std::logic_error("orbit-stabilizer mismatch: |Stab| does not divide |Aut|");
  rep.log2_orbit = rep.aut.log2_count - rep.stab.log2_count;
  return rep;
}

std::uint64_t brute_force_aut(const ColoredGraph& g) {
  int n = g.graph.n();
  if (n > 9) throw std::invalid_argument("brute_force_aut limited to n <= 9");
  if (n == 0) return 1;
  std::vector<int> f(n);
  std::iota(f.begin(), f.end(), 0);
  std::uint64_t count = 0;
  do {
    bool ok = true;
    for (int v = 0; v < n && ok; ++v)
      if (g.colors[v] != g.colors[f[v]]) ok = false;
    for (int v = 0; v < n && ok; ++v) {
      for (int u : g.graph.neighbors(v)) {
        if (!g.graph.directed() && u < v) continue;
        if (!g.graph.has_edge(f[v], f[u])) {
          ok = false;
          break;
        }
      }
    }
    if (ok) ++count;
  } while (std::next_permutation(f.begin(), f.end()));
  return count;
}

std::uint64_t brute_force_aut(const Graph& g) { return brute_force_aut(ColoredGraph(g)); }

}  // namespace scheno
