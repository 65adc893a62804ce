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
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "scheno/metric.hpp"

namespace scheno {

namespace {

// Sum over isomorphism classes of |Aut|, exact values.
// Undirected n = 1..9, directed n = 1..5. Regenerate with
// sum_aut_exact_pairs; cross-checked against sum_aut_exact where both apply.
constexpr std::uint64_t kSumAutUndirected[] = {1,     4,     16,     90,     460,
                                               3064, 20448, 170510, 1742276};
constexpr std::uint64_t kSumAutDirected[] = {1, 5, 34, 400, 12276};

double log2_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0) / std::log(2.0); }

std::uint64_t factorial_u64(int n) {
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

// Permutation action on pair slots: slot i -> slot of the image pair.
std::vector<int> slot_permutation(const Permutation& f, int n, bool directed) {
  const std::int64_t m = pair_count(n, directed);
  std::vector<int> sp(static_cast<std::size_t>(m));
  for (std::int64_t i = 0; i < m; ++i) {
    NodePair pr = index_to_pair(i, n, directed);
    NodePair img = canonical_pair(f[pr.first], f[pr.second], directed);
    sp[static_cast<std::size_t>(i)] = static_cast<int>(pair_to_index(img, n, directed));
  }
  return sp;
}

// All partitions of n into non-increasing parts.
void partitions_rec(int rest, int max_part, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
  if (rest == 0) {
    out.push_back(cur);
    return;
  }
  for (int part = std::min(rest, max_part); part >= 1; --part) {
    cur.push_back(part);
    partitions_rec(rest - part, part, cur, out);
    cur.pop_back();
  }
}

// Size of the conjugacy class with cycle type lambda: n! / (prod m_j! j^m_j).
std::uint64_t conjugacy_class_size(const std::vector<int>& lambda, int n) {
  std::uint64_t z = 1;
  std::size_t i = 0;
  while (i < lambda.size()) {
    std::size_t j = i;
    while (j < lambda.size() && lambda[j] == lambda[i]) ++j;
    const std::uint64_t mult = j - i;
    for (std::uint64_t k = 1; k <= mult; ++k) z *= k;
    for (std::uint64_t k = 0; k < mult; ++k) z *= static_cast<std::uint64_t>(lambda[i]);
    i = j;
  }
  return factorial_u64(n) / z;
}

Permutation permutation_of_cycle_type(const std::vector<int>& lambda) {
  Permutation f;
  int base = 0;
  for (int part : lambda) {
    for (int k = 0; k < part; ++k) f.push_back(base + (k + 1) % part);
    base += part;
  }
  return f;
}

int uf_find(std::vector<int>& uf, int x) {
  while (uf[x] != x) {
    uf[x] = uf[uf[x]];
    x = uf[x];
  }
  return x;
}

}  // namespace

int sum_aut_table_max_n(bool directed) { return directed ? 5 : 9; }

SumAutValue sum_aut_table(int n, bool directed) {
  if (n < 1 || n > sum_aut_table_max_n(directed))
    throw std::invalid_argument("sum_aut_table: n=" + std::to_string(n) + " outside table range");
  const std::uint64_t v = directed ? kSumAutDirected[n - 1] : kSumAutUndirected[n - 1];
  SumAutValue out;
  out.n = n;
  out.directed = directed;
  out.exact = BigInt(v);
  out.log2_sum = std::log2(static_cast<double>(v));
  return out;
}

SumAutValue sum_aut_exact(int n, bool directed) {
  const int max_n = directed ? 5 : 7;
  if (n < 1 || n > max_n)
    throw std::invalid_argument("sum_aut_exact: n=" + std::to_string(n) +
                                " infeasible for labeled enumeration");
  const int m = static_cast<int>(pair_count(n, directed));
  // counts[g] accumulates |Aut(g)| over all labeled graphs g (bitmask over
  // pair slots): each permutation contributes 1 to every graph it fixes, and
  // the fixed graphs of f are exactly the unions of f's slot cycles.
  std::vector<std::uint32_t> counts(std::size_t{1} << m, 0);
  Permutation f(static_cast<std::size_t>(n));
  std::iota(f.begin(), f.end(), 0);
  do {
    std::vector<int> sp = slot_permutation(f, n, directed);
    std::vector<std::uint32_t> cycle_masks;
    std::vector<bool> seen(sp.size(), false);
    for (std::size_t s = 0; s < sp.size(); ++s) {
      if (seen[s]) continue;
      std::uint32_t mask = 0;
      std::size_t t = s;
      while (!seen[t]) {
        seen[t] = true;
        mask |= std::uint32_t{1} << t;
        t = static_cast<std::size_t>(sp[t]);
      }
      cycle_masks.push_back(mask);
    }
    // Gray-code walk over unions of cycles (disjoint, so xor = union).
    const std::size_t k = cycle_masks.size();
    std::uint32_t g = 0;
    ++counts[g];
    for (std::uint64_t s = 1; s < (std::uint64_t{1} << k); ++s) {
      g ^= cycle_masks[static_cast<std::size_t>(std::countr_zero(s))];
      ++counts[g];
    }
  } while (std::next_permutation(f.begin(), f.end()));

  // Within one isomorphism class, each of the n!/|Aut| labelings has the same
  // |Aut|, so sum over labeled graphs of |Aut|^2 equals n! * sum of class |Aut|.
  std::uint64_t sum_sq = 0;
  for (std::uint32_t c : counts) sum_sq += static_cast<std::uint64_t>(c) * c;
  const std::uint64_t nf = factorial_u64(n);
  if (sum_sq % nf != 0) throw std::logic_error("sum_aut_exact: inexact division");
  const std::uint64_t total = sum_sq / nf;
  SumAutValue out;
  out.n = n;
  out.directed = directed;
  out.exact = BigInt(total);
  out.log2_sum = std::log2(static_cast<double>(total));
  return out;
}

SumAutValue sum_aut_exact_pairs(int n, bool directed) {
  const int max_n = directed ? 6 : 9;
  if (n < 1 || n > max_n)
    throw std::invalid_argument("sum_aut_exact_pairs: n=" + std::to_string(n) +
                                " infeasible for pair enumeration");
  const int m = static_cast<int>(pair_count(n, directed));
  std::vector<std::vector<int>> lambdas;
  std::vector<int> cur;
  partitions_rec(n, n, cur, lambdas);

  // sum over classes of |Aut| = (1/n!) sum_{f,h} |{g : f,h in Aut(g)}|
  // and the common fixed graphs of f,h are unions of <f,h>-orbits on slots.
  // f is reduced to one representative per conjugacy class.
  std::uint64_t total = 0;
  std::vector<int> uf(static_cast<std::size_t>(m));
  Permutation h(static_cast<std::size_t>(n));
  for (const auto& lambda : lambdas) {
    const Permutation f = permutation_of_cycle_type(lambda);
    const std::vector<int> fs = slot_permutation(f, n, directed);
    std::uint64_t inner = 0;
    std::iota(h.begin(), h.end(), 0);
    do {
      const std::vector<int> hs = slot_permutation(h, n, directed);
      std::iota(uf.begin(), uf.end(), 0);
      for (int i = 0; i < m; ++i) {
        int a = uf_find(uf, i), b = uf_find(uf, fs[static_cast<std::size_t>(i)]);
        if (a != b) uf[a] = b;
        a = uf_find(uf, i);
        b = uf_find(uf, hs[static_cast<std::size_t>(i)]);
        if (a != b) uf[a] = b;
      }
      int orbits = 0;
      for (int i = 0; i < m; ++i)
        if (uf_find(uf, i) == i) ++orbits;
      inner += std::uint64_t{1} << orbits;
    } while (std::next_permutation(h.begin(), h.end()));
    total += conjugacy_class_size(lambda, n) * inner;
  }
  const std::uint64_t nf = factorial_u64(n);
  if (total % nf != 0) throw std::logic_error("sum_aut_exact_pairs: inexact division");
  total /= nf;
  SumAutValue out;
  out.n = n;
  out.directed = directed;
  out.exact = BigInt(total);
  out.log2_sum = std::log2(static_cast<double>(total));
  return out;
}

SumAutValue sum_aut_estimate(int n, bool directed) {
  if (n < 1) throw std::invalid_argument("sum_aut_estimate: n must be positive");
  const double nd = static_cast<double>(n);
  const double m = static_cast<double>(pair_count(n, directed));
  // Series bracket: 1 + [transpositions] + [double transpositions]; the
  // remaining terms vanish faster and are dropped. The quartic product is
  // computed in doubles so large n cannot overflow; oversized exp2 arguments
  // saturate to inf and the affected term cleanly underflows to zero.
  double bracket = 1.0;
  bracket += nd * (nd - 1.0) / std::exp2(directed ? 2.0 * nd - 2.0 : nd - 1.0);
  if (n >= 4) {
    const double quad = nd * (nd - 1.0) * (nd - 2.0) * (nd - 3.0);
    const double ratio = (3.0 * nd - 7.0) / (3.0 * nd - 9.0);
    bracket += quad * ratio / std::exp2(directed ? 4.0 * nd - 7.0 : 2.0 * nd - 3.0);
  }
  SumAutValue out;
  out.n = n;
  out.directed = directed;
  out.log2_sum = m - log2_factorial(n) + 2.0 * std::log2(bracket);
  return out;
}

NoiseParam choose_p(int n, bool directed) {
  if (n < 2) throw std::invalid_argument("choose_p: need n >= 2");
  const SumAutValue s =
      n <= sum_aut_table_max_n(directed) ? sum_aut_table(n, directed) : sum_aut_estimate(n, directed);
  const double m = static_cast<double>(pair_count(n, directed));
  NoiseParam param;
  param.n = n;
  param.directed = directed;
  param.source = s.exact.has_value() ? NoiseParam::Source::kExactTable
                                     : NoiseParam::Source::kAsymptoticEstimate;
  param.log2_1mp = (log2_factorial(n) - s.log2_sum) / m;
  param.p = 1.0 - std::exp2(param.log2_1mp);
  if (!(param.p > 0.0) || !(param.p <= 0.5))
    throw std::logic_error("choose_p: parameter " + std::to_string(param.p) +
                           " outside (0, 1/2] for n=" + std::to_string(n));
  param.log2_p = std::log2(param.p);
  return param;
}

}  // namespace scheno
