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

// Compares the serial reference path (workers = 1) against the OpenMP
// scoring farm on one batch of candidate noise sets, and checks that both
// produce bit-identical totals.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <random>
#include <vector>

#include "scheno/metric.hpp"
#include "scheno/parallel.hpp"

namespace {

scheno::Graph circulant(int n, std::vector<int> offsets) {
  std::vector<scheno::NodePair> edges;
  for (int v = 0; v < n; ++v)
    for (int d : offsets) edges.push_back(scheno::canonical_pair(v, (v + d) % n, false));
  return scheno::Graph(n, false, std::move(edges));
}

std::vector<scheno::NodePairSet> candidate_batch(const scheno::Graph& g, int count, int size,
                                                 std::uint64_t seed) {
  const std::int64_t m = scheno::pair_count(g.n(), g.directed());
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> dist(0, m - 1);
  std::vector<scheno::NodePairSet> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    std::vector<scheno::NodePair> pairs;
    while (static_cast<int>(pairs.size()) < size) {
      const scheno::NodePair e = scheno::index_to_pair(dist(rng), g.n(), g.directed());
      pairs.push_back(e);
    }
    out.emplace_back(g.n(), g.directed(), std::move(pairs));
  }
  return out;
}

double run_batch(const scheno::Graph& g, const std::vector<scheno::NodePairSet>& batch,
                 const scheno::NoiseParam& param, int workers, std::vector<double>& totals) {
  totals.assign(batch.size(), 0.0);
  const auto start = std::chrono::steady_clock::now();
  scheno::parallel_for(static_cast<int>(batch.size()), workers, [&](int i) {
    totals[static_cast<std::size_t>(i)] =
        scheno::score(g, batch[static_cast<std::size_t>(i)], param).total;
  });
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

}  // namespace

int main() {
  const scheno::Graph g = circulant(48, {1, 2});
  const scheno::NoiseParam param = scheno::choose_p(g.n(), g.directed());
  const int candidates = 400;
  const std::vector<scheno::NodePairSet> batch = candidate_batch(g, candidates, 2, 12345);
  const int max_workers = scheno::resolve_workers(0);

  std::cout << "graph: circulant C" << g.n() << "(1,2), " << g.edge_count() << " edges\n";
  std::cout << "batch: " << candidates << " candidate noise sets of size 2\n\n";
  std::cout << std::left << std::setw(22) << "mode" << std::right << std::setw(12) << "seconds"
            << std::setw(16) << "candidates/s" << '\n';

  std::vector<double> serial_totals, parallel_totals;
  double serial_best = 1e300, parallel_best = 1e300;
  for (int rep = 0; rep < 3; ++rep) {
    serial_best = std::min(serial_best, run_batch(g, batch, param, 1, serial_totals));
    parallel_best = std::min(parallel_best, run_batch(g, batch, param, max_workers, parallel_totals));
  }
  std::cout << std::left << std::setw(22) << "serial reference" << std::right << std::fixed
            << std::setprecision(3) << std::setw(12) << serial_best << std::setw(16)
            << std::setprecision(1) << candidates / serial_best << '\n';
  std::cout << std::left << std::setw(22)
            << ("openmp x" + std::to_string(max_workers)) << std::right << std::setprecision(3)
            << std::setw(12) << parallel_best << std::setw(16) << std::setprecision(1)
            << candidates / parallel_best << '\n';
  std::cout << "\nspeedup " << std::setprecision(2) << serial_best / parallel_best << "x\n";

  for (std::size_t i = 0; i < serial_totals.size(); ++i) {
    if (serial_totals[i] != parallel_totals[i]) {
      std::cerr << "MISMATCH at candidate " << i << ": " << serial_totals[i]
                << " != " << parallel_totals[i] << '\n';
      return 1;
    }
  }
  std::cout << "serial and parallel totals identical\n";
  return 0;
}
