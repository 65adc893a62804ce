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
#include <vector>

#include "scheno/baselines.hpp"
#include "scheno/ga.hpp"
#include "scheno/metric.hpp"

namespace scheno {

class ParseError : public std::runtime_error {
 public:
  int line;  // 1-based; 0 when the error is not tied to a line
  ParseError(const std::string& path, int line_no, const std::string& what)
      : std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what), line(line_no) {}
};

// Edge list: two whitespace-separated node labels per line, `#` comments.
// Labels are arbitrary strings, remapped to dense ids in order of first
// appearance; labels[i] is node i's original label. Duplicate lines
// collapse; self-loops are rejected with their line number.
struct EdgeListResult {
  Graph graph;
  std::vector<std::string> labels;
};
EdgeListResult read_edge_list(const std::string& path, bool directed);
void write_edge_list(const std::string& path, const Graph& g,
                     const std::vector<std::string>& labels = {});

// Label map: "<id> <label>" per line. Emitted next to remapped outputs so
// ids can be translated back; never applied silently.
void write_label_map(const std::string& path, const std::vector<std::string>& labels);
std::vector<std::string> read_label_map(const std::string& path);

// Decomposition file: versioned header, then one KEEP/ADD/DEL line per pair.
// KEEP u DEL = original edges, ADD is disjoint from them; G = KEEP u DEL,
// N = ADD u DEL, schema = KEEP u ADD.
struct GraphNoise {
  Graph graph;
  NodePairSet noise;
};
void write_decomposition(const std::string& path, const Graph& g, const NodePairSet& noise);
GraphNoise read_decomposition(const std::string& path);

// Binary image, row-major, 1 = white. PGM input may be P2 or P5; a pixel is
// white iff its value exceeds maxval/2. Output is always P2.
struct ImageGrid {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  std::uint8_t at(int row, int col) const {
    return pixels[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(col)];
  }
};
ImageGrid read_pgm(const std::string& path);
void write_pgm(const std::string& path, const ImageGrid& img);

// Adjacency-matrix reading of an image: white pixel (row i, col j) becomes
// the directed edge (i, j) when j < i and (i, j+1) otherwise, which skips
// the diagonal so no self-loops arise. Nodes: max(height, width+1).
Graph image_to_graph(const ImageGrid& img);

// Exact inverse onto a width x width grid: edge (a, b) sets pixel (a, b)
// when b < a and (a, b-1) otherwise. Errors when an edge needs a row or
// column outside the grid.
ImageGrid graph_to_image(const Graph& g, int width);

// DOT export: kept edges dark, added edges teal dashed, deleted edges red
// dashed.
void export_annotated(const std::string& path, const Decomposition& d);

// Ranking file: one pair of node labels per line, best first, `#` comments.
// Labels are resolved through the graph's label vector.
EdgeRanking read_ranking(const std::string& path, const std::vector<std::string>& labels,
                         bool directed);

void write_sweep_csv(const std::string& path, const SweepResult& sweep);

// Exact-table file for sum-over-classes |Aut| values.
void write_sum_aut_table(const std::string& path, const std::vector<SumAutValue>& values);
std::vector<SumAutValue> read_sum_aut_table(const std::string& path);

// GA population checkpoint.
struct PopulationCheckpoint {
  int generation = 0;
  int n = 0;
  bool directed = false;
  std::vector<PopulationMember> members;
};
void write_population(const std::string& path, const PopulationCheckpoint& cp);
PopulationCheckpoint read_population(const std::string& path);

}  // namespace scheno
