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
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "scheno/io.hpp"

namespace scheno {

namespace {

std::ifstream open_input(const std::string& path, bool binary = false) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw ParseError(path, 0, "cannot open for reading");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(path, 0, "cannot open for writing");
  return out;
}

void finish_output(const std::string& path, std::ofstream& out) {
  out.flush();
  if (!out) throw ParseError(path, 0, "write failed");
}

std::string strip_comment(const std::string& line) {
  const std::size_t hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

void check_label(const std::string& path, const std::string& label) {
  if (label.empty()) throw ParseError(path, 0, "empty node label");
  for (char c : label)
    if (std::isspace(static_cast<unsigned char>(c)) || c == '#')
      throw ParseError(path, 0, "label '" + label + "' contains whitespace or '#'");
}

// PGM header token: skips whitespace and '#' comments.
std::string pgm_token(const std::string& path, std::istream& in) {
  for (;;) {
    const int c = in.peek();
    if (c == EOF) throw ParseError(path, 0, "unexpected end of PGM header");
    if (std::isspace(c)) {
      in.get();
      continue;
    }
    if (c == '#') {
      std::string skip;
      std::getline(in, skip);
      continue;
    }
    break;
  }
  std::string tok;
  while (in.peek() != EOF && !std::isspace(in.peek())) tok.push_back(static_cast<char>(in.get()));
  return tok;
}

int pgm_int(const std::string& path, std::istream& in, const std::string& what) {
  const std::string tok = pgm_token(path, in);
  try {
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(path, 0, "bad PGM " + what + " '" + tok + "'");
  }
}

}  // namespace

EdgeListResult read_edge_list(const std::string& path, bool directed) {
  std::ifstream in = open_input(path);
  std::map<std::string, int> ids;
  EdgeListResult out;
  std::vector<NodePair> edges;
  std::string line;
  int lineno = 0;
  auto id_of = [&](const std::string& label) {
    const auto [it, fresh] = ids.emplace(label, static_cast<int>(out.labels.size()));
    if (fresh) out.labels.push_back(label);
    return it->second;
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream iss(strip_comment(line));
    std::string a, b, extra;
    if (!(iss >> a)) continue;
    if (!(iss >> b)) throw ParseError(path, lineno, "expected two node labels");
    if (iss >> extra) throw ParseError(path, lineno, "unexpected token '" + extra + "'");
    if (a == b) throw ParseError(path, lineno, "self-loop on node '" + a + "'");
    // Two statements: ids must be minted in reading order, and argument
    // evaluation order would leave that to the compiler.
    const int ia = id_of(a);
    const int ib = id_of(b);
    edges.emplace_back(ia, ib);
  }
  out.graph = Graph(static_cast<int>(out.labels.size()), directed, std::move(edges));
  return out;
}

void write_edge_list(const std::string& path, const Graph& g,
                     const std::vector<std::string>& labels) {
  if (!labels.empty() && static_cast<int>(labels.size()) != g.n())
    throw std::invalid_argument("write_edge_list: label count does not match node count");
  for (const std::string& l : labels) check_label(path, l);
  std::ofstream out = open_output(path);
  auto name = [&](int v) { return labels.empty() ? std::to_string(v) : labels[static_cast<std::size_t>(v)]; };
  for (const NodePair& e : g.edges()) out << name(e.first) << ' ' << name(e.second) << '\n';
  finish_output(path, out);
}

void write_label_map(const std::string& path, const std::vector<std::string>& labels) {
  for (const std::string& l : labels) check_label(path, l);
  std::ofstream out = open_output(path);
  for (std::size_t i = 0; i < labels.size(); ++i) out << i << ' ' << labels[i] << '\n';
  finish_output(path, out);
}

std::vector<std::string> read_label_map(const std::string& path) {
  std::ifstream in = open_input(path);
  std::map<int, std::string> by_id;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream iss(strip_comment(line));
    int id = 0;
    std::string label, extra;
    if (!(iss >> id)) {
      if (iss.str().find_first_not_of(" \t\r") == std::string::npos) continue;
      throw ParseError(path, lineno, "expected '<id> <label>'");
    }
    if (!(iss >> label)) throw ParseError(path, lineno, "missing label");
    if (iss >> extra) throw ParseError(path, lineno, "unexpected token '" + extra + "'");
    if (!by_id.emplace(id, label).second)
      throw ParseError(path, lineno, "duplicate id " + std::to_string(id));
  }
  std::vector<std::string> labels;
  labels.reserve(by_id.size());
  for (const auto& [id, label] : by_id) {
    if (id != static_cast<int>(labels.size()))
      throw ParseError(path, 0, "ids are not dense 0.." + std::to_string(by_id.size() - 1));
    labels.push_back(label);
  }
  return labels;
}

void write_decomposition(const std::string& path, const Graph& g, const NodePairSet& noise) {
  const NoiseSplit split = split_noise(g, noise);
  std::ofstream out = open_output(path);
  out << "scheno decomposition v1\n";
  out << "n " << g.n() << (g.directed() ? " directed" : " undirected") << '\n';
  for (const NodePair& e : g.edges())
    if (!split.deleted.contains(e)) out << "KEEP " << e.first << ' ' << e.second << '\n';
  for (const NodePair& e : split.added.pairs()) out << "ADD " << e.first << ' ' << e.second << '\n';
  for (const NodePair& e : split.deleted.pairs())
    out << "DEL " << e.first << ' ' << e.second << '\n';
  finish_output(path, out);
}

GraphNoise read_decomposition(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string line;
  int lineno = 1;
  if (!std::getline(in, line) || strip_comment(line) != "scheno decomposition v1")
    throw ParseError(path, lineno, "expected header 'scheno decomposition v1'");
  ++lineno;
  int n = 0;
  bool directed = false;
  {
    if (!std::getline(in, line)) throw ParseError(path, lineno, "missing size line");
    std::istringstream iss(strip_comment(line));
    std::string tag, kind, extra;
    if (!(iss >> tag >> n >> kind) || tag != "n" || n < 0 ||
        (kind != "directed" && kind != "undirected") || (iss >> extra))
      throw ParseError(path, lineno, "expected 'n <count> directed|undirected'");
    directed = kind == "directed";
  }
  std::vector<NodePair> keep, add, del;
  std::set<NodePair> used;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream iss(strip_comment(line));
    std::string tag, extra;
    int a = 0, b = 0;
    if (!(iss >> tag)) continue;
    if (!(iss >> a >> b) || (iss >> extra))
      throw ParseError(path, lineno, "expected '<KEEP|ADD|DEL> <node> <node>'");
    if (a < 0 || a >= n || b < 0 || b >= n || a == b)
      throw ParseError(path, lineno, "invalid node pair");
    const NodePair e = canonical_pair(a, b, directed);
    if (!used.insert(e).second) throw ParseError(path, lineno, "pair listed twice");
    if (tag == "KEEP") keep.push_back(e);
    else if (tag == "ADD") add.push_back(e);
    else if (tag == "DEL") del.push_back(e);
    else throw ParseError(path, lineno, "unknown tag '" + tag + "'");
  }
  std::vector<NodePair> edges = keep;
  edges.insert(edges.end(), del.begin(), del.end());
  std::vector<NodePair> noise = add;
  noise.insert(noise.end(), del.begin(), del.end());
  GraphNoise out;
  out.graph = Graph(n, directed, std::move(edges));
  out.noise = NodePairSet(n, directed, std::move(noise));
  return out;
}

ImageGrid read_pgm(const std::string& path) {
  std::ifstream in = open_input(path, /*binary=*/true);
  const std::string magic = pgm_token(path, in);
  if (magic != "P2" && magic != "P5")
    throw ParseError(path, 0, "expected PGM magic P2 or P5, got '" + magic + "'");
  ImageGrid img;
  img.width = pgm_int(path, in, "width");
  img.height = pgm_int(path, in, "height");
  const int maxval = pgm_int(path, in, "maxval");
  if (img.width <= 0 || img.height <= 0 || maxval <= 0)
    throw ParseError(path, 0, "non-positive PGM dimensions");
  const std::size_t count =
      static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height);
  img.pixels.resize(count);
  if (magic == "P2") {
    for (std::size_t i = 0; i < count; ++i)
      img.pixels[i] = pgm_int(path, in, "pixel") > maxval / 2 ? 1 : 0;
  } else {
    if (maxval > 255) throw ParseError(path, 0, "16-bit P5 data is not supported");
    in.get();  // the single whitespace byte separating header from raster
    std::vector<char> raw(count);
    in.read(raw.data(), static_cast<std::streamsize>(count));
    if (static_cast<std::size_t>(in.gcount()) != count)
      throw ParseError(path, 0, "truncated P5 raster");
    for (std::size_t i = 0; i < count; ++i)
      img.pixels[i] = static_cast<unsigned char>(raw[i]) > maxval / 2 ? 1 : 0;
  }
  return img;
}

void write_pgm(const std::string& path, const ImageGrid& img) {
  if (static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height) !=
      img.pixels.size())
    throw std::invalid_argument("write_pgm: pixel buffer does not match dimensions");
  std::ofstream out = open_output(path);
  out << "P2\n" << img.width << ' ' << img.height << "\n255\n";
  for (int r = 0; r < img.height; ++r) {
    for (int c = 0; c < img.width; ++c) out << (img.at(r, c) ? 255 : 0) << (c + 1 < img.width ? ' ' : '\n');
  }
  finish_output(path, out);
}

Graph image_to_graph(const ImageGrid& img) {
  const int n = std::max(img.height, img.width + 1);
  std::vector<NodePair> edges;
  for (int i = 0; i < img.height; ++i)
    for (int j = 0; j < img.width; ++j)
      if (img.at(i, j)) edges.emplace_back(i, j < i ? j : j + 1);
  return Graph(n, true, std::move(edges));
}

ImageGrid graph_to_image(const Graph& g, int width) {
  if (!g.directed()) throw std::invalid_argument("graph_to_image: graph must be directed");
  if (width <= 0) throw std::invalid_argument("graph_to_image: width must be positive");
  if (g.n() > width + 1)
    throw std::invalid_argument("graph_to_image: graph has more than width+1 nodes");
  ImageGrid img;
  img.width = width;
  img.height = width;
  img.pixels.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(width), 0);
  for (const NodePair& e : g.edges()) {
    const int row = e.first;
    const int col = e.second < e.first ? e.second : e.second - 1;
    if (row >= img.height)
      throw std::invalid_argument("graph_to_image: edge (" + std::to_string(e.first) + "," +
                                  std::to_string(e.second) + ") not representable in " +
                                  std::to_string(width) + " rows");
    img.pixels[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
               static_cast<std::size_t>(col)] = 1;
  }
  return img;
}

void export_annotated(const std::string& path, const Decomposition& d) {
  const NoiseSplit split = split_noise(d.graph, d.noise);
  std::ofstream out = open_output(path);
  const bool dir = d.graph.directed();
  const char* arrow = dir ? " -> " : " -- ";
  out << (dir ? "digraph" : "graph") << " scheno {\n";
  out << "  node [shape=circle fontsize=10];\n";
  for (const NodePair& e : d.graph.edges())
    if (!split.deleted.contains(e))
      out << "  " << e.first << arrow << e.second << " [color=\"#23395d\" penwidth=1.5];\n";
  for (const NodePair& e : split.added.pairs())
    out << "  " << e.first << arrow << e.second << " [color=\"#18a9a0\" style=dashed];\n";
  for (const NodePair& e : split.deleted.pairs())
    out << "  " << e.first << arrow << e.second << " [color=\"#c0392b\" style=dashed];\n";
  out << "}\n";
  finish_output(path, out);
}

EdgeRanking read_ranking(const std::string& path, const std::vector<std::string>& labels,
                         bool directed) {
  std::map<std::string, int> ids;
  for (std::size_t i = 0; i < labels.size(); ++i) ids.emplace(labels[i], static_cast<int>(i));
  std::ifstream in = open_input(path);
  EdgeRanking ranking;
  std::set<NodePair> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream iss(strip_comment(line));
    std::string a, b, extra;
    if (!(iss >> a)) continue;
    if (!(iss >> b)) throw ParseError(path, lineno, "expected two node labels");
    if (iss >> extra) throw ParseError(path, lineno, "unexpected token '" + extra + "'");
    const auto ia = ids.find(a), ib = ids.find(b);
    if (ia == ids.end()) throw ParseError(path, lineno, "unknown node '" + a + "'");
    if (ib == ids.end()) throw ParseError(path, lineno, "unknown node '" + b + "'");
    if (ia->second == ib->second) throw ParseError(path, lineno, "self-loop on '" + a + "'");
    const NodePair e = canonical_pair(ia->second, ib->second, directed);
    if (!seen.insert(e).second) throw ParseError(path, lineno, "duplicate ranked pair");
    ranking.push_back(e);
  }
  return ranking;
}

void write_sweep_csv(const std::string& path, const SweepResult& sweep) {
  std::ofstream out = open_output(path);
  out << "k,k_over_E,total,gain_structure,gain_random_mean,gain_random_std\n";
  out << std::setprecision(12);
  for (const SweepRow& r : sweep.rows)
    out << r.k << ',' << r.k_over_e << ',' << r.total << ',' << r.gain_structure << ','
        << r.gain_random_mean << ',' << r.gain_random_std << '\n';
  finish_output(path, out);
}

void write_sum_aut_table(const std::string& path, const std::vector<SumAutValue>& values) {
  std::ofstream out = open_output(path);
  out << "scheno sumaut v1\n";
  out << "# n directed log2_sum exact\n";
  out << std::setprecision(17);
  for (const SumAutValue& v : values) {
    out << v.n << ' ' << (v.directed ? 1 : 0) << ' ' << v.log2_sum << ' ';
    if (v.exact) out << v.exact->str();
    else out << '-';
    out << '\n';
  }
  finish_output(path, out);
}

std::vector<SumAutValue> read_sum_aut_table(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string line;
  int lineno = 1;
  if (!std::getline(in, line) || strip_comment(line) != "scheno sumaut v1")
    throw ParseError(path, lineno, "expected header 'scheno sumaut v1'");
  std::vector<SumAutValue> values;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream iss(strip_comment(line));
    SumAutValue v;
    int dir = 0;
    std::string exact, extra;
    if (!(iss >> v.n)) continue;
    if (!(iss >> dir >> v.log2_sum >> exact) || (iss >> extra) || (dir != 0 && dir != 1))
      throw ParseError(path, lineno, "expected '<n> <0|1> <log2_sum> <exact|->'");
    v.directed = dir == 1;
    if (exact != "-") {
      try {
        v.exact = BigInt(exact);
      } catch (const std::exception&) {
        throw ParseError(path, lineno, "bad exact value '" + exact + "'");
      }
    }
    values.push_back(v);
  }
  return values;
}

void write_population(const std::string& path, const PopulationCheckpoint& cp) {
  std::ofstream out = open_output(path);
  out << "scheno population v1\n";
  out << "generation " << cp.generation << '\n';
  out << "n " << cp.n << (cp.directed ? " directed" : " undirected") << '\n';
  out << std::setprecision(17);
  for (const PopulationMember& m : cp.members) {
    out << "MEMBER ";
    if (m.fitness && std::isfinite(*m.fitness)) out << *m.fitness;
    else out << '-';
    out << ' ' << m.genome.size();
    for (const NodePair& e : m.genome.pairs()) out << ' ' << e.first << ' ' << e.second;
    out << '\n';
  }
  finish_output(path, out);
}

PopulationCheckpoint read_population(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string line;
  int lineno = 1;
  if (!std::getline(in, line) || strip_comment(line) != "scheno population v1")
    throw ParseError(path, lineno, "expected header 'scheno population v1'");
  PopulationCheckpoint cp;
  ++lineno;
  {
    if (!std::getline(in, line)) throw ParseError(path, lineno, "missing generation line");
    std::istringstream iss(strip_comment(line));
    std::string tag;
    if (!(iss >> tag >> cp.generation) || tag != "generation")
      throw ParseError(path, lineno, "expected 'generation <count>'");
  }
  ++lineno;
  {
    if (!std::getline(in, line)) throw ParseError(path, lineno, "missing size line");
    std::istringstream iss(strip_comment(line));
    std::string tag, kind;
    if (!(iss >> tag >> cp.n >> kind) || tag != "n" ||
        (kind != "directed" && kind != "undirected"))
      throw ParseError(path, lineno, "expected 'n <count> directed|undirected'");
    cp.directed = kind == "directed";
  }
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream iss(strip_comment(line));
    std::string tag, fit;
    if (!(iss >> tag)) continue;
    int count = 0;
    if (tag != "MEMBER" || !(iss >> fit >> count) || count < 0)
      throw ParseError(path, lineno, "expected 'MEMBER <fitness|-> <count> <pairs...>'");
    PopulationMember m;
    std::vector<NodePair> pairs;
    for (int i = 0; i < count; ++i) {
      int a = 0, b = 0;
      if (!(iss >> a >> b)) throw ParseError(path, lineno, "missing pair " + std::to_string(i));
      pairs.emplace_back(a, b);
    }
    std::string extra;
    if (iss >> extra) throw ParseError(path, lineno, "unexpected token '" + extra + "'");
    if (fit != "-") {
      try {
        std::size_t used = 0;
        m.fitness = std::stod(fit, &used);
        if (used != fit.size()) throw std::invalid_argument(fit);
      } catch (const std::exception&) {
        throw ParseError(path, lineno, "bad fitness '" + fit + "'");
      }
    }
    try {
      m.genome = NodePairSet(cp.n, cp.directed, std::move(pairs));
    } catch (const std::exception& e) {
      throw ParseError(path, lineno, e.what());
    }
    cp.members.push_back(m);
  }
  return cp;
}

}  // namespace scheno
