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

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scheno/baselines.hpp"
#include "scheno/ga.hpp"
#include "scheno/io.hpp"
#include "scheno/metric.hpp"

namespace {

struct CommonFlags {
  std::uint64_t seed = 0;
  int trials = 20;
  int workers = 0;  // 0 = all available
  std::uint64_t budget = scheno::SearchBudget{}.max_nodes;

  scheno::SearchBudget search_budget() const { return scheno::SearchBudget{budget}; }
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--seed", f.seed, "random seed");
  cmd->add_option("--trials", f.trials, "random-baseline trials")->check(CLI::PositiveNumber);
  cmd->add_option("--workers", f.workers, "worker threads (0 = all)");
  cmd->add_option("--budget", f.budget, "search-tree node budget per symmetry count")
      ->check(CLI::PositiveNumber);
}

std::string node_name(const std::vector<std::string>& labels, int v) {
  return labels.empty() ? std::to_string(v) : labels[static_cast<std::size_t>(v)];
}

bool labels_are_dense_ids(const std::vector<std::string>& labels) {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] != std::to_string(i)) return false;
  return true;
}

scheno::EdgeListResult load_graph(const std::string& path, bool directed,
                                  const std::string& label_map_out) {
  scheno::EdgeListResult in = scheno::read_edge_list(path, directed);
  if (!label_map_out.empty()) scheno::write_label_map(label_map_out, in.labels);
  else if (!labels_are_dense_ids(in.labels))
    std::cout << "note: node labels were remapped to dense ids; pass --label-map FILE to save "
                 "the mapping\n";
  return in;
}

void print_pairs(const char* tag, const scheno::NodePairSet& pairs,
                 const std::vector<std::string>& labels) {
  for (const scheno::NodePair& e : pairs.pairs())
    std::cout << tag << ' ' << node_name(labels, e.first) << ' ' << node_name(labels, e.second)
              << '\n';
}

void print_param(const scheno::NoiseParam& param) {
  std::cout << "n " << param.n << (param.directed ? " directed" : " undirected") << '\n';
  std::cout << std::setprecision(15);
  std::cout << "p " << param.p << '\n';
  std::cout << "log2(p) " << param.log2_p << '\n';
  std::cout << "log2(1-p) " << param.log2_1mp << '\n';
  std::cout << "source "
            << (param.source == scheno::NoiseParam::Source::kExactTable ? "exact-table"
                                                                        : "asymptotic-estimate")
            << '\n';
}

void print_breakdown(const scheno::ScoreBreakdown& b) {
  std::cout << std::setprecision(12);
  std::cout << "M " << b.M << '\n';
  std::cout << "|N| " << b.noise_size << '\n';
  std::cout << "log2|Aut(H)| " << b.log2_aut_H << " (|Aut(H)| = " << b.aut_exact.str() << ")\n";
  std::cout << "log2|AO(N)| " << b.log2_orbit_N << " (|AO(N)| = " << b.orbit_exact.str() << ")\n";
  std::cout << "noise-term " << b.noise_term << '\n';
  std::cout << "total " << b.total << '\n';
}

void print_gains(double gain_structure, const scheno::RandomGain& rg, int trials) {
  std::cout << std::setprecision(12);
  std::cout << "gain-over-all-structure " << gain_structure << '\n';
  std::cout << "gain-over-random " << rg.gain << " (baseline mean " << rg.baseline_mean
            << ", std " << rg.baseline_std << ", trials " << trials << ")\n";
}

constexpr const char* kComplementAdvice =
    "Graphs with more than half of all possible pairs present carry their structure in the "
    "missing pairs; run on the complement graph for meaningful scores.";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scheno: schema/noise decomposition scoring and search"};
  app.require_subcommand(1);
  app.footer(kComplementAdvice);

  // param
  int param_n = 0;
  bool param_directed = false;
  CLI::App* param_cmd = app.add_subcommand("param", "noise probability p for an (n, kind) universe");
  param_cmd->add_option("-n,--nodes", param_n, "node count")->required()->check(CLI::Range(2, 1 << 30));
  param_cmd->add_flag("--directed", param_directed, "directed universe");
  param_cmd->callback([&] { print_param(scheno::choose_p(param_n, param_directed)); });

  // score
  struct {
    std::string graph, noise = "empty", label_map, export_dot, write_decomp, decomp;
    bool directed = false;
    CommonFlags common;
  } sc;
  CLI::App* score_cmd = app.add_subcommand("score", "score a graph against a noise set");
  score_cmd->add_option("graph", sc.graph, "edge-list file (ignored with --decomp)");
  score_cmd->add_option("--noise", sc.noise, "noise pair file, or 'empty'");
  score_cmd->add_option("--decomp", sc.decomp, "score a saved decomposition file instead");
  score_cmd->add_flag("--directed", sc.directed, "treat the graph as directed");
  score_cmd->add_option("--label-map", sc.label_map, "write the id->label mapping here");
  score_cmd->add_option("--export", sc.export_dot, "write annotated DOT here");
  score_cmd->add_option("--write-decomp", sc.write_decomp, "write the decomposition file here");
  add_common(score_cmd, sc.common);
  score_cmd->callback([&] {
    scheno::Graph g;
    scheno::NodePairSet noise;
    std::vector<std::string> labels;
    if (!sc.decomp.empty()) {
      scheno::GraphNoise gn = scheno::read_decomposition(sc.decomp);
      g = gn.graph;
      noise = gn.noise;
    } else {
      if (sc.graph.empty())
        throw CLI::ValidationError("score", "either a graph file or --decomp is required");
      scheno::EdgeListResult in = load_graph(sc.graph, sc.directed, sc.label_map);
      g = in.graph;
      labels = in.labels;
      noise = sc.noise == "empty"
                  ? scheno::NodePairSet(g.n(), g.directed(), {})
                  : scheno::NodePairSet(g.n(), g.directed(),
                                        scheno::read_ranking(sc.noise, labels, g.directed()));
    }
    const scheno::NoiseParam param = scheno::choose_p(g.n(), g.directed());
    print_param(param);
    const scheno::Decomposition d =
        scheno::make_decomposition(g, noise, param, sc.common.search_budget());
    print_breakdown(d.breakdown);
    const double gs = scheno::gain_over_all_structure(g, noise, param, sc.common.search_budget());
    const scheno::RandomGain rg =
        scheno::gain_over_random(g, noise, param, sc.common.trials, sc.common.seed,
                                 sc.common.search_budget(), sc.common.workers);
    print_gains(gs, rg, sc.common.trials);
    if (!sc.export_dot.empty()) scheno::export_annotated(sc.export_dot, d);
    if (!sc.write_decomp.empty()) scheno::write_decomposition(sc.write_decomp, g, noise);
  });

  // search
  struct {
    std::string graph, label_map, export_dot, write_decomp, checkpoint;
    bool directed = false, progress = false;
    int population = 0, generations = 500, patience = 50, checkpoint_interval = 25;
    CommonFlags common;
  } se;
  CLI::App* search_cmd = app.add_subcommand("search", "search for the best noise set");
  search_cmd->add_option("graph", se.graph, "edge-list file")->required();
  search_cmd->add_flag("--directed", se.directed, "treat the graph as directed");
  search_cmd->add_option("--population", se.population,
                         "population size (0 = floor((n+400)^1.4))");
  search_cmd->add_option("--generations", se.generations, "generation cap");
  search_cmd->add_option("--patience", se.patience, "stop after this many stagnant generations");
  search_cmd->add_flag("--progress", se.progress, "print per-generation progress");
  search_cmd->add_option("--label-map", se.label_map, "write the id->label mapping here");
  search_cmd->add_option("--export", se.export_dot, "write annotated DOT here");
  search_cmd->add_option("--write-decomp", se.write_decomp, "write the decomposition file here");
  search_cmd->add_option("--checkpoint", se.checkpoint, "population checkpoint file");
  search_cmd->add_option("--checkpoint-interval", se.checkpoint_interval,
                         "generations between checkpoints");
  add_common(search_cmd, se.common);
  search_cmd->callback([&] {
    scheno::EdgeListResult in = load_graph(se.graph, se.directed, se.label_map);
    const scheno::Graph& g = in.graph;
    scheno::GAConfig config;
    if (se.population > 0) config.population_override = se.population;
    config.max_generations = se.generations;
    config.patience = se.patience;
    config.seed = se.common.seed;
    config.workers = se.common.workers;
    config.budget = se.common.search_budget();
    if (se.progress)
      config.on_progress = [](const scheno::GAProgress& p) {
        std::cout << "generation " << p.generation << " best " << std::setprecision(12)
                  << p.best_fitness << " |N| " << p.best_noise_size << '\n';
      };
    if (!se.checkpoint.empty()) {
      config.checkpoint_interval = se.checkpoint_interval;
      config.on_checkpoint = [&](int gen, const std::vector<scheno::PopulationMember>& members) {
        scheno::write_population(se.checkpoint,
                                 {gen, g.n(), g.directed(), members});
      };
    }
    const scheno::EvolveResult res = scheno::evolve(g, config);
    std::cout << "generations " << res.generations << '\n';
    std::cout << "distinct-genomes-scored " << res.distinct_evaluated << '\n';
    std::cout << "budget-errors " << res.budget_errors << '\n';
    print_breakdown(res.best.breakdown);
    const scheno::NoiseSplit split = scheno::split_noise(g, res.best.noise);
    print_pairs("ADD", split.added, in.labels);
    print_pairs("DEL", split.deleted, in.labels);
    const scheno::NoiseParam param = scheno::choose_p(g.n(), g.directed());
    const double gs =
        scheno::gain_over_all_structure(g, res.best.noise, param, se.common.search_budget());
    const scheno::RandomGain rg =
        scheno::gain_over_random(g, res.best.noise, param, se.common.trials, se.common.seed,
                                 se.common.search_budget(), se.common.workers);
    print_gains(gs, rg, se.common.trials);
    if (!se.export_dot.empty()) scheno::export_annotated(se.export_dot, res.best);
    if (!se.write_decomp.empty())
      scheno::write_decomposition(se.write_decomp, g, res.best.noise);
  });

  // ktruss
  struct {
    std::string graph, label_map, export_dot, write_decomp;
    bool directed = false, max_truss = false;
    int k = 0;
    CommonFlags common;
  } kt;
  CLI::App* ktruss_cmd = app.add_subcommand("ktruss", "k-truss schema baseline");
  ktruss_cmd->add_option("graph", kt.graph, "edge-list file")->required();
  ktruss_cmd->add_flag("--directed", kt.directed, "treat the graph as directed");
  ktruss_cmd->add_option("-k", kt.k, "truss parameter (>= 2)");
  ktruss_cmd->add_flag("--max-truss", kt.max_truss, "use the largest k with a non-empty truss");
  ktruss_cmd->add_option("--label-map", kt.label_map, "write the id->label mapping here");
  ktruss_cmd->add_option("--export", kt.export_dot, "write annotated DOT here");
  ktruss_cmd->add_option("--write-decomp", kt.write_decomp, "write the decomposition file here");
  add_common(ktruss_cmd, kt.common);
  ktruss_cmd->callback([&] {
    scheno::EdgeListResult in = load_graph(kt.graph, kt.directed, kt.label_map);
    const scheno::Graph& g = in.graph;
    if (g.directed())
      std::cout << "note: truss peeling runs on the undirected projection of the graph\n";
    int k = kt.k;
    if (kt.max_truss || k == 0) {
      const std::optional<int> best = scheno::max_truss_k(g);
      if (!best) throw CLI::ValidationError("ktruss", "graph has no edges");
      k = *best;
    }
    const scheno::NodePairSet truss = scheno::k_truss(g, k);
    std::cout << "k " << k << '\n';
    std::cout << "truss-edges " << truss.size() << " of " << g.edge_count() << '\n';
    const scheno::NoiseParam param = scheno::choose_p(g.n(), g.directed());
    const scheno::EvalReport rep =
        scheno::score_external(g, truss, param, kt.common.trials, kt.common.seed,
                               kt.common.search_budget(), kt.common.workers);
    print_breakdown(rep.decomposition.breakdown);
    print_gains(rep.gain_structure, rep.gain_random, kt.common.trials);
    if (!kt.export_dot.empty()) scheno::export_annotated(kt.export_dot, rep.decomposition);
    if (!kt.write_decomp.empty())
      scheno::write_decomposition(kt.write_decomp, g, rep.decomposition.noise);
  });

  // score-ext
  struct {
    std::string graph, schema, label_map;
    bool directed = false;
    CommonFlags common;
  } sx;
  CLI::App* ext_cmd = app.add_subcommand("score-ext", "evaluate an external schema edge list");
  ext_cmd->add_option("graph", sx.graph, "edge-list file")->required();
  ext_cmd->add_option("schema", sx.schema, "schema edge list (labels shared with the graph)")
      ->required();
  ext_cmd->add_flag("--directed", sx.directed, "treat both files as directed");
  ext_cmd->add_option("--label-map", sx.label_map, "write the id->label mapping here");
  add_common(ext_cmd, sx.common);
  ext_cmd->callback([&] {
    scheno::EdgeListResult in = load_graph(sx.graph, sx.directed, sx.label_map);
    const scheno::Graph& g = in.graph;
    const scheno::NodePairSet schema(
        g.n(), g.directed(), scheno::read_ranking(sx.schema, in.labels, g.directed()));
    const scheno::NoiseParam param = scheno::choose_p(g.n(), g.directed());
    const scheno::EvalReport rep =
        scheno::score_external(g, schema, param, sx.common.trials, sx.common.seed,
                               sx.common.search_budget(), sx.common.workers);
    print_breakdown(rep.decomposition.breakdown);
    print_gains(rep.gain_structure, rep.gain_random, sx.common.trials);
  });

  // sweep
  struct {
    std::string graph, ranking, out, label_map;
    bool directed = false;
    int steps = 41;
    CommonFlags common;
  } sw;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "score schemas along a ranked pair list");
  sweep_cmd->add_option("graph", sw.graph, "edge-list file")->required();
  sweep_cmd->add_option("ranking", sw.ranking, "ranked pair file, best first")->required();
  sweep_cmd->add_flag("--directed", sw.directed, "treat the graph as directed");
  sweep_cmd->add_option("--steps", sw.steps, "schema sizes to sample")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("-o,--out", sw.out, "write CSV here instead of stdout");
  sweep_cmd->add_option("--label-map", sw.label_map, "write the id->label mapping here");
  add_common(sweep_cmd, sw.common);
  sweep_cmd->callback([&] {
    scheno::EdgeListResult in = load_graph(sw.graph, sw.directed, sw.label_map);
    const scheno::Graph& g = in.graph;
    const scheno::EdgeRanking ranking =
        scheno::read_ranking(sw.ranking, in.labels, g.directed());
    const scheno::NoiseParam param = scheno::choose_p(g.n(), g.directed());
    const scheno::SweepResult res =
        scheno::ranking_sweep(g, ranking, sw.steps, param, sw.common.trials, sw.common.seed,
                              sw.common.search_budget(), sw.common.workers);
    if (res.truncated)
      std::cerr << "warning: ranking shorter than 2|E|; sweep truncated at " << ranking.size()
                << " pairs\n";
    if (!sw.out.empty()) {
      scheno::write_sweep_csv(sw.out, res);
    } else {
      std::cout << "k k/|E| total gain_structure gain_random_mean gain_random_std\n"
                << std::setprecision(10);
      for (const scheno::SweepRow& r : res.rows)
        std::cout << r.k << ' ' << r.k_over_e << ' ' << r.total << ' ' << r.gain_structure << ' '
                  << r.gain_random_mean << ' ' << r.gain_random_std << '\n';
    }
  });

  // mnist
  CLI::App* mnist_cmd = app.add_subcommand("mnist", "image <-> graph conversion");
  mnist_cmd->require_subcommand(1);
  struct {
    std::string image, out;
  } me;
  CLI::App* enc_cmd = mnist_cmd->add_subcommand("encode", "PGM image to directed edge list");
  enc_cmd->add_option("image", me.image, "PGM file (P2 or P5)")->required();
  enc_cmd->add_option("-o,--out", me.out, "edge-list output (stdout when omitted)");
  enc_cmd->callback([&] {
    const scheno::ImageGrid img = scheno::read_pgm(me.image);
    const scheno::Graph g = scheno::image_to_graph(img);
    std::cout << "image " << img.width << 'x' << img.height << " -> n " << g.n() << ", edges "
              << g.edge_count() << '\n';
    if (!me.out.empty()) {
      scheno::write_edge_list(me.out, g);
    } else {
      for (const scheno::NodePair& e : g.edges()) std::cout << e.first << ' ' << e.second << '\n';
    }
  });
  struct {
    std::string graph, out;
    int width = 0;
  } md;
  CLI::App* dec_cmd = mnist_cmd->add_subcommand("decode", "directed edge list back to a PGM image");
  dec_cmd->add_option("graph", md.graph, "edge-list file")->required();
  dec_cmd->add_option("--width", md.width, "image width (default: node count - 1)");
  dec_cmd->add_option("-o,--out", md.out, "PGM output (stdout when omitted)");
  dec_cmd->callback([&] {
    const scheno::EdgeListResult in = scheno::read_edge_list(md.graph, /*directed=*/true);
    // Node ids are pixel coordinates here, so the reader's first-appearance
    // remapping must be undone before any pixel is placed.
    std::vector<int> id_of(in.labels.size());
    int max_id = -1;
    for (std::size_t i = 0; i < in.labels.size(); ++i) {
      std::size_t used = 0;
      int id = -1;
      try {
        id = std::stoi(in.labels[i], &used);
      } catch (const std::exception&) {
      }
      if (id < 0 || used != in.labels[i].size())
        throw scheno::ParseError(md.graph, 0,
                                 "decode needs non-negative integer node ids, got '" +
                                     in.labels[i] + "'");
      id_of[i] = id;
      max_id = std::max(max_id, id);
    }
    const int width = md.width > 0 ? md.width : max_id;
    std::vector<scheno::NodePair> arcs;
    arcs.reserve(in.graph.edge_count());
    for (const scheno::NodePair& e : in.graph.edges())
      arcs.emplace_back(id_of[static_cast<std::size_t>(e.first)],
                        id_of[static_cast<std::size_t>(e.second)]);
    const scheno::Graph g(std::max(max_id + 1, width + 1), /*directed=*/true, std::move(arcs));
    const scheno::ImageGrid img = scheno::graph_to_image(g, width);
    if (!md.out.empty()) {
      scheno::write_pgm(md.out, img);
    } else {
      std::cout << "P2\n" << img.width << ' ' << img.height << "\n255\n";
      for (int r = 0; r < img.height; ++r)
        for (int c = 0; c < img.width; ++c)
          std::cout << (img.at(r, c) ? 255 : 0) << (c + 1 < img.width ? ' ' : '\n');
    }
  });

  // oracle
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "independent recomputation of shipped values");
  oracle_cmd->require_subcommand(1);
  struct {
    int n = 0;
    bool directed = false;
    std::string method = "auto", emit_table;
  } os;
  CLI::App* sumaut_cmd =
      oracle_cmd->add_subcommand("sumaut", "sum over isomorphism classes of |Aut|");
  sumaut_cmd->add_option("-n,--nodes", os.n, "node count")->required()->check(CLI::PositiveNumber);
  sumaut_cmd->add_flag("--directed", os.directed, "directed classes");
  sumaut_cmd->add_option("--method", os.method, "auto|table|enumerate|pairs|estimate")
      ->check(CLI::IsMember({"auto", "table", "enumerate", "pairs", "estimate"}));
  sumaut_cmd->add_option("--emit-table", os.emit_table, "also regenerate the full table file here");
  sumaut_cmd->callback([&] {
    scheno::SumAutValue v;
    std::string how = os.method;
    if (how == "auto")
      how = os.n <= (os.directed ? 6 : 9) ? "pairs" : "estimate";
    if (how == "table") v = scheno::sum_aut_table(os.n, os.directed);
    else if (how == "enumerate") v = scheno::sum_aut_exact(os.n, os.directed);
    else if (how == "pairs") v = scheno::sum_aut_exact_pairs(os.n, os.directed);
    else v = scheno::sum_aut_estimate(os.n, os.directed);
    std::cout << "n " << v.n << (v.directed ? " directed" : " undirected") << " method " << how
              << '\n';
    if (v.exact) std::cout << "sum " << v.exact->str() << '\n';
    std::cout << "log2-sum " << std::setprecision(15) << v.log2_sum << '\n';
    if (!os.emit_table.empty()) {
      std::vector<scheno::SumAutValue> all;
      for (int n = 1; n <= scheno::sum_aut_table_max_n(false); ++n)
        all.push_back(scheno::sum_aut_exact_pairs(n, false));
      for (int n = 1; n <= scheno::sum_aut_table_max_n(true); ++n)
        all.push_back(scheno::sum_aut_exact_pairs(n, true));
      scheno::write_sum_aut_table(os.emit_table, all);
      std::cout << "table written to " << os.emit_table << '\n';
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  } catch (const scheno::BudgetError& e) {
    std::cerr << "error: " << e.what() << " (raise --budget to keep searching)\n";
    return 4;
  } catch (const scheno::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
