#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "coocnet/centrality.hpp"
#include "coocnet/corpus.hpp"
#include "coocnet/eval.hpp"
#include "coocnet/graph.hpp"
#include "coocnet/lexicon.hpp"
#include "coocnet/nullmodel.hpp"
#include "coocnet/parallel.hpp"
#include "coocnet/qap.hpp"
#include "coocnet/reference.hpp"
#include "coocnet/similarity.hpp"

namespace coocnet::cli {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  std::ostringstream s;
  s << std::setprecision(12) << x;
  return s.str();
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::vector<std::string> args;  // as given, without program name
  std::optional<unsigned> threads_flag;
  std::string out_path;

  unsigned threads() const { return resolve_thread_count(threads_flag); }

  void log(std::string_view message) const { err << "[coocnet] " << message << '\n'; }

  /// `# coocnet <version> <args...>` without --threads/--out, plus the seed.
  std::string provenance(std::optional<std::uint64_t> seed = std::nullopt) const {
    std::string line = "# coocnet " + std::string(kVersion);
    for (std::size_t i = 0; i < args.size(); ++i) {
      const std::string& a = args[i];
      if (a == "--threads" || a == "--out") {
        ++i;
        continue;
      }
      if (a.starts_with("--threads=") || a.starts_with("--out=")) continue;
      line += ' ';
      line += a;
    }
    if (seed) line += " seed=" + std::to_string(*seed);
    return line;
  }

  /// Runs `write` against --out if given, else stdout.
  template <typename Write>
  void emit(Write&& write) const {
    if (out_path.empty() || out_path == "-") {
      write(out);
      out.flush();
      return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw DataError(out_path + ": cannot open for writing");
    write(file);
    if (!file) throw DataError(out_path + ": write failed");
  }
};

enum class ReferenceKind { Categories, Geo };

ReferenceKind detect_reference(const std::string& path, const std::string& requested) {
  if (requested == "categories") return ReferenceKind::Categories;
  if (requested == "geo") return ReferenceKind::Geo;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path + ": cannot open reference file");
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    const auto tabs = std::count(line.begin(), line.end(), '\t');
    if (tabs == 1) return ReferenceKind::Categories;
    if (tabs == 2) return ReferenceKind::Geo;
    throw DataError(path + ": cannot tell category file from geo file (expected 2 or 3 columns)");
  }
  throw DataError(path + ": reference file is empty");
}

// Keeps whichever reference table is loaded alive next to its oracle.
struct LoadedReference {
  std::optional<CategoryMatrix> categories;
  std::optional<GeoTable> geo;
  PairValue oracle;
};

LoadedReference load_reference(const CoocGraph& g, const std::string& path, const std::string& kind) {
  LoadedReference r;
  if (detect_reference(path, kind) == ReferenceKind::Categories) {
    r.categories = load_categories(path);
    r.oracle = category_reference(g, *r.categories);
  } else {
    r.geo = load_geo(path);
    r.oracle = geo_reference(g, *r.geo);
  }
  return r;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Context ctx{out, err, {}, std::nullopt, {}};
  for (int i = 1; i < argc; ++i) ctx.args.emplace_back(argv[i]);

  CLI::App app{"Co-occurrence network toolkit: build entity graphs from text and analyse them", "coocnet"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--threads", ctx.threads_flag, "Worker threads (default: $COOCNET_THREADS or 1)")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", ctx.out_path, "Write the primary output here instead of stdout");

  // build-graph
  struct {
    std::string lexicon, kind = "names", mode = "sentence", freq_out;
    std::optional<std::size_t> max_mentions;
    std::uint64_t min_freq = 1;
    std::vector<std::string> inputs;
  } build;
  auto* build_cmd = app.add_subcommand("build-graph", "Count co-occurrences in a corpus and write the graph");
  build_cmd->add_option("--lexicon", build.lexicon, "Entity lexicon file")->required();
  build_cmd->add_option("--kind", build.kind, "Entity kind")->check(CLI::IsMember({"names", "cities"}));
  build_cmd->add_option("--mode", build.mode, "Context unit")->check(CLI::IsMember({"sentence", "line"}));
  build_cmd->add_option("--max-mentions", build.max_mentions, "Skip contexts with more matched entities");
  build_cmd->add_option("--min-freq", build.min_freq, "Minimum entity frequency for a vertex");
  build_cmd->add_option("--freq-out", build.freq_out, "Also write entity frequencies (TSV) here");
  build_cmd->add_option("inputs", build.inputs, "Corpus files or directories")->required();

  // graph-stats
  std::string stats_input;
  auto* stats_cmd = app.add_subcommand("graph-stats", "n, m, density and weak components of a graph");
  stats_cmd->add_option("graph", stats_input)->required();

  // centrality
  struct {
    std::string metric = "degree", input;
    bool weighted = false;
    double tol = 1e-10;
    int max_iter = 1000;
  } cent;
  auto* cent_cmd = app.add_subcommand("centrality", "Per-vertex centrality scores");
  cent_cmd->add_option("--metric", cent.metric)->check(CLI::IsMember({"degree", "eigenvector", "popularity"}));
  cent_cmd->add_flag("--weighted", cent.weighted, "Eigenvector: also emit the weighted-adjacency variant");
  cent_cmd->add_option("--tol", cent.tol, "Power iteration tolerance");
  cent_cmd->add_option("--max-iter", cent.max_iter, "Power iteration limit");
  cent_cmd->add_option("input", cent.input, "Graph file (frequency file for popularity)")->required();

  // compare-degree
  struct {
    std::string g1, g2, null_kind;
    std::size_t replicas = 10;
    std::uint64_t seed = 0;
  } cmp;
  auto* cmp_cmd = app.add_subcommand("compare-degree", "Mean degree in g2 per degree in g1 over common vertices");
  cmp_cmd->add_option("g1", cmp.g1)->required();
  cmp_cmd->add_option("g2", cmp.g2)->required();
  cmp_cmd->add_option("--null", cmp.null_kind, "Null baseline")->check(CLI::IsMember({"shuffle"}));
  cmp_cmd->add_option("--replicas", cmp.replicas);
  cmp_cmd->add_option("--seed", cmp.seed);

  // similarity
  struct {
    std::string metric = "cosine", graph, vertex, universe = "common";
    bool weighted = false, all = false;
    std::vector<std::string> pair;
    std::optional<std::size_t> top_k;
    double threshold = 0.0;
  } sim;
  auto* sim_cmd = app.add_subcommand("similarity", "Vertex similarity for a pair, a vertex's top-k, or all pairs");
  sim_cmd->add_option("--metric", sim.metric)->check(CLI::IsMember({"jaccard", "ra", "aa", "cosine", "lhn"}));
  sim_cmd->add_flag("--weighted", sim.weighted);
  sim_cmd->add_option("--pair", sim.pair, "Two vertex names")->expected(2);
  sim_cmd->add_option("--top-k", sim.top_k);
  sim_cmd->add_option("--vertex", sim.vertex);
  sim_cmd->add_flag("--all", sim.all);
  sim_cmd->add_option("--threshold", sim.threshold);
  sim_cmd->add_option("--universe", sim.universe, "Pairs visited by --all")->check(CLI::IsMember({"common", "all"}));
  sim_cmd->add_option("graph", sim.graph)->required();

  // qap
  struct {
    std::string g1, g2;
    std::size_t permutations = 1000;
    std::uint64_t seed = 0;
    bool weighted = false;
  } qap;
  auto* qap_cmd = app.add_subcommand("qap", "Graph correlation with a QAP permutation test");
  qap_cmd->add_option("g1", qap.g1)->required();
  qap_cmd->add_option("g2", qap.g2)->required();
  qap_cmd->add_option("--permutations", qap.permutations)->check(CLI::PositiveNumber);
  qap_cmd->add_option("--seed", qap.seed);
  qap_cmd->add_flag("--weighted", qap.weighted);

  // null-model
  struct {
    std::string kind = "shuffle", input, output;
    std::uint64_t seed = 0;
    std::optional<std::int64_t> iterations;
  } nm;
  auto* nm_cmd = app.add_subcommand("null-model", "Write a rewired or label-shuffled copy of a graph");
  nm_cmd->add_option("--kind", nm.kind)->check(CLI::IsMember({"rewire", "shuffle"}));
  nm_cmd->add_option("--seed", nm.seed);
  nm_cmd->add_option("--iterations", nm.iterations, "Swap attempts (default 10 x edges)");
  nm_cmd->add_option("input", nm.input)->required();
  nm_cmd->add_option("output", nm.output)->required();

  // eval-bins
  struct {
    std::string graph, metric = "cosine", reference, reference_kind = "auto";
    bool weighted = false;
    std::size_t bins = 1000;
    double include_zeros = 0.0;
    std::uint64_t seed = 0;
  } eb;
  auto* eb_cmd = app.add_subcommand("eval-bins", "Mean reference value per equidistant similarity bin");
  eb_cmd->add_option("graph", eb.graph)->required();
  eb_cmd->add_option("--metric", eb.metric)->check(CLI::IsMember({"jaccard", "ra", "aa", "cosine", "lhn"}));
  eb_cmd->add_flag("--weighted", eb.weighted);
  eb_cmd->add_option("--reference", eb.reference, "Category TSV or geo TSV")->required();
  eb_cmd->add_option("--reference-kind", eb.reference_kind)->check(CLI::IsMember({"auto", "categories", "geo"}));
  eb_cmd->add_option("--bins", eb.bins)->check(CLI::PositiveNumber);
  eb_cmd->add_option("--include-zeros", eb.include_zeros, "Sample this fraction of zero-score pairs")
      ->check(CLI::Range(0.0, 1.0));
  eb_cmd->add_option("--seed", eb.seed);

  // eval-distance
  struct {
    std::string graph, reference, reference_kind = "auto";
    std::uint32_t max_distance = 8;
    std::size_t null_replicas = 10, low_count = 1000;
    std::optional<std::size_t> sources;
    std::uint64_t seed = 0;
  } ed;
  auto* ed_cmd = app.add_subcommand("eval-distance", "Mean reference value per shortest-path distance");
  ed_cmd->add_option("graph", ed.graph)->required();
  ed_cmd->add_option("--reference", ed.reference)->required();
  ed_cmd->add_option("--reference-kind", ed.reference_kind)->check(CLI::IsMember({"auto", "categories", "geo"}));
  ed_cmd->add_option("--max-distance", ed.max_distance)->check(CLI::PositiveNumber);
  ed_cmd->add_option("--null-replicas", ed.null_replicas);
  ed_cmd->add_option("--sources", ed.sources, "BFS from a uniform sample of this many vertices");
  ed_cmd->add_option("--low-count", ed.low_count, "Rows with fewer pairs are flagged low-confidence");
  ed_cmd->add_option("--seed", ed.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (build_cmd->parsed()) {
      LexiconLoadReport report;
      const EntityLexicon lexicon = load_lexicon(build.lexicon, parse_kind(build.kind), &report);
      ctx.log("lexicon: " + std::to_string(lexicon.size()) + " entries, " + std::to_string(report.duplicates) +
              " duplicate and " + std::to_string(report.ambiguous) + " ambiguous rows dropped");
      std::vector<std::filesystem::path> inputs(build.inputs.begin(), build.inputs.end());
      const auto files = expand_inputs(inputs);
      CountOptions options{parse_split_mode(build.mode), build.max_mentions};
      const CoocCounts counts = count_corpus(files, lexicon, options, ctx.threads());
      const CoocGraph g = build_graph(counts, lexicon, build.min_freq);
      ctx.log(ctx.provenance());
      ctx.log(std::to_string(files.size()) + " files, " + std::to_string(counts.contexts()) +
              " contexts with entities, graph n=" + std::to_string(g.vertex_count()) +
              " m=" + std::to_string(g.edge_count()));
      ctx.emit([&](std::ostream& o) { write_graph(o, g); });
      if (!build.freq_out.empty()) {
        std::ofstream f(build.freq_out, std::ios::binary);
        if (!f) throw DataError(build.freq_out + ": cannot open for writing");
        write_frequencies(f, counts, lexicon);
      }
      return 0;
    }

    if (stats_cmd->parsed()) {
      const GraphStats s = stats(read_graph_file(stats_input));
      ctx.emit([&](std::ostream& o) {
        o << ctx.provenance() << "\n# n\tm\tdensity\twcc_count\tlargest_wcc\n";
        o << s.n << '\t' << s.m << '\t' << num(s.density) << '\t' << s.wcc_count << '\t' << s.largest_wcc << '\n';
      });
      return 0;
    }

    if (cent_cmd->parsed()) {
      CentralityVector c;
      std::optional<CentralityVector> weighted;
      if (cent.metric == "popularity") {
        std::ifstream in(cent.input, std::ios::binary);
        if (!in) throw DataError(cent.input + ": cannot open frequency file");
        c = read_popularity(in, cent.input);
      } else {
        const CoocGraph g = read_graph_file(cent.input);
        if (cent.metric == "degree") {
          c = degree_centrality(g);
        } else {
          c = eigenvector_centrality(g, {cent.tol, cent.max_iter, false});
          if (cent.weighted) weighted = eigenvector_centrality(g, {cent.tol, cent.max_iter, true});
          for (const auto* v : {&c, weighted ? &*weighted : nullptr}) {
            if (v && !v->converged)
              ctx.log("warning: power iteration did not converge in " + std::to_string(v->iterations) + " steps");
          }
        }
      }
      ctx.emit([&](std::ostream& o) {
        o << ctx.provenance() << '\n';
        if (cent.metric == "eigenvector") {
          o << "# iterations=" << c.iterations << " residual=" << num(c.residual)
            << " converged=" << (c.converged ? "true" : "false");
          if (weighted)
            o << " weighted_iterations=" << weighted->iterations << " weighted_residual=" << num(weighted->residual)
              << " weighted_converged=" << (weighted->converged ? "true" : "false");
          o << '\n';
        }
        o << "# vertex\tscore" << (weighted ? "\tweighted_score" : "") << '\n';
        for (std::size_t i = 0; i < c.labels.size(); ++i) {
          o << c.labels[i] << '\t' << num(c.scores[static_cast<Eigen::Index>(i)]);
          if (weighted) o << '\t' << num(weighted->scores[static_cast<Eigen::Index>(i)]);
          o << '\n';
        }
      });
      return 0;
    }

    if (cmp_cmd->parsed()) {
      const CoocGraph g1 = read_graph_file(cmp.g1);
      const CoocGraph g2 = read_graph_file(cmp.g2);
      const bool with_null = !cmp.null_kind.empty();
      const auto rows = with_null ? degree_pair_profile(g1, g2, cmp.replicas, RngSeed{cmp.seed}, ctx.threads())
                                  : degree_pair_profile(g1, g2);
      ctx.emit([&](std::ostream& o) {
        o << ctx.provenance(with_null ? std::optional(cmp.seed) : std::nullopt) << '\n';
        o << "# k\tmean\tcount" << (with_null ? "\tnull_mean" : "") << '\n';
        for (const auto& r : rows) {
          o << r.degree << '\t' << num(r.mean_degree) << '\t' << r.count;
          if (with_null) o << '\t' << num(*r.null_mean);
          o << '\n';
        }
      });
      return 0;
    }

    if (sim_cmd->parsed()) {
      const int modes = (!sim.pair.empty()) + (sim.top_k.has_value() || !sim.vertex.empty()) + sim.all;
      if (modes != 1) throw UsageError("similarity: choose exactly one of --pair, --top-k/--vertex, --all");
      if (sim.top_k.has_value() != !sim.vertex.empty()) throw UsageError("similarity: --top-k needs --vertex");
      const CoocGraph g = read_graph_file(sim.graph);
      SimilarityMetric metric;
      try {
        metric = SimilarityMetric::parse(sim.metric, sim.weighted);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      ctx.emit([&](std::ostream& o) {
        o << ctx.provenance() << "\n# u\tv\tscore\n";
        auto row = [&](const SimScore& s) {
          o << g.name(s.u) << '\t' << g.name(s.v) << '\t' << num(s.value) << '\n';
        };
        if (!sim.pair.empty()) {
          const VertexId u = g.require(sim.pair[0]);
          const VertexId v = g.require(sim.pair[1]);
          row({u, v, SimilarityIndex(g, metric)(u, v)});
        } else if (sim.top_k) {
          for (const auto& s : top_k(g, metric, g.require(sim.vertex), *sim.top_k)) row(s);
        } else {
          const auto universe = sim.universe == "all" ? PairUniverse::AllPairs : PairUniverse::CommonNeighborPairs;
          all_pairs_scores(g, metric, sim.threshold, universe, row, ctx.threads());
        }
      });
      return 0;
    }

    if (qap_cmd->parsed()) {
      const CoocGraph g1 = read_graph_file(qap.g1);
      const CoocGraph g2 = read_graph_file(qap.g2);
      const QapResult r = qap_test(g1, g2, qap.permutations, RngSeed{qap.seed}, !qap.weighted, ctx.threads());
      ctx.emit([&](std::ostream& o) {
        o << ctx.provenance(qap.seed) << "\n# rho\tpermutations\tcount_ge\tp_fraction\tcommon_vertices\n";
        o << num(r.rho_observed) << '\t' << r.permutations << '\t' << r.count_ge << '\t' << num(r.p_fraction) << '\t'
          << r.common_vertices << '\n';
      });
      return 0;
    }

    if (nm_cmd->parsed()) {
      const CoocGraph g = read_graph_file(nm.input);
      CoocGraph result;
      if (nm.kind == "rewire") {
        RewireReport report;
        result = rewire(g, nm.iterations.value_or(default_rewire_iterations(g)), RngSeed{nm.seed}, &report);
        ctx.log("rewire: " + std::to_string(report.accepted) + " of " + std::to_string(report.attempted) +
                " swaps accepted");
      } else {
        result = shuffle_labels(g, RngSeed{nm.seed});
      }
      ctx.log(ctx.provenance(nm.seed));
      write_graph_file(nm.output, result);
      return 0;
    }

    if (eb_cmd->parsed()) {
      const CoocGraph g = read_graph_file(eb.graph);
      SimilarityMetric metric;
      try {
        metric = SimilarityMetric::parse(eb.metric, eb.weighted);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const LoadedReference ref = load_reference(g, eb.reference, eb.reference_kind);
      const BinnedCurve curve =
          binned_curve(g, metric, ref.oracle, {eb.bins, eb.include_zeros, RngSeed{eb.seed}, ctx.threads()});
      ctx.emit([&](std::ostream& o) {
        o << ctx.provenance(eb.seed) << '\n';
        o << "# bins=" << curve.bin_count << " lo=" << num(curve.lo) << " hi=" << num(curve.hi)
          << " pairs=" << curve.observations() << '\n';
        o << "# bin_index\tbin_center\tmean_ref\tcount\n";
        for (const auto& r : curve.rows)
          o << r.index << '\t' << num(r.center) << '\t' << num(r.mean) << '\t' << r.count << '\n';
      });
      return 0;
    }

    if (ed_cmd->parsed()) {
      const CoocGraph g = read_graph_file(ed.graph);
      const LoadedReference ref = load_reference(g, ed.reference, ed.reference_kind);
      DistanceOptions options;
      options.max_distance = ed.max_distance;
      options.null_replicas = ed.null_replicas;
      options.seed = RngSeed{ed.seed};
      options.source_sample = ed.sources;
      options.low_count_threshold = ed.low_count;
      options.threads = ctx.threads();
      const DistanceProfile profile = distance_profile(g, ref.oracle, options);
      ctx.emit([&](std::ostream& o) {
        o << ctx.provenance(ed.seed) << "\n# d\tmean\tcount\tnull_mean\tlow_confidence\n";
        for (const auto& r : profile.rows) {
          const auto null_mean = profile.null_mean(r.distance);
          o << r.distance << '\t' << num(r.mean) << '\t' << r.count << '\t'
            << num(null_mean.value_or(std::nan(""))) << '\t' << (profile.low_confidence(r) ? "true" : "false")
            << '\n';
        }
      });
      return 0;
    }
  } catch (const UsageError& e) {
    err << "coocnet: usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "coocnet: error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"coocnet"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace coocnet::cli
