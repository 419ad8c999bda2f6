#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include "tvgf/csv.hpp"
#include "tvgf/filters.hpp"
#include "tvgf/knn.hpp"
#include "tvgf/sweep.hpp"

namespace {

using tvgf::csv::format_short;

struct GraphArgs {
  std::string coords_path;
  bool coords_header = false;
  int k = 5;
  std::string weighting = "binary";
  double sigma = 0.0;
};

struct ParamArgs {
  int max_hops = 1;    // --K
  int half_window = 1; // --M
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 0.0;
  double gamma_spatial = -1.0;   // < 0 means "use --gamma"
  double gamma_temporal = -1.0;
  bool include_self = true;

  tvgf::KHopParams khop() const {
    return {max_hops, beta, gamma_spatial >= 0.0 ? gamma_spatial : gamma};
  }
  tvgf::TemporalParams temporal(int t_len) const {
    return {t_len, half_window, alpha,
            gamma_temporal >= 0.0 ? gamma_temporal : gamma};
  }
};

void add_graph_options(CLI::App* cmd, GraphArgs& g) {
  cmd->add_option("--coords", g.coords_path, "coordinates CSV, one node per row")
      ->required();
  cmd->add_flag("--coords-header", g.coords_header,
                "skip a header row in the coordinates CSV");
  cmd->add_option("--knn-k,-k", g.k, "neighbors per node")
      ->default_val(5);
  cmd->add_option("--weighting", g.weighting,
                  "edge weights: binary | inverse-distance | gaussian")
      ->default_val("binary")
      ->check(CLI::IsMember({"binary", "inverse-distance", "gaussian"}));
  cmd->add_option("--sigma", g.sigma,
                  "gaussian kernel width (0 = mean edge distance)");
}

void add_param_options(CLI::App* cmd, ParamArgs& p) {
  cmd->add_option("--K", p.max_hops, "spatial hop count")->default_val(1);
  cmd->add_option("--M", p.half_window, "temporal half-window")
      ->default_val(1);
  cmd->add_option("--alpha", p.alpha, "temporal attenuation in (0,1]")
      ->default_val(1.0);
  cmd->add_option("--beta", p.beta, "spatial attenuation in (0,1]")
      ->default_val(1.0);
  cmd->add_option("--gamma", p.gamma, "selection threshold")
      ->default_val(0.0);
  cmd->add_option("--gamma-spatial", p.gamma_spatial,
                  "override --gamma on the spatial side");
  cmd->add_option("--gamma-temporal", p.gamma_temporal,
                  "override --gamma on the temporal side");
  cmd->add_option("--include-self", p.include_self,
                  "include each node's own value at lag 0")
      ->default_val(true);
}

tvgf::EdgeWeighting weighting_of(const std::string& name) {
  if (name == "inverse-distance") return tvgf::EdgeWeighting::inverse_distance;
  if (name == "gaussian") return tvgf::EdgeWeighting::gaussian;
  return tvgf::EdgeWeighting::binary;
}

tvgf::Graph load_graph(const GraphArgs& args) {
  const Eigen::MatrixXd coords =
      tvgf::csv::load_matrix(args.coords_path, args.coords_header);
  return tvgf::build_knn_graph(coords, args.k, weighting_of(args.weighting),
                               args.sigma);
}

int run_build_graph(const GraphArgs& gargs, const std::string& out_path) {
  const tvgf::Graph g = load_graph(gargs);
  tvgf::csv::save_edge_list(out_path, g);
  const Eigen::VectorXd deg =
      tvgf::degree_vector(tvgf::logical_adjacency(g));
  std::cout << "nodes: " << g.n_vertices() << "\n"
            << "edges: " << g.n_edges() << "\n"
            << "degree min/max: " << deg.minCoeff() << "/" << deg.maxCoeff()
            << "\n"
            << "wrote " << out_path << "\n";
  return 0;
}

int run_filter(const GraphArgs& gargs, const ParamArgs& pargs,
               const std::string& signal_path, bool signal_header,
               const std::string& kind, bool recursive,
               const std::string& out_path) {
  const tvgf::Graph g = load_graph(gargs);
  const tvgf::TimeVertexSignal x(
      tvgf::csv::load_matrix(signal_path, signal_header));

  tvgf::FilterConfig cfg;
  cfg.khop = pargs.khop();
  cfg.temporal = pargs.temporal(static_cast<int>(x.n_instants()));
  cfg.kind =
      kind == "median" ? tvgf::FilterKind::median : tvgf::FilterKind::mean;
  cfg.include_self = pargs.include_self;
  cfg.validate();
  if (tvgf::effective_temporal_window(cfg.temporal) == 0)
    std::cerr << "warning: alpha <= temporal gamma, the temporal window "
                 "collapsed to lag 0\n";

  const auto start = std::chrono::steady_clock::now();
  const tvgf::PreparedFilter filter(g, cfg, recursive);
  tvgf::FilterStats stats;
  const tvgf::TimeVertexSignal y = filter.apply(x, &stats);
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;

  tvgf::csv::save_matrix(out_path, y.values());
  std::cout << "selection nonzeros: " << filter.selection_nonzeros() << "\n"
            << "elapsed: " << format_short(elapsed.count()) << " s\n";
  if (stats.empty_neighborhoods > 0)
    std::cout << "pass-through entries (empty neighborhoods): "
              << stats.empty_neighborhoods << "\n";
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

int run_sweep_cmd(const std::string& spec_path, const std::string& out_dir,
                  int threads, bool seed_given, std::uint64_t seed) {
  tvgf::ExperimentSpec spec = tvgf::ExperimentSpec::parse_file(spec_path);
  if (seed_given) spec.seed = seed;
  std::filesystem::create_directories(out_dir);
  const tvgf::ExperimentResult result = tvgf::run_sweep(spec, threads);

  const std::string trials_path = out_dir + "/trials.csv";
  const std::string aggregate_path = out_dir + "/aggregate.csv";
  const std::string config_path = out_dir + "/run_config.txt";
  result.write_trials_csv(trials_path);
  result.write_aggregate_csv(aggregate_path);
  tvgf::write_config_echo(config_path, spec, result.rng_algorithm);

  std::cout << "filter            input_snr_db   mean_out_snr_db   std\n";
  for (const tvgf::AggregateRecord& a : result.aggregate()) {
    std::cout << a.filter;
    for (std::size_t i = a.filter.size(); i < 18; ++i) std::cout << ' ';
    std::string in_db = format_short(a.input_snr_db);
    std::cout << in_db;
    for (std::size_t i = in_db.size(); i < 15; ++i) std::cout << ' ';
    std::string mean_db = format_short(a.mean_output_snr_db);
    std::cout << mean_db;
    for (std::size_t i = mean_db.size(); i < 18; ++i) std::cout << ' ';
    std::cout << format_short(a.std_output_snr_db) << "\n";
  }
  std::cout << "wrote " << trials_path << ", " << aggregate_path << ", "
            << config_path << "\n";
  return 0;
}

int run_inspect(const GraphArgs& gargs, const ParamArgs& pargs, int t_len,
                const std::string& export_asp,
                const std::string& export_khop, long vertex, long instant) {
  const tvgf::Graph g = load_graph(gargs);
  const tvgf::SelectionMatrix logical = tvgf::logical_adjacency(g);
  const tvgf::SelectionMatrix spatial =
      tvgf::khop_attenuated(logical, pargs.khop());
  const tvgf::TemporalParams temporal = pargs.temporal(t_len);
  temporal.validate();

  const Eigen::VectorXd deg = tvgf::degree_vector(logical);
  std::cout << "nodes: " << g.n_vertices() << "\n"
            << "edges: " << g.n_edges() << "\n"
            << "degree min/max/mean: " << deg.minCoeff() << "/"
            << deg.maxCoeff() << "/" << format_short(deg.mean()) << "\n"
            << "logical adjacency nonzeros: " << logical.n_nonzeros() << "\n"
            << "k-hop selection nonzeros: " << spatial.n_nonzeros() << "\n"
            << "effective temporal window: "
            << tvgf::effective_temporal_window(temporal) << " (M = "
            << temporal.half_window << ")\n"
            << "node-selecting graph: dim "
            << g.n_vertices() * static_cast<long>(t_len) << ", nonzeros "
            << tvgf::node_selecting_nnz(spatial, temporal,
                                        pargs.include_self)
            << "\n";

  if (!export_khop.empty()) {
    tvgf::csv::save_coo(export_khop, spatial);
    std::cout << "wrote " << export_khop << "\n";
  }
  const bool want_neighborhood = vertex >= 0 && instant >= 0;
  if (!export_asp.empty() || want_neighborhood) {
    const tvgf::SelectionMatrix product =
        tvgf::node_selecting_graph(spatial, temporal);
    if (!export_asp.empty()) {
      tvgf::csv::save_coo(export_asp, product);
      std::cout << "wrote " << export_asp << "\n";
    }
    if (want_neighborhood) {
      const tvgf::NeighborhoodSet set =
          tvgf::neighborhood(product, vertex, instant);
      std::cout << "neighborhood of (vertex " << vertex << ", instant "
                << instant << "): " << set.members.size() << " members\n";
      for (const auto& [offset, nodes] : set.by_offset) {
        std::cout << "  offset " << offset << " (" << nodes.size() << "):";
        for (const auto& node : nodes)
          std::cout << " (" << node.vertex << "," << node.instant << ")";
        std::cout << "\n";
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "time-vertex graph filters for sensor-network signal denoising"};
  app.require_subcommand(1);

  GraphArgs gargs;
  ParamArgs pargs;
  std::string out_path, signal_path, kind = "mean", spec_path, out_dir;
  std::string export_asp, export_khop;
  bool signal_header = false, recursive = false;
  int threads = 0, t_len = 2;
  long vertex = -1, instant = -1;
  std::uint64_t seed = 0;

  CLI::App* build = app.add_subcommand(
      "build-graph", "build a k-NN graph and write its edge list");
  add_graph_options(build, gargs);
  build->add_option("--out", out_path, "edge-list CSV to write")->required();

  CLI::App* filter = app.add_subcommand(
      "filter", "denoise a signal CSV with a mean or median filter");
  add_graph_options(filter, gargs);
  add_param_options(filter, pargs);
  filter->add_option("--signal", signal_path, "signal CSV, N rows x T columns")
      ->required();
  filter->add_flag("--signal-header", signal_header,
                   "skip a header row in the signal CSV");
  filter->add_option("--kind", kind, "mean | median")
      ->default_val("mean")
      ->check(CLI::IsMember({"mean", "median"}));
  filter->add_option("--recursive", recursive,
                     "median only: reuse filtered past values");
  filter->add_option("--out", out_path, "filtered CSV to write")->required();

  CLI::App* sweep = app.add_subcommand(
      "sweep", "run an SNR sweep from a spec file and write result CSVs");
  sweep->add_option("--spec", spec_path, "sweep spec file")->required();
  sweep->add_option("--out-dir", out_dir, "output directory")->required();
  sweep->add_option("--threads", threads,
                    "worker threads (0 = TVGF_THREADS or hardware)");
  CLI::Option* seed_opt =
      sweep->add_option("--seed", seed, "override the spec's seed");

  CLI::App* inspect = app.add_subcommand(
      "inspect", "report graph and selection-matrix statistics");
  add_graph_options(inspect, gargs);
  add_param_options(inspect, pargs);
  inspect->add_option("--T", t_len, "number of time instants")->required();
  inspect->add_option("--export-asp", export_asp,
                      "write the node-selecting graph in coordinate form");
  inspect->add_option("--export-khop", export_khop,
                      "write the k-hop selection in coordinate form");
  CLI::Option* vertex_opt = inspect->add_option(
      "--vertex", vertex, "print this vertex's neighborhood");
  CLI::Option* instant_opt = inspect->add_option(
      "--instant", instant, "instant for --vertex (both required together)");
  vertex_opt->needs(instant_opt);
  instant_opt->needs(vertex_opt);

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) return run_build_graph(gargs, out_path);
    if (filter->parsed())
      return run_filter(gargs, pargs, signal_path, signal_header, kind,
                        recursive, out_path);
    if (sweep->parsed())
      return run_sweep_cmd(spec_path, out_dir, threads,
                           seed_opt->count() > 0, seed);
    if (inspect->parsed())
      return run_inspect(gargs, pargs, t_len, export_asp, export_khop,
                         vertex, instant);
  } catch (const tvgf::FileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
