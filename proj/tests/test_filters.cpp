#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "tvgf/filters.hpp"

using tvgf::FilterConfig;
using tvgf::FilterKind;
using tvgf::FilterStats;
using tvgf::Graph;
using tvgf::SelectionMatrix;
using tvgf::SelectionTag;
using tvgf::SparseMat;
using tvgf::TimeVertexSignal;

namespace {

Graph path3() { return Graph(3, {{0, 1, 1.0}, {1, 2, 1.0}}); }

Graph single_node() { return Graph(1, {}); }

Graph random_graph(int n, double p, std::mt19937_64& gen) {
  return Graph::from_adjacency(oracle::random_binary_adjacency(n, p, gen));
}

FilterConfig config(int t_len, int max_hops = 1, double beta = 1.0,
                    double gamma_s = 0.0, int m = 1, double alpha = 1.0,
                    double gamma_t = 0.0, bool include_self = true) {
  FilterConfig cfg;
  cfg.khop = {max_hops, beta, gamma_s};
  cfg.temporal = {t_len, m, alpha, gamma_t};
  cfg.include_self = include_self;
  return cfg;
}

TimeVertexSignal row_signal(std::initializer_list<double> values) {
  Eigen::MatrixXd x(1, static_cast<Eigen::Index>(values.size()));
  Eigen::Index t = 0;
  for (double v : values) x(0, t++) = v;
  return TimeVertexSignal(x);
}

}  // namespace

TEST_CASE("neighborhood of the pure temporal chain") {
  const SelectionMatrix ns = tvgf::node_selecting_graph(
      tvgf::logical_adjacency(single_node()), {5, 1, 1.0, 0.0});

  const auto interior = tvgf::neighborhood(ns, 0, 2);
  REQUIRE(interior.members.size() == 3);
  CHECK(interior.by_offset.at(0).size() == 1);
  CHECK(interior.by_offset.at(1).size() == 2);

  const auto boundary = tvgf::neighborhood(ns, 0, 0);
  REQUIRE(boundary.members.size() == 2);
  for (const auto& node : boundary.members) CHECK(node.instant >= 0);
  CHECK(boundary.by_offset.at(1).size() == 1);  // only the forward offset
}

TEST_CASE("neighborhood of the P3 interior center matches the block formula") {
  const Graph g = path3();
  const SelectionMatrix ns = tvgf::node_selecting_graph(
      tvgf::spatial_selection(g, {1, 1.0, 0.0}), {4, 1, 1.0, 0.0});
  const auto set = tvgf::neighborhood(ns, 1, 2);
  // center vertex 1: spatial {0,1,2} at t-1, t, t+1 = 9 members
  REQUIRE(set.members.size() == 9);
  std::set<std::pair<Eigen::Index, Eigen::Index>> expect;
  for (Eigen::Index v : {0, 1, 2})
    for (Eigen::Index t : {1, 2, 3}) expect.insert({v, t});
  for (const auto& node : set.members)
    CHECK(expect.count({node.vertex, node.instant}) == 1);

  // partition is disjoint and covers members
  std::size_t total = 0;
  std::set<std::pair<Eigen::Index, Eigen::Index>> seen;
  for (const auto& [offset, nodes] : set.by_offset) {
    total += nodes.size();
    for (const auto& node : nodes) {
      CHECK(std::abs(node.instant - set.center.instant) == offset);
      CHECK(seen.insert({node.vertex, node.instant}).second);
    }
  }
  CHECK(total == set.members.size());
}

TEST_CASE("neighborhood validates inputs") {
  const SelectionMatrix temporal = tvgf::temporal_adjacency(4, 1);
  CHECK_THROWS_AS(tvgf::neighborhood(temporal, 0, 0), std::invalid_argument);

  const SelectionMatrix ns = tvgf::node_selecting_graph(
      tvgf::logical_adjacency(path3()), {3, 1, 1.0, 0.0});
  CHECK_THROWS_AS(tvgf::neighborhood(ns, 3, 0), std::out_of_range);
  CHECK_THROWS_AS(tvgf::neighborhood(ns, 0, 3), std::out_of_range);
}

TEST_CASE("mean filter leaves constants unchanged") {
  const Graph g = path3();
  const TimeVertexSignal x(Eigen::MatrixXd::Constant(3, 6, 2.5));
  for (bool include_self : {true, false}) {
    const FilterConfig cfg = config(6, 2, 0.7, 0.1, 2, 0.8, 0.2, include_self);
    const TimeVertexSignal y = tvgf::mean_filter_sequential(x, cfg, g);
    CHECK((y.values().array() - 2.5).abs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("sequential mean is the boundary-clamped moving average") {
  const TimeVertexSignal x = row_signal({0, 0, 3, 0, 0});
  const TimeVertexSignal y =
      tvgf::mean_filter_sequential(x, config(5), single_node());
  Eigen::MatrixXd expected(1, 5);
  expected << 0, 1, 1, 1, 0;
  CHECK(y.values() == expected);
}

TEST_CASE("batch mean with the identity selection is a no-op") {
  // window 0 on an edgeless graph leaves only the diagonal identity
  const Graph g(4, {});
  const SelectionMatrix identity = tvgf::node_selecting_graph(
      tvgf::logical_adjacency(g), {3, 1, 0.5, 0.5});
  std::mt19937_64 gen(97);
  const TimeVertexSignal x(oracle::random_matrix(4, 3, gen));
  const TimeVertexSignal y = tvgf::mean_filter_batch(x, identity);
  CHECK(y.values() == x.values());
}

TEST_CASE("batch mean rejects zero-degree rows with a named node") {
  const Graph g(2, {});
  const SelectionMatrix sp =
      tvgf::strong_product(tvgf::logical_adjacency(g), 1);
  const TimeVertexSignal x(Eigen::MatrixXd::Constant(2, 1, 1.0));
  CHECK_THROWS_WITH_AS(tvgf::mean_filter_batch(x, sp),
                       doctest::Contains("vertex 0"), std::runtime_error);
}

TEST_CASE("batch and sequential means agree within 1e-12") {
  std::mt19937_64 gen(101);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 25; ++rep) {
    const int n = 2 + static_cast<int>(gen() % 9);
    const int t_len = 2 + static_cast<int>(gen() % 9);
    const Graph g = random_graph(n, 0.35, gen);
    const FilterConfig cfg =
        config(t_len, 1 + static_cast<int>(gen() % 3), 0.3 + 0.7 * u(gen),
               0.5 * u(gen), 1 + static_cast<int>(gen() % (t_len - 1)),
               0.3 + 0.7 * u(gen), 0.5 * u(gen), true);
    const TimeVertexSignal x(oracle::random_matrix(n, t_len, gen, 3.0));

    const TimeVertexSignal seq = tvgf::mean_filter_sequential(x, cfg, g);
    const SelectionMatrix ns = tvgf::node_selecting_graph(
        tvgf::spatial_selection(g, cfg.khop), cfg.temporal);
    const TimeVertexSignal batch = tvgf::mean_filter_batch(x, ns);
    CHECK((seq.values() - batch.values()).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("median filter removes an isolated spike") {
  const TimeVertexSignal x = row_signal({0, 0, 9, 0, 0});
  const TimeVertexSignal y =
      tvgf::median_filter(x, config(5), single_node());
  CHECK(y.values().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("median filter leaves constants unchanged") {
  const Graph g = path3();
  const TimeVertexSignal x(Eigen::MatrixXd::Constant(3, 5, -1.25));
  const TimeVertexSignal y = tvgf::median_filter(x, config(5, 2), g);
  CHECK((y.values().array() + 1.25).abs().maxCoeff() == 0.0);
}

TEST_CASE("recursive median reuses filtered past values") {
  const TimeVertexSignal x = row_signal({0, 9, 0, 9, 9});
  const Graph g = single_node();
  const TimeVertexSignal plain =
      tvgf::median_filter(x, config(5), g, /*recursive=*/false);
  Eigen::MatrixXd expected_plain(1, 5);
  expected_plain << 4.5, 0, 9, 9, 9;
  CHECK(plain.values() == expected_plain);

  const TimeVertexSignal rec =
      tvgf::median_filter(x, config(5), g, /*recursive=*/true);
  Eigen::MatrixXd expected_rec(1, 5);
  expected_rec << 4.5, 4.5, 4.5, 9, 9;
  CHECK(rec.values() == expected_rec);
}

TEST_CASE("non-recursive median equals the exhaustive neighborhood oracle") {
  std::mt19937_64 gen(103);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 25; ++rep) {
    const int n = 2 + static_cast<int>(gen() % 5);  // <= 6
    const int t_len = 2 + static_cast<int>(gen() % 5);
    const bool include_self = (gen() % 2) == 0;
    const Graph g = random_graph(n, 0.4, gen);
    const FilterConfig cfg =
        config(t_len, 1 + static_cast<int>(gen() % 2), 0.4 + 0.6 * u(gen),
               0.4 * u(gen), 1 + static_cast<int>(gen() % (t_len - 1)),
               0.4 + 0.6 * u(gen), 0.4 * u(gen), include_self);
    const TimeVertexSignal x(oracle::random_matrix(n, t_len, gen, 2.0));
    const TimeVertexSignal got = tvgf::median_filter(x, cfg, g);

    // independent path: dense attenuated k-hop, dense block assembly,
    // explicit row scan, full-sort median
    const Eigen::MatrixXd spatial = oracle::power_threshold(
        oracle::dense(g.adjacency()), cfg.khop.max_hops, cfg.khop.beta,
        cfg.khop.gamma);
    const Eigen::MatrixXd product = oracle::dense_node_selecting(
        spatial, t_len, cfg.temporal.half_window, cfg.temporal.alpha,
        cfg.temporal.gamma, include_self);
    for (int t = 0; t < t_len; ++t)
      for (int i = 0; i < n; ++i) {
        const auto members =
            oracle::neighborhood_members(product, n, i, t);
        if (members.empty()) {
          CHECK(got.values()(i, t) == x.values()(i, t));
          continue;
        }
        std::vector<double> vals;
        for (const auto& [v, s] : members) vals.push_back(x.values()(v, s));
        CHECK(got.values()(i, t) == oracle::median_of(vals));
      }
  }
}

TEST_CASE("filters commute with shifts and scalings") {
  std::mt19937_64 gen(107);
  const Graph g = random_graph(6, 0.4, gen);
  const FilterConfig cfg = config(7, 2, 0.8, 0.1, 2, 0.9, 0.3);
  const Eigen::MatrixXd base = oracle::random_matrix(6, 7, gen);
  const TimeVertexSignal x(base);
  const TimeVertexSignal shifted(base.array() + 3.25);
  const TimeVertexSignal scaled(base * 2.5);

  for (FilterKind kind : {FilterKind::mean, FilterKind::median}) {
    FilterConfig c = cfg;
    c.kind = kind;
    const auto run = [&](const TimeVertexSignal& in) {
      return kind == FilterKind::mean
                 ? tvgf::mean_filter_sequential(in, c, g)
                 : tvgf::median_filter(in, c, g);
    };
    const Eigen::MatrixXd y = run(x).values();
    CHECK((run(shifted).values() - (y.array() + 3.25).matrix())
              .cwiseAbs()
              .maxCoeff() < 1e-12);
    CHECK((run(scaled).values() - 2.5 * y).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("mean output stays inside its neighborhood's range") {
  std::mt19937_64 gen(109);
  const int n = 6, t_len = 6;
  const Graph g = random_graph(n, 0.4, gen);
  const FilterConfig cfg = config(t_len, 2, 0.7, 0.1, 2, 0.8, 0.2);
  const TimeVertexSignal x(oracle::random_matrix(n, t_len, gen, 5.0));
  const TimeVertexSignal y = tvgf::mean_filter_sequential(x, cfg, g);

  const Eigen::MatrixXd spatial = oracle::power_threshold(
      oracle::dense(g.adjacency()), cfg.khop.max_hops, cfg.khop.beta,
      cfg.khop.gamma);
  const Eigen::MatrixXd product = oracle::dense_node_selecting(
      spatial, t_len, cfg.temporal.half_window, cfg.temporal.alpha,
      cfg.temporal.gamma);
  for (int t = 0; t < t_len; ++t)
    for (int i = 0; i < n; ++i) {
      const auto members = oracle::neighborhood_members(product, n, i, t);
      REQUIRE(!members.empty());
      double lo = 1e300, hi = -1e300;
      for (const auto& [v, s] : members) {
        lo = std::min(lo, x.values()(v, s));
        hi = std::max(hi, x.values()(v, s));
      }
      CHECK(y.values()(i, t) >= lo - 1e-12);
      CHECK(y.values()(i, t) <= hi + 1e-12);
    }
}

TEST_CASE("empty neighborhoods pass through and are counted") {
  const Graph g(2, {});
  FilterConfig cfg = config(3, 1, 1.0, 0.0, 1, 0.5, 0.5, false);
  std::mt19937_64 gen(113);
  const TimeVertexSignal x(oracle::random_matrix(2, 3, gen));

  FilterStats stats;
  const TimeVertexSignal y = tvgf::mean_filter_sequential(x, cfg, g, &stats);
  CHECK(y.values() == x.values());
  CHECK(stats.empty_neighborhoods == 6);

  FilterStats median_stats;
  const TimeVertexSignal z =
      tvgf::median_filter(x, cfg, g, false, &median_stats);
  CHECK(z.values() == x.values());
  CHECK(median_stats.empty_neighborhoods == 6);
}

TEST_CASE("config validation catches shape mismatches") {
  const Graph g = path3();
  std::mt19937_64 gen(127);
  const TimeVertexSignal x(oracle::random_matrix(3, 4, gen));
  CHECK_THROWS_AS(
      tvgf::mean_filter_sequential(x, config(5), g),  // T mismatch
      std::invalid_argument);
  const TimeVertexSignal wrong_rows(oracle::random_matrix(2, 4, gen));
  CHECK_THROWS_AS(tvgf::mean_filter_sequential(wrong_rows, config(4), g),
                  std::invalid_argument);
}

TEST_CASE("prepared filter matches the standalone entry points") {
  std::mt19937_64 gen(131);
  const Graph g = random_graph(7, 0.4, gen);
  const TimeVertexSignal x(oracle::random_matrix(7, 6, gen));

  FilterConfig mean_cfg = config(6, 2, 0.8, 0.1, 2, 0.9, 0.2);
  const tvgf::PreparedFilter mean_f(g, mean_cfg);
  // include_self mean runs through the batch path
  const SelectionMatrix ns = tvgf::node_selecting_graph(
      tvgf::spatial_selection(g, mean_cfg.khop), mean_cfg.temporal);
  CHECK(mean_f.apply(x).values() ==
        tvgf::mean_filter_batch(x, ns).values());
  CHECK(mean_f.selection_nonzeros() == ns.n_nonzeros());

  FilterConfig med_cfg = mean_cfg;
  med_cfg.kind = FilterKind::median;
  const tvgf::PreparedFilter med_f(g, med_cfg, true);
  CHECK(med_f.apply(x).values() ==
        tvgf::median_filter(x, med_cfg, g, true).values());
}
