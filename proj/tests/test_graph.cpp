#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "infoops/graph.hpp"
#include "infoops/rng.hpp"

using namespace infoops;

namespace {

Tweet retweet(const std::string& id, const std::string& from, const std::string& to) {
  Tweet t;
  t.tweet_id = id;
  t.author_id = from;
  t.is_retweet = true;
  t.retweeted_author_id = to;
  t.campaign = "c1";
  return t;
}

Tweet original(const std::string& id, const std::string& author) {
  Tweet t;
  t.tweet_id = id;
  t.author_id = author;
  t.campaign = "c1";
  return t;
}

RetweetGraph graph_from_edges(const std::vector<std::pair<std::string, std::string>>& edges,
                              const std::vector<std::string>& extra_nodes = {}) {
  std::vector<Tweet> tweets;
  int i = 0;
  for (const auto& [u, v] : edges) tweets.push_back(retweet("e" + std::to_string(i++), u, v));
  for (const auto& n : extra_nodes) tweets.push_back(original("o" + std::to_string(i++), n));
  return build_retweet_graph(tweets);
}

// Independent dense PageRank oracle: straight power iteration over the
// transition matrix, rank split evenly across distinct out-edges.
std::vector<double> pagerank_oracle(const RetweetGraph& g, double damping = 0.85) {
  const std::size_t n = g.size();
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  for (int iter = 0; iter < 5000; ++iter) {
    std::vector<double> y(n, 0.0);
    double dangling = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      if (g.out_edges[u].empty()) {
        dangling += x[u];
        continue;
      }
      for (const auto& [v, w] : g.out_edges[u])
        y[v] += x[u] / static_cast<double>(g.out_edges[u].size());
    }
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double next = (1.0 - damping) / static_cast<double>(n) +
                    damping * (y[i] + dangling / static_cast<double>(n));
      delta += std::abs(next - x[i]);
      y[i] = next;
    }
    x = y;
    if (delta < 1e-14) break;
  }
  return x;
}

}  // namespace

TEST_CASE("graph construction collapses parallel retweets") {
  auto g = build_retweet_graph({retweet("a", "u1", "u2"), retweet("b", "u1", "u2")});
  CHECK(g.size() == 2);
  CHECK(g.edge_count == 1);
  int u1 = g.node_of("u1");
  REQUIRE(g.out_edges[u1].size() == 1);
  CHECK(g.out_edges[u1][0].second == 2);
}

TEST_CASE("graph keeps directions distinct and handles no retweets") {
  auto g = graph_from_edges({{"u1", "u2"}, {"u2", "u1"}});
  CHECK(g.edge_count == 2);
  auto empty = build_retweet_graph({original("a", "u1"), original("b", "u2")});
  CHECK(empty.size() == 2);
  CHECK(empty.edge_count == 0);
}

TEST_CASE("nodes are in ascending natural order") {
  auto g = graph_from_edges({{"12", "3"}, {"5", "12"}});
  CHECK(g.nodes == std::vector<std::string>{"3", "5", "12"});
}

TEST_CASE("degree centrality on path, star, clique fixtures") {
  auto path = graph_from_edges({{"a", "b"}, {"b", "c"}});
  auto d = degree_centrality(path);
  CHECK(d[path.node_of("a")] == doctest::Approx(0.5));
  CHECK(d[path.node_of("b")] == doctest::Approx(1.0));
  CHECK(d[path.node_of("c")] == doctest::Approx(0.5));

  auto star = graph_from_edges({{"l1", "c"}, {"l2", "c"}, {"l3", "c"}, {"l4", "c"}});
  auto ds = degree_centrality(star);
  CHECK(ds[star.node_of("c")] == doctest::Approx(1.0));
  for (const char* leaf : {"l1", "l2", "l3", "l4"})
    CHECK(ds[star.node_of(leaf)] == doctest::Approx(0.25));

  auto clique = graph_from_edges(
      {{"a", "b"}, {"b", "a"}, {"a", "c"}, {"c", "a"}, {"b", "c"}, {"c", "b"}});
  for (double v : degree_centrality(clique)) CHECK(v == doctest::Approx(1.0));

  auto isolated = graph_from_edges({{"a", "b"}}, {"z"});
  CHECK(degree_centrality(isolated)[isolated.node_of("z")] == 0.0);

  CHECK(degree_centrality(graph_from_edges({}, {"only"}))[0] == 0.0);
}

TEST_CASE("degree centrality ignores edge direction") {
  auto fwd = graph_from_edges({{"a", "b"}, {"b", "c"}, {"a", "c"}});
  auto rev = graph_from_edges({{"b", "a"}, {"c", "b"}, {"c", "a"}});
  CHECK(degree_centrality(fwd) == degree_centrality(rev));
}

TEST_CASE("eigenvector centrality fixtures") {
  auto pair = graph_from_edges({{"a", "b"}});
  auto e = eigenvector_centrality(pair);
  CHECK(e[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
  CHECK(e[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));

  auto edgeless = build_retweet_graph(
      {original("a", "u1"), original("b", "u2"), original("c", "u3"), original("d", "u4")});
  for (double v : eigenvector_centrality(edgeless)) CHECK(v == 0.0);

  auto star = graph_from_edges({{"l1", "c"}, {"l2", "c"}, {"l3", "c"}, {"l4", "c"}});
  auto es = eigenvector_centrality(star);
  double center = es[star.node_of("c")];
  double leaf = es[star.node_of("l1")];
  CHECK(center > leaf);
  for (const char* l : {"l2", "l3", "l4"})
    CHECK(es[star.node_of(l)] == doctest::Approx(leaf).epsilon(1e-9));
  // Star principal eigenvector: center 1/sqrt(2), leaves 1/sqrt(8).
  CHECK(center == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
  CHECK(leaf == doctest::Approx(1.0 / std::sqrt(8.0)).epsilon(1e-6));

  double norm = 0.0;
  for (double v : es) norm += v * v;
  CHECK(std::sqrt(norm) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("eigenvector centrality is uniform on regular connected projections") {
  // Undirected cycle of 6 nodes (2-regular).
  auto cycle = graph_from_edges(
      {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "e"}, {"e", "f"}, {"f", "a"}});
  auto e = eigenvector_centrality(cycle);
  for (double v : e) CHECK(v == doctest::Approx(1.0 / std::sqrt(6.0)).epsilon(1e-6));
}

TEST_CASE("pagerank fixtures") {
  CHECK(pagerank(graph_from_edges({}, {"solo"}))[0] == doctest::Approx(1.0));

  auto mutual = graph_from_edges({{"a", "b"}, {"b", "a"}});
  for (double v : pagerank(mutual)) CHECK(v == doctest::Approx(0.5).epsilon(1e-9));

  auto chain = graph_from_edges({{"a", "b"}, {"b", "c"}});
  auto pr = pagerank(chain);
  auto oracle = pagerank_oracle(chain);
  for (std::size_t i = 0; i < pr.size(); ++i)
    CHECK(pr[i] == doctest::Approx(oracle[i]).epsilon(1e-8));
}

TEST_CASE("pagerank matches the oracle on random 50-node graphs and sums to 1") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    std::vector<std::pair<std::string, std::string>> edges;
    int n_edges = 30 + static_cast<int>(rng.below(100));
    for (int i = 0; i < n_edges; ++i) {
      int u = static_cast<int>(rng.below(50));
      int v = static_cast<int>(rng.below(50));
      if (u == v) continue;
      edges.push_back({"n" + std::to_string(u), "n" + std::to_string(v)});
    }
    std::vector<std::string> all_nodes;
    for (int i = 0; i < 50; ++i) all_nodes.push_back("n" + std::to_string(i));
    auto g = graph_from_edges(edges, all_nodes);
    auto pr = pagerank(g);
    auto oracle = pagerank_oracle(g);
    double sum = 0.0;
    for (std::size_t i = 0; i < pr.size(); ++i) {
      CHECK(std::abs(pr[i] - oracle[i]) < 1e-8);
      CHECK(pr[i] > 0.0);
      sum += pr[i];
    }
    CHECK(std::abs(sum - 1.0) < 1e-9);
  }
}

TEST_CASE("centrality table composition and 2-node mutual values") {
  auto mutual = graph_from_edges({{"a", "b"}, {"b", "a"}});
  auto table = compute_centrality_table(mutual);
  for (const char* node : {"a", "b"}) {
    int r = table.row_of(node);
    CHECK(table.degree[r] == doctest::Approx(1.0));
    CHECK(table.eigenvector[r] == doctest::Approx(0.7071068).epsilon(1e-6));
    CHECK(table.pagerank[r] == doctest::Approx(0.5).epsilon(1e-9));
  }

  auto solo = graph_from_edges({}, {"only"});
  auto ts = compute_centrality_table(solo);
  CHECK(ts.degree[0] == 0.0);
  CHECK(ts.eigenvector[0] == 0.0);
  CHECK(ts.pagerank[0] == doctest::Approx(1.0));

  CHECK(table.nodes.size() == mutual.size());
  CHECK_THROWS_AS(table.row_of("missing"), std::out_of_range);
}

TEST_CASE("centrality measures are equivariant under relabeling") {
  auto g1 = graph_from_edges({{"a", "b"}, {"b", "c"}, {"c", "a"}, {"a", "c"}});
  auto g2 = graph_from_edges({{"x", "y"}, {"y", "z"}, {"z", "x"}, {"x", "z"}});
  CHECK(degree_centrality(g1) == degree_centrality(g2));
  auto p1 = pagerank(g1), p2 = pagerank(g2);
  for (std::size_t i = 0; i < p1.size(); ++i) CHECK(p1[i] == doctest::Approx(p2[i]));
}

TEST_CASE("edge list and centrality CSV round trips") {
  auto g = graph_from_edges({{"u1", "u2"}, {"u1", "u2"}, {"u2", "u3"}});
  auto dir = std::filesystem::temp_directory_path();
  write_edge_list(g, dir / "infoops_edges.txt");
  auto table = compute_centrality_table(g);
  write_centrality_csv(table, dir / "infoops_centrality.csv");
  auto back = read_centrality_csv(dir / "infoops_centrality.csv");
  REQUIRE(back.nodes == table.nodes);
  for (std::size_t i = 0; i < back.nodes.size(); ++i) {
    CHECK(back.degree[i] == doctest::Approx(table.degree[i]).epsilon(1e-10));
    CHECK(back.pagerank[i] == doctest::Approx(table.pagerank[i]).epsilon(1e-10));
  }
}

TEST_CASE("train scope uses only train tweets") {
  Corpus c;
  c.campaign = "c1";
  Tweet early = retweet("e", "A", "B");
  early.timestamp = 0;
  Tweet late = retweet("l", "C", "D");
  late.timestamp = 100;
  c.tweets = {early, late};
  SplitDataset s = temporal_split(c, 100, 0);
  auto train_g = build_retweet_graph(c, s, GraphScope::train);
  auto all_g = build_retweet_graph(c, s, GraphScope::all);
  CHECK(train_g.edge_count == 1);
  CHECK(all_g.edge_count == 2);
}
