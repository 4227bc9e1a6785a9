#include "infoops/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "infoops/util.hpp"

namespace infoops {

RetweetGraph build_retweet_graph(const std::vector<Tweet>& tweets) {
  std::set<std::string> node_set;
  for (const Tweet& t : tweets) {
    node_set.insert(t.author_id);
    if (t.retweeted_author_id) node_set.insert(*t.retweeted_author_id);
  }

  RetweetGraph g;
  g.nodes.assign(node_set.begin(), node_set.end());
  std::sort(g.nodes.begin(), g.nodes.end(),
            [](const std::string& a, const std::string& b) { return natural_less(a, b); });
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    g.index[g.nodes[i]] = static_cast<int>(i);

  std::map<std::pair<int, int>, int> weights;
  for (const Tweet& t : tweets) {
    if (!t.retweeted_author_id) continue;
    int u = g.index.at(t.author_id);
    int v = g.index.at(*t.retweeted_author_id);
    if (u == v) g.has_self_loop = true;
    ++weights[{u, v}];
  }

  g.out_edges.resize(g.nodes.size());
  g.in_nodes.resize(g.nodes.size());
  for (const auto& [edge, w] : weights) {
    g.out_edges[edge.first].emplace_back(edge.second, w);
    g.in_nodes[edge.second].push_back(edge.first);
  }
  g.edge_count = weights.size();
  return g;
}

RetweetGraph build_retweet_graph(const Corpus& corpus, const SplitDataset& split,
                                 GraphScope scope) {
  if (scope == GraphScope::train) return build_retweet_graph(split.train);
  return build_retweet_graph(corpus.tweets);
}

namespace {

// Undirected projection as sorted distinct-neighbor lists; self-loops dropped.
std::vector<std::vector<int>> undirected_adjacency(const RetweetGraph& g) {
  std::vector<std::set<int>> nbr(g.size());
  for (std::size_t u = 0; u < g.size(); ++u) {
    for (const auto& [v, w] : g.out_edges[u]) {
      if (static_cast<int>(u) == v) continue;
      nbr[u].insert(v);
      nbr[v].insert(static_cast<int>(u));
    }
  }
  std::vector<std::vector<int>> adj(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) adj[i].assign(nbr[i].begin(), nbr[i].end());
  return adj;
}

}  // namespace

std::vector<double> degree_centrality(const RetweetGraph& g) {
  const std::size_t n = g.size();
  std::vector<double> out(n, 0.0);
  if (n <= 1) return out;
  auto adj = undirected_adjacency(g);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = static_cast<double>(adj[i].size()) / static_cast<double>(n - 1);
  return out;
}

std::vector<double> eigenvector_centrality(const RetweetGraph& g, double tol, int max_iter) {
  const std::size_t n = g.size();
  std::vector<double> x(n, 0.0);
  auto adj = undirected_adjacency(g);
  bool any_edge = false;
  for (const auto& a : adj)
    if (!a.empty()) any_edge = true;
  if (!any_edge) return x;

  const double init = 1.0 / std::sqrt(static_cast<double>(n));
  x.assign(n, init);
  double residual = 0.0;
  for (int iter = 0; iter < max_iter; ++iter) {
    // Shifted iteration (I + A)x: same principal eigenvector, but converges
    // on bipartite projections where plain Ax oscillates.
    std::vector<double> y(x);
    for (std::size_t u = 0; u < n; ++u)
      for (int v : adj[u]) y[u] += x[v];
    double norm = 0.0;
    for (double v : y) norm += v * v;
    norm = std::sqrt(norm);
    if (norm == 0.0) return std::vector<double>(n, 0.0);
    for (double& v : y) v /= norm;
    residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) residual += (y[i] - x[i]) * (y[i] - x[i]);
    residual = std::sqrt(residual);
    x = std::move(y);
    if (residual < tol) return x;
  }
  throw ConvergenceError("eigenvector centrality did not converge", residual, max_iter);
}

std::vector<double> pagerank(const RetweetGraph& g, double damping, double tol,
                             int max_iter) {
  const std::size_t n = g.size();
  if (n == 0) return {};
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  std::vector<std::size_t> outdeg(n, 0);
  for (std::size_t u = 0; u < n; ++u) outdeg[u] = g.out_edges[u].size();

  double change = 0.0;
  for (int iter = 0; iter < max_iter; ++iter) {
    double dangling = 0.0;
    for (std::size_t u = 0; u < n; ++u)
      if (outdeg[u] == 0) dangling += x[u];

    std::vector<double> y(n, (1.0 - damping) / static_cast<double>(n) +
                                 damping * dangling / static_cast<double>(n));
    for (std::size_t u = 0; u < n; ++u) {
      if (outdeg[u] == 0) continue;
      double share = damping * x[u] / static_cast<double>(outdeg[u]);
      for (const auto& [v, w] : g.out_edges[u]) y[v] += share;
    }
    change = 0.0;
    for (std::size_t i = 0; i < n; ++i) change += std::abs(y[i] - x[i]);
    x = std::move(y);
    if (change < tol) {
      double sum = 0.0;
      for (double v : x) sum += v;
      for (double& v : x) v /= sum;
      return x;
    }
  }
  throw ConvergenceError("pagerank did not converge", change, max_iter);
}

CentralityTable compute_centrality_table(const RetweetGraph& g) {
  CentralityTable table;
  table.nodes = g.nodes;
  table.index = g.index;
  table.degree = degree_centrality(g);
  table.eigenvector = eigenvector_centrality(g);
  table.pagerank = pagerank(g);
  return table;
}

void write_edge_list(const RetweetGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (std::size_t u = 0; u < g.size(); ++u)
    for (const auto& [v, w] : g.out_edges[u])
      out << g.nodes[u] << ' ' << g.nodes[v] << ' ' << w << '\n';
}

void write_centrality_csv(const CentralityTable& table, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "node,degree,eigenvector,pagerank\n";
  for (std::size_t i = 0; i < table.nodes.size(); ++i) {
    out << table.nodes[i] << ',' << format_fixed(table.degree[i], 12) << ','
        << format_fixed(table.eigenvector[i], 12) << ','
        << format_fixed(table.pagerank[i], 12) << '\n';
  }
}

CentralityTable read_centrality_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  CentralityTable table;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string node, d, e, p;
    std::getline(row, node, ',');
    std::getline(row, d, ',');
    std::getline(row, e, ',');
    std::getline(row, p, ',');
    table.index[node] = static_cast<int>(table.nodes.size());
    table.nodes.push_back(node);
    table.degree.push_back(std::stod(d));
    table.eigenvector.push_back(std::stod(e));
    table.pagerank.push_back(std::stod(p));
  }
  return table;
}

}  // namespace infoops
