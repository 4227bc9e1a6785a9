#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "infoops/corpus.hpp"
#include "infoops/splitter.hpp"

namespace infoops {

// Directed retweet network: edge u -> v means u retweeted v at least once.
// Parallel retweets collapse to one edge carrying a count.
struct RetweetGraph {
  std::vector<std::string> nodes;  // ascending natural order
  std::map<std::string, int> index;
  std::vector<std::vector<std::pair<int, int>>> out_edges;  // (target, weight)
  std::vector<std::vector<int>> in_nodes;
  std::size_t edge_count = 0;
  bool has_self_loop = false;

  int node_of(const std::string& id) const {
    auto it = index.find(id);
    if (it == index.end()) throw std::out_of_range("unknown user '" + id + "'");
    return it->second;
  }
  std::size_t size() const { return nodes.size(); }
};

enum class GraphScope { train, all };

RetweetGraph build_retweet_graph(const std::vector<Tweet>& tweets);
RetweetGraph build_retweet_graph(const Corpus& corpus, const SplitDataset& split,
                                 GraphScope scope);

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual, int iterations)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + " after " +
                           std::to_string(iterations) + " iterations)"),
        residual(residual),
        iterations(iterations) {}
  double residual;
  int iterations;
};

// Distinct-neighbor count on the undirected projection, normalized by n-1.
std::vector<double> degree_centrality(const RetweetGraph& g);

// Shifted power iteration on the undirected projection, Euclidean-normalized
// each step. Edgeless graphs yield the zero vector.
std::vector<double> eigenvector_centrality(const RetweetGraph& g, double tol = 1e-8,
                                           int max_iter = 1000);

// Standard damped PageRank on the directed graph with uniform teleport and
// uniform redistribution of dangling mass. Values sum to 1.
std::vector<double> pagerank(const RetweetGraph& g, double damping = 0.85,
                             double tol = 1e-10, int max_iter = 200);

struct CentralityTable {
  std::vector<std::string> nodes;
  std::map<std::string, int> index;
  std::vector<double> degree;
  std::vector<double> eigenvector;
  std::vector<double> pagerank;

  int row_of(const std::string& id) const {
    auto it = index.find(id);
    if (it == index.end()) throw std::out_of_range("unknown user '" + id + "'");
    return it->second;
  }
};

CentralityTable compute_centrality_table(const RetweetGraph& g);

// "u v weight" per line.
void write_edge_list(const RetweetGraph& g, const std::filesystem::path& path);
// CSV: node,degree,eigenvector,pagerank.
void write_centrality_csv(const CentralityTable& table, const std::filesystem::path& path);
CentralityTable read_centrality_csv(const std::filesystem::path& path);

}  // namespace infoops
