#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qmix/exact.hpp"

namespace qmix {

using VertexId = int;

enum class WeightClass { Unit, Integer, Real };
enum class MatrixKind { Adjacency, Laplacian, SignlessLaplacian };

const char* to_string(WeightClass w);
const char* to_string(MatrixKind k);
MatrixKind matrix_kind_from_string(std::string_view s);

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  double w = 1.0;
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what, int line = 0)
      : std::runtime_error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Simple loopless undirected graph with strictly positive edge weights on
// vertices 0..n-1. Edges are stored with u < v, sorted lexicographically.
class Graph {
 public:
  static constexpr int kMaxOrder = 4096;

  Graph() = default;
  Graph(int n, std::vector<Edge> edges);

  int order() const { return n_; }
  int size() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  WeightClass weight_class() const { return weight_class_; }
  bool unit_weights() const { return weight_class_ == WeightClass::Unit; }
  bool integer_weights() const { return weight_class_ != WeightClass::Real; }

  double weight(VertexId u, VertexId v) const { return weights_[index(u, v)]; }
  bool adjacent(VertexId u, VertexId v) const { return weights_[index(u, v)] != 0.0; }
  const std::vector<VertexId>& neighbors(VertexId u) const { return adj_[u]; }
  int degree(VertexId u) const { return static_cast<int>(adj_[u].size()); }
  double weighted_degree(VertexId u) const;

 private:
  std::size_t index(VertexId u, VertexId v) const {
    return static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v);
  }

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<double> weights_;
  std::vector<std::vector<VertexId>> adj_;
  WeightClass weight_class_ = WeightClass::Unit;
};

// graph6 (McKay) decoding of one line; an optional ">>graph6<<" prefix is accepted.
Graph parse_graph6(std::string_view line);
std::string to_graph6(const Graph& g);

// Lines "u v w" with 0-based ids, '#' comments and blank lines ignored.
Graph parse_weighted_edgelist(std::string_view text);

Eigen::MatrixXd matrix_of(const Graph& g, MatrixKind kind);
// Same matrix with exact integer entries; requires integer weights.
IntMatrix integer_matrix_of(const Graph& g, MatrixKind kind);

struct DegreeStats {
  std::vector<int> deg;
  Rational avg_degree;
  int max_degree = 0;
  int edge_count = 0;
  // Unordered vertex pairs at distance exactly two.
  std::int64_t dist2_pairs = 0;
  // Adjacent pairs with at least one common neighbour (edges on triangles).
  std::int64_t adjacent_pairs_with_common_neighbor = 0;
  // Sum over unordered pairs of common-neighbour counts, i.e. sum_v C(deg v, 2).
  std::int64_t common_neighbor_total = 0;
};

DegreeStats degree_stats(const Graph& g);
int common_neighbors(const Graph& g, VertexId j, VertexId l);
bool is_connected(const Graph& g);
bool is_tree(const Graph& g);
bool is_weighted_regular(const Graph& g, double rel_tol = 1e-12);

struct Bipartition {
  bool present = false;
  std::vector<int> side;  // 0 for B1, 1 for B2; empty when absent
  std::vector<VertexId> b1, b2;
};

// BFS 2-colouring; in every component the smallest vertex is put in B1.
Bipartition bipartition(const Graph& g);

struct CycleFlags {
  bool has_triangle = false;
  bool has_c4 = false;
  bool has_c5 = false;
};

CycleFlags cycle_flags(const Graph& g);
// |E| - n + 1; throws for disconnected input.
int cyclomatic_index(const Graph& g);

// S(g): every edge {u,v} (the i-th in edge order) becomes u - (n+i) - v.
Graph subdivide(const Graph& g);
// X(g): vertex n+i is a new pendant attached to i.
Graph attach_pendants(const Graph& g);

// Literal check that deleting all pendant vertices leaves a path. K_1 and the
// empty graph count as paths. Throws for non-trees.
bool is_caterpillar(const Graph& g);
bool is_path_graph(const Graph& g);
bool is_cycle_graph(const Graph& g);

}  // namespace qmix
