#include "qmix/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>

namespace qmix {

const char* to_string(WeightClass w) {
  switch (w) {
    case WeightClass::Unit: return "unit";
    case WeightClass::Integer: return "integer";
    case WeightClass::Real: return "real";
  }
  return "?";
}

const char* to_string(MatrixKind k) {
  switch (k) {
    case MatrixKind::Adjacency: return "adjacency";
    case MatrixKind::Laplacian: return "laplacian";
    case MatrixKind::SignlessLaplacian: return "signless";
  }
  return "?";
}

MatrixKind matrix_kind_from_string(std::string_view s) {
  if (s == "adjacency" || s == "A") return MatrixKind::Adjacency;
  if (s == "laplacian" || s == "L") return MatrixKind::Laplacian;
  if (s == "signless" || s == "Q") return MatrixKind::SignlessLaplacian;
  throw std::invalid_argument("unknown matrix kind '" + std::string(s) + "'");
}

Graph::Graph(int n, std::vector<Edge> edges) : n_(n) {
  if (n < 1) throw std::invalid_argument("graph must have at least one vertex");
  if (n > kMaxOrder) throw std::invalid_argument("graph order exceeds " + std::to_string(kMaxOrder));
  weights_.assign(static_cast<std::size_t>(n) * n, 0.0);
  adj_.resize(n);
  bool all_unit = true;
  bool all_integer = true;
  for (auto& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
      throw std::invalid_argument("edge endpoint out of range: " + std::to_string(e.u) + " " + std::to_string(e.v));
    }
    if (e.u == e.v) throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
    if (!(e.w > 0.0) || !std::isfinite(e.w)) {
      throw std::invalid_argument("edge weight must be positive and finite");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
    if (weights_[index(e.u, e.v)] != 0.0) {
      throw std::invalid_argument("duplicate edge " + std::to_string(e.u) + " " + std::to_string(e.v));
    }
    weights_[index(e.u, e.v)] = e.w;
    weights_[index(e.v, e.u)] = e.w;
    all_unit = all_unit && e.w == 1.0;
    all_integer = all_integer && e.w == std::floor(e.w) && e.w < 9.0e15;
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (const auto& e : edges) {
    adj_[e.u].push_back(e.v);
    adj_[e.v].push_back(e.u);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
  edges_ = std::move(edges);
  weight_class_ = all_unit ? WeightClass::Unit : (all_integer ? WeightClass::Integer : WeightClass::Real);
}

double Graph::weighted_degree(VertexId u) const {
  double s = 0.0;
  for (VertexId v : adj_[u]) s += weight(u, v);
  return s;
}

Eigen::MatrixXd matrix_of(const Graph& g, MatrixKind kind) {
  const int n = g.order();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  const double sign = kind == MatrixKind::Laplacian ? -1.0 : 1.0;
  for (const auto& e : g.edges()) {
    m(e.u, e.v) = sign * e.w;
    m(e.v, e.u) = sign * e.w;
  }
  if (kind != MatrixKind::Adjacency) {
    for (int u = 0; u < n; ++u) m(u, u) = g.weighted_degree(u);
  }
  return m;
}

IntMatrix integer_matrix_of(const Graph& g, MatrixKind kind) {
  if (!g.integer_weights()) throw std::invalid_argument("integer matrix requires integer edge weights");
  const int n = g.order();
  IntMatrix m(n, n);
  std::vector<BigInt> deg(n, 0);
  for (const auto& e : g.edges()) {
    const BigInt w = static_cast<long long>(e.w);
    m(e.u, e.v) = kind == MatrixKind::Laplacian ? BigInt(-w) : w;
    m(e.v, e.u) = m(e.u, e.v);
    deg[e.u] += w;
    deg[e.v] += w;
  }
  if (kind != MatrixKind::Adjacency) {
    for (int u = 0; u < n; ++u) m(u, u) = deg[u];
  }
  return m;
}

DegreeStats degree_stats(const Graph& g) {
  const int n = g.order();
  DegreeStats s;
  s.deg.resize(n);
  for (int u = 0; u < n; ++u) {
    s.deg[u] = g.degree(u);
    s.max_degree = std::max(s.max_degree, s.deg[u]);
    s.common_neighbor_total += static_cast<std::int64_t>(s.deg[u]) * (s.deg[u] - 1) / 2;
  }
  s.edge_count = g.size();
  s.avg_degree = Rational(2 * s.edge_count, n);
  for (int j = 0; j < n; ++j) {
    for (int l = j + 1; l < n; ++l) {
      if (g.adjacent(j, l)) {
        if (common_neighbors(g, j, l) > 0) ++s.adjacent_pairs_with_common_neighbor;
      } else if (common_neighbors(g, j, l) > 0) {
        ++s.dist2_pairs;
      }
    }
  }
  return s;
}

int common_neighbors(const Graph& g, VertexId j, VertexId l) {
  if (j == l) throw std::invalid_argument("common_neighbors: vertices must differ");
  const auto& a = g.neighbors(j);
  const auto& b = g.neighbors(l);
  int count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

bool is_connected(const Graph& g) {
  const int n = g.order();
  std::vector<char> seen(n, 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const VertexId u = stack.back();
    stack.pop_back();
    for (VertexId v : g.neighbors(u)) {
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == n;
}

bool is_tree(const Graph& g) { return g.size() == g.order() - 1 && is_connected(g); }

bool is_weighted_regular(const Graph& g, double rel_tol) {
  const double d0 = g.weighted_degree(0);
  for (int u = 1; u < g.order(); ++u) {
    if (std::abs(g.weighted_degree(u) - d0) > rel_tol * std::max(1.0, std::abs(d0))) return false;
  }
  return true;
}

Bipartition bipartition(const Graph& g) {
  const int n = g.order();
  Bipartition b;
  b.side.assign(n, -1);
  for (int s = 0; s < n; ++s) {
    if (b.side[s] >= 0) continue;
    b.side[s] = 0;
    std::queue<VertexId> q;
    q.push(s);
    while (!q.empty()) {
      const VertexId u = q.front();
      q.pop();
      for (VertexId v : g.neighbors(u)) {
        if (b.side[v] < 0) {
          b.side[v] = 1 - b.side[u];
          q.push(v);
        } else if (b.side[v] == b.side[u]) {
          return Bipartition{};
        }
      }
    }
  }
  b.present = true;
  for (int u = 0; u < n; ++u) (b.side[u] == 0 ? b.b1 : b.b2).push_back(u);
  return b;
}

namespace {

bool has_five_cycle(const Graph& g) {
  // Paths v0-v1-v2-v3-v4 with v0 the smallest vertex, closed by v4 ~ v0.
  const int n = g.order();
  for (int v0 = 0; v0 < n; ++v0) {
    for (VertexId v1 : g.neighbors(v0)) {
      if (v1 <= v0) continue;
      for (VertexId v2 : g.neighbors(v1)) {
        if (v2 <= v0 || v2 == v1) continue;
        for (VertexId v3 : g.neighbors(v2)) {
          if (v3 <= v0 || v3 == v1 || v3 == v2) continue;
          for (VertexId v4 : g.neighbors(v3)) {
            if (v4 <= v0 || v4 == v1 || v4 == v2 || v4 == v3) continue;
            if (g.adjacent(v4, v0)) return true;
          }
        }
      }
    }
  }
  return false;
}

}  // namespace

CycleFlags cycle_flags(const Graph& g) {
  CycleFlags f;
  const int n = g.order();
  for (const auto& e : g.edges()) {
    if (common_neighbors(g, e.u, e.v) > 0) {
      f.has_triangle = true;
      break;
    }
  }
  for (int j = 0; j < n && !f.has_c4; ++j) {
    for (int l = j + 1; l < n; ++l) {
      if (common_neighbors(g, j, l) >= 2) {
        f.has_c4 = true;
        break;
      }
    }
  }
  f.has_c5 = has_five_cycle(g);
  return f;
}

int cyclomatic_index(const Graph& g) {
  if (!is_connected(g)) throw std::invalid_argument("cyclomatic index requires a connected graph");
  return g.size() - g.order() + 1;
}

Graph subdivide(const Graph& g) {
  if (!g.unit_weights()) throw std::invalid_argument("subdivision is defined for unit-weight graphs");
  const int n = g.order();
  std::vector<Edge> edges;
  edges.reserve(2 * g.edges().size());
  int next = n;
  for (const auto& e : g.edges()) {
    edges.push_back({e.u, next, 1.0});
    edges.push_back({next, e.v, 1.0});
    ++next;
  }
  return Graph(next, std::move(edges));
}

Graph attach_pendants(const Graph& g) {
  const int n = g.order();
  std::vector<Edge> edges = g.edges();
  for (int u = 0; u < n; ++u) edges.push_back({u, n + u, 1.0});
  return Graph(2 * n, std::move(edges));
}

bool is_path_graph(const Graph& g) {
  if (!is_tree(g)) return false;
  for (int u = 0; u < g.order(); ++u) {
    if (g.degree(u) > 2) return false;
  }
  return true;
}

bool is_cycle_graph(const Graph& g) {
  if (g.order() < 3 || g.size() != g.order() || !is_connected(g)) return false;
  for (int u = 0; u < g.order(); ++u) {
    if (g.degree(u) != 2) return false;
  }
  return true;
}

bool is_caterpillar(const Graph& g) {
  if (!is_tree(g)) throw std::invalid_argument("is_caterpillar requires a tree");
  const int n = g.order();
  std::vector<char> keep(n, 0);
  int kept = 0;
  for (int u = 0; u < n; ++u) {
    if (g.degree(u) > 1) {
      keep[u] = 1;
      ++kept;
    }
  }
  if (kept <= 1) return true;
  // The non-pendant vertices of a tree induce a subtree; it is a path iff
  // every kept vertex has at most two kept neighbours.
  for (int u = 0; u < n; ++u) {
    if (!keep[u]) continue;
    int inner = 0;
    for (VertexId v : g.neighbors(u)) inner += keep[v];
    if (inner > 2) return false;
  }
  return true;
}

}  // namespace qmix
