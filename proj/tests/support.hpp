#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "qmix/graph.hpp"

namespace qmix::testing {

inline const double kPi = std::numbers::pi;

inline Graph from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<Edge> e;
  for (auto [u, v] : pairs) e.push_back({u, v, 1.0});
  return Graph(n, e);
}

inline Graph path(int n) {
  std::vector<std::pair<int, int>> p;
  for (int i = 1; i < n; ++i) p.emplace_back(i - 1, i);
  return from_pairs(n, p);
}

inline Graph cycle(int n) {
  std::vector<std::pair<int, int>> p;
  for (int i = 0; i < n; ++i) p.emplace_back(i, (i + 1) % n);
  return from_pairs(n, p);
}

inline Graph complete(int n) {
  std::vector<std::pair<int, int>> p;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) p.emplace_back(i, j);
  }
  return from_pairs(n, p);
}

// Centre 0, leaves 1..k.
inline Graph star(int k) {
  std::vector<std::pair<int, int>> p;
  for (int i = 1; i <= k; ++i) p.emplace_back(0, i);
  return from_pairs(k + 1, p);
}

inline Graph complete_bipartite(int a, int b) {
  std::vector<std::pair<int, int>> p;
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) p.emplace_back(i, a + j);
  }
  return from_pairs(a + b, p);
}

inline Graph hypercube(int d) {
  const int n = 1 << d;
  std::vector<std::pair<int, int>> p;
  for (int i = 0; i < n; ++i) {
    for (int b = 0; b < d; ++b) {
      if (i < (i ^ (1 << b))) p.emplace_back(i, i ^ (1 << b));
    }
  }
  return from_pairs(n, p);
}

inline Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> e = a.edges();
  for (auto x : b.edges()) e.push_back({x.u + a.order(), x.v + a.order(), x.w});
  return Graph(a.order() + b.order(), e);
}

// Uniform random labelled tree via a Pruefer sequence.
inline Graph random_tree(int n, std::mt19937& rng) {
  if (n == 1) return Graph(1, {});
  if (n == 2) return from_pairs(2, {{0, 1}});
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<int> seq(n - 2);
  for (auto& x : seq) x = pick(rng);
  std::vector<int> deg(n, 1);
  for (int x : seq) ++deg[x];
  std::vector<std::pair<int, int>> p;
  for (int x : seq) {
    for (int leaf = 0; leaf < n; ++leaf) {
      if (deg[leaf] == 1) {
        p.emplace_back(leaf, x);
        --deg[leaf];
        --deg[x];
        break;
      }
    }
  }
  int a = -1;
  for (int i = 0; i < n; ++i) {
    if (deg[i] == 1) {
      if (a < 0) {
        a = i;
      } else {
        p.emplace_back(a, i);
      }
    }
  }
  return from_pairs(n, p);
}

// Random spanning tree plus extra edges, weights in [0.5, 2].
inline Graph random_connected_weighted(int n, double extra_p, std::mt19937& rng) {
  const Graph t = random_tree(n, rng);
  std::uniform_real_distribution<double> wd(0.5, 2.0);
  std::bernoulli_distribution coin(extra_p);
  std::vector<Edge> e;
  for (auto x : t.edges()) e.push_back({x.u, x.v, wd(rng)});
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!t.adjacent(i, j) && coin(rng)) e.push_back({i, j, wd(rng)});
    }
  }
  return Graph(n, e);
}

// Random k-regular graph by the configuration model with restarts.
inline Graph random_regular(int n, int k, std::mt19937& rng) {
  for (;;) {
    std::vector<int> stubs;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < k; ++j) stubs.push_back(i);
    }
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::vector<std::pair<int, int>> p;
    bool ok = true;
    for (std::size_t i = 0; i + 1 < stubs.size() && ok; i += 2) {
      int a = std::min(stubs[i], stubs[i + 1]);
      int b = std::max(stubs[i], stubs[i + 1]);
      if (a == b || std::find(p.begin(), p.end(), std::make_pair(a, b)) != p.end()) ok = false;
      p.emplace_back(a, b);
    }
    if (ok) return from_pairs(n, p);
  }
}

// Independent oracle for U(t) = exp(i t M).
inline Eigen::MatrixXcd expm_oracle(const Eigen::MatrixXd& m, double t) {
  const Eigen::MatrixXcd a = std::complex<double>(0.0, t) * m.cast<std::complex<double>>();
  return a.exp();
}

inline std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

}  // namespace qmix::testing
