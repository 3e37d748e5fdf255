#include "qmix/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <Eigen/Eigenvalues>
#include <Eigen/Jacobi>

namespace qmix {

EigenPairs jacobi_eigen(const Eigen::MatrixXd& m, int max_sweeps) {
  const int n = static_cast<int>(m.rows());
  Eigen::MatrixXd a = m;
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double scale = std::max(a.norm(), std::numeric_limits<double>::min());
  const double target = std::numeric_limits<double>::epsilon() * scale;

  auto off_diagonal = [&] {
    double s = 0.0;
    for (int q = 1; q < n; ++q) {
      for (int p = 0; p < q; ++p) s += a(p, q) * a(p, q);
    }
    return std::sqrt(2.0 * s);
  };

  int sweep = 0;
  for (; sweep < max_sweeps && off_diagonal() > target; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        Eigen::JacobiRotation<double> j;
        j.makeJacobi(a, p, q);
        a.applyOnTheLeft(p, q, j.adjoint());
        a.applyOnTheRight(p, q, j);
        a(p, q) = a(q, p) = 0.0;
        v.applyOnTheRight(p, q, j);
      }
    }
  }
  if (off_diagonal() > target) {
    throw EigensolverError("Jacobi eigensolver did not converge in " + std::to_string(max_sweeps) + " sweeps");
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x) < a(y, y); });
  EigenPairs out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]);
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

SpectralDecomposition decompose(const Eigen::MatrixXd& m, const Tolerances& tol) {
  const int n = static_cast<int>(m.rows());
  if (n == 0 || m.cols() != n) throw std::invalid_argument("decompose: matrix must be square and nonempty");
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument("decompose: matrix is not symmetric");
  }

  EigenPairs pairs;
  if (n <= 64) {
    pairs = jacobi_eigen(m);
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success) throw EigensolverError("tridiagonal QR eigensolver did not converge");
    pairs.values = solver.eigenvalues();
    pairs.vectors = solver.eigenvectors();
  }

  SpectralDecomposition dec;
  dec.matrix = m;
  dec.tol = tol;
  dec.vectors = std::move(pairs.vectors);
  dec.spectral_radius = pairs.values.cwiseAbs().maxCoeff();
  dec.group_tol = tol.group_rel * std::max(1.0, dec.spectral_radius);

  int start = 0;
  for (int k = 1; k <= n; ++k) {
    if (k < n && pairs.values(k) - pairs.values(k - 1) <= dec.group_tol) continue;
    const int mult = k - start;
    dec.eigenvalues.push_back(pairs.values.segment(start, mult).mean());
    dec.multiplicities.push_back(mult);
    dec.offsets.push_back(start);
    const auto b = dec.vectors.middleCols(start, mult);
    dec.projectors.push_back(b * b.transpose());
    start = k;
  }
  return dec;
}

SpectralDecomposition decompose(const Graph& g, MatrixKind kind, const Tolerances& tol) {
  return decompose(matrix_of(g, kind), tol);
}

bool EigenvalueSupport::contains(int k) const { return std::binary_search(indices.begin(), indices.end(), k); }

EigenvalueSupport support(const SpectralDecomposition& dec, const Eigen::VectorXcd& x) {
  if (x.size() != dec.order()) throw std::invalid_argument("support: dimension mismatch");
  EigenvalueSupport s;
  for (int k = 0; k < dec.distinct(); ++k) {
    // ||E x|| = ||B^T x|| for an orthonormal eigenbasis B.
    const double w = (dec.basis(k).transpose() * x).norm();
    if (w > dec.tol.supp) {
      s.indices.push_back(k);
      s.weights.push_back(w);
    }
  }
  return s;
}

EigenvalueSupport support(const SpectralDecomposition& dec, const Eigen::VectorXd& x) {
  return support(dec, Eigen::VectorXcd(x.cast<std::complex<double>>()));
}

EigenvalueSupport vertex_support(const SpectralDecomposition& dec, VertexId u) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(dec.order());
  e(u) = 1.0;
  return support(dec, e);
}

std::vector<double> support_values(const SpectralDecomposition& dec, const EigenvalueSupport& s) {
  std::vector<double> out;
  for (int k : s.indices) out.push_back(dec.eigenvalues[k]);
  return out;
}

const char* to_string(SpectrumKind k) {
  switch (k) {
    case SpectrumKind::AllInteger: return "integer";
    case SpectrumKind::QuadraticSurd: return "quadratic_surd";
    case SpectrumKind::Irregular: return "irregular";
  }
  return "?";
}

namespace {

EigenvalueForm recognise(const SpectralDecomposition& dec, int k) {
  const Tolerances& tol = dec.tol;
  const double lambda = dec.eigenvalues[k];
  EigenvalueForm f;
  const double r = std::round(lambda);
  if (std::abs(lambda - r) < tol.recog && std::abs(r) <= tol.surd_max_offset) {
    f.recognized = f.integer = true;
    f.a = static_cast<long long>(2 * r);
    return f;
  }
  long long best_abs_a = -1;
  for (int j = 0; j < dec.distinct(); ++j) {
    if (j == k || dec.multiplicities[j] != dec.multiplicities[k]) continue;
    const double mu = dec.eigenvalues[j];
    const double sum = lambda + mu;
    const double a = std::round(sum);
    if (std::abs(sum - a) >= tol.recog || std::abs(a) > tol.surd_max_offset) continue;
    const double d2 = (lambda - mu) * (lambda - mu);
    const double D = std::round(d2);
    if (D < 2 || std::abs(d2 - D) >= tol.recog * std::max(1.0, 4.0 * std::abs(lambda - mu))) continue;
    std::int64_t root = 1;
    const std::int64_t delta = squarefree_part(static_cast<std::int64_t>(D), &root);
    if (delta <= 1 || delta > tol.surd_max_discriminant) continue;
    const long long b = lambda > mu ? root : -root;
    const double value = (a + static_cast<double>(b) * std::sqrt(static_cast<double>(delta))) / 2.0;
    if (std::abs(value - lambda) >= tol.recog) continue;
    const long long abs_a = static_cast<long long>(std::abs(a));
    if (best_abs_a >= 0 && abs_a >= best_abs_a) continue;
    best_abs_a = abs_a;
    f.recognized = true;
    f.integer = false;
    f.a = static_cast<long long>(a);
    f.b = b;
    f.delta = delta;
  }
  return f;
}

}  // namespace

SpectrumClassification classify_spectrum(const SpectralDecomposition& dec,
                                         const std::optional<EigenvalueSupport>& restrict_to) {
  SpectrumClassification c;
  if (restrict_to) {
    c.indices = restrict_to->indices;
  } else {
    c.indices.resize(dec.distinct());
    std::iota(c.indices.begin(), c.indices.end(), 0);
  }
  bool all_recognized = true;
  bool all_integer = true;
  for (int k : c.indices) {
    c.forms.push_back(recognise(dec, k));
    all_recognized = all_recognized && c.forms.back().recognized;
    all_integer = all_integer && c.forms.back().integer;
  }
  if (all_integer) {
    c.kind = SpectrumKind::AllInteger;
    return c;
  }
  if (!all_recognized) return c;

  long long delta = 0;
  long long a = 0;
  bool consistent = true;
  for (const auto& f : c.forms) {
    if (f.integer) continue;
    if (delta == 0) {
      delta = f.delta;
      a = f.a;
    } else if (f.delta != delta || f.a != a) {
      consistent = false;
    }
  }
  for (const auto& f : c.forms) {
    if (f.integer && f.a != a) consistent = false;
  }
  if (consistent) {
    c.kind = SpectrumKind::QuadraticSurd;
    c.delta = delta;
    c.a = a;
  } else {
    c.mixed = true;
  }
  return c;
}

namespace {

// Greedy leaf matching; returns matched vertices in peel order followed by
// the unmatched ones.
std::vector<int> leaf_peeling_order(const Graph& g) {
  const int n = g.order();
  std::vector<int> deg(n);
  std::vector<char> removed(n, 0);
  for (int u = 0; u < n; ++u) deg[u] = g.degree(u);
  std::vector<int> matched;
  std::vector<int> unmatched;
  auto remove = [&](int x) {
    removed[x] = 1;
    for (VertexId y : g.neighbors(x)) {
      if (!removed[y]) --deg[y];
    }
  };
  int left = n;
  while (left > 0) {
    int leaf = -1;
    for (int u = 0; u < n && leaf < 0; ++u) {
      if (!removed[u] && deg[u] <= 1) leaf = u;
    }
    if (deg[leaf] == 0) {
      unmatched.push_back(leaf);
      remove(leaf);
      --left;
      continue;
    }
    int parent = -1;
    for (VertexId y : g.neighbors(leaf)) {
      if (!removed[y]) parent = y;
    }
    matched.push_back(leaf);
    matched.push_back(parent);
    remove(leaf);
    remove(parent);
    left -= 2;
  }
  matched.insert(matched.end(), unmatched.begin(), unmatched.end());
  return matched;
}

}  // namespace

std::vector<IntVector> exact_kernel(const Graph& g, MatrixKind kind) {
  const IntMatrix m = integer_matrix_of(g, kind);
  if (kind == MatrixKind::Adjacency && is_tree(g)) {
    const std::vector<int> order = leaf_peeling_order(g);
    return integer_nullspace(m, order);
  }
  return integer_nullspace(m);
}

SignedKernelVectors signed_kernel_vectors(const std::vector<IntVector>& basis, VertexId u, int budget_dim,
                                          const Bipartition* bip) {
  SignedKernelVectors out;
  if (basis.empty()) return out;
  const int n = static_cast<int>(basis[0].size());
  constexpr long long kCap = 1LL << 40;
  std::vector<std::vector<long long>> b;
  for (const auto& v : basis) {
    std::vector<long long> row(n);
    bool fits = true;
    for (int i = 0; i < n && fits; ++i) {
      if (abs(v[i]) > kCap) {
        fits = false;
      } else {
        row[i] = static_cast<long long>(v[i]);
      }
    }
    if (fits) {
      b.push_back(std::move(row));
    } else {
      out.truncated = true;
    }
  }
  const int d = static_cast<int>(b.size());
  const int max_terms = d <= budget_dim ? d : 2;
  if (d > budget_dim) out.truncated = true;

  // touched_after[k][i]: some basis vector with index >= k is nonzero at i.
  std::vector<std::vector<char>> touched_after(d + 1, std::vector<char>(n, 0));
  for (int k = d - 1; k >= 0; --k) {
    for (int i = 0; i < n; ++i) touched_after[k][i] = touched_after[k + 1][i] || b[k][i] != 0;
  }

  std::set<std::vector<int>> seen;
  std::vector<long long> acc(n, 0);
  auto emit = [&] {
    std::vector<int> v(n);
    int first = 0;
    for (int i = 0; i < n; ++i) {
      if (acc[i] < -1 || acc[i] > 1) return;
      v[i] = static_cast<int>(acc[i]);
      if (first == 0) first = v[i];
    }
    if (first == 0 || v[u] == 0) return;
    if (first < 0) {
      for (auto& x : v) x = -x;
    }
    if (!seen.insert(v).second) return;
    SignedKernelVector s;
    s.entries = v;
    for (int i = 0; i < n; ++i) {
      if (v[i] == 0) continue;
      ++s.nnz;
      if (bip && bip->present) {
        if (bip->side[i] == 0) {
          s.nnz_b1 = std::max(s.nnz_b1, 0) + 1;
        } else {
          s.nnz_b2 = std::max(s.nnz_b2, 0) + 1;
        }
      }
    }
    if (bip && bip->present) {
      s.nnz_b1 = std::max(s.nnz_b1, 0);
      s.nnz_b2 = std::max(s.nnz_b2, 0);
    }
    out.vectors.push_back(std::move(s));
  };

  // Depth-first over coefficients in {-1,0,1}; the first nonzero one is +1.
  auto dfs = [&](auto&& self, int k, int terms, bool started) -> void {
    for (int i = 0; i < n; ++i) {
      if (!touched_after[k][i] && (acc[i] < -1 || acc[i] > 1)) return;
    }
    if (k == d || terms == max_terms) {
      if (started) emit();
      return;
    }
    self(self, k + 1, terms, started);
    for (int c : {1, -1}) {
      if (!started && c == -1) continue;
      for (int i = 0; i < n; ++i) acc[i] += c * b[k][i];
      self(self, k + 1, terms + 1, true);
      for (int i = 0; i < n; ++i) acc[i] -= c * b[k][i];
    }
  };
  dfs(dfs, 0, 0, false);
  std::sort(out.vectors.begin(), out.vectors.end(),
            [](const SignedKernelVector& x, const SignedKernelVector& y) {
              return x.nnz != y.nnz ? x.nnz < y.nnz : x.entries > y.entries;
            });
  return out;
}

}  // namespace qmix
