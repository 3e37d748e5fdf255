#include "qmix/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qmix {

const char* to_string(Tier t) { return t == Tier::Strict ? "strict" : "paper_asserted"; }

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::RuledOut: return "ruled_out";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::NotApplicable: return "not_applicable";
  }
  return "?";
}

const char* to_string(Scope s) { return s == Scope::VertexLocal ? "vertex" : "graph"; }

namespace {

CertificateVerdict make(const std::string& rule, std::optional<VertexId> u, Tier tier = Tier::Strict,
                        Verdict v = Verdict::Inconclusive) {
  CertificateVerdict c;
  c.rule = rule;
  c.tier = tier;
  c.verdict = v;
  c.vertex = u;
  c.scope = u ? Scope::VertexLocal : Scope::GraphEpsilonUM;
  return c;
}

CertificateVerdict not_applicable(const std::string& rule, std::optional<VertexId> u, const std::string& why,
                                  Tier tier = Tier::Strict) {
  auto c = make(rule, u, tier, Verdict::NotApplicable);
  c.witness.emplace_back("reason", why);
  return c;
}

template <class T>
std::string str(const T& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

template <class V>
std::string vec_str(const V& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ']';
  return os.str();
}

std::string rational_str(const Rational& q) { return to_string(q); }

// n v_u^2 > (factor * sum |v_j|)^2, i.e. sqrt(n)|v_u| > factor * sum |v_j|.
template <class Int>
bool violates_exact(int n, const std::vector<Int>& v, VertexId u, int factor = 1) {
  BigInt l1 = 0;
  for (const auto& x : v) l1 += x < 0 ? BigInt(-x) : BigInt(x);
  const BigInt vu = v[u];
  return BigInt(n) * vu * vu > BigInt(factor) * factor * l1 * l1;
}

template <class Int>
int nnz_of(const std::vector<Int>& v) {
  return static_cast<int>(std::count_if(v.begin(), v.end(), [](const Int& x) { return x != 0; }));
}

// Exact for integer weights; relative residual 1e-12 otherwise.
bool is_eigenvector(const Graph& g, MatrixKind kind, const std::vector<long long>& v) {
  const int n = g.order();
  if (static_cast<int>(v.size()) != n) return false;
  int pivot = -1;
  for (int i = 0; i < n && pivot < 0; ++i) {
    if (v[i] != 0) pivot = i;
  }
  if (pivot < 0) return false;
  if (g.integer_weights()) {
    const IntMatrix m = integer_matrix_of(g, kind);
    IntVector x(v.begin(), v.end());
    const IntVector y = multiply(m, x);
    for (int j = 0; j < n; ++j) {
      if (y[j] * x[pivot] != y[pivot] * x[j]) return false;
    }
    return true;
  }
  const Eigen::MatrixXd m = matrix_of(g, kind);
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x(i) = static_cast<double>(v[i]);
  const Eigen::VectorXd y = m * x;
  const double lambda = y(pivot) / x(pivot);
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff()) * x.cwiseAbs().maxCoeff();
  return (y - lambda * x).cwiseAbs().maxCoeff() <= 1e-12 * scale;
}

bool in_range(const Graph& g, VertexId u) { return u >= 0 && u < g.order(); }

}  // namespace

CertificateContext::CertificateContext(const Graph& g, const SpectralDecomposition& dec, MatrixKind kind,
                                       CertifyOptions opt)
    : g_(&g), dec_(&dec), kind_(kind), opt_(std::move(opt)) {
  if (dec.order() != g.order()) throw std::invalid_argument("certificates: decomposition does not match graph");
  stats_ = degree_stats(g);
  bip_ = bipartition(g);
  cycles_ = cycle_flags(g);
  connected_ = is_connected(g);
  if (g.integer_weights()) kernel_ = exact_kernel(g, kind);
}

const std::vector<TwinSubgraphWitness>& CertificateContext::twin_subgraphs() const {
  if (!twin_subgraphs_) twin_subgraphs_ = search_twin_subgraphs(*g_, opt_.twin_a_max, opt_.twin_budget).witnesses;
  return *twin_subgraphs_;
}

CertificateVerdict cert_connectivity(const CertificateContext& c, VertexId u) {
  auto r = make("connectivity", u);
  if (!c.connected()) {
    r.verdict = Verdict::RuledOut;
    r.witness.emplace_back("connected", "false");
  }
  return r;
}

CertificateVerdict cert_twin_vertex(const CertificateContext& c, VertexId u) {
  auto r = make("twin_vertex", u);
  const int n = c.graph().order();
  for (const auto& p : find_twin_pairs(c.graph())) {
    if (p.u != u && p.v != u) continue;
    const VertexId other = p.u == u ? p.v : p.u;
    r.witness = {{"twin", str(other)}, {"adjacent", p.adjacent ? "true" : "false"}, {"n", str(n)}};
    if (n >= 5) r.verdict = Verdict::RuledOut;
    return r;
  }
  return r;
}

CertificateVerdict cert_degree_laplacian(const CertificateContext& c, VertexId u) {
  const Graph& g = c.graph();
  if (c.kind() == MatrixKind::Adjacency) return not_applicable("degree_laplacian", u, "adjacency matrix");
  if (!g.unit_weights()) return not_applicable("degree_laplacian", u, "weighted graph");
  auto r = make("degree_laplacian", u);
  const Rational bound(4 * g.size(), g.order());
  r.witness = {{"deg", str(g.degree(u))}, {"bound", rational_str(bound)}};
  if (g.degree(u) > bound) r.verdict = Verdict::RuledOut;
  return r;
}

std::vector<CertificateVerdict> cert_degree_adjacency(const CertificateContext& c, VertexId u) {
  const Graph& g = c.graph();
  if (c.kind() != MatrixKind::Adjacency) return {not_applicable("degree_adjacency", u, "not the adjacency matrix")};
  if (!g.unit_weights()) return {not_applicable("degree_adjacency", u, "weighted graph")};
  const int n = g.order();
  const int deg = g.degree(u);
  const auto& s = c.stats();
  std::vector<CertificateVerdict> out;

  // |E| + sum_{j>l} cos c_jl = n deg / 2 with |cos| <= 1.
  auto r = make("degree_adjacency", u);
  const Rational bound(2 * (s.edge_count + s.common_neighbor_total), n);
  r.witness = {{"deg", str(deg)}, {"bound", rational_str(bound)},
               {"common_neighbor_total", str(s.common_neighbor_total)}};
  if (deg > bound) r.verdict = Verdict::RuledOut;
  out.push_back(r);

  // The distance-two count alone misses adjacent pairs on triangles.
  if (!c.cycles().has_c4 && s.adjacent_pairs_with_common_neighbor > 0) {
    auto p = make("degree_adjacency_literal", u, Tier::PaperAsserted);
    const Rational lit(2 * (s.edge_count + s.dist2_pairs), n);
    p.witness = {{"deg", str(deg)}, {"bound", rational_str(lit)}, {"q", str(s.dist2_pairs)}};
    if (deg > lit) p.verdict = Verdict::RuledOut;
    out.push_back(p);
  }

  if (c.options().assert_planar && !c.cycles().has_c4 && n >= 4) {
    auto p = make("degree_adjacency_planar", u);
    const Rational planar = Rational(30 * (n - 2), 7 * n) + Rational(2 * s.common_neighbor_total, n);
    p.witness = {{"deg", str(deg)}, {"bound", rational_str(planar)}};
    if (deg > planar) p.verdict = Verdict::RuledOut;
    out.push_back(p);
  }
  return out;
}

CertificateVerdict cert_eigenvector_exact(const CertificateContext& c, VertexId u) {
  const Graph& g = c.graph();
  const int n = g.order();
  auto r = make("eigenvector_exact", u);
  std::vector<std::vector<long long>> candidates;
  std::vector<std::string> sources;

  if (c.exact_available() && !c.kernel().empty()) {
    const bool bip_a = c.kind() == MatrixKind::Adjacency && c.bip().present;
    for (const auto& b : c.kernel()) {
      if (b[u] == 0 || abs(b[u]) > BigInt(1) << 40) continue;
      std::vector<long long> v;
      bool fits = true;
      for (const auto& x : b) {
        if (abs(x) > BigInt(1) << 40) fits = false;
        v.push_back(fits ? static_cast<long long>(x) : 0);
      }
      if (fits) {
        candidates.push_back(v);
        sources.emplace_back("kernel_basis");
      }
    }
    const auto sv = signed_kernel_vectors(c.kernel(), u, c.options().kernel_budget_dim);
    for (const auto& s : sv.vectors) {
      candidates.emplace_back(s.entries.begin(), s.entries.end());
      sources.emplace_back("signed_kernel");
      // On a bipartite graph each part of a null vector is again a null vector.
      if (bip_a) {
        std::vector<long long> part(s.entries.begin(), s.entries.end());
        for (int j = 0; j < n; ++j) {
          if (c.bip().side[j] != c.bip().side[u]) part[j] = 0;
        }
        candidates.push_back(part);
        sources.emplace_back("signed_kernel_part");
      }
    }
  }
  for (const auto& v : c.options().extra_vectors) {
    if (static_cast<int>(v.size()) != n || v[u] == 0) continue;
    if (!is_eigenvector(g, c.kind(), v)) continue;
    candidates.push_back(v);
    sources.emplace_back("supplied");
  }
  if (candidates.empty()) {
    r.verdict = Verdict::NotApplicable;
    r.witness.emplace_back("reason", "no exact eigenvector with nonzero entry at u");
    return r;
  }
  // Smallest support first, so the witness is the cleanest violating vector.
  std::vector<std::size_t> idx(candidates.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return nnz_of(candidates[a]) < nnz_of(candidates[b]); });
  for (std::size_t i : idx) {
    if (violates_exact(n, candidates[i], u)) {
      r.verdict = Verdict::RuledOut;
      r.witness = {{"vector", vec_str(candidates[i])}, {"source", sources[i]}, {"n", str(n)}};
      return r;
    }
  }
  r.witness = {{"vectors_checked", str(candidates.size())}};
  return r;
}

CertificateVerdict cert_eigenvector_canonical(const CertificateContext& c, VertexId u) {
  const auto& dec = c.dec();
  const int n = dec.order();
  auto r = make("eigenvector_canonical", u);
  if (c.options().exact_only) {
    r.verdict = Verdict::NotApplicable;
    r.witness.emplace_back("reason", "exact-only mode");
    return r;
  }
  const double margin = dec.tol.safe_margin(n);
  const double rn = std::sqrt(static_cast<double>(n));
  const auto phi = vertex_support(dec, u);
  for (int k : phi.indices) {
    Eigen::VectorXd v = dec.projectors[k].col(u);
    v /= v.norm();
    const double lhs = rn * std::abs(v(u));
    const double rhs = v.cwiseAbs().sum();
    if (lhs > rhs + margin) {
      r.verdict = Verdict::RuledOut;
      r.witness = {{"eigenvalue", str(dec.eigenvalues[k])}, {"lhs", str(lhs)}, {"rhs", str(rhs)},
                   {"margin", str(margin)}};
      return r;
    }
  }
  r.witness = {{"eigenvalues_checked", str(phi.indices.size())}};
  return r;
}

namespace {

// Integer eigenvectors of A(G) for the integer eigenvalues of A(G).
std::vector<IntVector> subgraph_integer_eigenvectors(const Graph& g, const std::vector<VertexId>& part) {
  const int a = static_cast<int>(part.size());
  Eigen::MatrixXd m(a, a);
  IntMatrix im(a, a);
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < a; ++j) {
      m(i, j) = g.weight(part[i], part[j]);
      im(i, j) = static_cast<long long>(m(i, j));
    }
  }
  const EigenPairs ep = jacobi_eigen(m);
  std::vector<long long> lambdas;
  for (Eigen::Index i = 0; i < ep.values.size(); ++i) {
    const double r = std::round(ep.values(i));
    if (std::abs(ep.values(i) - r) < 1e-6) lambdas.push_back(static_cast<long long>(r));
  }
  std::sort(lambdas.begin(), lambdas.end());
  lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());
  std::vector<IntVector> out;
  for (long long l : lambdas) {
    IntMatrix shifted = im;
    for (int i = 0; i < a; ++i) shifted(i, i) -= l;
    for (auto& v : integer_nullspace(shifted)) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

CertificateVerdict cert_twin_subgraphs(const CertificateContext& c, VertexId u,
                                       const std::vector<TwinSubgraphWitness>& witnesses) {
  const Graph& g = c.graph();
  const int n = g.order();
  auto r = make("twin_subgraph", u);
  bool any = false;
  for (const auto& w0 : witnesses) {
    auto pos_g = std::find(w0.G.begin(), w0.G.end(), u);
    auto pos_h = std::find(w0.H.begin(), w0.H.end(), u);
    if (pos_g == w0.G.end() && pos_h == w0.H.end()) continue;
    TwinSubgraphWitness w = w0;
    if (!verify_twin_subgraphs(g, w)) throw std::invalid_argument("twin subgraph witness fails verification");
    any = true;
    const int a = w.size();
    auto describe = [&](const std::string& detail) {
      r.witness = {{"kind", to_string(w.kind)}, {"G", vec_str(w.G)}, {"H", vec_str(w.H)}, {"n", str(n)},
                   {"a", str(a)}, {"detail", detail}};
    };

    // 1_G - 1_H, whenever it is an eigenvector of M.
    std::vector<long long> ind(n, 0);
    for (VertexId x : w.G) ind[x] = 1;
    for (VertexId x : w.H) ind[x] = -1;
    if (is_eigenvector(g, c.kind(), ind)) {
      describe("indicator difference is an eigenvector; n <= 4a^2 required");
      if (n > 4 * a * a) {
        r.verdict = Verdict::RuledOut;
        return r;
      }
    }

    if (w.kind == TwinKind::FalseTwin && c.kind() == MatrixKind::Adjacency && g.integer_weights() && a >= 2) {
      const bool in_g = pos_g != w0.G.end();
      const int i = static_cast<int>(in_g ? pos_g - w0.G.begin() : pos_h - w0.H.begin());
      for (const auto& v : subgraph_integer_eigenvectors(g, w.G)) {
        if (v[i] == 0) continue;
        if (violates_exact(n, v, i, 2)) {
          describe("lifted eigenvector " + vec_str(v) + " of A(G)");
          r.verdict = Verdict::RuledOut;
          return r;
        }
      }
    }
  }
  if (!any) {
    r.verdict = Verdict::NotApplicable;
    r.witness.emplace_back("reason", "no twin subgraph pair contains u");
  }
  return r;
}

CertificateVerdict cert_bipartite_parity(const CertificateContext& c, VertexId u) {
  const Graph& g = c.graph();
  if (c.kind() != MatrixKind::Adjacency || !g.unit_weights() || !c.bip().present) {
    return not_applicable("bipartite_parity", u, "needs an unweighted bipartite graph under A");
  }
  auto r = make("bipartite_parity", u);
  const int n = g.order();
  const int deg = g.degree(u);
  if ((static_cast<long long>(n) * deg) % 2 == 1) {
    r.verdict = Verdict::RuledOut;
    r.witness = {{"n", str(n)}, {"deg", str(deg)}, {"reason", "n and deg u both odd"}};
    return r;
  }
  int count = 0;
  for (int d : c.stats().deg) count += (d % 4 == 2 || d % 4 == 3) ? 1 : 0;
  const long long half = static_cast<long long>(n) * deg / 2;
  const bool count_even = count % 2 == 0;
  const bool same = (g.size() % 2) == (half % 2);
  r.witness = {{"deg_2_3_mod_4", str(count)}, {"edges", str(g.size())}, {"half_n_deg", str(half)}};
  if (count_even != same) r.verdict = Verdict::RuledOut;
  return r;
}

std::vector<CertificateVerdict> cert_kernel_vector(const CertificateContext& c, VertexId u) {
  const Graph& g = c.graph();
  const int n = g.order();
  if (c.kind() != MatrixKind::Adjacency || !g.integer_weights() || !c.bip().present) {
    return {not_applicable("kernel_vector", u, "needs an integer-weighted bipartite graph under A")};
  }
  const bool zero_in_support =
      std::any_of(c.kernel().begin(), c.kernel().end(), [&](const IntVector& v) { return v[u] != 0; });
  if (!zero_in_support) return {not_applicable("kernel_vector", u, "0 is not in the eigenvalue support of e_u")};

  std::vector<CertificateVerdict> out;
  auto r = make("kernel_vector", u);
  BigInt root;
  if (!is_perfect_square(BigInt(n), &root)) {
    r.verdict = Verdict::RuledOut;
    r.witness = {{"n", str(n)}, {"reason", "n is not a perfect square"}};
    return {r};
  }
  const int side = c.bip().side[u];
  const auto sv = signed_kernel_vectors(c.kernel(), u, c.options().kernel_budget_dim, &c.bip());
  const int part_size = static_cast<int>(side == 0 ? c.bip().b1.size() : c.bip().b2.size());
  const auto s = static_cast<int>(root);
  bool literal_fires = false;
  for (const auto& v : sv.vectors) {
    // The restriction to u's part is itself a null vector.
    const int nnz_part = side == 0 ? v.nnz_b1 : v.nnz_b2;
    std::vector<int> part = v.entries;
    for (int j = 0; j < n; ++j) {
      if (c.bip().side[j] != side) part[j] = 0;
    }
    if (s > nnz_part || (s - nnz_part) % 2 != 0) {
      r.verdict = Verdict::RuledOut;
      r.witness = {{"n", str(n)}, {"vector", vec_str(part)}, {"nnz_part", str(nnz_part)}};
      break;
    }
  }
  if (!sv.vectors.empty()) literal_fires = s > part_size || (n - part_size) % 2 != 0;
  if (r.verdict != Verdict::RuledOut) {
    r.witness = {{"n", str(n)}, {"signed_vectors", str(sv.vectors.size())},
                 {"truncated", sv.truncated ? "true" : "false"}};
  }
  out.push_back(r);
  if (!sv.vectors.empty() && literal_fires != r.fired()) {
    auto p = make("kernel_vector_literal", u, Tier::PaperAsserted, literal_fires ? Verdict::RuledOut : Verdict::Inconclusive);
    p.witness = {{"n", str(n)}, {"part_size", str(part_size)}};
    out.push_back(p);
  }
  return out;
}

CertificateVerdict cert_planar_family(const CertificateContext& c, VertexId u) {
  const Graph& g = c.graph();
  if (c.kind() == MatrixKind::Adjacency) return not_applicable("planar_family", u, "adjacency matrix");
  if (!g.unit_weights() || !c.connected()) return not_applicable("planar_family", u, "needs a connected unweighted graph");
  const int n = g.order();
  const int deg = g.degree(u);
  const int k = g.size() - n + 1;
  auto r = make("planar_family", u);
  struct Bound {
    const char* name;
    Rational value;
  };
  std::vector<Bound> bounds{{"k_cyclic", Rational(4) + Rational(4 * (k - 1), n)}};
  if (c.options().assert_planar) {
    if (n >= 3) bounds.push_back({"planar", Rational(12) - Rational(24, n)});
    if (n >= 3 && !c.cycles().has_triangle) bounds.push_back({"planar_triangle_free", Rational(8) - Rational(16, n)});
    if (n >= 4 && !c.cycles().has_c4) bounds.push_back({"planar_c4_free", Rational(60 * (n - 2), 7 * n)});
    if (n >= 11 && !c.cycles().has_c5) bounds.push_back({"planar_c5_free", Rational(4 * (12 * n - 33), 5 * n)});
  }
  r.witness = {{"deg", str(deg)}, {"k", str(k)}};
  for (const auto& b : bounds) {
    if (deg > b.value) {
      r.verdict = Verdict::RuledOut;
      r.witness.emplace_back("bound", b.name);
      r.witness.emplace_back("value", rational_str(b.value));
      return r;
    }
  }
  return r;
}

CertificateVerdict cert_pendant_pair(const CertificateContext& c, VertexId u) {
  const Graph& g = c.graph();
  const int n = g.order();
  auto r = make("pendant_pair", u);
  bool any = false;
  for (const auto& p : pendant_pairs_with_common_neighbor(g)) {
    if (p.u != u && p.w != u) continue;
    if (c.kind() != MatrixKind::Adjacency && p.alpha != p.beta) continue;
    any = true;
    // v = e_x - (alpha / beta) e_y, with x the endpoint of weight alpha.
    const Rational ratio = abs(Rational(p.alpha) / Rational(p.beta));
    const Rational sum = 1 + ratio;
    const Rational vu = p.u == u ? Rational(1) : ratio;
    r.witness = {{"u", str(p.u)}, {"w", str(p.w)}, {"v", str(p.v)}, {"ratio", rational_str(ratio)}, {"n", str(n)}};
    if (n >= 5 && n * vu * vu > sum * sum) {
      r.verdict = Verdict::RuledOut;
      return r;
    }
  }
  if (!any) {
    r.verdict = Verdict::NotApplicable;
    r.witness = {{"reason", "no pendant pair at u"}};
  }
  return r;
}

std::vector<CertificateVerdict> cert_bipartite_global(const CertificateContext& c) {
  const Graph& g = c.graph();
  const int n = g.order();
  if (c.kind() != MatrixKind::Adjacency || !c.bip().present) {
    return {not_applicable("bipartite_order_mod4", std::nullopt, "needs a bipartite graph under A")};
  }
  std::vector<CertificateVerdict> out;
  auto mod4 = make("bipartite_order_mod4", std::nullopt);
  mod4.witness = {{"n", str(n)}};
  // K_2 mixes uniformly, so the congruence needs n > 2.
  if (n > 2 && n % 4 != 0) mod4.verdict = Verdict::RuledOut;
  out.push_back(mod4);

  const bool singular = g.integer_weights() && !c.kernel().empty();
  if (singular) {
    auto sq = make("singular_bipartite_square", std::nullopt);
    BigInt root;
    const bool square = is_perfect_square(BigInt(n), &root);
    sq.witness = {{"n", str(n)}, {"kernel_dim", str(c.kernel().size())}};
    if (!(square && n % 2 == 0)) sq.verdict = Verdict::RuledOut;
    out.push_back(sq);
  }

  if (c.options().subdivision_of) {
    const Graph& y = *c.options().subdivision_of;
    auto sd = make("subdivision_order", std::nullopt);
    const int total = y.order() + y.size();
    if (total != n) throw std::invalid_argument("subdivision preimage does not match the graph order");
    sd.witness = {{"preimage_order", str(y.order())}, {"preimage_size", str(y.size())}};
    if (total % 4 != 0) sd.verdict = Verdict::RuledOut;
    out.push_back(sd);
  }

  const auto b1 = static_cast<long long>(c.bip().b1.size());
  const auto b2 = static_cast<long long>(c.bip().b2.size());
  const long long m = std::min(b1, b2);
  auto mp = make("bipartite_min_part", std::nullopt, Tier::PaperAsserted);
  mp.witness = {{"min_part", str(m)}, {"n", str(n)}};
  if (2 * m * m < n || (singular && m * m < n)) mp.verdict = Verdict::RuledOut;
  out.push_back(mp);

  if (singular) {
    bool has_signed = false;
    for (int u = 0; u < n && !has_signed; ++u) {
      const bool touches = std::any_of(c.kernel().begin(), c.kernel().end(), [&](const IntVector& v) { return v[u] != 0; });
      if (touches) has_signed = !signed_kernel_vectors(c.kernel(), u, c.options().kernel_budget_dim).vectors.empty();
    }
    if (has_signed) {
      auto p = make("singular_bipartite_mod4", std::nullopt, Tier::PaperAsserted);
      p.witness = {{"b1", str(b1)}, {"b2", str(b2)}};
      if (!(b1 % 4 == b2 % 4 && (b1 % 4 == 0 || b1 % 4 == 2))) p.verdict = Verdict::RuledOut;
      out.push_back(p);
    }
  }
  return out;
}

namespace {

int count_deg_2_3(const std::vector<int>& deg) {
  return static_cast<int>(std::count_if(deg.begin(), deg.end(), [](int d) { return d % 4 == 2 || d % 4 == 3; }));
}

// T with X(T) = g, when g has that shape (|T| >= 2).
std::optional<std::vector<VertexId>> pendant_extension_core(const Graph& g) {
  const int n = g.order();
  if (n < 4 || n % 2 != 0) return std::nullopt;
  std::vector<VertexId> core;
  for (int v = 0; v < n; ++v) {
    if (g.degree(v) == 1) continue;
    int pendants = 0;
    for (VertexId w : g.neighbors(v)) pendants += g.degree(w) == 1 ? 1 : 0;
    if (pendants != 1) return std::nullopt;
    core.push_back(v);
  }
  if (static_cast<int>(core.size()) * 2 != n) return std::nullopt;
  return core;
}

}  // namespace

std::vector<CertificateVerdict> cert_tree_suite(const CertificateContext& c) {
  const Graph& g = c.graph();
  if (c.kind() != MatrixKind::Adjacency || !g.unit_weights()) {
    return {not_applicable("tree_degree_parity", std::nullopt, "needs an unweighted graph under A")};
  }
  const int n = g.order();
  const auto& deg = c.stats().deg;
  std::vector<CertificateVerdict> out;
  const bool tree = is_tree(g);
  const int pendants = static_cast<int>(std::count(deg.begin(), deg.end(), 1));

  if (tree) {
    auto t1 = make("tree_degree_parity", std::nullopt);
    const int count = count_deg_2_3(deg);
    t1.witness = {{"n", str(n)}, {"deg_2_3_mod_4", str(count)}};
    if (n >= 5 && n % 2 == 0 && count % 2 == 0) t1.verdict = Verdict::RuledOut;
    out.push_back(t1);

    auto nd2 = make("tree_no_degree_two", std::nullopt);
    const bool has_two = std::find(deg.begin(), deg.end(), 2) != deg.end();
    nd2.witness = {{"n", str(n)}, {"has_degree_two", has_two ? "true" : "false"}};
    if (n >= 5 && !has_two) nd2.verdict = Verdict::RuledOut;
    out.push_back(nd2);

    if (is_caterpillar(g)) {
      auto cat = make("caterpillar", std::nullopt);
      const bool twins = !find_twin_pairs(g).empty();
      cat.witness = {{"n", str(n)}, {"twins", twins ? "true" : "false"}, {"pendants", str(pendants)}};
      if (n >= 5 && n % 2 == 0 && (twins || pendants % 2 == 0)) cat.verdict = Verdict::RuledOut;
      out.push_back(cat);
    }

    if (auto core = pendant_extension_core(g)) {
      auto xt = make("pendant_extension", std::nullopt);
      bool congruent = true;
      for (VertexId v : *core) {
        const int d = (deg[v] - 1) % 4;
        if (d != 1 && d != 2) congruent = false;
      }
      xt.witness = {{"core", vec_str(*core)}, {"core_degrees_1_2_mod_4", congruent ? "true" : "false"}};
      if (congruent) xt.verdict = Verdict::RuledOut;
      out.push_back(xt);
    }

    if (is_path_graph(g)) {
      auto p = make("path", std::nullopt);
      p.witness = {{"n", str(n)}};
      if (n >= 3) p.verdict = Verdict::RuledOut;
      out.push_back(p);
    }
  } else if (c.connected() && c.bip().present && g.size() == n && !is_cycle_graph(g)) {
    auto u1 = make("unicyclic_degree_parity", std::nullopt);
    const int count = count_deg_2_3(deg);
    u1.witness = {{"n", str(n)}, {"deg_2_3_mod_4", str(count)}};
    if (n % 2 == 0 && (count % 2 == 0) != (n % 4 == 0)) u1.verdict = Verdict::RuledOut;
    out.push_back(u1);
  }
  if (out.empty()) out.push_back(not_applicable("tree_degree_parity", std::nullopt, "not a tree or bipartite unicyclic graph"));
  return out;
}

std::vector<CertificateVerdict> cert_pendant_pair_global(const CertificateContext& c) {
  const Graph& g = c.graph();
  for (const auto& p : pendant_pairs_with_common_neighbor(g)) {
    if (c.kind() != MatrixKind::Adjacency && p.alpha != p.beta) continue;
    auto r = make("pendant_pair_exclusive", std::nullopt, Tier::PaperAsserted);
    r.witness = {{"u", str(p.u)}, {"w", str(p.w)}, {"n", str(g.order())}};
    if (g.order() >= 5) r.verdict = Verdict::RuledOut;
    return {r};
  }
  return {};
}

namespace {

bool by_rule(const CertificateVerdict& a, const CertificateVerdict& b) {
  if (a.rule != b.rule) return a.rule < b.rule;
  return a.vertex.value_or(-1) < b.vertex.value_or(-1);
}

}  // namespace

VertexCertificates certify_vertex(const CertificateContext& c, VertexId u) {
  if (!in_range(c.graph(), u)) throw std::out_of_range("certify_vertex: vertex out of range");
  VertexCertificates out;
  out.vertex = u;
  auto& v = out.verdicts;
  auto add = [&](std::vector<CertificateVerdict> xs) {
    for (auto& x : xs) v.push_back(std::move(x));
  };
  // Exact combinatorial rules first, spectral ones last.
  v.push_back(cert_connectivity(c, u));
  v.push_back(cert_twin_vertex(c, u));
  v.push_back(cert_degree_laplacian(c, u));
  add(cert_degree_adjacency(c, u));
  v.push_back(cert_planar_family(c, u));
  v.push_back(cert_bipartite_parity(c, u));
  v.push_back(cert_pendant_pair(c, u));
  v.push_back(cert_twin_subgraphs(c, u, c.twin_subgraphs()));
  add(cert_kernel_vector(c, u));
  v.push_back(cert_eigenvector_exact(c, u));
  v.push_back(cert_eigenvector_canonical(c, u));
  std::sort(v.begin(), v.end(), by_rule);
  out.survives = std::none_of(v.begin(), v.end(), [](const auto& x) { return x.strict_fired(); });
  return out;
}

CertificateReport certify_graph(const Graph& g, const SpectralDecomposition& dec, MatrixKind kind,
                                const CertifyOptions& opt) {
  const CertificateContext c(g, dec, kind, opt);
  c.twin_subgraphs();
  CertificateReport rep;
  rep.order = g.order();
  rep.size = g.size();
  rep.kind = kind;
  rep.weights = g.weight_class();
  rep.connected = c.connected();
  rep.bipartite = c.bip().present;
  rep.vertices.resize(g.order());
#pragma omp parallel for schedule(dynamic)
  for (int u = 0; u < g.order(); ++u) rep.vertices[u] = certify_vertex(c, u);

  auto add = [&](std::vector<CertificateVerdict> xs) {
    for (auto& x : xs) rep.graph.push_back(std::move(x));
  };
  add(cert_bipartite_global(c));
  add(cert_tree_suite(c));
  add(cert_pendant_pair_global(c));

  auto local = make("local_rules", std::nullopt);
  for (const auto& vc : rep.vertices) {
    if (vc.survives) {
      rep.surviving.push_back(vc.vertex);
    } else if (local.verdict != Verdict::RuledOut) {
      local.verdict = Verdict::RuledOut;
      const auto it = std::find_if(vc.verdicts.begin(), vc.verdicts.end(), [](const auto& x) { return x.strict_fired(); });
      local.witness = {{"vertex", str(vc.vertex)}, {"rule", it->rule}};
    }
  }
  rep.graph.push_back(local);
  std::sort(rep.graph.begin(), rep.graph.end(), by_rule);
  rep.graph_ruled_out = std::any_of(rep.graph.begin(), rep.graph.end(), [](const auto& x) { return x.strict_fired(); });
  return rep;
}

}  // namespace qmix
