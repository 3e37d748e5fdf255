// Acceptance run: one PASS/FAIL line per criterion, with wall time.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>

#include <Eigen/Eigenvalues>

#include "qmix/certificates.hpp"
#include "qmix/periodicity.hpp"
#include "qmix/search.hpp"
#include "qmix/walk.hpp"
#include "support.hpp"

using namespace qmix;
using namespace qmix::testing;

namespace {

constexpr auto A = MatrixKind::Adjacency;
constexpr auto L = MatrixKind::Laplacian;
constexpr auto Q = MatrixKind::SignlessLaplacian;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void note(const std::string& s) { notes.push_back(s); }
  // Time a sub-step against its own budget.
  void timed(const std::string& name, double budget, const std::function<void()>& body) {
    const auto start = Clock::now();
    body();
    const double s = seconds_since(start);
    if (s >= budget) failures.push_back(name + " took " + std::to_string(s) + " s, budget " + std::to_string(budget));
  }
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

const CertificateVerdict* find_rule(const std::vector<CertificateVerdict>& vs, const std::string& rule) {
  for (const auto& v : vs) {
    if (v.rule == rule) return &v;
  }
  return nullptr;
}

bool rule_fired(const std::vector<CertificateVerdict>& vs, const std::string& rule) {
  const auto* v = find_rule(vs, rule);
  return v && v->strict_fired();
}

std::vector<std::string> strict_firings(const CertificateReport& rep) {
  std::vector<std::string> out;
  for (const auto& v : rep.graph) {
    if (v.strict_fired()) out.push_back(v.rule);
  }
  for (const auto& vc : rep.vertices) {
    for (const auto& v : vc.verdicts) {
      if (v.strict_fired()) out.push_back(v.rule + "@" + std::to_string(vc.vertex));
    }
  }
  return out;
}

const MixingDetection* nearest(const MixingReport& rep, double t) {
  const MixingDetection* best = nullptr;
  for (const auto& d : rep.detections) {
    if (!best || std::abs(d.t - t) < std::abs(best->t - t)) best = &d;
  }
  return best;
}

// max_j |mu_j / c_j - mean ratio| after removing the global phase.
double proportionality_error(const Eigen::VectorXcd& mu, const Eigen::VectorXcd& ref) {
  const Eigen::VectorXcd a = mu.normalized();
  const Eigen::VectorXcd b = ref.normalized();
  const std::complex<double> phase = b.dot(a);  // <b, a>
  return (a - (phase / std::abs(phase)) * b).cwiseAbs().maxCoeff();
}

Outcome criterion1() {
  Outcome o;
  const auto dec = decompose(complete(2), A);
  const auto rep = scan_uniform(dec, {2.0});
  const auto* d = nearest(rep, kPi / 4);
  o.check(d != nullptr, "no detection on K2");
  if (!d) return o;
  o.check(std::abs(d->t - kPi / 4) < 1e-9, "K2 |t - pi/4| = " + fmt(std::abs(d->t - kPi / 4)));
  o.check(d->delta < 1e-10, "K2 delta = " + fmt(d->delta));
  o.note("t=" + fmt(d->t) + " delta=" + fmt(d->delta));
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto dec = decompose(complete(4), A);
  const auto rep = scan_uniform(dec, {2.0});
  const auto* d = nearest(rep, kPi / 4);
  o.check(d != nullptr, "no detection on K4");
  if (!d) return o;
  o.check(std::abs(d->t - kPi / 4) < 1e-8, "K4 |t - pi/4| = " + fmt(std::abs(d->t - kPi / 4)));
  o.check(d->delta < 1e-8, "K4 delta = " + fmt(d->delta));
  const auto h = hadamard_classify(2.0 * transition_matrix(dec, d->t));
  o.check(h.kind == HadamardKind::Butson && h.butson_order == 8, "K4 Hadamard class is not Butson(8)");
  o.check(!h.dephased, "K4 Hadamard matrix is dephased");
  o.check(d->hadamard && d->hadamard->kind == h.kind && d->hadamard->butson_order == h.butson_order,
          "detection carries a different Hadamard class");
  const auto per = check_real_target_period(dec, 0, d->t, d->target_state);
  o.check(per.applicable && per.periodic, "K4 real-target period not confirmed");
  o.check(per.return_amplitude > 1 - 1e-8, "K4 return amplitude " + fmt(per.return_amplitude));
  o.check(std::abs(2 * d->t - kPi / 2) < 2e-8, "K4 period 2t differs from pi/2");
  o.note("t=" + fmt(d->t) + " delta=" + fmt(d->delta) + " amplitude=" + fmt(per.return_amplitude));
  return o;
}

Outcome criterion3() {
  Outcome o;
  const Graph g = path(3);
  const auto dec = decompose(g, A);
  const double t_star = std::atan(std::sqrt(2.0)) / std::sqrt(2.0);
  const auto rep = scan_local(dec, 1, {4.0});
  const auto* d = nearest(rep, t_star);
  o.check(d != nullptr, "no detection at the P3 centre");
  if (!d) return o;
  o.check(std::abs(d->t - t_star) < 1e-8, "P3 |t - arctan(sqrt2)/sqrt2| = " + fmt(std::abs(d->t - t_star)));
  const std::complex<double> i(0, 1);
  Eigen::VectorXcd expected(3);
  expected << i, -1.0, i;
  const double err = proportionality_error(d->target_state.vector(), expected);
  o.check(err < 1e-6, "P3 state at t* is not proportional to (i,-1,i): error " + fmt(err));
  // What the walk U(t) = exp(itA) actually produces, from the oracle.
  const Eigen::VectorXcd oracle = std::sqrt(3.0) * expm_oracle(dec.matrix, t_star).col(1);
  Eigen::VectorXcd plus(3);
  plus << i, 1.0, i;
  o.note("state at t* ~ (i,1,i) to " + fmt(proportionality_error(oracle, plus)));
  if (const auto* late = nearest(rep, kPi / std::sqrt(2.0) - t_star)) {
    o.note("(i,-1,i) appears at t=" + fmt(late->t) + " to " +
           fmt(proportionality_error(late->target_state.vector(), expected)));
  }
  const auto per = is_periodic_vertex(dec, 1);
  o.check(per.status == PeriodicStatus::Periodic && per.verified, "P3 centre not verified periodic");
  o.check(std::abs(per.period_hint - kPi / std::sqrt(2.0)) < 1e-9, "P3 period hint " + fmt(per.period_hint));
  o.check(per.return_amplitude > 1 - 1e-9, "P3 return amplitude " + fmt(per.return_amplitude));
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto dec = decompose(hypercube(3), A);
  const auto rep = scan_uniform(dec, {2.0});
  const auto* d = nearest(rep, kPi / 4);
  o.check(d != nullptr, "no detection on Q3");
  if (!d) return o;
  o.check(std::abs(d->t - kPi / 4) < 1e-6, "Q3 detection far from pi/4: " + fmt(d->t));
  o.check(d->delta < 1e-8, "Q3 delta = " + fmt(d->delta));
  o.note("t=" + fmt(d->t) + " delta=" + fmt(d->delta));
  return o;
}

Outcome criterion5() {
  Outcome o;
  const Graph g = star(3);
  const auto dec = decompose(g, A);
  const double t_star = 2 * kPi / (3 * std::sqrt(3.0));
  const auto rep = scan_uniform(dec, {3.0});
  const auto* d = nearest(rep, t_star);
  o.check(d != nullptr, "no detection on K13");
  if (d) {
    o.check(std::abs(d->t - t_star) < 1e-8, "K13 |t - 2pi/(3 sqrt3)| = " + fmt(std::abs(d->t - t_star)));
    // Closed form oracle: every entry of U(t*) has modulus 1/2.
    const auto u = expm_oracle(dec.matrix, t_star);
    o.check((u.cwiseAbs().array() - 0.5).abs().maxCoeff() < 1e-12, "oracle: K13 is not flat at t*");
    o.note("t=" + fmt(d->t) + " delta=" + fmt(d->delta));
  }
  const auto fired = strict_firings(certify_graph(g, dec, A));
  o.check(fired.empty(), "strict rule fired on K13: " + (fired.empty() ? std::string() : fired.front()));
  return o;
}

Outcome criterion6() {
  Outcome o;
  const std::vector<std::pair<std::string, Graph>> graphs{{"K2", complete(2)}, {"K3", complete(3)},
                                                          {"K4", complete(4)}, {"Q3", hypercube(3)},
                                                          {"K13", star(3)},    {"C5", cycle(5)}};
  for (const auto& [name, g] : graphs) {
    const auto fired = strict_firings(certify_graph(g, decompose(g, A), A));
    o.check(fired.empty(), "strict rule fired on " + name + ": " + (fired.empty() ? std::string() : fired.front()));
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  o.timed("K14 leaves", 0.1, [&] {
    const Graph g = star(4);
    const auto rep = certify_graph(g, decompose(g, A), A);
    for (int u = 1; u <= 4; ++u) o.check(rule_fired(rep.vertices[u].verdicts, "twin_vertex"), "K14 leaf not ruled out by twins");
  });
  o.timed("K14 centre under L", 0.1, [&] {
    const Graph g = star(4);
    const auto dec = decompose(g, L);
    const CertificateContext c(g, dec, L);
    const auto v = cert_degree_laplacian(c, 0);
    o.check(v.strict_fired(), "K14 centre not ruled out under L");
    bool bound = false;
    for (const auto& [k, x] : v.witness) bound = bound || (k == "bound" && x == "16/5");
    o.check(bound, "K14 centre bound is not 16/5");
  });
  o.timed("P7", 0.1, [&] {
    const Graph g = path(7);
    const auto rep = certify_graph(g, decompose(g, A), A);
    bool graph_level = false;
    for (const auto& v : rep.graph) graph_level = graph_level || (v.strict_fired() && v.rule != "local_rules");
    o.check(graph_level, "P7 not ruled out by a graph-level rule");
  });
  o.timed("S(T) for 20 random trees", 0.1 * 20, [&] {
    std::mt19937 rng(701);
    std::uniform_int_distribution<int> nd(3, 12);
    for (int i = 0; i < 20; ++i) {
      const Graph t = random_tree(nd(rng), rng);
      const Graph s = subdivide(t);
      const auto start = Clock::now();
      CertifyOptions opt;
      opt.subdivision_of = t;
      const auto rep = certify_graph(s, decompose(s, A), A, opt);
      o.check(rule_fired(rep.graph, "subdivision_order"), "S(T) not ruled out for n = " + std::to_string(t.order()));
      o.check((2 * t.order() - 1) % 4 != 0, "S(T) order unexpectedly divisible by 4");
      o.check(seconds_since(start) < 0.1, "S(T) took longer than 0.1 s");
    }
  });
  o.timed("K33", 0.1, [&] {
    const Graph g = complete_bipartite(3, 3);
    const auto rep = certify_graph(g, decompose(g, A), A);
    o.check(rule_fired(rep.graph, "bipartite_order_mod4"), "K33 not ruled out by n mod 4");
  });
  o.timed("P4 pendants", 0.1, [&] {
    const Graph g = path(4);
    const auto rep = certify_graph(g, decompose(g, A), A);
    for (int u : {0, 3}) o.check(rule_fired(rep.vertices[u].verdicts, "bipartite_parity"), "P4 pendant not ruled out by parity");
  });
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> nd(2, 30);
  std::uniform_real_distribution<double> pd(0.0, 0.3);
  std::uniform_real_distribution<double> td(0.0, 20.0);
  int failures = 0;
  auto expect = [&](bool ok) { failures += ok ? 0 : 1; };
  for (int i = 0; i < 100; ++i) {
    const Graph g = random_connected_weighted(nd(rng), pd(rng), rng);
    const int n = g.order();
    const auto kind = static_cast<MatrixKind>(i % 3);
    const auto dec = decompose(g, kind);
    const double s = td(rng);
    const double t = td(rng);
    const auto us = transition_matrix(dec, s);
    const auto ut = transition_matrix(dec, t);
    const auto id = Eigen::MatrixXcd::Identity(n, n);
    expect((us - expm_oracle(dec.matrix, s)).cwiseAbs().maxCoeff() < 1e-8);
    expect((us * us.adjoint() - id).cwiseAbs().maxCoeff() < 1e-9);
    expect((us * ut - transition_matrix(dec, s + t)).cwiseAbs().maxCoeff() < 1e-8);
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd rec = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < dec.distinct(); ++k) {
      const auto& e = dec.projectors[k];
      expect((e * e - e).cwiseAbs().maxCoeff() < 1e-9);
      for (int l = k + 1; l < dec.distinct(); ++l) expect((e * dec.projectors[l]).cwiseAbs().maxCoeff() < 1e-9);
      sum += e;
      rec += dec.eigenvalues[k] * e;
    }
    expect((sum - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-9);
    expect((rec - dec.matrix).cwiseAbs().maxCoeff() < 1e-9 * std::max(1.0, dec.spectral_radius));
    for (int u = 0; u < n; ++u) {
      double mass = 0.0;
      for (double w : vertex_support(dec, u).weights) mass += w * w;
      expect(std::abs(mass - 1.0) < 1e-9);
      expect(std::abs(mixing_deviation(dec, u, 0.0) - std::sqrt((n - 1.0) / n)) < 1e-12);
    }
    const auto bip = bipartition(g);
    if (bip.present && kind == A) expect(bipartite_block_check(dec, bip, s));
  }
  o.check(failures == 0, std::to_string(failures) + " invariant checks failed on the weighted corpus");
  const std::vector<double> times{0.25, 1.0, 2.5, 7.0};
  for (int i = 0; i < 20; ++i) {
    const int k = 2 + static_cast<int>(rng() % 3);
    const int n = 2 * (4 + static_cast<int>(rng() % 6));
    o.check(regular_equivalence_check(random_regular(n, k, rng), times), "regular equivalence failed");
  }
  return o;
}

// Eigenvalue supports of every e_u from Eigen's own solver.
std::vector<std::set<int>> oracle_supports(const Eigen::MatrixXd& m, std::vector<double>& values) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const int n = static_cast<int>(m.rows());
  std::vector<int> group(n);
  values.clear();
  for (int j = 0; j < n; ++j) {
    if (j == 0 || es.eigenvalues()(j) - es.eigenvalues()(j - 1) > 1e-8) values.push_back(es.eigenvalues()(j));
    group[j] = static_cast<int>(values.size()) - 1;
  }
  std::vector<std::set<int>> out(n);
  for (int u = 0; u < n; ++u) {
    std::vector<double> mass(values.size(), 0.0);
    for (int j = 0; j < n; ++j) mass[group[j]] += es.eigenvectors()(u, j) * es.eigenvectors()(u, j);
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (mass[k] > 1e-16) out[u].insert(static_cast<int>(k));
    }
  }
  return out;
}

Outcome criterion9() {
  Outcome o;
  const auto corpus = read_lines(std::string(QMIX_TEST_DATA) + "/connected_n2_6.g6");
  o.check(corpus.size() == 142, "corpus has " + std::to_string(corpus.size()) + " graphs, expected 142");
  int mixing = 0;
  int overlap = 0;
  for (const auto& line : corpus) {
    const Graph g = parse_graph6(line);
    const int n = g.order();
    const auto dec = decompose(g, A);

    // (a) every vertex shares a nonzero eigenvalue with another vertex.
    std::vector<double> values;
    const auto supp = oracle_supports(dec.matrix, values);
    for (int u = 0; u < n; ++u) {
      bool shared = false;
      for (int v = 0; v < n && !shared; ++v) {
        if (v == u) continue;
        for (int k : supp[u]) shared = shared || (std::abs(values[k]) > 1e-8 && supp[v].count(k));
      }
      o.check(shared, "support lemma fails: " + line + " u=" + std::to_string(u));
      o.check(static_cast<int>(vertex_support(dec, u).indices.size()) == static_cast<int>(supp[u].size()),
              "vertex_support disagrees with the oracle: " + line);
    }

    // (b) soundness wherever uniform mixing is detected.
    for (auto kind : {A, L, Q}) {
      const auto dk = kind == A ? dec : decompose(g, kind);
      const auto rep = scan_uniform(dk, {20.0});
      const bool mixes = std::any_of(rep.detections.begin(), rep.detections.end(),
                                     [](const auto& d) { return d.delta < 1e-8; });
      if (!mixes) continue;
      ++mixing;
      const auto fired = strict_firings(certify_graph(g, dk, kind));
      o.check(fired.empty(), "strict rule fired on mixing graph " + line + ": " +
                                 (fired.empty() ? std::string() : fired.front()));
    }

    // (c) on every {-1,0,1} null vector with n > r^2 both rules fire.
    const auto cert = certify_graph(g, dec, A);
    const auto bip = bipartition(g);
    const auto kernel = exact_kernel(g, A);
    if (!bip.present || kernel.empty()) continue;
    for (int u = 0; u < n; ++u) {
      const auto& vs = cert.vertices[u].verdicts;
      for (const auto& s : signed_kernel_vectors(kernel, u, 12, &bip).vectors) {
        const int r = bip.side[u] == 0 ? s.nnz_b1 : s.nnz_b2;
        if (n <= r * r) continue;
        ++overlap;
        o.check(rule_fired(vs, "kernel_vector") == rule_fired(vs, "eigenvector_exact") &&
                    rule_fired(vs, "kernel_vector"),
                "kernel_vector and eigenvector_exact disagree: " + line + " u=" + std::to_string(u));
      }
    }
  }
  o.check(mixing >= 6, "only " + std::to_string(mixing) + " uniform mixing graphs found");
  o.check(overlap > 0, "no instance in the overlap of the two eigenvector rules");
  o.note(std::to_string(corpus.size()) + " graphs, " + std::to_string(mixing) + " mixing (graph, matrix) pairs, " +
         std::to_string(overlap) + " overlap instances");
  return o;
}

Outcome criterion10() {
  Outcome o;
  const auto dec = decompose(cycle(5), A);
  const auto w = empirical_inf(dec, std::nullopt, {10.0, 100.0, 1000.0});
  o.check(w.size() == 3, "expected three windows");
  for (std::size_t k = 1; k < w.size(); ++k) o.check(w[k].inf <= w[k - 1].inf, "C5 empirical_inf increased");
  if (w.size() == 3) o.note("C5 inf " + fmt(w[0].inf) + " " + fmt(w[1].inf) + " " + fmt(w[2].inf));

  // Random trees with two leaves hung on a common vertex.
  std::mt19937 rng(1010);
  std::uniform_int_distribution<int> nd(3, 18);
  for (int i = 0; i < 50; ++i) {
    const Graph base = random_tree(nd(rng), rng);
    const int m = base.order();
    const int v = static_cast<int>(rng() % m);
    std::vector<Edge> e = base.edges();
    e.push_back({v, m, 1.0});
    e.push_back({v, m + 1, 1.0});
    const Graph g(m + 2, e);
    const auto dec_g = decompose(g, A);
    const CertificateContext c(g, dec_g, A);
    o.check(cert_pendant_pair(c, m).strict_fired() && cert_pendant_pair(c, m + 1).strict_fired(),
            "pendant_pair did not fire on " + to_graph6(g));
  }
  return o;
}

struct Criterion {
  int id;
  double budget;  // seconds
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  // The P3 sign: exp(itA) sends e_centre to a multiple of (i, 1, i) at
  // arctan(sqrt2)/sqrt2, and to (i, -1, i) only at pi/sqrt2 minus that time.
  const std::set<int> known_failures{3};

  const std::vector<Criterion> criteria{
      {1, 0.1, criterion1},  {2, 0.5, criterion2},   {3, 0.5, criterion3}, {4, 1.0, criterion4},
      {5, 0.5, criterion5},  {6, 2.0, criterion6},   {7, 1e9, criterion7}, {8, 60.0, criterion8},
      {9, 600.0, criterion9}, {10, 1e9, criterion10}};

  int unexpected = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Outcome o = c.run();
    const double s = seconds_since(start);
    if (s >= c.budget) o.failures.push_back("took " + fmt(s) + " s, budget " + fmt(c.budget) + " s");
    const bool pass = o.failures.empty();
    const bool known = known_failures.count(c.id) > 0;
    std::printf("criterion %d: %s (%.3f s)%s\n", c.id, pass ? "PASS" : "FAIL", s,
                !pass && known ? " [known failure, see README]" : "");
    for (const auto& f : o.failures) std::printf("    fail: %s\n", f.c_str());
    for (const auto& n : o.notes) std::printf("    note: %s\n", n.c_str());
    if (pass == known) {
      ++unexpected;
      if (pass) std::printf("    known failure now passes; update the list\n");
    }
  }
  std::fflush(stdout);
  return unexpected == 0 ? 0 : 1;
}
