#include "qmix/target_state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qmix {

Eigen::VectorXcd TargetState::vector() const {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(phases.size()));
  for (std::size_t j = 0; j < phases.size(); ++j) v(static_cast<Eigen::Index>(j)) = std::polar(1.0, phases[j]);
  return v;
}

TargetState TargetState::from_vector(const Eigen::VectorXcd& v) {
  TargetState s;
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (std::abs(v(j)) == 0.0) throw std::invalid_argument("target state entries must be nonzero");
    s.phases.push_back(std::arg(v(j)));
  }
  return s;
}

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

// Length of the shortest arc of the circle containing every phase.
double covering_arc(std::vector<double> phases) {
  for (auto& p : phases) {
    p = std::fmod(p, kTwoPi);
    if (p < 0) p += kTwoPi;
  }
  std::sort(phases.begin(), phases.end());
  double gap = kTwoPi - (phases.back() - phases.front());
  for (std::size_t i = 1; i < phases.size(); ++i) gap = std::max(gap, phases[i] - phases[i - 1]);
  return kTwoPi - gap;
}

}  // namespace

FeasibilityReport verify_target_state(const Graph& g, const SpectralDecomposition& dec, MatrixKind kind, VertexId u,
                                      const TargetState& mu) {
  const int n = g.order();
  if (static_cast<int>(mu.phases.size()) != n || dec.order() != n || u < 0 || u >= n) {
    throw std::invalid_argument("verify_target_state: dimension mismatch");
  }
  const double eps = dec.tol.feas;
  const auto& th = mu.phases;
  const Eigen::VectorXcd m = mu.vector();
  FeasibilityReport rep;
  auto record = [&](const std::string& rule, double residual, bool passed) {
    rep.checks.push_back({rule, residual, passed});
    if (!passed && rep.feasible) {
      rep.feasible = false;
      rep.failed_rule = rule;
      rep.failed_residual = residual;
    }
  };

  double edge_cos = 0.0;
  for (const auto& e : g.edges()) edge_cos += std::cos(th[e.u] - th[e.v]);
  const double half_n_deg = 0.5 * n * g.degree(u);
  const int edges = g.size();

  if (g.unit_weights()) {
    if (kind != MatrixKind::SignlessLaplacian) {
      double spread = 0.0;
      for (int j = 1; j < n; ++j) spread = std::max(spread, std::abs(m(j) - m(0)));
      record("constant_target", spread, n == 1 || spread > eps);
    }
    if (kind == MatrixKind::Adjacency) {
      const double arc = covering_arc(th);
      double max_edge_cos = -1.0;
      for (const auto& e : g.edges()) max_edge_cos = std::max(max_edge_cos, std::cos(th[e.u] - th[e.v]));
      record("quarter_arc", arc, !(arc <= std::numbers::pi / 2 + eps && max_edge_cos > eps));

      // Level sets of mu (phases within eps on the circle) form the coarsest
      // partition on which mu is constant, hence the strongest instance.
      std::vector<int> level(n, -1);
      int levels = 0;
      for (int j = 0; j < n; ++j) {
        if (level[j] >= 0) continue;
        level[j] = levels;
        for (int l = j + 1; l < n; ++l) {
          if (level[l] < 0 && std::abs(m(l) - m(j)) <= eps) level[l] = levels;
        }
        ++levels;
      }
      int inside = 0;
      for (const auto& e : g.edges()) inside += level[e.u] == level[e.v] ? 1 : 0;
      const int across = edges - inside;
      record("level_set_partition", inside - across, inside <= across);

      record("edge_cosine_sum", std::abs(edge_cos), std::abs(edge_cos) <= eps);
      double pair_sum = 0.0;
      for (int j = 0; j < n; ++j) {
        for (int l = 0; l < j; ++l) {
          const int c = common_neighbors(g, j, l);
          if (c) pair_sum += c * std::cos(th[j] - th[l]);
        }
      }
      const double r = std::abs(edges + pair_sum - half_n_deg);
      record("common_neighbour_cosine_sum", r, r <= eps);
    } else if (kind == MatrixKind::SignlessLaplacian) {
      const double r = std::abs(edges + edge_cos - half_n_deg);
      record("signless_cosine_sum", r, r <= eps);
    } else {
      const double r = std::abs(edges - edge_cos - half_n_deg);
      record("laplacian_cosine_sum", r, r <= eps);
    }
  }

  double diag_res = 0.0;
  double norm_res = 0.0;
  bool same_support = true;
  for (int k = 0; k < dec.distinct(); ++k) {
    const Eigen::MatrixXd& e = dec.projectors[k];
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < j; ++l) s += std::cos(th[j] - th[l]) * e(j, l);
    }
    diag_res = std::max(diag_res, std::abs(n * e(u, u) - dec.multiplicities[k] - 2 * s));
    const double eu = e.col(u).norm();
    const double em = (e * m).norm();
    if (eu > dec.tol.supp) norm_res = std::max(norm_res, std::abs(std::sqrt(static_cast<double>(n)) * eu - em));
    if ((eu > dec.tol.supp) != (em > dec.tol.supp * std::sqrt(static_cast<double>(n)))) same_support = false;
  }
  record("projector_diagonal", diag_res, diag_res <= eps * n);
  record("projector_norms", norm_res, norm_res <= eps * std::sqrt(static_cast<double>(n)));
  record("support_equality", same_support ? 0.0 : 1.0, same_support);

  const Bipartition bip = bipartition(g);
  if (kind == MatrixKind::Adjacency && bip.present) {
    const Eigen::VectorXcd z = m * std::conj(m(u));
    double off = 0.0;
    for (int j = 0; j < n; ++j) {
      off = std::max(off, bip.side[j] == bip.side[u] ? std::abs(z(j).imag()) : std::abs(z(j).real()));
    }
    record("bipartite_phase_pattern", off, off <= eps);

    double circle = 0.0;
    const double rn = std::sqrt(static_cast<double>(n));
    for (int k = 0; k < dec.distinct(); ++k) {
      const Eigen::VectorXd v = dec.projectors[k].col(u);
      if (v.norm() <= dec.tol.supp) continue;
      double own = 0.0;
      double other = 0.0;
      for (int j = 0; j < n; ++j) {
        if (bip.side[j] == bip.side[u]) {
          own += v(j) * z(j).real();
        } else {
          other += v(j) * z(j).imag();
        }
      }
      const double c = own / (rn * v(u));
      const double s = other / (rn * v(u));
      circle = std::max(circle, std::abs(c * c + s * s - 1.0));
    }
    record("bipartite_cos_sin", circle, circle <= eps);
  }
  return rep;
}

}  // namespace qmix
