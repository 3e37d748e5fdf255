#include "qmix/walk.hpp"

#include <cmath>
#include <numbers>

namespace qmix {

namespace {

Eigen::VectorXcd phases(const SpectralDecomposition& dec, double t) {
  Eigen::VectorXcd p(dec.order());
  for (int k = 0; k < dec.distinct(); ++k) {
    const cplx z = std::polar(1.0, t * dec.eigenvalues[k]);
    p.segment(dec.offsets[k], dec.multiplicities[k]).setConstant(z);
  }
  return p;
}

}  // namespace

Eigen::MatrixXcd transition_matrix(const SpectralDecomposition& dec, double t) {
  const Eigen::MatrixXcd v = dec.vectors.cast<cplx>();
  return v * phases(dec, t).asDiagonal() * v.transpose();
}

Eigen::VectorXcd transition_column(const SpectralDecomposition& dec, VertexId u, double t) {
  const Eigen::VectorXcd row = dec.vectors.row(u).transpose().cast<cplx>();
  return dec.vectors.cast<cplx>() * phases(dec, t).cwiseProduct(row);
}

double mixing_deviation(const SpectralDecomposition& dec, VertexId u, double t) {
  const Eigen::VectorXcd col = transition_column(dec, u, t);
  const double flat = 1.0 / dec.order();
  return (col.cwiseAbs2().array() - flat).matrix().norm();
}

double matrix_uniform_deviation(const SpectralDecomposition& dec, double t) {
  const Eigen::MatrixXcd u = transition_matrix(dec, t);
  const double flat = 1.0 / dec.order();
  double worst = 0.0;
  for (int c = 0; c < u.cols(); ++c) {
    worst = std::max(worst, (u.col(c).cwiseAbs2().array() - flat).matrix().norm());
  }
  return worst;
}

const char* to_string(HadamardKind k) {
  switch (k) {
    case HadamardKind::NotHadamard: return "none";
    case HadamardKind::Complex: return "complex";
    case HadamardKind::Butson: return "butson";
    case HadamardKind::Turyn: return "turyn";
    case HadamardKind::Real: return "real";
  }
  return "?";
}

HadamardClass hadamard_classify(const Eigen::MatrixXcd& h, double tol, int r_max) {
  if (h.rows() != h.cols()) throw std::invalid_argument("hadamard_classify: matrix must be square");
  const int n = static_cast<int>(h.rows());
  HadamardClass c;
  c.max_modulus_error = (h.cwiseAbs().array() - 1.0).abs().maxCoeff();
  c.max_defect = (h * h.adjoint() - static_cast<double>(n) * Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (c.max_modulus_error > tol || c.max_defect > tol * n) return c;

  c.dephased = true;
  for (int i = 0; i < n; ++i) {
    if (std::abs(h(0, i) - 1.0) > tol || std::abs(h(i, 0) - 1.0) > tol) c.dephased = false;
  }
  for (int r = 1; r <= r_max && c.butson_order == 0; ++r) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      for (int j = 0; j < n && ok; ++j) {
        const double k = std::round(std::arg(h(i, j)) * r / (2 * std::numbers::pi));
        ok = std::abs(h(i, j) - std::polar(1.0, 2 * std::numbers::pi * k / r)) <= tol;
      }
    }
    if (ok) c.butson_order = r;
  }
  if (c.butson_order == 0) {
    c.kind = HadamardKind::Complex;
  } else if (c.butson_order <= 2) {
    c.kind = HadamardKind::Real;
  } else if (c.butson_order == 4) {
    c.kind = HadamardKind::Turyn;
  } else {
    c.kind = HadamardKind::Butson;
  }
  return c;
}

bool bipartite_block_check(const SpectralDecomposition& dec, const Bipartition& bip, double t) {
  const int n = dec.order();
  if (!bip.present || static_cast<int>(bip.side.size()) != n) {
    throw std::invalid_argument("bipartite_block_check: bipartition absent");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (bip.side[i] == bip.side[j] && dec.matrix(i, j) != 0.0) {
        throw std::invalid_argument("bipartite_block_check: matrix has entries inside a part");
      }
    }
  }
  const Eigen::MatrixXcd u = transition_matrix(dec, t);
  const double tol = dec.tol.alg(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double off = bip.side[i] == bip.side[j] ? u(i, j).imag() : u(i, j).real();
      if (std::abs(off) > tol) return false;
    }
  }
  return true;
}

bool regular_equivalence_check(const Graph& g, std::span<const double> times, const Tolerances& tol) {
  if (!is_weighted_regular(g)) throw std::invalid_argument("regular_equivalence_check: graph is not weighted-regular");
  const auto a = decompose(g, MatrixKind::Adjacency, tol);
  const auto l = decompose(g, MatrixKind::Laplacian, tol);
  const auto q = decompose(g, MatrixKind::SignlessLaplacian, tol);
  const double slack = tol.alg(g.order());
  for (double t : times) {
    const Eigen::MatrixXd ma = transition_matrix(a, t).cwiseAbs();
    const Eigen::MatrixXd ml = transition_matrix(l, t).cwiseAbs();
    const Eigen::MatrixXd mq = transition_matrix(q, t).cwiseAbs();
    if ((ma - ml).cwiseAbs().maxCoeff() > slack || (ma - mq).cwiseAbs().maxCoeff() > slack) return false;
    for (int u = 0; u < g.order(); ++u) {
      const double da = mixing_deviation(a, u, t);
      if (std::abs(da - mixing_deviation(l, u, t)) > slack || std::abs(da - mixing_deviation(q, u, t)) > slack) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace qmix
