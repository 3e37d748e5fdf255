#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qmix/graph.hpp"
#include "qmix/spectral.hpp"

namespace qmix {

using cplx = std::complex<double>;

// U(t) = sum_lambda e^{i t lambda} E_lambda.
Eigen::MatrixXcd transition_matrix(const SpectralDecomposition& dec, double t);
Eigen::VectorXcd transition_column(const SpectralDecomposition& dec, VertexId u, double t);

// || |U(t) e_u|^2 - (1/n) 1 ||_2 (Euclidean norm of the probability defect).
double mixing_deviation(const SpectralDecomposition& dec, VertexId u, double t);
// max_u mixing_deviation(dec, u, t).
double matrix_uniform_deviation(const SpectralDecomposition& dec, double t);

enum class HadamardKind { NotHadamard, Complex, Butson, Turyn, Real };
const char* to_string(HadamardKind k);

struct HadamardClass {
  HadamardKind kind = HadamardKind::NotHadamard;
  int butson_order = 0;  // least r with all entries r-th roots of unity; 0 if none <= r_max
  bool dephased = false;
  double max_defect = 0.0;          // || H conj(H)^T - n I ||_max
  double max_modulus_error = 0.0;   // max_ij | |H_ij| - 1 |
};

// Entries must be unimodular within tol and the defect at most tol * n.
HadamardClass hadamard_classify(const Eigen::MatrixXcd& h, double tol = 1e-6, int r_max = 24);

// Within-part blocks of U(t) real and cross blocks purely imaginary, within
// tol.alg(n). Throws std::invalid_argument when the bipartition is absent or
// the decomposed matrix is not zero on the diagonal and inside both parts.
bool bipartite_block_check(const SpectralDecomposition& dec, const Bipartition& bip, double t);

// |U_A(t) e_u| = |U_L(t) e_u| = |U_Q(t) e_u| entrywise for every u and t.
// Throws std::invalid_argument for graphs that are not weighted-regular.
bool regular_equivalence_check(const Graph& g, std::span<const double> times, const Tolerances& tol = {});

}  // namespace qmix
