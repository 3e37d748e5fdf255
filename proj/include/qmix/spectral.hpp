#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qmix/exact.hpp"
#include "qmix/graph.hpp"
#include "qmix/tolerances.hpp"

namespace qmix {

class EigensolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EigenPairs {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // orthonormal columns matching `values`
};

// Cyclic Jacobi rotations; throws EigensolverError if the off-diagonal mass
// does not vanish within max_sweeps.
EigenPairs jacobi_eigen(const Eigen::MatrixXd& m, int max_sweeps = 100);

class SpectralDecomposition {
 public:
  int order() const { return static_cast<int>(matrix.rows()); }
  int distinct() const { return static_cast<int>(eigenvalues.size()); }
  // Orthonormal basis of the eigenspace of eigenvalues[k].
  Eigen::Ref<const Eigen::MatrixXd> basis(int k) const {
    return vectors.middleCols(offsets[k], multiplicities[k]);
  }

  Eigen::MatrixXd matrix;
  std::vector<double> eigenvalues;  // distinct, ascending
  std::vector<int> multiplicities;
  std::vector<int> offsets;         // first column of each eigenspace in `vectors`
  Eigen::MatrixXd vectors;
  std::vector<Eigen::MatrixXd> projectors;
  double spectral_radius = 0.0;
  double group_tol = 0.0;
  Tolerances tol;
};

// Jacobi for n <= 64, Eigen's tridiagonal QR above. Eigenvalues closer than
// tol.group_rel * max(1, rho) are merged (single-linkage on the sorted list).
SpectralDecomposition decompose(const Eigen::MatrixXd& m, const Tolerances& tol = {});
SpectralDecomposition decompose(const Graph& g, MatrixKind kind, const Tolerances& tol = {});

struct EigenvalueSupport {
  std::vector<int> indices;     // into dec.eigenvalues, ascending
  std::vector<double> weights;  // ||E_lambda x||_2 for each member
  bool contains(int k) const;
};

EigenvalueSupport support(const SpectralDecomposition& dec, const Eigen::VectorXcd& x);
EigenvalueSupport support(const SpectralDecomposition& dec, const Eigen::VectorXd& x);
EigenvalueSupport vertex_support(const SpectralDecomposition& dec, VertexId u);
std::vector<double> support_values(const SpectralDecomposition& dec, const EigenvalueSupport& s);

enum class SpectrumKind { AllInteger, QuadraticSurd, Irregular };
const char* to_string(SpectrumKind k);

// lambda = (a + b sqrt(delta)) / 2. Integers are delta = 1, a = 2 lambda, b = 0.
struct EigenvalueForm {
  bool recognized = false;
  bool integer = false;
  long long a = 0;
  long long b = 0;
  long long delta = 1;
};

struct SpectrumClassification {
  SpectrumKind kind = SpectrumKind::Irregular;
  long long delta = 1;  // square-free discriminant for QuadraticSurd
  long long a = 0;      // common offset for QuadraticSurd
  std::vector<int> indices;           // eigenvalues considered
  std::vector<EigenvalueForm> forms;  // parallel to indices
  // Every eigenvalue is individually recognised but no single (a, delta) fits all.
  bool mixed = false;
};

// Integer eigenvalues are recognised by rounding; a surd is recognised by
// pairing it with its algebraic conjugate in the full spectrum, so that sum
// and squared difference are integers. Bounds come from tol.
SpectrumClassification classify_spectrum(const SpectralDecomposition& dec,
                                         const std::optional<EigenvalueSupport>& restrict_to = std::nullopt);

// Primitive integer basis of ker M(g). On trees the elimination runs in
// leaf-peeling order (matched vertices first, unmatched last).
std::vector<IntVector> exact_kernel(const Graph& g, MatrixKind kind);

struct SignedKernelVector {
  std::vector<int> entries;
  int nnz = 0;
  int nnz_b1 = -1;  // set when a bipartition is supplied
  int nnz_b2 = -1;
};

struct SignedKernelVectors {
  std::vector<SignedKernelVector> vectors;
  bool truncated = false;
};

// {-1,0,1} combinations of the basis with all entries in {-1,0,1} and v_u != 0,
// normalised so the first nonzero entry is +1. Kernels of dimension above
// budget_dim only try combinations of at most two basis vectors.
SignedKernelVectors signed_kernel_vectors(const std::vector<IntVector>& basis, VertexId u, int budget_dim = 12,
                                          const Bipartition* bip = nullptr);

}  // namespace qmix
