#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qmix/graph.hpp"
#include "qmix/spectral.hpp"

namespace qmix {

struct TargetState {
  std::vector<double> phases;

  Eigen::VectorXcd vector() const;
  // Entrywise normalisation of a vector with no zero entries.
  static TargetState from_vector(const Eigen::VectorXcd& v);
};

struct FeasibilityCheck {
  std::string rule;
  double residual = 0.0;
  bool passed = true;
};

struct FeasibilityReport {
  bool feasible = true;
  std::string failed_rule;  // first violated rule
  double failed_residual = 0.0;
  std::vector<FeasibilityCheck> checks;  // applicable checks, in evaluation order
};

// Necessary conditions on mu as the target of local epsilon-uniform mixing at
// u. Rules, in order:
//   constant_target, quarter_arc, level_set_partition, edge_cosine_sum,
//   common_neighbour_cosine_sum, signless_cosine_sum, laplacian_cosine_sum
//     (unit weights only);
//   projector_diagonal, projector_norms, support_equality (any weights);
//   bipartite_phase_pattern, bipartite_cos_sin (adjacency, bipartite graph).
// Throws on dimension mismatch.
FeasibilityReport verify_target_state(const Graph& g, const SpectralDecomposition& dec, MatrixKind kind, VertexId u,
                                      const TargetState& mu);

}  // namespace qmix
