#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmix/graph.hpp"
#include "qmix/spectral.hpp"
#include "qmix/twins.hpp"

namespace qmix {

enum class Tier { Strict, PaperAsserted };
enum class Verdict { RuledOut, Inconclusive, NotApplicable };
enum class Scope { VertexLocal, GraphEpsilonUM };

const char* to_string(Tier t);
const char* to_string(Verdict v);
const char* to_string(Scope s);

struct CertificateVerdict {
  std::string rule;
  Tier tier = Tier::Strict;
  Verdict verdict = Verdict::Inconclusive;
  Scope scope = Scope::VertexLocal;
  std::optional<VertexId> vertex;
  std::vector<std::pair<std::string, std::string>> witness;

  bool fired() const { return verdict == Verdict::RuledOut; }
  bool strict_fired() const { return fired() && tier == Tier::Strict; }
};

struct CertifyOptions {
  bool assert_planar = false;
  // Skip checks that compare floating-point eigenvectors.
  bool exact_only = false;
  int twin_a_max = 4;
  std::int64_t twin_budget = 1000000;
  int kernel_budget_dim = 12;
  // Set when the graph was built as subdivide(*subdivision_of).
  std::optional<Graph> subdivision_of;
  // Integer eigenvectors of M supplied by the caller; each is verified.
  std::vector<std::vector<long long>> extra_vectors;
};

struct VertexCertificates {
  VertexId vertex = 0;
  std::vector<CertificateVerdict> verdicts;  // sorted by rule id
  bool survives = true;                      // no Strict rule fired
};

struct CertificateReport {
  int order = 0;
  int size = 0;
  MatrixKind kind = MatrixKind::Adjacency;
  WeightClass weights = WeightClass::Unit;
  bool connected = true;
  bool bipartite = false;
  std::vector<VertexCertificates> vertices;
  std::vector<CertificateVerdict> graph;  // sorted by rule id
  std::vector<VertexId> surviving;
  bool graph_ruled_out = false;  // some Strict rule fired, at graph or vertex level
};

// Shared inputs for the individual certificates; computed once per graph.
class CertificateContext {
 public:
  CertificateContext(const Graph& g, const SpectralDecomposition& dec, MatrixKind kind, CertifyOptions opt = {});

  const Graph& graph() const { return *g_; }
  const SpectralDecomposition& dec() const { return *dec_; }
  MatrixKind kind() const { return kind_; }
  const CertifyOptions& options() const { return opt_; }
  const DegreeStats& stats() const { return stats_; }
  const Bipartition& bip() const { return bip_; }
  const CycleFlags& cycles() const { return cycles_; }
  bool connected() const { return connected_; }
  // Primitive integer basis of ker M; empty for real weights.
  const std::vector<IntVector>& kernel() const { return kernel_; }
  bool exact_available() const { return g_->integer_weights(); }
  // Twin subgraph witnesses found by search (already verified).
  const std::vector<TwinSubgraphWitness>& twin_subgraphs() const;

 private:
  const Graph* g_;
  const SpectralDecomposition* dec_;
  MatrixKind kind_;
  CertifyOptions opt_;
  DegreeStats stats_;
  Bipartition bip_;
  CycleFlags cycles_;
  bool connected_ = true;
  std::vector<IntVector> kernel_;
  mutable std::optional<std::vector<TwinSubgraphWitness>> twin_subgraphs_;
};

// Vertex-local certificates.
CertificateVerdict cert_connectivity(const CertificateContext& c, VertexId u);
CertificateVerdict cert_twin_vertex(const CertificateContext& c, VertexId u);
CertificateVerdict cert_degree_laplacian(const CertificateContext& c, VertexId u);
std::vector<CertificateVerdict> cert_degree_adjacency(const CertificateContext& c, VertexId u);
CertificateVerdict cert_eigenvector_exact(const CertificateContext& c, VertexId u);
CertificateVerdict cert_eigenvector_canonical(const CertificateContext& c, VertexId u);
CertificateVerdict cert_twin_subgraphs(const CertificateContext& c, VertexId u,
                                       const std::vector<TwinSubgraphWitness>& witnesses);
CertificateVerdict cert_bipartite_parity(const CertificateContext& c, VertexId u);
std::vector<CertificateVerdict> cert_kernel_vector(const CertificateContext& c, VertexId u);
CertificateVerdict cert_planar_family(const CertificateContext& c, VertexId u);
CertificateVerdict cert_pendant_pair(const CertificateContext& c, VertexId u);

// Graph-level certificates for epsilon-uniform mixing.
std::vector<CertificateVerdict> cert_bipartite_global(const CertificateContext& c);
std::vector<CertificateVerdict> cert_tree_suite(const CertificateContext& c);
std::vector<CertificateVerdict> cert_pendant_pair_global(const CertificateContext& c);

VertexCertificates certify_vertex(const CertificateContext& c, VertexId u);
CertificateReport certify_graph(const Graph& g, const SpectralDecomposition& dec, MatrixKind kind,
                                const CertifyOptions& opt = {});

}  // namespace qmix
