#pragma once

#include <cstdint>
#include <vector>

#include "qmix/graph.hpp"

namespace qmix {

struct TwinPair {
  VertexId u = 0;
  VertexId v = 0;
  bool adjacent = false;  // true twins when adjacent
};

// All unordered pairs u < v with equal weights to every other vertex.
std::vector<TwinPair> find_twin_pairs(const Graph& g);

enum class TwinKind { FalseTwin, TrueTwin };
const char* to_string(TwinKind k);

// G[i] is paired with H[i]. For true twin subgraphs the pairing only serves
// the external-neighbourhood condition.
struct TwinSubgraphWitness {
  TwinKind kind = TwinKind::FalseTwin;
  std::vector<VertexId> G;
  std::vector<VertexId> H;
  // Filled by verify_twin_subgraphs for TrueTwin: valency inside G and H and
  // valency of the cross bipartite graph.
  double valency = 0.0;
  double cross_valency = 0.0;

  int size() const { return static_cast<int>(G.size()); }
};

// Exact check of the claimed kind. Throws std::invalid_argument when G and H
// overlap, have different sizes, or contain out-of-range vertices.
bool verify_twin_subgraphs(const Graph& g, TwinSubgraphWitness& w);
bool verify_twin_subgraphs(const Graph& g, const TwinSubgraphWitness& w);

struct TwinSubgraphSearch {
  std::vector<TwinSubgraphWitness> witnesses;
  std::int64_t candidates_examined = 0;
  bool truncated = false;
};

// Exhaustive over pairs of disjoint vertex sets of equal size a <= a_max, with
// min(G) < min(H), and all pairings f; stops after `budget` candidate pairs.
// Singleton pairs are reported as FalseTwin when non-adjacent, TrueTwin when
// adjacent.
TwinSubgraphSearch search_twin_subgraphs(const Graph& g, int a_max = 4, std::int64_t budget = 1000000);

struct PendantPair {
  VertexId u = 0;
  VertexId w = 0;
  VertexId v = 0;  // common neighbour
  double alpha = 0.0;  // weight of uv
  double beta = 0.0;   // weight of wv
};

// Ordered pairs (u, w), u < w, of pendant vertices sharing their neighbour.
std::vector<PendantPair> pendant_pairs_with_common_neighbor(const Graph& g);

}  // namespace qmix
