#include "qmix/twins.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <set>

namespace qmix {

const char* to_string(TwinKind k) { return k == TwinKind::TrueTwin ? "true" : "false"; }

std::vector<TwinPair> find_twin_pairs(const Graph& g) {
  const int n = g.order();
  std::vector<TwinPair> out;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (g.degree(u) - (g.adjacent(u, v) ? 1 : 0) != g.degree(v) - (g.adjacent(u, v) ? 1 : 0)) continue;
      bool same = true;
      for (VertexId w : g.neighbors(u)) {
        if (w != v && g.weight(u, w) != g.weight(v, w)) {
          same = false;
          break;
        }
      }
      if (same) out.push_back({u, v, g.adjacent(u, v)});
    }
  }
  return out;
}

namespace {

// Sums of non-integer weights are compared with a relative slack of a few ulps.
bool same_sum(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}); }

void check_shape(const Graph& g, const TwinSubgraphWitness& w) {
  if (w.G.size() != w.H.size() || w.G.empty()) throw std::invalid_argument("twin subgraphs must be nonempty and equal in size");
  std::vector<char> seen(g.order(), 0);
  for (const auto* part : {&w.G, &w.H}) {
    for (VertexId x : *part) {
      if (x < 0 || x >= g.order()) throw std::invalid_argument("twin subgraph vertex out of range");
      if (seen[x]) throw std::invalid_argument("twin subgraph vertex sets overlap");
      seen[x] = 1;
    }
  }
}

bool external_condition(const Graph& g, const std::vector<VertexId>& G, const std::vector<VertexId>& H,
                        const std::vector<char>& inside) {
  for (std::size_t i = 0; i < G.size(); ++i) {
    for (int w = 0; w < g.order(); ++w) {
      if (!inside[w] && g.weight(G[i], w) != g.weight(H[i], w)) return false;
    }
  }
  return true;
}

bool false_twin_condition(const Graph& g, const std::vector<VertexId>& G, const std::vector<VertexId>& H) {
  const std::size_t a = G.size();
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < a; ++j) {
      if (g.adjacent(G[i], H[j])) return false;
      if (i < j && g.weight(G[i], G[j]) != g.weight(H[i], H[j])) return false;
    }
  }
  return true;
}

bool true_twin_condition(const Graph& g, const std::vector<VertexId>& G, const std::vector<VertexId>& H,
                         double* valency, double* cross) {
  auto sum_into = [&](VertexId x, const std::vector<VertexId>& part) {
    double s = 0.0;
    for (VertexId y : part) s += g.weight(x, y);
    return s;
  };
  const double k = sum_into(G[0], G);
  const double l = sum_into(G[0], H);
  for (VertexId x : G) {
    if (!same_sum(sum_into(x, G), k) || !same_sum(sum_into(x, H), l)) return false;
  }
  for (VertexId y : H) {
    if (!same_sum(sum_into(y, H), k) || !same_sum(sum_into(y, G), l)) return false;
  }
  if (valency) *valency = k;
  if (cross) *cross = l;
  return true;
}

}  // namespace

bool verify_twin_subgraphs(const Graph& g, TwinSubgraphWitness& w) {
  check_shape(g, w);
  std::vector<char> inside(g.order(), 0);
  for (VertexId x : w.G) inside[x] = 1;
  for (VertexId x : w.H) inside[x] = 1;
  if (!external_condition(g, w.G, w.H, inside)) return false;
  if (w.kind == TwinKind::FalseTwin) return false_twin_condition(g, w.G, w.H);
  return true_twin_condition(g, w.G, w.H, &w.valency, &w.cross_valency);
}

bool verify_twin_subgraphs(const Graph& g, const TwinSubgraphWitness& w) {
  TwinSubgraphWitness copy = w;
  return verify_twin_subgraphs(g, copy);
}

namespace {

// Vertices other than x and y that see x and y with different weights; empty
// optional when there are more than `cap` of them.
std::optional<std::vector<VertexId>> discrepancy(const Graph& g, VertexId x, VertexId y, int cap) {
  std::vector<VertexId> d;
  for (VertexId from : {x, y}) {
    for (VertexId w : g.neighbors(from)) {
      if (w == x || w == y || g.weight(x, w) == g.weight(y, w)) continue;
      if (from == y && g.adjacent(x, w)) continue;  // counted from x
      d.push_back(w);
      if (static_cast<int>(d.size()) > cap) return std::nullopt;
    }
  }
  return d;
}

// Vertex sets S, T (sorted, min S < min T) of size a that admit a pairing
// meeting the external condition. Each pair (s, t) of such a pairing has its
// discrepancy inside S u T, so matchings are grown by covering the smallest
// vertex that some chosen pair forces into S u T.
class CandidateSets {
 public:
  CandidateSets(const Graph& g, int a, std::int64_t* steps, std::int64_t budget)
      : a_(a), steps_(steps), budget_(budget), n_(g.order()), partners_(n_), used_(n_, 0), in_u_(n_, 0) {
    for (int x = 0; x < n_; ++x) {
      for (int y = x + 1; y < n_; ++y) {
        if (auto d = discrepancy(g, x, y, 2 * a - 2)) {
          partners_[x].push_back({y, *d});
          partners_[y].push_back({x, std::move(*d)});
        }
      }
    }
  }

  // False when the budget ran out.
  bool run() {
    grow(-1);
    return !out_of_budget_;
  }
  const std::set<std::pair<std::vector<VertexId>, std::vector<VertexId>>>& sets() const { return sets_; }

 private:
  struct Partner {
    VertexId y;
    std::vector<VertexId> d;
  };

  void grow(VertexId last_free) {
    if (out_of_budget_) return;
    if (static_cast<int>(pairs_.size()) == a_) {
      if (static_cast<int>(u_.size()) == 2 * a_) emit();
      return;
    }
    VertexId pending = -1;
    for (VertexId v : u_) {
      if (!used_[v] && (pending < 0 || v < pending)) pending = v;
    }
    if (pending >= 0) {
      extend_from(pending, last_free, false);
      return;
    }
    // A new free pair starts above the previous one and carries its minimum first.
    for (VertexId x = last_free + 1; x < n_; ++x) {
      if (!used_[x]) extend_from(x, x, true);
    }
  }

  void extend_from(VertexId x, VertexId last_free, bool free) {
    for (const auto& p : partners_[x]) {
      if (used_[p.y] || (free && p.y < x)) continue;
      if (++*steps_ > budget_) {
        out_of_budget_ = true;
        return;
      }
      const std::size_t mark = u_.size();
      auto add = [&](VertexId v) {
        if (!in_u_[v]) {
          in_u_[v] = 1;
          u_.push_back(v);
        }
      };
      add(x);
      add(p.y);
      for (VertexId v : p.d) add(v);
      if (static_cast<int>(u_.size()) <= 2 * a_) {
        used_[x] = used_[p.y] = 1;
        pairs_.emplace_back(x, p.y);
        grow(last_free);
        pairs_.pop_back();
        used_[x] = used_[p.y] = 0;
      }
      while (u_.size() > mark) {
        in_u_[u_.back()] = 0;
        u_.pop_back();
      }
      if (out_of_budget_) return;
    }
  }

  // Every orientation of the pairs with the smallest vertex in S.
  void emit() {
    const VertexId m = *std::min_element(u_.begin(), u_.end());
    for (int mask = 0; mask < (1 << a_); ++mask) {
      std::vector<VertexId> s, t;
      for (int i = 0; i < a_; ++i) {
        const auto [p, q] = pairs_[i];
        const bool flip = (mask >> i) & 1;
        s.push_back(flip ? q : p);
        t.push_back(flip ? p : q);
      }
      if (std::find(s.begin(), s.end(), m) == s.end()) continue;
      std::sort(s.begin(), s.end());
      std::sort(t.begin(), t.end());
      sets_.emplace(std::move(s), std::move(t));
    }
  }

  int a_;
  std::int64_t* steps_;
  std::int64_t budget_;
  int n_;
  std::vector<std::vector<Partner>> partners_;
  std::vector<char> used_;
  std::vector<char> in_u_;
  std::vector<VertexId> u_;
  std::vector<std::pair<VertexId, VertexId>> pairs_;
  std::set<std::pair<std::vector<VertexId>, std::vector<VertexId>>> sets_;
  bool out_of_budget_ = false;
};

}  // namespace

TwinSubgraphSearch search_twin_subgraphs(const Graph& g, int a_max, std::int64_t budget) {
  const int n = g.order();
  TwinSubgraphSearch out;
  std::vector<char> inside(n, 0);
  for (int a = 1; a <= a_max && 2 * a <= n; ++a) {
    CandidateSets cands(g, a, &out.candidates_examined, budget);
    const bool finished = cands.run();
    for (const auto& [S, T0] : cands.sets()) {
      for (int x : S) inside[x] = 1;
      for (int x : T0) inside[x] = 1;
      std::vector<VertexId> T = T0;
      bool have_false = false;
      bool have_true = false;
      do {
        if (!external_condition(g, S, T, inside)) continue;
        if (a == 1) {
          TwinSubgraphWitness w{g.adjacent(S[0], T[0]) ? TwinKind::TrueTwin : TwinKind::FalseTwin, S, T};
          verify_twin_subgraphs(g, w);
          out.witnesses.push_back(std::move(w));
          break;
        }
        if (!have_false && false_twin_condition(g, S, T)) {
          out.witnesses.push_back({TwinKind::FalseTwin, S, T});
          have_false = true;
        }
        if (!have_true) {
          TwinSubgraphWitness w{TwinKind::TrueTwin, S, T};
          if (true_twin_condition(g, S, T, &w.valency, &w.cross_valency)) {
            out.witnesses.push_back(std::move(w));
            have_true = true;
          }
        }
      } while (!(have_false && have_true) && std::next_permutation(T.begin(), T.end()));
      for (int x : S) inside[x] = 0;
      for (int x : T0) inside[x] = 0;
    }
    if (!finished) {
      out.truncated = true;
      break;
    }
  }
  return out;
}

std::vector<PendantPair> pendant_pairs_with_common_neighbor(const Graph& g) {
  std::vector<PendantPair> out;
  for (int u = 0; u < g.order(); ++u) {
    if (g.degree(u) != 1) continue;
    const VertexId v = g.neighbors(u)[0];
    for (VertexId w : g.neighbors(v)) {
      if (w > u && g.degree(w) == 1) out.push_back({u, w, v, g.weight(u, v), g.weight(w, v)});
    }
  }
  return out;
}

}  // namespace qmix
