#include <doctest.h>

#include "qmix/kernels.hpp"
#include "qmix/search.hpp"
#include "qmix/walk.hpp"
#include "support.hpp"

using namespace qmix;
using namespace qmix::testing;

namespace {

std::vector<Graph> weighted_corpus(int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> nd(2, 30);
  std::uniform_real_distribution<double> pd(0.0, 0.3);
  std::vector<Graph> out;
  for (int i = 0; i < count; ++i) out.push_back(random_connected_weighted(nd(rng), pd(rng), rng));
  return out;
}

}  // namespace

TEST_CASE("transition matrix matches the matrix exponential") {
  std::mt19937 rng(2);
  for (int i = 0; i < 10; ++i) {
    const Graph g = random_connected_weighted(3 + i, 0.3, rng);
    for (auto kind : {MatrixKind::Adjacency, MatrixKind::Laplacian, MatrixKind::SignlessLaplacian}) {
      const auto dec = decompose(g, kind);
      for (double t : {0.3, 1.7, 12.0}) {
        const auto u = transition_matrix(dec, t);
        CHECK((u - expm_oracle(dec.matrix, t)).cwiseAbs().maxCoeff() < 1e-9);
        CHECK((transition_column(dec, 0, t) - u.col(0)).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
}

TEST_CASE("invariants on a random weighted corpus") {
  const auto corpus = weighted_corpus(100, 17);
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> td(0.0, 20.0);
  for (const auto& g : corpus) {
    const int n = g.order();
    const auto kind = static_cast<MatrixKind>(rng() % 3);
    const auto dec = decompose(g, kind);
    const double s = td(rng);
    const double t = td(rng);
    const auto us = transition_matrix(dec, s);
    const auto ut = transition_matrix(dec, t);
    const auto id = Eigen::MatrixXcd::Identity(n, n);
    // Unitarity and symmetry.
    CHECK((us * us.adjoint() - id).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((us - us.transpose()).cwiseAbs().maxCoeff() < 1e-9);
    // Group law.
    CHECK((us * ut - transition_matrix(dec, s + t)).cwiseAbs().maxCoeff() < 1e-8);
    // Projector algebra and reconstruction.
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd rec = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < dec.distinct(); ++k) {
      const auto& e = dec.projectors[k];
      CHECK((e * e - e).cwiseAbs().maxCoeff() < 1e-9);
      CHECK(std::abs(e.trace() - dec.multiplicities[k]) < 1e-9);
      if (k + 1 < dec.distinct()) CHECK((e * dec.projectors[k + 1]).cwiseAbs().maxCoeff() < 1e-9);
      sum += e;
      rec += dec.eigenvalues[k] * e;
    }
    CHECK((sum - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((rec - dec.matrix).cwiseAbs().maxCoeff() < 1e-9 * std::max(1.0, dec.spectral_radius));
    // Support partition: ||e_u||^2 splits over the support.
    for (int u = 0; u < n; ++u) {
      const auto sp = vertex_support(dec, u);
      double mass = 0.0;
      for (double w : sp.weights) mass += w * w;
      CHECK(std::abs(mass - 1.0) < 1e-9);
      // Deviation at time zero.
      CHECK(mixing_deviation(dec, u, 0.0) == doctest::Approx(std::sqrt((n - 1.0) / n)).epsilon(1e-12));
    }
    const auto bip = bipartition(g);
    if (bip.present && kind == MatrixKind::Adjacency) CHECK(bipartite_block_check(dec, bip, s));
  }
}

TEST_CASE("bipartite block pattern and its preconditions") {
  const Graph g = hypercube(3);
  const auto dec = decompose(g, MatrixKind::Adjacency);
  for (double t : {0.1, 0.7, 3.3}) CHECK(bipartite_block_check(dec, bipartition(g), t));
  CHECK_THROWS_AS(bipartite_block_check(dec, bipartition(cycle(5)), 0.1), std::invalid_argument);
  const auto lap = decompose(g, MatrixKind::Laplacian);
  CHECK_THROWS_AS(bipartite_block_check(lap, bipartition(g), 0.1), std::invalid_argument);
}

TEST_CASE("regular graphs: A, L and Q give the same |U|") {
  std::mt19937 rng(31);
  const std::vector<double> times{0.25, 1.0, 2.5, 7.0};
  for (int i = 0; i < 20; ++i) {
    const int k = 2 + static_cast<int>(rng() % 3);
    const int n = 2 * (4 + static_cast<int>(rng() % 6));
    const Graph g = random_regular(n, k, rng);
    CHECK(regular_equivalence_check(g, times));
  }
  CHECK_THROWS_AS(regular_equivalence_check(path(4), times), std::invalid_argument);
}

TEST_CASE("Hadamard classification") {
  const auto dec = decompose(complete(4), MatrixKind::Adjacency);
  const Eigen::MatrixXcd h = 2.0 * transition_matrix(dec, kPi / 4);
  const auto c = hadamard_classify(h);
  CHECK(c.kind == HadamardKind::Butson);
  CHECK(c.butson_order == 8);
  CHECK_FALSE(c.dephased);

  Eigen::MatrixXcd h2(2, 2);
  h2 << 1, 1, 1, -1;
  const auto r = hadamard_classify(h2);
  CHECK(r.kind == HadamardKind::Real);
  CHECK(r.dephased);

  Eigen::MatrixXcd h4(2, 2);
  h4 << 1, std::complex<double>(0, 1), std::complex<double>(0, 1), 1;
  CHECK(hadamard_classify(h4).kind == HadamardKind::Turyn);

  // Fourier matrix of order 3.
  Eigen::MatrixXcd f3(3, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) f3(i, j) = std::polar(1.0, 2 * kPi * i * j / 3);
  }
  const auto b3 = hadamard_classify(f3);
  CHECK(b3.kind == HadamardKind::Butson);
  CHECK(b3.butson_order == 3);

  // Unimodular and orthogonal, but with an irrational phase.
  Eigen::MatrixXcd cx(2, 2);
  const auto z = std::polar(1.0, 1.0);
  cx << 1, z, 1, -z;
  CHECK(hadamard_classify(cx).kind == HadamardKind::Complex);

  CHECK(hadamard_classify(Eigen::MatrixXcd::Identity(2, 2)).kind == HadamardKind::NotHadamard);
}

TEST_CASE("serial and parallel profiles agree exactly") {
  std::mt19937 rng(41);
  const Graph g = random_connected_weighted(20, 0.2, rng);
  const auto dec = decompose(g, MatrixKind::Adjacency);
  const auto times = time_grid(30.0, 0.01);
  const auto modes = column_modes(dec, 3);
  CHECK(local_profile_serial(modes, times) == local_profile_parallel(modes, times));
  const auto few = time_grid(2.0, 0.01);
  CHECK(uniform_profile_serial(dec, few) == uniform_profile_parallel(dec, few));
  for (std::size_t i = 0; i < times.size(); i += 250) {
    CHECK(std::abs(column_deviation(modes, times[i]) - mixing_deviation(dec, 3, times[i])) < 1e-12);
  }
  CHECK(std::abs(uniform_deviation(dec, 1.3) - matrix_uniform_deviation(dec, 1.3)) < 1e-12);
}

TEST_CASE("time grid") {
  const auto t = time_grid(1.0, 0.25);
  CHECK(t == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(time_grid(1.0, 0.1).size() == 11);
  CHECK_THROWS_AS(time_grid(0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(time_grid(1.0, -0.1), std::invalid_argument);
}

TEST_CASE("similar vertices have equal deviation profiles") {
  const auto times = time_grid(10.0, 0.05);
  const auto check = [&](const Graph& g, const std::vector<std::pair<int, int>>& pairs) {
    const auto dec = decompose(g, MatrixKind::Adjacency);
    for (const auto& [u, v] : pairs) {
      const auto a = local_profile_serial(column_modes(dec, u), times);
      const auto b = local_profile_serial(column_modes(dec, v), times);
      for (std::size_t i = 0; i < times.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-9);
    }
  };
  check(cycle(7), {{0, 3}, {1, 6}});
  check(hypercube(3), {{0, 5}, {2, 7}});
  check(star(5), {{1, 4}, {2, 3}});
}

TEST_CASE("uniform mixing gives non-dephased complex Hadamard matrices") {
  for (const Graph& g : {complete(2), complete(4), hypercube(3), star(3)}) {
    for (auto kind : {MatrixKind::Adjacency, MatrixKind::Laplacian}) {
      // The star is not regular; under L only its centre mixes.
      if (g.order() == 4 && !is_weighted_regular(g) && kind == MatrixKind::Laplacian) continue;
      const auto dec = decompose(g, kind);
      const auto rep = scan_uniform(dec, {3.0});
      REQUIRE_FALSE(rep.detections.empty());
      for (const auto& d : rep.detections) {
        const double t = d.t;
        REQUIRE(matrix_uniform_deviation(dec, t) < 1e-9);
        const Eigen::MatrixXcd h = std::sqrt(static_cast<double>(g.order())) * transition_matrix(dec, t);
        const auto c = hadamard_classify(h);
        CHECK(c.kind != HadamardKind::NotHadamard);
        CHECK_FALSE(c.dephased);
      }
    }
  }
}
