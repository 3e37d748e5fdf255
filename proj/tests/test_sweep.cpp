#include <doctest.h>

#include "qmix/certificates.hpp"
#include "qmix/search.hpp"
#include "support.hpp"

using namespace qmix;
using namespace qmix::testing;

namespace {

std::vector<std::string> small_corpus() {
  auto lines = read_lines(std::string(QMIX_TEST_DATA) + "/connected_n2_6.g6");
  const auto n7 = read_lines(std::string(QMIX_TEST_DATA) + "/connected_n7.g6");
  lines.insert(lines.end(), n7.begin(), n7.end());
  return lines;
}

}  // namespace

TEST_CASE("no strict rule fires on a graph with uniform mixing") {
  int mixing = 0;
  for (const auto& line : small_corpus()) {
    const Graph g = parse_graph6(line);
    for (auto kind : {MatrixKind::Adjacency, MatrixKind::Laplacian, MatrixKind::SignlessLaplacian}) {
      const auto dec = decompose(g, kind);
      if (scan_uniform(dec, {20.0}).detections.empty()) continue;
      ++mixing;
      const auto rep = certify_graph(g, dec, kind);
      CHECK_MESSAGE(!rep.graph_ruled_out, line << " " << to_string(kind));
    }
  }
  // K_2, K_3, K_4 and C_4 at least, under A and L.
  CHECK(mixing >= 8);
}

TEST_CASE("no strict vertex rule fires where local uniform mixing is found") {
  int hits = 0;
  for (const auto& line : small_corpus()) {
    const Graph g = parse_graph6(line);
    for (auto kind : {MatrixKind::Adjacency, MatrixKind::Laplacian}) {
      const auto dec = decompose(g, kind);
      std::optional<CertificateReport> rep;
      for (int u = 0; u < g.order(); ++u) {
        if (scan_local(dec, u, {20.0}).detections.empty()) continue;
        ++hits;
        if (!rep) rep = certify_graph(g, dec, kind);
        for (const auto& v : rep->vertices[u].verdicts) {
          CHECK_MESSAGE(!v.strict_fired(), line << " u=" << u << " " << v.rule);
        }
      }
    }
  }
  CHECK(hits > 0);
}
