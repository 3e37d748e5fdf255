#include <charconv>
#include <cmath>
#include <sstream>

#include "qmix/graph.hpp"

namespace qmix {

namespace {

constexpr std::string_view kGraph6Header = ">>graph6<<";

int sextet(char c) {
  const auto b = static_cast<unsigned char>(c);
  if (b > 127) throw ParseError("graph6: non-ASCII byte in input");
  if (b < 63 || b > 126) throw ParseError("graph6: byte out of range 63..126");
  return b - 63;
}

}  // namespace

Graph parse_graph6(std::string_view line) {
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
  if (line.substr(0, kGraph6Header.size()) == kGraph6Header) line.remove_prefix(kGraph6Header.size());
  if (line.empty()) throw ParseError("graph6: empty line");

  std::size_t pos = 0;
  std::int64_t n = 0;
  const int first = sextet(line[0]);
  if (first < 63) {
    n = first;
    pos = 1;
  } else {
    const bool wide = line.size() > 1 && sextet(line[1]) == 63;
    const std::size_t digits = wide ? 6 : 3;
    const std::size_t start = wide ? 2 : 1;
    if (line.size() < start + digits) throw ParseError("graph6: truncated size header");
    for (std::size_t i = 0; i < digits; ++i) n = (n << 6) | sextet(line[start + i]);
    pos = start + digits;
  }
  if (n < 1) throw ParseError("graph6: graph has no vertices");
  if (n > Graph::kMaxOrder) throw ParseError("graph6: order exceeds implementation cap");

  const std::int64_t bits = n * (n - 1) / 2;
  const std::size_t expected = static_cast<std::size_t>((bits + 5) / 6);
  const std::string_view payload = line.substr(pos);
  if (payload.size() != expected) {
    throw ParseError("graph6: payload length " + std::to_string(payload.size()) + ", expected " +
                     std::to_string(expected));
  }

  std::vector<Edge> edges;
  std::int64_t k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      const int byte = sextet(payload[static_cast<std::size_t>(k / 6)]);
      if ((byte >> (5 - k % 6)) & 1) edges.push_back({i, j, 1.0});
    }
  }
  for (; k < static_cast<std::int64_t>(expected) * 6; ++k) {
    if ((sextet(payload[static_cast<std::size_t>(k / 6)]) >> (5 - k % 6)) & 1) {
      throw ParseError("graph6: nonzero padding bits");
    }
  }
  return Graph(static_cast<int>(n), std::move(edges));
}

std::string to_graph6(const Graph& g) {
  const int n = g.order();
  std::string out;
  if (n < 63) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n < 258048) {
    out.push_back(126);
    for (int s = 12; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
  }
  int acc = 0;
  int filled = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
  return out;
}

Graph parse_weighted_edgelist(std::string_view text) {
  std::vector<Edge> edges;
  int max_vertex = -1;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::istringstream in{std::string(line)};
    in.imbue(std::locale::classic());
    std::string tok_u, tok_v, tok_w, extra;
    if (!(in >> tok_u)) continue;
    if (!(in >> tok_v >> tok_w)) throw ParseError("edge list: expected 'u v w'", line_no);
    if (in >> extra) throw ParseError("edge list: trailing token '" + extra + "'", line_no);

    auto parse_id = [&](const std::string& tok) {
      int id = 0;
      const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), id);
      if (ec != std::errc{} || p != tok.data() + tok.size() || id < 0) {
        throw ParseError("edge list: bad vertex id '" + tok + "'", line_no);
      }
      return id;
    };
    Edge e;
    e.u = parse_id(tok_u);
    e.v = parse_id(tok_v);
    {
      const auto [p, ec] = std::from_chars(tok_w.data(), tok_w.data() + tok_w.size(), e.w);
      if (ec != std::errc{} || p != tok_w.data() + tok_w.size() || !std::isfinite(e.w)) {
        throw ParseError("edge list: bad weight '" + tok_w + "'", line_no);
      }
    }
    if (e.u == e.v) throw ParseError("edge list: self-loop at vertex " + tok_u, line_no);
    if (!(e.w > 0.0)) throw ParseError("edge list: nonpositive weight", line_no);
    for (const auto& prev : edges) {
      if ((prev.u == e.u && prev.v == e.v) || (prev.u == e.v && prev.v == e.u)) {
        throw ParseError("edge list: duplicate edge " + tok_u + " " + tok_v, line_no);
      }
    }
    if (std::max(e.u, e.v) >= Graph::kMaxOrder) throw ParseError("edge list: vertex id exceeds cap", line_no);
    max_vertex = std::max({max_vertex, e.u, e.v});
    edges.push_back(e);
  }
  if (max_vertex < 0) throw ParseError("edge list: no edges");
  return Graph(max_vertex + 1, std::move(edges));
}

}  // namespace qmix
