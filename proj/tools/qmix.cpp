#include <omp.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "qmix/kernels.hpp"
#include "qmix/report.hpp"

namespace fs = std::filesystem;
using namespace qmix;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Graph load_graph(const std::string& path) {
  const std::string text = read_file(path);
  try {
    if (fs::path(path).extension() == ".wel") return parse_weighted_edgelist(text);
    std::istringstream lines(text);
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      try {
        return parse_graph6(line);
      } catch (const ParseError& e) {
        throw ParseError(e.what(), lineno);
      }
    }
    throw ParseError("no graph in file");
  } catch (const ParseError& e) {
    std::ostringstream msg;
    msg << path;
    if (e.line() > 0) msg << ":" << e.line();
    msg << ": " << e.what();
    throw InputError(msg.str());
  }
}

struct Common {
  std::string input;
  std::string matrix = "adjacency";
  double tol_group = Tolerances{}.group_rel;
  double tol_supp = Tolerances{}.supp;
  double tol_detect = Tolerances{}.detect;

  Tolerances tolerances() const {
    Tolerances t;
    t.group_rel = tol_group;
    t.supp = tol_supp;
    t.detect = tol_detect;
    return t;
  }
  MatrixKind kind() const { return matrix_kind_from_string(matrix); }
};

void add_common(CLI::App* app, Common& c, bool with_input = true) {
  if (with_input) app->add_option("input", c.input, "graph6 (.g6) or weighted edge list (.wel)")->required();
  app->add_option("--matrix", c.matrix, "adjacency | laplacian | signless")
      ->check(CLI::IsMember({"adjacency", "laplacian", "signless"}));
  app->add_option("--tol-group", c.tol_group, "relative eigenvalue grouping tolerance")->check(CLI::PositiveNumber);
  app->add_option("--tol-supp", c.tol_supp, "eigenvalue support threshold")->check(CLI::PositiveNumber);
  app->add_option("--tol-detect", c.tol_detect, "mixing detection threshold")->check(CLI::PositiveNumber);
}

void print(const Json& j) { std::cout << j.dump(2) << '\n'; }

int cmd_spectrum(const Common& c) {
  const Graph g = load_graph(c.input);
  const auto dec = decompose(g, c.kind(), c.tolerances());
  Json out = report_header(dec.tol);
  out["command"] = "spectrum";
  out["matrix"] = to_string(c.kind());
  out["graph"] = graph_summary(g);
  out["spectrum"] = to_json(dec, classify_spectrum(dec));
  Json per = Json::array();
  for (int u = 0; u < g.order(); ++u) {
    Json p = to_json(is_periodic_vertex(dec, u));
    p["vertex"] = u;
    per.push_back(std::move(p));
  }
  out["periodicity"] = std::move(per);
  print(out);
  return 0;
}

int cmd_certify(const Common& c, std::optional<int> vertex, const std::string& tier, bool planar) {
  const Graph g = load_graph(c.input);
  if (vertex && (*vertex < 0 || *vertex >= g.order())) throw InputError("vertex out of range");
  const auto dec = decompose(g, c.kind(), c.tolerances());
  CertifyOptions opt;
  opt.assert_planar = planar;
  const bool paper = tier == "paper";
  Json out = report_header(dec.tol);
  out["command"] = "certify";
  out["graph"] = graph_summary(g);
  const auto rep = certify_graph(g, dec, c.kind(), opt);
  Json cert = to_json(rep, paper);
  if (vertex) {
    Json only = Json::array();
    for (auto& v : cert["vertices"]) {
      if (v["vertex"] == *vertex) only.push_back(v);
    }
    cert["vertices"] = std::move(only);
  }
  out["certificates"] = std::move(cert);
  print(out);
  return 0;
}

int cmd_search(const Common& c, std::optional<int> vertex, double tmax, double step, const std::string& csv) {
  const Graph g = load_graph(c.input);
  if (vertex && (*vertex < 0 || *vertex >= g.order())) throw InputError("vertex out of range");
  const auto dec = decompose(g, c.kind(), c.tolerances());
  const ScanOptions opt{tmax, step, true};
  MixingReport rep = vertex ? scan_local(dec, *vertex, opt) : scan_uniform(dec, opt);
  Json out = report_header(dec.tol);
  out["command"] = "search";
  out["matrix"] = to_string(c.kind());
  out["graph"] = graph_summary(g);
  if (vertex) attach_feasibility(rep, g, dec, c.kind());
  out["mixing"] = to_json(rep);
  if (vertex) {
    Json per = Json::array();
    for (const auto& d : rep.detections) per.push_back(to_json(check_real_target_period(dec, *vertex, d.t, d.target_state)));
    out["real_target_period"] = std::move(per);
  }
  if (!csv.empty()) {
    const auto times = time_grid(tmax, rep.step);
    const auto values = vertex ? local_profile_parallel(column_modes(dec, *vertex), times)
                               : uniform_profile_parallel(dec, times);
    std::ofstream f(csv);
    if (!f) throw InputError("cannot write " + csv);
    write_profile_csv(f, times, values);
    if (!f) throw InputError("failed writing " + csv);
  }
  print(out);
  return 0;
}

struct BatchEntry {
  std::string file;
  int line = 0;
  std::string text;
};

int cmd_batch(const Common& c, const std::string& dir, int jobs) {
  if (!fs::is_directory(dir)) throw InputError("not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".g6") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<BatchEntry> entries;
  for (const auto& f : files) {
    std::istringstream lines(read_file(f.string()));
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) entries.push_back({f.filename().string(), lineno, line});
    }
  }
  const Tolerances tol = c.tolerances();
  const MatrixKind kind = c.kind();
  std::vector<std::string> lines(entries.size());
  std::vector<std::vector<std::string>> fired(entries.size());
  std::vector<int> status(entries.size(), 0);  // 0 error, 1 ruled out, 2 survives
  if (jobs > 0) omp_set_num_threads(jobs);
  const auto count = static_cast<long long>(entries.size());
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < count; ++i) {
    const auto& e = entries[i];
    Json j{{"file", e.file}, {"line", e.line}, {"graph6", e.text}};
    try {
      const Graph g = parse_graph6(e.text);
      const auto dec = decompose(g, kind, tol);
      const auto rep = certify_graph(g, dec, kind);
      std::vector<std::string> rules;
      for (const auto& v : rep.graph) {
        if (v.strict_fired() && v.rule != "local_rules") rules.push_back(v.rule);
      }
      for (const auto& vc : rep.vertices) {
        for (const auto& v : vc.verdicts) {
          if (v.strict_fired()) rules.push_back(v.rule);
        }
      }
      std::sort(rules.begin(), rules.end());
      rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
      j["n"] = g.order();
      j["edges"] = g.size();
      j["graph_ruled_out"] = rep.graph_ruled_out;
      j["surviving"] = rep.surviving;
      j["fired"] = rules;
      fired[i] = rules;
      status[i] = rep.graph_ruled_out ? 1 : 2;
    } catch (const std::exception& ex) {
      j["error"] = ex.what();
    }
    lines[i] = j.dump();
  }
  for (const auto& l : lines) std::cout << l << '\n';
  std::map<std::string, int> rule_counts;
  int errors = 0, ruled_out = 0, survivors = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    errors += status[i] == 0;
    ruled_out += status[i] == 1;
    survivors += status[i] == 2;
    for (const auto& r : fired[i]) ++rule_counts[r];
  }
  Json agg = report_header(tol);
  agg["command"] = "batch";
  agg["matrix"] = to_string(kind);
  agg["aggregate"] = Json{{"graphs", entries.size()},
                          {"errors", errors},
                          {"graph_ruled_out", ruled_out},
                          {"surviving_all_strict", survivors},
                          {"rule_counts", rule_counts}};
  std::cout << agg.dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qmix: continuous quantum walk mixing toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version()));

  Common spectrum_c, certify_c, search_c, batch_c;
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues, classification and vertex periodicity");
  add_common(spectrum, spectrum_c);

  auto* certify = app.add_subcommand("certify", "run the rule-out certificates");
  add_common(certify, certify_c);
  std::optional<int> certify_vertex_opt;
  std::string tier = "strict";
  bool planar = false;
  certify->add_option("--vertex", certify_vertex_opt, "report only this vertex");
  certify->add_option("--tier", tier, "strict | paper")->check(CLI::IsMember({"strict", "paper"}));
  certify->add_flag("--assert-planar", planar, "enable the planar-graph bounds");

  auto* search = app.add_subcommand("search", "scan for uniform or local uniform mixing");
  add_common(search, search_c);
  std::optional<int> search_vertex;
  double tmax = 10.0;
  double step = 0.0;
  std::string csv;
  search->add_option("--vertex", search_vertex, "local mixing at this vertex; whole graph otherwise");
  search->add_option("--tmax", tmax, "end of the time window")->check(CLI::PositiveNumber);
  search->add_option("--step", step, "grid step (default min(0.01, pi/(8 rho)))")->check(CLI::PositiveNumber);
  search->add_option("--csv", csv, "write the deviation profile as t,delta");

  auto* batch = app.add_subcommand("batch", "certify every graph6 line of a directory");
  std::string dir;
  int jobs = 0;
  batch->add_option("dir", dir, "directory of .g6 files")->required();
  add_common(batch, batch_c, false);
  batch->add_option("--jobs", jobs, "worker threads")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*spectrum) return cmd_spectrum(spectrum_c);
    if (*certify) return cmd_certify(certify_c, certify_vertex_opt, tier, planar);
    if (*search) return cmd_search(search_c, search_vertex, tmax, step, csv);
    if (*batch) return cmd_batch(batch_c, dir, jobs);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
