#include "qmix/report.hpp"

#include <stdexcept>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

namespace qmix {

#ifndef QMIX_VERSION
#define QMIX_VERSION "0.0.0"
#endif

const char* version() { return QMIX_VERSION; }

double round15(double x) {
  if (!std::isfinite(x) || x == 0.0) return x == 0.0 ? 0.0 : x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  double y = 0.0;
  std::from_chars(buf, buf + std::char_traits<char>::length(buf), y);
  return y;
}

namespace {

Json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round15(x);
}

Json cplx_json(cplx z) { return Json::array({num(z.real()), num(z.imag())}); }

}  // namespace

Json to_json(const Tolerances& t) {
  return Json{{"group_rel", t.group_rel},
              {"alg_per_n", t.alg_per_n},
              {"supp", t.supp},
              {"recog", t.recog},
              {"detect", t.detect},
              {"feas", t.feas},
              {"safe_per_sqrt_n", t.safe_per_sqrt_n},
              {"hadamard", t.hadamard},
              {"butson_max_order", t.butson_max_order},
              {"surd_max_discriminant", t.surd_max_discriminant},
              {"surd_max_offset", t.surd_max_offset}};
}

Json graph_summary(const Graph& g) {
  Json j;
  j["n"] = g.order();
  j["edges"] = g.size();
  j["weight_class"] = to_string(g.weight_class());
  const bool conn = is_connected(g);
  j["connected"] = conn;
  const auto bip = bipartition(g);
  if (bip.present) {
    j["bipartition"] = Json{{"b1", bip.b1}, {"b2", bip.b2}};
  } else {
    j["bipartition"] = nullptr;
  }
  j["cyclomatic_index"] = conn ? Json(cyclomatic_index(g)) : Json(nullptr);
  const auto cf = cycle_flags(g);
  j["flags"] = Json{{"tree", is_tree(g)},
                    {"triangle", cf.has_triangle},
                    {"c4", cf.has_c4},
                    {"c5", cf.has_c5},
                    {"weighted_regular", is_weighted_regular(g)}};
  return j;
}

Json to_json(const SpectralDecomposition& dec, const SpectrumClassification& cls) {
  Json j;
  Json eig = Json::array();
  for (int k = 0; k < dec.distinct(); ++k) {
    Json e{{"value", num(dec.eigenvalues[k])}, {"multiplicity", dec.multiplicities[k]}};
    const auto it = std::find(cls.indices.begin(), cls.indices.end(), k);
    if (it != cls.indices.end()) {
      const auto& f = cls.forms[static_cast<std::size_t>(it - cls.indices.begin())];
      if (f.recognized) {
        // The recognised closed form, evaluated, instead of the solver's value.
        e["value"] = num((static_cast<double>(f.a) + static_cast<double>(f.b) * std::sqrt(static_cast<double>(f.delta))) / 2);
        e["form"] = f.integer ? Json{{"integer", f.a / 2}} : Json{{"a", f.a}, {"b", f.b}, {"delta", f.delta}};
      } else {
        e["form"] = nullptr;
      }
    }
    eig.push_back(std::move(e));
  }
  j["eigenvalues"] = std::move(eig);
  j["spectral_radius"] = num(dec.spectral_radius);
  j["classification"] = Json{{"kind", to_string(cls.kind)}, {"delta", cls.delta}, {"a", cls.a}, {"mixed", cls.mixed}};
  return j;
}

namespace {

// Why a literal statement is kept out of the strict tier.
const char* tension(const std::string& rule) {
  if (rule == "bipartite_min_part") return "K_{1,3} mixes uniformly at 2pi/(3 sqrt 3) although its smaller part has 1 < sqrt(2) vertices";
  if (rule == "singular_bipartite_mod4") return "K_{1,3} is singular and mixes uniformly although its parts have sizes 1 and 3";
  if (rule == "kernel_vector_literal") return "the derivation bounds sqrt(n) by the support of the kernel vector on the part, not the part size";
  if (rule == "degree_adjacency_literal") return "counts distance-two pairs only; adjacent pairs with a common neighbour also enter the cosine identity";
  if (rule == "pendant_pair_exclusive") return "at most one of the two pendant vertices can mix; the argument does not say which";
  return "";
}

}  // namespace

Json to_json(const CertificateVerdict& v) {
  Json j;
  j["rule"] = v.rule;
  j["tier"] = to_string(v.tier);
  j["verdict"] = to_string(v.verdict);
  j["scope"] = to_string(v.scope);
  j["vertex"] = v.vertex ? Json(*v.vertex) : Json(nullptr);
  Json w = Json::object();
  for (const auto& [k, val] : v.witness) w[k] = val;
  j["witness"] = std::move(w);
  if (v.tier == Tier::PaperAsserted) {
    if (const std::string t = tension(v.rule); !t.empty()) j["tension"] = t;
  }
  return j;
}

CertificateVerdict verdict_from_json(const Json& j) {
  CertificateVerdict v;
  v.rule = j.at("rule").get<std::string>();
  const auto tier = j.at("tier").get<std::string>();
  v.tier = tier == "strict" ? Tier::Strict : Tier::PaperAsserted;
  const auto verdict = j.at("verdict").get<std::string>();
  v.verdict = verdict == "ruled_out" ? Verdict::RuledOut
              : verdict == "inconclusive" ? Verdict::Inconclusive
                                          : Verdict::NotApplicable;
  v.scope = j.at("scope").get<std::string>() == "vertex" ? Scope::VertexLocal : Scope::GraphEpsilonUM;
  if (!j.at("vertex").is_null()) v.vertex = j.at("vertex").get<int>();
  for (const auto& [k, val] : j.at("witness").items()) v.witness.emplace_back(k, val.get<std::string>());
  return v;
}

Json to_json(const CertificateReport& r, bool include_paper_tier) {
  auto keep = [&](const CertificateVerdict& v) { return include_paper_tier || v.tier == Tier::Strict; };
  Json j;
  j["matrix"] = to_string(r.kind);
  j["tier"] = include_paper_tier ? "paper" : "strict";
  Json vs = Json::array();
  for (const auto& vc : r.vertices) {
    Json list = Json::array();
    for (const auto& v : vc.verdicts) {
      if (keep(v)) list.push_back(to_json(v));
    }
    vs.push_back(Json{{"vertex", vc.vertex}, {"survives", vc.survives}, {"verdicts", std::move(list)}});
  }
  j["vertices"] = std::move(vs);
  Json gl = Json::array();
  for (const auto& v : r.graph) {
    if (keep(v)) gl.push_back(to_json(v));
  }
  j["graph"] = std::move(gl);
  j["surviving"] = r.surviving;
  j["graph_ruled_out"] = r.graph_ruled_out;
  return j;
}

Json to_json(const MixingReport& r) {
  Json j;
  j["target"] = r.vertex ? Json{{"vertex", *r.vertex}} : Json("graph");
  j["t_max"] = num(r.t_max);
  j["step"] = num(r.step);
  Json minima = Json::array();
  for (const auto& m : r.minima) minima.push_back(Json{{"t", num(m.t)}, {"delta", num(m.delta)}});
  j["minima"] = std::move(minima);
  Json det = Json::array();
  for (const auto& d : r.detections) {
    Json x{{"t", num(d.t)}, {"delta", num(d.delta)}, {"class", to_string(d.kind)}};
    if (d.hadamard) {
      x["hadamard"] = Json{{"kind", to_string(d.hadamard->kind)},
                           {"butson_order", d.hadamard->butson_order},
                           {"dephased", d.hadamard->dephased},
                           {"max_defect", num(d.hadamard->max_defect)}};
    }
    Json state = Json::array();
    for (const auto z : d.target_state.vector()) state.push_back(cplx_json(z));
    x["target_state"] = std::move(state);
    if (d.feasibility) {
      x["feasibility"] = Json{{"feasible", d.feasibility->feasible},
                              {"failed_rule", d.feasibility->failed_rule},
                              {"failed_residual", num(d.feasibility->failed_residual)}};
    }
    det.push_back(std::move(x));
  }
  j["detections"] = std::move(det);
  j["grid_inf"] = num(r.grid_inf);
  j["empirical_inf"] = num(r.empirical_inf);
  return j;
}

Json to_json(const PeriodicityResult& p) {
  Json j{{"status", to_string(p.status)}, {"ratio_mode", to_string(p.ratio.mode)}};
  j["period_hint"] = p.status == PeriodicStatus::Periodic ? num(p.period_hint) : Json(nullptr);
  j["verified"] = p.verified;
  if (p.ratio.witness) {
    Json w = Json::array();
    for (double x : *p.ratio.witness) w.push_back(num(x));
    j["witness"] = std::move(w);
  }
  return j;
}

Json to_json(const RealTargetPeriod& p) {
  return Json{{"applicable", p.applicable},
              {"return_amplitude", num(p.return_amplitude)},
              {"periodic", p.periodic},
              {"note", p.note}};
}

Json report_header(const Tolerances& t) {
  return Json{{"schema", kSchemaVersion}, {"tool", "qmix"}, {"version", version()}, {"tolerances", to_json(t)}};
}

void write_profile_csv(std::ostream& os, std::span<const double> times, std::span<const double> values) {
  if (times.size() != values.size()) throw std::invalid_argument("write_profile_csv: length mismatch");
  os << "t,delta\n";
  char buf[64];
  for (std::size_t i = 0; i < times.size(); ++i) {
    auto r = std::to_chars(buf, buf + sizeof buf, times[i], std::chars_format::general, 15);
    os.write(buf, r.ptr - buf);
    os.put(',');
    r = std::to_chars(buf, buf + sizeof buf, values[i], std::chars_format::general, 15);
    os.write(buf, r.ptr - buf);
    os.put('\n');
  }
}

}  // namespace qmix
