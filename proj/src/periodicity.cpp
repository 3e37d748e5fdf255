#include "qmix/periodicity.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <set>

#include <boost/integer/common_factor.hpp>

namespace qmix {

const char* to_string(RatioMode m) {
  switch (m) {
    case RatioMode::IntegerSpectrum: return "integer_spectrum";
    case RatioMode::QuadraticSurd: return "quadratic_surd";
    case RatioMode::AlgebraicField: return "algebraic_field";
    case RatioMode::RationalReconstruction: return "rational_reconstruction";
    case RatioMode::Failed: return "failed";
  }
  return "?";
}

const char* to_string(PeriodicStatus s) {
  switch (s) {
    case PeriodicStatus::Periodic: return "periodic";
    case PeriodicStatus::NotPeriodic: return "not_periodic";
    case PeriodicStatus::Unknown: return "unknown";
  }
  return "?";
}

const char* to_string(SupportBranch b) {
  switch (b) {
    case SupportBranch::Integer: return "integer";
    case SupportBranch::Surd: return "surd";
    case SupportBranch::Neither: return "neither";
  }
  return "?";
}

namespace {

// Coordinates over the basis {1} u {sqrt(delta)}; key 1 is the rational part.
using FieldElement = std::map<long long, Rational>;

FieldElement element(const EigenvalueForm& f) {
  FieldElement e;
  if (f.a != 0) e[1] = Rational(f.a, 2);
  if (!f.integer && f.b != 0) e[f.delta] = Rational(f.b, 2);
  return e;
}

FieldElement minus(FieldElement x, const FieldElement& y) {
  for (const auto& [k, v] : y) {
    x[k] -= v;
    if (x[k] == 0) x.erase(k);
  }
  return x;
}

// r with x = r y, if any; y nonzero.
std::optional<Rational> proportion(const FieldElement& x, const FieldElement& y) {
  const auto& [key, yv] = *y.begin();
  const auto it = x.find(key);
  const Rational r = it == x.end() ? Rational(0) : it->second / yv;
  for (const auto& [k, v] : y) {
    const auto jt = x.find(k);
    if ((jt == x.end() ? Rational(0) : jt->second) != r * v) return std::nullopt;
  }
  for (const auto& [k, v] : x) {
    if (!y.count(k)) return std::nullopt;
  }
  return r;
}

// Continued-fraction approximation with denominator at most max_den.
std::optional<Rational> reconstruct(double x, long long max_den) {
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    const double a = std::floor(r);
    if (std::abs(a) > 1e15) break;
    const auto ai = static_cast<long long>(a);
    const long long p2 = ai * p1 + p0;
    const long long q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (std::abs(x - static_cast<double>(p1) / static_cast<double>(q1)) <= 1e-9 * std::max(1.0, std::abs(x))) {
      return Rational(p1, q1);
    }
    const double frac = r - a;
    if (frac == 0.0) break;
    r = 1.0 / frac;
  }
  return std::nullopt;
}

cplx return_amplitude(const SpectralDecomposition& dec, VertexId u, double t) {
  cplx s = 0.0;
  for (int k = 0; k < dec.distinct(); ++k) s += std::polar(1.0, t * dec.eigenvalues[k]) * dec.projectors[k](u, u);
  return s;
}

}  // namespace

RatioConditionResult ratio_condition(std::span<const double> phi, std::span<const EigenvalueForm> forms) {
  RatioConditionResult r;
  const std::size_t m = phi.size();
  if (m == 0) return r;
  r.ratios.assign(m, Rational(0));
  const bool exact = forms.size() == m && std::all_of(forms.begin(), forms.end(), [](const auto& f) { return f.recognized; });

  if (exact) {
    bool all_int = true;
    std::set<long long> deltas;
    for (const auto& f : forms) {
      all_int = all_int && f.integer;
      if (!f.integer) deltas.insert(f.delta);
    }
    r.mode = all_int ? RatioMode::IntegerSpectrum
                     : (deltas.size() <= 1 ? RatioMode::QuadraticSurd : RatioMode::AlgebraicField);
    const FieldElement base = element(forms[0]);
    std::vector<FieldElement> diff(m);
    for (std::size_t i = 0; i < m; ++i) {
      diff[i] = minus(element(forms[i]), base);
      if (r.ref < 0 && !diff[i].empty()) r.ref = static_cast<int>(i);
    }
    r.satisfied = true;
    if (r.ref < 0) return r;
    for (std::size_t i = 0; i < m; ++i) {
      const auto q = proportion(diff[i], diff[r.ref]);
      if (!q) {
        r.satisfied = false;
        r.witness = std::array<double, 4>{phi[r.ref], phi[0], phi[i], phi[0]};
        r.ratios.clear();
        return r;
      }
      r.ratios[i] = *q;
    }
    return r;
  }

  r.mode = RatioMode::RationalReconstruction;
  r.satisfied = true;
  for (std::size_t i = 1; i < m && r.ref < 0; ++i) {
    if (phi[i] != phi[0]) r.ref = static_cast<int>(i);
  }
  if (r.ref < 0) return r;
  const double d = phi[r.ref] - phi[0];
  for (std::size_t i = 0; i < m; ++i) {
    const auto q = reconstruct((phi[i] - phi[0]) / d, 1000000);
    if (!q) {
      r.satisfied = false;
      r.mode = RatioMode::Failed;
      r.witness = std::array<double, 4>{phi[r.ref], phi[0], phi[i], phi[0]};
      r.ratios.clear();
      return r;
    }
    r.ratios[i] = *q;
  }
  return r;
}

PeriodicityResult is_periodic_vertex(const SpectralDecomposition& dec, VertexId u) {
  if (u < 0 || u >= dec.order()) throw std::out_of_range("is_periodic_vertex: vertex out of range");
  PeriodicityResult out;
  const auto supp = vertex_support(dec, u);
  out.classification = classify_spectrum(dec, supp);
  const auto phi = support_values(dec, supp);
  out.ratio = ratio_condition(phi, out.classification.forms);
  if (out.ratio.heuristic()) return out;
  if (!out.ratio.satisfied) {
    out.status = PeriodicStatus::NotPeriodic;
    return out;
  }
  out.status = PeriodicStatus::Periodic;
  if (out.ratio.ref < 0) {
    out.verified = true;
    out.return_amplitude = 1.0;
    return out;
  }
  // tau (phi_i - phi_0) in 2 pi Z for all i: with ratios m_i / L in lowest
  // terms, the least such tau is 2 pi L / (|d| gcd m_i).
  BigInt lcm = 1;
  for (const auto& q : out.ratio.ratios) lcm = boost::integer::lcm(lcm, BigInt(denominator(q)));
  BigInt g = 0;
  for (const auto& q : out.ratio.ratios) g = boost::integer::gcd(g, BigInt(abs(numerator(q) * (lcm / denominator(q)))));
  const double d = std::abs(phi[out.ratio.ref] - phi[0]);
  out.period_hint = 2 * std::numbers::pi * static_cast<double>(lcm) / (d * static_cast<double>(g));
  out.return_amplitude = std::abs(return_amplitude(dec, u, out.period_hint));
  out.verified = out.return_amplitude > 1 - 1e-9;
  return out;
}

PeriodicSupportReport classify_periodic_support(const SpectralDecomposition& dec, VertexId u, MatrixKind kind,
                                                WeightClass weights) {
  PeriodicSupportReport rep;
  const auto supp = vertex_support(dec, u);
  const auto phi = support_values(dec, supp);
  if (weights == WeightClass::Real) {
    rep.note = "needs integer weights";
    return rep;
  }
  if (phi.size() < 3) {
    rep.note = "support has fewer than three eigenvalues";
    return rep;
  }
  rep.applicable = true;
  const auto cls = classify_spectrum(dec, supp);
  rep.closed_under_negation = std::all_of(phi.begin(), phi.end(), [&](double x) {
    return std::any_of(phi.begin(), phi.end(), [&](double y) { return std::abs(x + y) <= dec.group_tol; });
  });
  if (cls.kind == SpectrumKind::AllInteger) {
    rep.branch = SupportBranch::Integer;
  } else if (cls.kind == SpectrumKind::QuadraticSurd && cls.a == 0) {
    rep.branch = SupportBranch::Surd;
    rep.delta = cls.delta;
  }
  if (kind != MatrixKind::Adjacency && rep.branch != SupportBranch::Integer) {
    const auto ratio = ratio_condition(phi, cls.forms);
    if (!ratio.heuristic() && ratio.satisfied) {
      rep.consistency_error = true;
      rep.note = "periodic vertex with a non-integer support under a positive semidefinite matrix";
    }
  }
  if (rep.branch == SupportBranch::Surd && !rep.closed_under_negation) {
    rep.note = "surd support not closed under negation";
  }
  return rep;
}

RealTargetPeriod check_real_target_period(const SpectralDecomposition& dec, VertexId u, double t_star,
                                          const TargetState& mu) {
  RealTargetPeriod r;
  const Eigen::VectorXcd m = mu.vector();
  if (m.size() != dec.order() || u < 0 || u >= dec.order()) {
    throw std::invalid_argument("check_real_target_period: dimension mismatch");
  }
  const Eigen::VectorXcd z = m * (std::conj(m(u)) / std::abs(m(u)));
  if (z.imag().cwiseAbs().maxCoeff() > 1e-8) {
    r.note = "target state is not a unimodular multiple of a real vector";
    return r;
  }
  r.applicable = true;
  r.return_amplitude = std::abs(return_amplitude(dec, u, 2 * t_star));
  r.periodic = r.return_amplitude > 1 - 1e-8;
  return r;
}

}  // namespace qmix
