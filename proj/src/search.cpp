#include "qmix/search.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "qmix/kernels.hpp"

namespace qmix {

const char* to_string(MixingClass c) {
  return c == MixingClass::Uniform ? "uniform" : "local_uniform";
}

double default_step(const SpectralDecomposition& dec) {
  if (dec.spectral_radius <= 0.0) return 0.01;
  return std::min(0.01, std::numbers::pi / (8 * dec.spectral_radius));
}

namespace {

constexpr double kTimeTol = 1e-12;
constexpr double kDedupe = 1e-6;

using Profile = std::function<double(double)>;

// Golden-section search on [a, b]; returns the best point evaluated.
MixingMinimum golden(const Profile& f, double a, double b, MixingMinimum best) {
  const double r = (std::sqrt(5.0) - 1) / 2;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double fc = f(c);
  double fd = f(d);
  auto keep = [&](double t, double v) {
    if (v < best.delta) best = {t, v};
  };
  keep(c, fc);
  keep(d, fd);
  while (b - a > kTimeTol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
      keep(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
      keep(d, fd);
    }
  }
  return best;
}

struct GridScan {
  std::vector<MixingMinimum> minima;
  std::vector<double> times;
  std::vector<double> values;
};

GridScan scan(const Profile& f, std::vector<double> times, std::vector<double> values) {
  GridScan s;
  const std::size_t m = values.size();
  for (std::size_t i = 1; i < m; ++i) {
    const bool right_edge = i + 1 == m;
    if (!(values[i - 1] >= values[i] && (right_edge || values[i] < values[i + 1]))) continue;
    if (right_edge && !(values[i - 1] > values[i])) continue;
    const double hi = right_edge ? times[i] : times[i + 1];
    s.minima.push_back(golden(f, times[i - 1], hi, {times[i], values[i]}));
  }
  std::sort(s.minima.begin(), s.minima.end(), [](const MixingMinimum& x, const MixingMinimum& y) {
    return x.delta != y.delta ? x.delta < y.delta : x.t < y.t;
  });
  s.times = std::move(times);
  s.values = std::move(values);
  return s;
}

// U(t) restricted to some columns, as a sum of e^{i t f_k} B_k.
struct Modes {
  std::vector<double> freqs;
  std::vector<Eigen::MatrixXd> blocks;
};

// H(t) = sum_j p_j' p_j'' with p_j = |U_j|^2; half the derivative of sum_j p_j'^2.
double tangency_residual(const Modes& m, double t) {
  const Eigen::Index rows = m.blocks.front().rows();
  const Eigen::Index cols = m.blocks.front().cols();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(rows, cols);
  Eigen::MatrixXcd d1 = u;
  Eigen::MatrixXcd d2 = u;
  for (std::size_t k = 0; k < m.freqs.size(); ++k) {
    const double f = m.freqs[k];
    const cplx z = std::polar(1.0, t * f);
    u += z * m.blocks[k];
    d1 += cplx(0, f) * z * m.blocks[k];
    d2 += -f * f * z * m.blocks[k];
  }
  double h = 0.0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double p1 = 2 * (std::conj(u(i, j)) * d1(i, j)).real();
      const double p2 = 2 * (std::norm(d1(i, j)) + (std::conj(u(i, j)) * d2(i, j)).real());
      h += p1 * p2;
    }
  }
  return h;
}

// Where every probability touches 1/n tangentially the deviation is flat to
// second order and golden section resolves t only to about 1e-8. There the
// probabilities are stationary, so bisect on H instead.
double polish(const Modes& m, const Profile& f, double t, double delta, double detect) {
  constexpr double w = 1e-6;
  double lo = t - w;
  double hi = t + w;
  double hlo = tangency_residual(m, lo);
  const double hhi = tangency_residual(m, hi);
  if (!(hlo < 0 && hhi > 0)) return t;
  for (int it = 0; it < 200 && hi - lo > 1e-16 * std::max(1.0, std::abs(t)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double hm = tangency_residual(m, mid);
    if ((hm < 0) == (hlo < 0)) {
      lo = mid;
      hlo = hm;
    } else {
      hi = mid;
    }
  }
  const double cand = 0.5 * (lo + hi);
  const double dc = f(cand);
  return dc < detect && dc <= delta + 1e-13 ? cand : t;
}

Eigen::VectorXcd scaled_column(const SpectralDecomposition& dec, VertexId u, double t) {
  return std::sqrt(static_cast<double>(dec.order())) * transition_column(dec, u, t);
}

MixingReport assemble(const SpectralDecomposition& dec, std::optional<VertexId> u, const ScanOptions& opt,
                      const Profile& f, const Modes& modes, GridScan s) {
  MixingReport rep;
  rep.vertex = u;
  rep.t_max = opt.t_max;
  rep.step = opt.step > 0 ? opt.step : default_step(dec);
  rep.grid_inf = *std::min_element(s.values.begin(), s.values.end());
  rep.empirical_inf = rep.grid_inf;
  for (const auto& m : s.minima) rep.empirical_inf = std::min(rep.empirical_inf, m.delta);
  rep.minima = std::move(s.minima);

  std::vector<MixingMinimum> hits;
  for (const auto& m : rep.minima) {
    if (m.delta >= dec.tol.detect) continue;
    const bool dup = std::any_of(hits.begin(), hits.end(), [&](const auto& h) { return std::abs(h.t - m.t) < kDedupe; });
    if (!dup) hits.push_back(m);
  }
  std::sort(hits.begin(), hits.end(), [](const auto& x, const auto& y) { return x.t < y.t; });
  for (const auto& h : hits) {
    MixingDetection d;
    d.t = polish(modes, f, h.t, h.delta, dec.tol.detect);
    d.delta = f(d.t);
    d.kind = u ? MixingClass::LocalUniform : MixingClass::Uniform;
    d.target_state = TargetState::from_vector(scaled_column(dec, u.value_or(0), d.t));
    if (!u) {
      const Eigen::MatrixXcd h_mat = std::sqrt(static_cast<double>(dec.order())) * transition_matrix(dec, d.t);
      d.hadamard = hadamard_classify(h_mat, dec.tol.hadamard, dec.tol.butson_max_order);
    }
    rep.detections.push_back(std::move(d));
  }
  return rep;
}

}  // namespace

MixingReport scan_local(const SpectralDecomposition& dec, VertexId u, const ScanOptions& opt) {
  if (u < 0 || u >= dec.order()) throw std::out_of_range("scan_local: vertex out of range");
  const ColumnModes modes = column_modes(dec, u);
  const double step = opt.step > 0 ? opt.step : default_step(dec);
  auto times = time_grid(opt.t_max, step);
  auto values = opt.parallel ? local_profile_parallel(modes, times) : local_profile_serial(modes, times);
  const Profile f = [&](double t) { return column_deviation(modes, t); };
  Modes m;
  m.freqs = modes.freqs;
  for (Eigen::Index k = 0; k < modes.modes.cols(); ++k) m.blocks.emplace_back(modes.modes.col(k));
  return assemble(dec, u, opt, f, m, scan(f, std::move(times), std::move(values)));
}

MixingReport scan_uniform(const SpectralDecomposition& dec, const ScanOptions& opt) {
  const double step = opt.step > 0 ? opt.step : default_step(dec);
  auto times = time_grid(opt.t_max, step);
  auto values = opt.parallel ? uniform_profile_parallel(dec, times) : uniform_profile_serial(dec, times);
  const Profile f = [&](double t) { return uniform_deviation(dec, t); };
  const Modes m{dec.eigenvalues, dec.projectors};
  return assemble(dec, std::nullopt, opt, f, m, scan(f, std::move(times), std::move(values)));
}

void attach_feasibility(MixingReport& rep, const Graph& g, const SpectralDecomposition& dec, MatrixKind kind) {
  if (!rep.vertex) return;
  for (auto& d : rep.detections) d.feasibility = verify_target_state(g, dec, kind, *rep.vertex, d.target_state);
}

std::vector<WindowInf> empirical_inf(const SpectralDecomposition& dec, std::optional<VertexId> u,
                                     const std::vector<double>& windows, double step, bool parallel) {
  if (windows.empty()) return {};
  for (std::size_t i = 1; i < windows.size(); ++i) {
    if (!(windows[i] > windows[i - 1])) throw std::invalid_argument("empirical_inf: windows must be increasing");
  }
  const ScanOptions opt{windows.back(), step, parallel};
  const double h = step > 0 ? step : default_step(dec);
  const auto times = time_grid(opt.t_max, h);
  std::vector<double> values;
  MixingReport rep;
  if (u) {
    const ColumnModes modes = column_modes(dec, *u);
    values = parallel ? local_profile_parallel(modes, times) : local_profile_serial(modes, times);
    rep = scan_local(dec, *u, opt);
  } else {
    values = parallel ? uniform_profile_parallel(dec, times) : uniform_profile_serial(dec, times);
    rep = scan_uniform(dec, opt);
  }
  std::vector<WindowInf> out;
  for (double w : windows) {
    WindowInf r{w, INFINITY, INFINITY};
    for (std::size_t i = 0; i < times.size() && times[i] <= w; ++i) r.grid_inf = std::min(r.grid_inf, values[i]);
    r.inf = r.grid_inf;
    for (const auto& m : rep.minima) {
      if (m.t <= w) r.inf = std::min(r.inf, m.delta);
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace qmix
