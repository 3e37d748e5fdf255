#include "qmix/kernels.hpp"

#include <cmath>

namespace qmix {

ColumnModes column_modes(const SpectralDecomposition& dec, VertexId u) {
  // Only exactly negligible components are dropped; the support threshold
  // itself is far larger than the detection threshold on deviations.
  std::vector<int> keep;
  for (int k = 0; k < dec.distinct(); ++k) {
    if (dec.projectors[k].col(u).norm() > 1e-15) keep.push_back(k);
  }
  ColumnModes m;
  m.modes.resize(dec.order(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) {
    m.freqs.push_back(dec.eigenvalues[keep[j]]);
    m.modes.col(static_cast<Eigen::Index>(j)) = dec.projectors[keep[j]].col(u);
  }
  return m;
}

double column_deviation(const ColumnModes& m, double t) {
  const Eigen::Index n = m.modes.rows();
  Eigen::VectorXd re = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd im = Eigen::VectorXd::Zero(n);
  for (std::size_t k = 0; k < m.freqs.size(); ++k) {
    const double c = std::cos(t * m.freqs[k]);
    const double s = std::sin(t * m.freqs[k]);
    re.noalias() += c * m.modes.col(static_cast<Eigen::Index>(k));
    im.noalias() += s * m.modes.col(static_cast<Eigen::Index>(k));
  }
  const double flat = 1.0 / static_cast<double>(n);
  double sq = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double d = re(j) * re(j) + im(j) * im(j) - flat;
    sq += d * d;
  }
  return std::sqrt(sq);
}

double uniform_deviation(const SpectralDecomposition& dec, double t) {
  const int n = dec.order();
  Eigen::MatrixXd re = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd im = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < dec.distinct(); ++k) {
    re.noalias() += std::cos(t * dec.eigenvalues[k]) * dec.projectors[k];
    im.noalias() += std::sin(t * dec.eigenvalues[k]) * dec.projectors[k];
  }
  const double flat = 1.0 / n;
  double worst = 0.0;
  for (int c = 0; c < n; ++c) {
    double sq = 0.0;
    for (int j = 0; j < n; ++j) {
      const double d = re(j, c) * re(j, c) + im(j, c) * im(j, c) - flat;
      sq += d * d;
    }
    worst = std::max(worst, std::sqrt(sq));
  }
  return worst;
}

std::vector<double> time_grid(double t_max, double step) {
  if (!(t_max > 0.0) || !(step > 0.0)) throw std::invalid_argument("time_grid: t_max and step must be positive");
  const auto count = static_cast<long long>(std::floor(t_max / step + 1e-9));
  std::vector<double> t(static_cast<std::size_t>(count + 1));
  for (long long k = 0; k <= count; ++k) t[static_cast<std::size_t>(k)] = static_cast<double>(k) * step;
  return t;
}

std::vector<double> local_profile_serial(const ColumnModes& m, std::span<const double> times) {
  std::vector<double> out(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) out[i] = column_deviation(m, times[i]);
  return out;
}

std::vector<double> local_profile_parallel(const ColumnModes& m, std::span<const double> times) {
  std::vector<double> out(times.size());
  const auto count = static_cast<long long>(times.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < count; ++i) out[i] = column_deviation(m, times[i]);
  return out;
}

std::vector<double> uniform_profile_serial(const SpectralDecomposition& dec, std::span<const double> times) {
  std::vector<double> out(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) out[i] = uniform_deviation(dec, times[i]);
  return out;
}

std::vector<double> uniform_profile_parallel(const SpectralDecomposition& dec, std::span<const double> times) {
  std::vector<double> out(times.size());
  const auto count = static_cast<long long>(times.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < count; ++i) out[i] = uniform_deviation(dec, times[i]);
  return out;
}

}  // namespace qmix
