#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qmix/spectral.hpp"

namespace qmix {

// Column u of U(t) written as sum_k e^{i t freqs[k]} modes.col(k), keeping only
// eigenvalues in the support of e_u.
struct ColumnModes {
  std::vector<double> freqs;
  Eigen::MatrixXd modes;  // n x |support|, column k = E_k e_u
};

ColumnModes column_modes(const SpectralDecomposition& dec, VertexId u);

double column_deviation(const ColumnModes& m, double t);
double uniform_deviation(const SpectralDecomposition& dec, double t);

// t_k = k * step for 0 <= k <= floor(t_max / step).
std::vector<double> time_grid(double t_max, double step);

// Deviation profiles over a time grid. The parallel versions split the grid
// across OpenMP threads; every point is computed by the same code as the
// serial reference, so results agree bit for bit.
std::vector<double> local_profile_serial(const ColumnModes& m, std::span<const double> times);
std::vector<double> local_profile_parallel(const ColumnModes& m, std::span<const double> times);
std::vector<double> uniform_profile_serial(const SpectralDecomposition& dec, std::span<const double> times);
std::vector<double> uniform_profile_parallel(const SpectralDecomposition& dec, std::span<const double> times);

}  // namespace qmix
