#pragma once

#include <optional>
#include <vector>

#include "qmix/spectral.hpp"
#include "qmix/target_state.hpp"
#include "qmix/walk.hpp"

namespace qmix {

enum class MixingClass { LocalUniform, Uniform };
const char* to_string(MixingClass c);

struct ScanOptions {
  double t_max = 10.0;
  double step = 0.0;  // 0 selects min(0.01, pi / (8 rho))
  bool parallel = true;
};

double default_step(const SpectralDecomposition& dec);

struct MixingMinimum {
  double t = 0.0;
  double delta = 0.0;
};

struct MixingDetection {
  double t = 0.0;
  double delta = 0.0;
  MixingClass kind = MixingClass::LocalUniform;
  std::optional<HadamardClass> hadamard;  // uniform scans only
  TargetState target_state;               // sqrt(n) U(t) e_u, entrywise normalised
  std::optional<FeasibilityReport> feasibility;
};

struct MixingReport {
  std::optional<VertexId> vertex;  // empty for a whole-graph scan
  double t_max = 0.0;
  double step = 0.0;
  std::vector<MixingMinimum> minima;  // by delta, then by t
  std::vector<MixingDetection> detections;
  double grid_inf = 0.0;       // min over grid points
  double empirical_inf = 0.0;  // min over grid points and refined minima
};

MixingReport scan_local(const SpectralDecomposition& dec, VertexId u, const ScanOptions& opt = {});
MixingReport scan_uniform(const SpectralDecomposition& dec, const ScanOptions& opt = {});

// Runs verify_target_state on every detection of a local scan.
void attach_feasibility(MixingReport& rep, const Graph& g, const SpectralDecomposition& dec, MatrixKind kind);

struct WindowInf {
  double t = 0.0;
  double grid_inf = 0.0;
  double inf = 0.0;
};

// One scan over the largest window, then prefix minima. Windows must be
// increasing; the sequence of infima is nonincreasing by construction.
std::vector<WindowInf> empirical_inf(const SpectralDecomposition& dec, std::optional<VertexId> u,
                                     const std::vector<double>& windows, double step = 0.0, bool parallel = true);

}  // namespace qmix
