#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qmix/spectral.hpp"
#include "qmix/target_state.hpp"
#include "qmix/walk.hpp"

namespace qmix {

enum class RatioMode {
  IntegerSpectrum,
  QuadraticSurd,
  // Recognised values from more than one surd class, decided exactly by
  // linear independence of 1 and distinct square-free square roots.
  AlgebraicField,
  RationalReconstruction,  // heuristic
  Failed,
};
const char* to_string(RatioMode m);

struct RatioConditionResult {
  bool satisfied = false;
  RatioMode mode = RatioMode::Failed;
  bool heuristic() const { return mode == RatioMode::RationalReconstruction || mode == RatioMode::Failed; }
  // (alpha, beta, gamma, zeta) with (alpha - beta) / (gamma - zeta) irrational.
  std::optional<std::array<double, 4>> witness;
  // Exact case: (phi[i] - phi[0]) = ratios[i] * (phi[ref] - phi[0]).
  std::vector<Rational> ratios;
  int ref = -1;
};

// phi sorted or not; forms parallel to phi, or empty when unavailable.
RatioConditionResult ratio_condition(std::span<const double> phi, std::span<const EigenvalueForm> forms = {});

enum class PeriodicStatus { Periodic, NotPeriodic, Unknown };
const char* to_string(PeriodicStatus s);

struct PeriodicityResult {
  PeriodicStatus status = PeriodicStatus::Unknown;
  double period_hint = 0.0;  // 0 when every time is a period (|support| = 1)
  double return_amplitude = 0.0;  // |<e_u, U(hint) e_u>|
  bool verified = false;
  RatioConditionResult ratio;
  SpectrumClassification classification;
};

// Period from exact eigenvalue forms only; heuristic cases give Unknown.
PeriodicityResult is_periodic_vertex(const SpectralDecomposition& dec, VertexId u);

enum class SupportBranch { Integer, Surd, Neither };
const char* to_string(SupportBranch b);

struct PeriodicSupportReport {
  bool applicable = false;  // integer weights and |support| >= 3
  SupportBranch branch = SupportBranch::Neither;
  bool closed_under_negation = false;
  long long delta = 1;
  // The vertex is periodic but L or Q shows a non-integer support.
  bool consistency_error = false;
  std::string note;
};

PeriodicSupportReport classify_periodic_support(const SpectralDecomposition& dec, VertexId u, MatrixKind kind,
                                                WeightClass weights);

struct RealTargetPeriod {
  bool applicable = false;  // mu is a unimodular multiple of a real vector
  double return_amplitude = 0.0;  // |<e_u, U(2 t*) e_u>|
  bool periodic = false;
  std::string note;
};

RealTargetPeriod check_real_target_period(const SpectralDecomposition& dec, VertexId u, double t_star,
                                          const TargetState& mu);

}  // namespace qmix
