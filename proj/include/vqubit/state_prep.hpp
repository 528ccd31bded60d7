// Copyright 2026 The vqubit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VQUBIT_STATE_PREP_HPP
#define VQUBIT_STATE_PREP_HPP

// Thermal equilibrium and pseudo-pure preparation by temporal averaging.
// Density matrices are in the eigenbasis. Temperature enters only through
// beta_scale = hbar omegaQ / (k_B T); omegaQ is taken from EigenSystem::scale,
// which the closed-form eigensystem sets to omegaQ.

#include "vqubit/core.hpp"
#include "vqubit/operator_algebra.hpp"
#include "vqubit/pulse_engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

namespace vqubit {

struct ThermalSpec {
  double beta_scale = 0.0;

  void validate() const {
    if (!(beta_scale >= 0.0) || !std::isfinite(beta_scale))
      throw Error(ErrorKind::kInvalidParameters, "beta_scale must be finite and >= 0");
  }
};

/// beta_scale * max|eps_m| / omegaQ; the expansion is trusted at <= 1e-3.
inline double high_temperature_parameter(const EigenSystem &e, const ThermalSpec &t) {
  double emax = 0.0;
  for (double eps : e.energies) emax = std::max(emax, std::abs(eps));
  return t.beta_scale * emax / e.scale;
}

inline bool is_high_temperature(const EigenSystem &e, const ThermalSpec &t) {
  return high_temperature_parameter(e, t) <= 1e-3;
}

/// rho_eq = exp(-beta H0) / Z, diagonal in the eigenbasis.
inline Operator4 thermal_state(const EigenSystem &e, const ThermalSpec &t) {
  t.validate();
  std::array<double, 4> logw{};
  for (int m = 0; m < 4; ++m) logw[m] = -t.beta_scale * e.energies[m] / e.scale;
  const double shift = *std::max_element(logw.begin(), logw.end());
  double z = 0.0;
  for (double &w : logw) z += (w = std::exp(w - shift));
  Operator4 rho = Operator4::Zero();
  for (int m = 0; m < 4; ++m) rho(m, m) = logw[m] / z;
  return rho;
}

/// lambda_m = -(eps_m / omegaQ) beta_scale, the first-order coefficients of
/// rho_eq ~ (1 + sum lambda_m P_mm) / 4.
inline std::array<double, 4> high_temperature_coefficients(const EigenSystem &e, const ThermalSpec &t) {
  t.validate();
  if (!is_high_temperature(e, t))
    throw Error(ErrorKind::kRegimeViolation, "beta_scale * max|eps| / omegaQ exceeds 1e-3");
  std::array<double, 4> lambda{};
  for (int m = 0; m < 4; ++m) lambda[m] = -t.beta_scale * e.energies[m] / e.scale;
  return lambda;
}

inline Operator4 high_temperature_state(const std::array<double, 4> &lambda) {
  Operator4 rho = Operator4::Identity();
  for (int m = 0; m < 4; ++m) rho(m, m) += lambda[m];
  return rho / rho.trace().real();
}

struct AveragingPropagators {
  Operator4 v1;  // V_Y(W12, pi) V_Y(W23, pi) = P44 + P21 + P13 + P32
  Operator4 v2;  // V_Y(W23, pi) V_Y(W12, pi) = P44 - P12 + P31 - P23
};

/// The two cyclic permutations of levels 1..3 built from sequential pi pulses
/// on W12 and W23 (they share level 2, so never simultaneous).
inline AveragingPropagators averaging_propagators(const EigenSystem &e, const SpinParameters &p,
                                                  const PulseOptions &opts = {}) {
  const Operator4 a = single_frequency_propagator(e, {1, 2}, Axis::Y, 0.0, kPi, p, opts);
  const Operator4 b = single_frequency_propagator(e, {2, 3}, Axis::Y, 0.0, kPi, p, opts);
  return {a * b, b * a};
}

struct PseudoPureResult {
  Operator4 rho;
  double alpha = 0.0;
  double beta = 0.0;
};

/// (rho + V1 rho V1^dag + V2 rho V2^dag) / 3 = (alpha 1 + beta P44) / 4.
/// alpha and beta are normalized so that 4 alpha + beta = 4 for a unit-trace
/// input, which reproduces alpha = 1 + (l1+l2+l3)/3, beta = l4 - (l1+l2+l3)/3
/// for the first-order thermal state.
inline PseudoPureResult temporal_average(const Operator4 &rho_eq, const EigenSystem &e, const SpinParameters &p,
                                         const PulseOptions &opts = {}) {
  Operator4 offdiag = rho_eq;
  offdiag.diagonal().setZero();
  if (max_abs(offdiag) > 1e-12)
    throw Error(ErrorKind::kNotDiagonal, "temporal averaging expects a state diagonal in the eigenbasis");
  const AveragingPropagators v = averaging_propagators(e, p, opts);
  PseudoPureResult out;
  out.rho = (rho_eq + v.v1 * rho_eq * v.v1.adjoint() + v.v2 * rho_eq * v.v2.adjoint()) / 3.0;
  const double mean = (out.rho(0, 0).real() + out.rho(1, 1).real() + out.rho(2, 2).real()) / 3.0;
  out.alpha = 4.0 * mean;
  out.beta = 4.0 * (out.rho(3, 3).real() - mean);
  return out;
}

/// (a 1 + b P44) / (4a + b).
inline Operator4 pseudo_pure_reference(double a, double b) {
  const double norm = 4.0 * a + b;
  if (!std::isfinite(a) || !std::isfinite(b) || a < 0.0 || a + b < 0.0 || !(norm > 0.0))
    throw Error(ErrorKind::kNotPositive, "a 1 + b P44 is not a positive, normalizable state");
  Operator4 rho = a * Operator4::Identity();
  rho(3, 3) += b;
  return rho / norm;
}

}  // namespace vqubit

#endif  // VQUBIT_STATE_PREP_HPP
