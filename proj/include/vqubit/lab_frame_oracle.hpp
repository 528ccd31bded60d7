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

#ifndef VQUBIT_LAB_FRAME_ORACLE_HPP
#define VQUBIT_LAB_FRAME_ORACLE_HPP

// Brute-force integration of the lab-frame Schrodinger equation
//   H(t) = H0 + sum_k a_k I_k cos(W_k t + phi_k)
// with the exponential midpoint rule, U <- exp(-i h H(t + h/2)) U. Each step
// is exactly unitary and the rule is second order in h.
//
// A double-precision step exponential carries a ~1e-16 norm bias that repeats
// from step to step, so over 1e6 steps it compounds to ~1e-10. Each step is
// therefore polished by one Newton-Schulz iteration and the product is kept in
// long double.

#include "vqubit/core.hpp"
#include "vqubit/matrix_exp.hpp"
#include "vqubit/operator_algebra.hpp"
#include "vqubit/pulse_engine.hpp"
#include "vqubit/spin_system.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <vector>

namespace vqubit {

struct DriveTerm {
  Operator4 op;            // Hermitian, e.g. Iy in the |chi> basis
  double amplitude = 0.0;  // 2 gamma H_rf, rad/s per unit operator
  double frequency = 0.0;  // rad/s
  double phase = 0.0;      // rad
};

struct DrivenSystem {
  Operator4 h0 = Operator4::Zero();
  std::vector<DriveTerm> drives;
  double step = 0.0;      // s
  double duration = 0.0;  // s
};

/// Largest angular frequency present: the spectral width of H0 or the
/// fastest drive.
inline double fastest_frequency(const DrivenSystem &sys) {
  Eigen::SelfAdjointEigenSolver<Operator4> solver((sys.h0 + sys.h0.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  double w = solver.eigenvalues().maxCoeff() - solver.eigenvalues().minCoeff();
  for (const auto &d : sys.drives) w = std::max(w, std::abs(d.frequency));
  return w;
}

/// h = 2 pi / (samples * W_max); 200 samples per fastest oscillation by default.
inline double default_step(const DrivenSystem &sys, double samples_per_period = 200.0) {
  const double w = fastest_frequency(sys);
  return w > 0.0 ? 2.0 * kPi / (samples_per_period * w) : std::numeric_limits<double>::infinity();
}

inline Operator4 integrate_lab_frame(const DrivenSystem &sys) {
  if (!(sys.step > 0.0) || !std::isfinite(sys.step))
    throw Error(ErrorKind::kInvalidParameters, "integration step must be positive");
  if (!(sys.duration >= 0.0) || !std::isfinite(sys.duration))
    throw Error(ErrorKind::kInvalidParameters, "integration duration must be finite and >= 0");
  for (const auto &d : sys.drives)
    if (!std::isfinite(d.amplitude) || !std::isfinite(d.frequency) || !std::isfinite(d.phase))
      throw Error(ErrorKind::kInvalidParameters, "drive parameters must be finite");
  if (sys.duration == 0.0) return Operator4::Identity();

  const auto n_steps = static_cast<long long>(std::ceil(sys.duration / sys.step - 1e-9));
  const double h = sys.duration / static_cast<double>(n_steps);
  // Fewer than two samples per period aliases the fastest oscillation.
  if (h * fastest_frequency(sys) > kPi)
    throw Error(ErrorKind::kStepTooLarge, "step resolves fewer than two samples per fastest period");

  using OperatorL = Eigen::Matrix<std::complex<long double>, 4, 4>;
  const OperatorL id = OperatorL::Identity();
  OperatorL acc = id;
  for (long long k = 0; k < n_steps; ++k) {
    const double t_mid = (static_cast<double>(k) + 0.5) * h;
    Operator4 hm = sys.h0;
    for (const auto &d : sys.drives) hm += (d.amplitude * std::cos(d.frequency * t_mid + d.phase)) * d.op;
    OperatorL step = expm((-kI * h) * hm).cast<std::complex<long double>>();
    step = step * (3.0L * id - step.adjoint() * step) * 0.5L;
    acc = step * acc;
  }
  const Operator4 u = acc.cast<cplx>();
  if (unitarity_defect(u) > 1e-10)
    throw Error(ErrorKind::kStepTooLarge, "accumulated unitarity defect exceeds 1e-10");
  return u;
}

/// U* = D(t - t0)^-1 U, both in the eigenbasis.
inline Operator4 to_interaction_frame(const Operator4 &u_eig, const EigenSystem &e, double t, double t0 = 0.0) {
  return free_evolution(e, t - t0).adjoint() * u_eig;
}

/// 1 - |tr(U^dag V)| / 4; zero iff U and V agree up to a global phase.
inline double propagator_infidelity(const Operator4 &u, const Operator4 &v) {
  const double f = std::abs((u.adjoint() * v).trace()) / 4.0;
  return std::clamp(1.0 - f, 0.0, 1.0);
}

/// Smallest distance from W_t to any other transition frequency.
inline double selectivity_gap(const EigenSystem &e, Transition t) {
  const double w = transition_frequency(e, t);
  double gap = std::numeric_limits<double>::infinity();
  for (int m = 1; m <= 4; ++m)
    for (int n = m + 1; n <= 4; ++n)
      if (!(Transition{m, n} == t)) gap = std::min(gap, std::abs(w - transition_frequency(e, {m, n})));
  return gap;
}

/// A resonant rectangular pulse realized in the lab frame. The drive phase is
/// chosen so that the rotating-wave limit is the effective pulse with the
/// given phase: phi_lab = phi_eff + arg<m|I_axis|n> + pi/2.
struct LabPulse {
  EigenSystem eigen;
  DrivenSystem system;
  double h_rf = 0.0;
  double coupling = 0.0;
  double gap = 0.0;
};

inline LabPulse make_lab_pulse(const SpinParameters &p, Transition t, Axis axis, double phase, double flip,
                               double ratio, double samples_per_period = 200.0) {
  if (!(ratio > 0.0)) throw Error(ErrorKind::kInvalidParameters, "drive ratio must be positive");
  LabPulse lp;
  lp.eigen = closed_form_eigensystem(p);
  const cplx element = spin_matrix_element(lp.eigen, t.m, t.n, spin_axis(axis));
  lp.coupling = std::abs(element);
  if (lp.coupling < kForbiddenElement)
    throw Error(ErrorKind::kZeroMatrixElement, "no transverse matrix element to drive in the lab frame");
  lp.gap = selectivity_gap(lp.eigen, t);
  const double rabi = ratio * lp.gap;  // gamma H_rf |element|
  lp.h_rf = rabi / (p.gamma * lp.coupling);
  const double eff = axis == Axis::X ? phase - kPi / 2.0 : phase;
  DriveTerm d;
  d.op = spin_operators()[spin_axis(axis)];
  d.amplitude = 2.0 * p.gamma * lp.h_rf;
  d.frequency = transition_frequency(lp.eigen, t);
  d.phase = eff + std::arg(element) + kPi / 2.0;
  lp.system.h0 = build_static_hamiltonian(p);
  lp.system.drives = {d};
  lp.system.duration = flip / (2.0 * rabi);
  lp.system.step = default_step(lp.system, samples_per_period);
  return lp;
}

/// Integrates a lab pulse and returns its interaction-frame propagator in the
/// eigenbasis.
inline Operator4 integrate_interaction_frame(const LabPulse &lp) {
  const Operator4 u_chi = integrate_lab_frame(lp.system);
  return to_interaction_frame(to_eigenbasis(u_chi, lp.eigen), lp.eigen, lp.system.duration);
}

struct RwaCheck {
  double ratio = 0.0;
  double infidelity = 0.0;
  double unitarity_defect = 0.0;
  long long steps = 0;
};

/// Infidelity between the lab-frame pulse and the rotating-wave propagator.
inline RwaCheck rwa_check(const SpinParameters &p, Transition t, Axis axis, double phase, double flip,
                          double ratio) {
  const LabPulse lp = make_lab_pulse(p, t, axis, phase, flip, ratio);
  const Operator4 u = integrate_interaction_frame(lp);
  PulseOptions loose;
  loose.selectivity_factor = 0.0;  // the sweep deliberately probes weakly selective drives
  const Operator4 v = single_frequency_propagator(lp.eigen, t, axis, phase, flip, p, loose);
  RwaCheck out;
  out.ratio = ratio;
  out.infidelity = propagator_infidelity(u, v);
  out.unitarity_defect = unitarity_defect(u);
  out.steps = static_cast<long long>(std::ceil(lp.system.duration / lp.system.step - 1e-9));
  return out;
}

/// Independent sweeps run concurrently; results keep the input order.
inline std::vector<RwaCheck> rwa_sweep(const SpinParameters &p, Transition t, const std::vector<double> &ratios,
                                       Axis axis = Axis::Y, double phase = 0.0, double flip = kPi) {
  std::vector<std::future<RwaCheck>> jobs;
  for (double r : ratios)
    jobs.push_back(std::async(std::launch::async, [=] { return rwa_check(p, t, axis, phase, flip, r); }));
  std::vector<RwaCheck> out;
  for (auto &j : jobs) out.push_back(j.get());
  return out;
}

struct ConvergenceStudy {
  std::array<double, 4> steps{};
  double observed_order = 0.0;    // log2(|U_h - U_h/2| / |U_h/2 - U_h/4|)
  double richardson_ratio = 0.0;  // dev(h) / dev(h/2) vs extrapolated reference
};

/// Runs one pulse at steps h, h/2, h/4, h/8. The reference is the order-2
/// Richardson extrapolation of the two finest runs.
inline ConvergenceStudy convergence_study(const SpinParameters &p, Transition t, double ratio,
                                          double samples_per_period = 50.0) {
  LabPulse lp = make_lab_pulse(p, t, Axis::Y, 0.0, kPi, ratio, samples_per_period);
  const auto n0 = static_cast<long long>(std::ceil(lp.system.duration / lp.system.step - 1e-9));
  std::array<Operator4, 4> u;
  ConvergenceStudy out;
  for (int i = 0; i < 4; ++i) {
    DrivenSystem s = lp.system;
    s.step = s.duration / static_cast<double>(n0 << i);
    out.steps[i] = s.step;
    u[i] = integrate_lab_frame(s);
  }
  out.observed_order = std::log2(max_abs(u[0] - u[1]) / max_abs(u[1] - u[2]));
  const Operator4 ref = u[3] + (u[3] - u[2]) / 3.0;
  out.richardson_ratio = max_abs(u[0] - ref) / max_abs(u[1] - ref);
  return out;
}

}  // namespace vqubit

#endif  // VQUBIT_LAB_FRAME_ORACLE_HPP
