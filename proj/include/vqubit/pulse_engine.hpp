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

#ifndef VQUBIT_PULSE_ENGINE_HPP
#define VQUBIT_PULSE_ENGINE_HPP

// Rotating-wave propagators for transition-selective RF pulses and their
// application to density matrices. All operators here live in the eigenbasis.

#include "vqubit/core.hpp"
#include "vqubit/operator_algebra.hpp"
#include "vqubit/spin_system.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace vqubit {

enum class Axis { X, Y };

inline const char *axis_name(Axis a) { return a == Axis::X ? "X" : "Y"; }
inline SpinAxis spin_axis(Axis a) { return a == Axis::X ? SpinAxis::X : SpinAxis::Y; }

/// Physical view of a pulse: rectangular amplitude for a duration.
struct PulseRealization {
  double h_rf = 0.0;      // field-unit
  double duration = 0.0;  // s
};

struct PulseSpec {
  Transition transition;
  Axis axis = Axis::Y;
  double phase = 0.0;  // rad
  double flip = 0.0;   // rad, >= 0
  std::optional<PulseRealization> realization;
};

/// Two pulses applied at once on level-disjoint transitions.
struct SimultaneousPulse {
  PulseSpec a;
  PulseSpec b;
};

struct FreeEvolutionStep {
  double dt = 0.0;  // s
};

using PulseStep = std::variant<PulseSpec, SimultaneousPulse, FreeEvolutionStep>;

struct PulseProgram {
  SpinParameters params;
  std::vector<PulseStep> steps;
};

struct PulseOptions {
  // A pulse on W_mn is accepted only if every other transition frequency is
  // further than selectivity_factor * gamma * h_rf * |element| away.
  double selectivity_factor = 1e3;
};

inline constexpr double kForbiddenElement = 1e-14;

/// Coupling strength |<Psi_m|I|Psi_n>| used to drive a transition. The
/// requested transverse component is used when it is nonzero; otherwise the
/// longitudinal (Iz) element is used, which is what couples transitions
/// inside the eta-mixed blocks. Returns 0 when nothing couples the pair.
inline double drive_coupling(const EigenSystem &e, Transition t, Axis axis) {
  const double transverse = std::abs(spin_matrix_element(e, t.m, t.n, spin_axis(axis)));
  if (transverse >= kForbiddenElement) return transverse;
  const double longitudinal = std::abs(spin_matrix_element(e, t.m, t.n, SpinAxis::Z));
  return longitudinal >= kForbiddenElement ? longitudinal : 0.0;
}

namespace detail {
inline std::string name(Transition t) {
  std::ostringstream s;
  s << "W" << t.m << t.n;
  return s.str();
}
}  // namespace detail

inline double require_drivable(const EigenSystem &e, Transition t, Axis axis) {
  const double c = drive_coupling(e, t, axis);
  if (c == 0.0)
    throw Error(ErrorKind::kZeroMatrixElement, "transition " + detail::name(t) + " has no nonzero matrix element");
  return c;
}

/// phi_y = 2 * duration * gamma * h_rf * |element|.
inline double flip_angle(const SpinParameters &p, const EigenSystem &e, Transition t, Axis axis,
                         double duration) {
  if (!(duration >= 0.0) || !std::isfinite(duration))
    throw Error(ErrorKind::kInvalidParameters, "pulse duration must be finite and >= 0");
  const double c = require_drivable(e, t, axis);
  return 2.0 * duration * p.gamma * p.h_rf * c;
}

inline void check_selectivity(const SpinParameters &p, const EigenSystem &e, Transition t, Axis axis,
                              const PulseOptions &opts) {
  const double omega = transition_frequency(e, t);
  const double coupling = drive_coupling(e, t, axis);
  const double needed = opts.selectivity_factor * p.gamma * p.h_rf * coupling;
  double gap = std::numeric_limits<double>::infinity();
  Transition nearest = t;
  for (int m = 1; m <= 4; ++m)
    for (int n = m + 1; n <= 4; ++n) {
      const Transition other{m, n};
      if (other == t) continue;
      const double d = std::abs(omega - transition_frequency(e, other));
      if (d < gap) {
        gap = d;
        nearest = other;
      }
    }
  if (!(omega > 0.0) || !(gap > needed)) {
    std::ostringstream msg;
    msg << detail::name(t) << " lies within " << gap << " rad/s of " << detail::name(nearest)
        << " (selectivity needs > " << needed << ")";
    throw Error(ErrorKind::kSelectivityViolation, msg.str());
  }
}

namespace detail {

inline void check_flip(double flip) {
  if (!(flip >= 0.0) || !std::isfinite(flip))
    throw Error(ErrorKind::kInvalidParameters, "flip angle must be finite and >= 0");
}

// Writes the driven 2x2 block of one transition into v:
//   (P_mm + P_nn) cos(flip/2) + (P_nm e^{i phi} - P_mn e^{-i phi}) sin(flip/2)
// with phi shifted by -pi/2 for the X axis.
inline void write_block(Operator4 &v, Transition t, Axis axis, double phase, double flip) {
  const double eff = axis == Axis::X ? phase - kPi / 2.0 : phase;
  const double c = std::cos(flip / 2.0);
  const double s = std::sin(flip / 2.0);
  const int m = t.m - 1;
  const int n = t.n - 1;
  v(m, m) = c;
  v(n, n) = c;
  v(n, m) = s * std::polar(1.0, eff);
  v(m, n) = -s * std::polar(1.0, -eff);
}

}  // namespace detail

/// Transition-selective pulse propagator in the rotating-wave approximation.
/// Identity on the two undriven levels. (W12, Y, phase 0, flip pi) gives
/// P33 + P44 + P21 - P12.
inline Operator4 single_frequency_propagator(const EigenSystem &e, Transition t, Axis axis, double phase,
                                             double flip, const SpinParameters &p,
                                             const PulseOptions &opts = {}) {
  detail::check_flip(flip);
  require_drivable(e, t, axis);
  check_selectivity(p, e, t, axis, opts);
  Operator4 v = Operator4::Identity();
  detail::write_block(v, t, axis, phase, flip);
  return v;
}

/// Simultaneous drive of two level-disjoint transitions. The two factors
/// commute, so this equals either ordered product of single-frequency pulses.
inline Operator4 two_frequency_propagator(const EigenSystem &e, Transition a, Transition b, Axis axis,
                                          double phase, double flip_a, double flip_b, const SpinParameters &p,
                                          const PulseOptions &opts = {}) {
  if (a.shares_level(b))
    throw Error(ErrorKind::kSharedLevel,
                detail::name(a) + " and " + detail::name(b) + " have a common energy level");
  detail::check_flip(flip_a);
  detail::check_flip(flip_b);
  require_drivable(e, a, axis);
  require_drivable(e, b, axis);
  check_selectivity(p, e, a, axis, opts);
  check_selectivity(p, e, b, axis, opts);
  Operator4 v = Operator4::Identity();
  detail::write_block(v, a, axis, phase, flip_a);
  detail::write_block(v, b, axis, phase, flip_b);
  return v;
}

/// Returns the pulse with its flip angle recomputed from the realization,
/// when one is attached.
inline PulseSpec normalize_pulse(const SpinParameters &p, const EigenSystem &e, PulseSpec spec) {
  if (spec.realization) {
    SpinParameters q = p;
    q.h_rf = spec.realization->h_rf;
    spec.flip = flip_angle(q, e, spec.transition, spec.axis, spec.realization->duration);
  }
  return spec;
}

/// Physical duration of a step. Flip-only pulses take the duration implied by
/// the system's RF amplitude; with h_rf = 0 they are instantaneous.
inline double step_duration(const SpinParameters &p, const EigenSystem &e, const PulseStep &step) {
  auto pulse_duration = [&](const PulseSpec &s) {
    if (s.realization) return s.realization->duration;
    const double rate = 2.0 * p.gamma * p.h_rf * drive_coupling(e, s.transition, s.axis);
    return rate > 0.0 ? s.flip / rate : 0.0;
  };
  if (const auto *s = std::get_if<PulseSpec>(&step)) return pulse_duration(*s);
  if (const auto *s = std::get_if<SimultaneousPulse>(&step))
    return std::max(pulse_duration(s->a), pulse_duration(s->b));
  return std::get<FreeEvolutionStep>(step).dt;
}

/// Propagator of one step. Free-evolution steps are the identity in the
/// interaction frame; include_free_evolution adds D(duration) after the step.
inline Operator4 step_propagator(const SpinParameters &p, const EigenSystem &e, const PulseStep &step,
                                 bool include_free_evolution, const PulseOptions &opts = {}) {
  Operator4 v = Operator4::Identity();
  if (const auto *s = std::get_if<PulseSpec>(&step)) {
    const PulseSpec n = normalize_pulse(p, e, *s);
    v = single_frequency_propagator(e, n.transition, n.axis, n.phase, n.flip, p, opts);
  } else if (const auto *s = std::get_if<SimultaneousPulse>(&step)) {
    const PulseSpec a = normalize_pulse(p, e, s->a);
    const PulseSpec b = normalize_pulse(p, e, s->b);
    if (a.axis != b.axis || a.phase != b.phase) {
      // Independent axes/phases: the factors still commute.
      if (a.transition.shares_level(b.transition))
        throw Error(ErrorKind::kSharedLevel, "simultaneous pulses share a level");
      v = single_frequency_propagator(e, a.transition, a.axis, a.phase, a.flip, p, opts) *
          single_frequency_propagator(e, b.transition, b.axis, b.phase, b.flip, p, opts);
    } else {
      v = two_frequency_propagator(e, a.transition, b.transition, a.axis, a.phase, a.flip, b.flip, p, opts);
    }
  } else {
    const double dt = std::get<FreeEvolutionStep>(step).dt;
    if (!std::isfinite(dt) || dt < 0.0)
      throw Error(ErrorKind::kInvalidParameters, "free evolution dt must be finite and >= 0");
  }
  if (include_free_evolution) v = free_evolution(e, step_duration(p, e, step)) * v;
  return v;
}

/// Ordered product V = V_k ... V_1 of a program's steps.
inline Operator4 program_propagator(const PulseProgram &prog, const EigenSystem &e, bool include_free_evolution,
                                    const PulseOptions &opts = {}) {
  Operator4 v = Operator4::Identity();
  for (const auto &step : prog.steps) v = step_propagator(prog.params, e, step, include_free_evolution, opts) * v;
  return v;
}

/// Throws InvalidState unless rho is Hermitian, unit-trace and PSD to 1e-12.
inline void validate_density_matrix(const Operator4 &rho) {
  if (!rho.allFinite()) throw Error(ErrorKind::kInvalidState, "density matrix has non-finite entries");
  if (hermiticity_defect(rho) > 1e-12) throw Error(ErrorKind::kInvalidState, "density matrix is not Hermitian");
  if (std::abs(rho.trace() - cplx(1.0)) > 1e-12)
    throw Error(ErrorKind::kInvalidState, "density matrix trace differs from 1");
  const Operator4 sym = (rho + rho.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Operator4> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-12)
    throw Error(ErrorKind::kInvalidState, "density matrix is not positive semidefinite");
}

inline Operator4 apply_pulse_program(const PulseProgram &prog, const EigenSystem &e, const Operator4 &rho0,
                                     bool include_free_evolution, const PulseOptions &opts = {}) {
  validate_density_matrix(rho0);
  Operator4 rho = rho0;
  for (const auto &step : prog.steps) {
    const Operator4 v = step_propagator(prog.params, e, step, include_free_evolution, opts);
    rho = v * rho * v.adjoint();
  }
  return rho;
}

inline Operator4 apply_pulse_program(const PulseProgram &prog, const Operator4 &rho0, bool include_free_evolution,
                                     const PulseOptions &opts = {}) {
  return apply_pulse_program(prog, closed_form_eigensystem(prog.params), rho0, include_free_evolution, opts);
}

}  // namespace vqubit

#endif  // VQUBIT_PULSE_ENGINE_HPP
