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

#ifndef VQUBIT_SPIN_SYSTEM_HPP
#define VQUBIT_SPIN_SYSTEM_HPP

// Static spin-3/2 quadrupole Hamiltonian and its labeled eigensystem.
//
// Units: hbar = 1, every energy is an angular frequency (rad/s).
// The |chi> basis is the Iz eigenbasis ordered m = +3/2, +1/2, -1/2, -3/2.
// Eigenstates carry labels 1..4 in descending energy order; array index
// i holds label i + 1.

#include "vqubit/core.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

namespace vqubit {

struct SpinParameters {
  double omega0 = 0.0;  // Zeeman angular frequency, rad/s
  double omegaQ = 1.0;  // quadrupole angular frequency, rad/s
  double eta = 0.0;     // asymmetry parameter, |eta| <= 1
  double gamma = 1.0;   // gyromagnetic ratio, rad/(s field-unit)
  double h_rf = 0.0;    // RF amplitude, field-unit

  void validate() const {
    auto fail = [](const std::string &msg) { throw Error(ErrorKind::kInvalidParameters, msg); };
    if (!std::isfinite(omega0) || !std::isfinite(omegaQ) || !std::isfinite(eta) ||
        !std::isfinite(gamma) || !std::isfinite(h_rf))
      fail("non-finite spin parameter");
    if (std::abs(eta) > 1.0) fail("|eta| must not exceed 1");
    if (!(omegaQ > 0.0)) fail("omegaQ must be positive");
    if (omega0 < 0.0) fail("omega0 must be non-negative");
    if (!(gamma > 0.0)) fail("gamma must be positive");
    if (h_rf < 0.0) fail("h_rf must be non-negative");
  }
};

enum class SpinAxis { X, Y, Z };

struct SpinOperators {
  Operator4 ix;
  Operator4 iy;
  Operator4 iz;

  const Operator4 &operator[](SpinAxis axis) const {
    switch (axis) {
      case SpinAxis::X: return ix;
      case SpinAxis::Y: return iy;
      case SpinAxis::Z: break;
    }
    return iz;
  }
};

inline constexpr std::array<double, 4> kChiProjections = {1.5, 0.5, -0.5, -1.5};

/// I = 3/2 angular momentum matrices in the |chi> basis, built from the
/// ladder coefficients sqrt(I(I+1) - m(m+1)).
inline SpinOperators spin_operators() {
  Operator4 raise = Operator4::Zero();
  for (int i = 1; i < 4; ++i) {
    const double m = kChiProjections[i];
    raise(i - 1, i) = std::sqrt(15.0 / 4.0 - m * (m + 1.0));
  }
  SpinOperators ops;
  ops.ix = (raise + raise.adjoint()) / 2.0;
  ops.iy = (raise - raise.adjoint()) / (2.0 * kI);
  ops.iz = Operator4::Zero();
  for (int i = 0; i < 4; ++i) ops.iz(i, i) = kChiProjections[i];
  return ops;
}

/// H0 = -omega0 Iz + (omegaQ/3)[3 Iz^2 - I(I+1) + eta (Ix^2 - Iy^2)].
inline Operator4 build_static_hamiltonian(const SpinParameters &p) {
  p.validate();
  const SpinOperators s = spin_operators();
  const Operator4 quad = 3.0 * s.iz * s.iz - (15.0 / 4.0) * Operator4::Identity() +
                         p.eta * (s.ix * s.ix - s.iy * s.iy);
  Operator4 h = -p.omega0 * s.iz + (p.omegaQ / 3.0) * quad;
  // The ladder products leave ~1e-16 imaginary dust; H0 is real symmetric.
  h = h.real().cast<cplx>();
  return (h + h.adjoint()) / 2.0;
}

struct MixingAngles {
  double alpha_plus;   // mixes chi(+3/2) with chi(-1/2)
  double alpha_minus;  // mixes chi(-3/2) with chi(+1/2)
};

struct EigenSystem {
  std::array<double, 4> energies{};  // rad/s, index i is label i + 1
  Operator4 states = Operator4::Identity();  // column i is |Psi_{i+1}> in |chi> basis
  std::optional<MixingAngles> mixing_angles;
  bool regime_ok = false;
  double scale = 1.0;  // energy scale for relative tolerances

  double energy(int label) const { return energies.at(static_cast<std::size_t>(label - 1)); }
  Vector4 state(int label) const { return states.col(label - 1); }
  Operator4 diagonal() const {
    Operator4 d = Operator4::Zero();
    for (int i = 0; i < 4; ++i) d(i, i) = energies[i];
    return d;
  }
};

namespace detail {

// Makes the largest-magnitude component real and positive. Ties go to the
// lowest index.
inline Vector4 fix_phase(const Vector4 &v) {
  int best = 0;
  for (int i = 1; i < 4; ++i)
    if (std::abs(v(i)) > std::abs(v(best)) * (1.0 + 1e-12)) best = i;
  const cplx c = v(best);
  return v * (std::abs(c) / c);
}

struct EigenPair {
  double energy;
  Vector4 state;
};

// Descending energy, tie-break by descending <Iz>.
inline void sort_and_fill(std::array<EigenPair, 4> pairs, double scale, EigenSystem &out) {
  const Operator4 iz = spin_operators().iz;
  std::array<double, 4> mz{};
  for (auto &p : pairs) p.state = fix_phase(p.state.normalized());
  std::array<int, 4> order{0, 1, 2, 3};
  for (int i = 0; i < 4; ++i) mz[i] = (pairs[i].state.adjoint() * iz * pairs[i].state)(0).real();
  const double tie = 1e-9 * scale;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (std::abs(pairs[a].energy - pairs[b].energy) > tie) return pairs[a].energy > pairs[b].energy;
    return mz[a] > mz[b];
  });
  bool strict = true;
  for (int i = 0; i < 4; ++i) {
    out.energies[i] = pairs[order[i]].energy;
    out.states.col(i) = pairs[order[i]].state;
    if (i > 0 && !(out.energies[i - 1] - out.energies[i] > tie)) strict = false;
  }
  out.regime_ok = strict;
  out.scale = scale;
}

}  // namespace detail

/// Closed-form eigensystem of H0. Each 2x2 block {chi(+3/2), chi(-1/2)} and
/// {chi(-3/2), chi(+1/2)} is diagonalized analytically with c = omega0/(2 omegaQ):
///   B(s) = sqrt(s^2 + eta^2/3),  s = 1 - 2c (first block), 1 + 2c (second),
///   energies omegaQ(-c +- B) and omegaQ(c +- B), tan(2 alpha) = eta / (sqrt3 s).
/// Throws DegenerateSpectrum when two energies coincide within 1e-9 omegaQ.
inline EigenSystem closed_form_eigensystem(const SpinParameters &p) {
  p.validate();
  const double c = p.omega0 / (2.0 * p.omegaQ);
  const double wq = p.omegaQ;
  // chi indices: 0:+3/2 1:+1/2 2:-1/2 3:-3/2
  auto block = [&](double s, double center, int upper_idx, int lower_idx, double &alpha) {
    std::array<detail::EigenPair, 2> out;
    Vector4 up = Vector4::Zero(), lo = Vector4::Zero();
    if (p.eta == 0.0) {
      // Diagonal limit: energies are the diagonal entries themselves.
      alpha = 0.0;
      up(upper_idx) = 1.0;
      lo(lower_idx) = 1.0;
      out[0] = {wq * (center + s), up};
      out[1] = {wq * (center - s), lo};
      return out;
    }
    const double b = std::sqrt(s * s + p.eta * p.eta / 3.0);
    alpha = 0.5 * std::atan2(p.eta / std::sqrt(3.0), s);
    up(upper_idx) = std::cos(alpha);
    up(lower_idx) = std::sin(alpha);
    lo(lower_idx) = std::cos(alpha);
    lo(upper_idx) = -std::sin(alpha);
    out[0] = {wq * (center + b), up};
    out[1] = {wq * (center - b), lo};
    return out;
  };
  MixingAngles angles{};
  const auto first = block(1.0 - 2.0 * c, -c, 0, 2, angles.alpha_plus);
  const auto second = block(1.0 + 2.0 * c, c, 3, 1, angles.alpha_minus);

  EigenSystem e;
  detail::sort_and_fill({first[0], first[1], second[0], second[1]}, wq, e);
  e.mixing_angles = angles;
  if (!e.regime_ok) {
    std::ostringstream msg;
    msg << "energies coincide within 1e-9 omegaQ (omega0=" << p.omega0 << ", eta=" << p.eta << ")";
    throw Error(ErrorKind::kDegenerateSpectrum, msg.str());
  }
  return e;
}

/// Numerical diagonalization of a Hermitian 4x4 matrix with the same label and
/// phase conventions as the closed form. A degenerate spectrum is reported via
/// regime_ok == false rather than thrown.
inline EigenSystem diagonalize(const Operator4 &h) {
  const double norm = max_abs(h);
  if (hermiticity_defect(h) > 1e-12 * std::max(1.0, norm))
    throw Error(ErrorKind::kNotHermitian, "matrix is not Hermitian to 1e-12");
  const Operator4 sym = (h + h.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Operator4> solver(sym);
  std::array<detail::EigenPair, 4> pairs;
  for (int i = 0; i < 4; ++i) pairs[i] = {solver.eigenvalues()(i), solver.eigenvectors().col(i)};
  EigenSystem e;
  detail::sort_and_fill(pairs, norm > 0.0 ? norm : 1.0, e);
  return e;
}

/// Unordered level pair, normalized so that m < n (m is the higher-energy level).
struct Transition {
  int m = 1;
  int n = 2;

  friend bool operator==(const Transition &, const Transition &) = default;
  bool shares_level(const Transition &o) const { return m == o.m || m == o.n || n == o.m || n == o.n; }
};

inline Transition make_transition(int a, int b) {
  if (a < 1 || a > 4 || b < 1 || b > 4)
    throw Error(ErrorKind::kIndexOutOfRange, "level index outside 1..4");
  if (a == b) throw Error(ErrorKind::kIndexOutOfRange, "transition needs two distinct levels");
  return a < b ? Transition{a, b} : Transition{b, a};
}

inline double transition_frequency(const EigenSystem &e, Transition t) {
  return std::abs(e.energy(t.m) - e.energy(t.n));
}

/// <Psi_m| I_axis |Psi_n>.
inline cplx spin_matrix_element(const EigenSystem &e, int m, int n, SpinAxis axis) {
  static const SpinOperators ops = spin_operators();
  return (e.state(m).adjoint() * ops[axis] * e.state(n))(0);
}

struct TransitionInfo {
  Transition transition;
  double frequency = 0.0;
  std::array<double, 3> coupling{};  // |<m|Ix|n>|, |<m|Iy|n>|, |<m|Iz|n>|
  bool collision = false;
};

struct TransitionTable {
  std::vector<TransitionInfo> rows;
  std::vector<std::pair<Transition, Transition>> collisions;

  const TransitionInfo *find(Transition t) const {
    for (const auto &r : rows)
      if (r.transition == t) return &r;
    return nullptr;
  }
};

/// All transitions with nonzero frequency; pairs of transitions whose
/// frequencies lie within `margin` of each other are flagged. The default
/// margin (negative) means 1e-6 times the eigensystem scale.
inline TransitionTable transition_table(const EigenSystem &e, double margin = -1.0) {
  if (margin < 0.0) margin = 1e-6 * e.scale;
  TransitionTable table;
  for (int m = 1; m <= 4; ++m)
    for (int n = m + 1; n <= 4; ++n) {
      TransitionInfo info;
      info.transition = {m, n};
      info.frequency = transition_frequency(e, info.transition);
      if (!(info.frequency > 0.0)) continue;
      info.coupling = {std::abs(spin_matrix_element(e, m, n, SpinAxis::X)),
                       std::abs(spin_matrix_element(e, m, n, SpinAxis::Y)),
                       std::abs(spin_matrix_element(e, m, n, SpinAxis::Z))};
      table.rows.push_back(info);
    }
  for (std::size_t i = 0; i < table.rows.size(); ++i)
    for (std::size_t j = i + 1; j < table.rows.size(); ++j)
      if (std::abs(table.rows[i].frequency - table.rows[j].frequency) <= margin) {
        table.rows[i].collision = table.rows[j].collision = true;
        table.collisions.emplace_back(table.rows[i].transition, table.rows[j].transition);
      }
  return table;
}

}  // namespace vqubit

#endif  // VQUBIT_SPIN_SYSTEM_HPP
