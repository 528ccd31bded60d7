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

#ifndef VQUBIT_OPERATOR_ALGEBRA_HPP
#define VQUBIT_OPERATOR_ALGEBRA_HPP

// Projective operators P_mn = |Psi_m><Psi_n|. In the eigenbasis these are
// elementary matrices; every pulse-level computation happens there, and the
// |chi> basis is only visited when building or displaying operators.

#include "vqubit/core.hpp"
#include "vqubit/spin_system.hpp"

#include <array>
#include <cmath>

namespace vqubit {

struct Projector {
  int m = 1;
  int n = 1;
  Operator4 matrix = Operator4::Zero();

  Projector adjoint() const;
};

inline void check_level(int level) {
  if (level < 1 || level > 4) throw Error(ErrorKind::kIndexOutOfRange, "level index outside 1..4");
}

inline Projector projector(int m, int n) {
  check_level(m);
  check_level(n);
  Projector p{m, n, Operator4::Zero()};
  p.matrix(m - 1, n - 1) = 1.0;
  return p;
}

inline Projector Projector::adjoint() const { return projector(n, m); }

/// P_kl P_mn = delta_lm P_kn.
inline Operator4 projector_product(const Projector &a, const Projector &b) {
  if (a.n != b.m) return Operator4::Zero();
  return projector(a.m, b.n).matrix;
}

/// Basis change |chi> -> eigenbasis: A_eig = S^dagger A S.
inline Operator4 to_eigenbasis(const Operator4 &a_chi, const EigenSystem &e) {
  return e.states.adjoint() * a_chi * e.states;
}

inline Operator4 from_eigenbasis(const Operator4 &a_eig, const EigenSystem &e) {
  return e.states * a_eig * e.states.adjoint();
}

struct OperatorExpansion {
  Operator4 coefficients = Operator4::Zero();  // c_mn = <Psi_m|A|Psi_n>

  cplx coefficient(int m, int n) const { return coefficients(m - 1, n - 1); }

  /// sum_mn c_mn |Psi_m><Psi_n| expressed back in the |chi> basis.
  Operator4 reconstruct(const EigenSystem &e) const {
    Operator4 out = Operator4::Zero();
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n)
        out += coefficients(m, n) * e.states.col(m) * e.states.col(n).adjoint();
    return out;
  }
};

inline OperatorExpansion expand_in_eigenbasis(const Operator4 &a_chi, const EigenSystem &e) {
  OperatorExpansion x;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) x.coefficients(m, n) = (e.states.col(m).adjoint() * a_chi * e.states.col(n))(0);
  return x;
}

/// D(t) = sum_m P_mm exp(-i eps_m t), eigenbasis.
inline Operator4 free_evolution(const EigenSystem &e, double t) {
  if (!std::isfinite(t)) throw Error(ErrorKind::kInvalidParameters, "free evolution time must be finite");
  Operator4 d = Operator4::Zero();
  for (int m = 0; m < 4; ++m) d(m, m) = std::polar(1.0, -e.energies[m] * t);
  return d;
}

struct SelectionTable {
  Operator4 elements = Operator4::Zero();
  std::array<std::array<bool, 4>, 4> allowed{};

  bool is_allowed(int m, int n) const { return allowed[m - 1][n - 1]; }
};

namespace detail {
inline SelectionTable mask(const Operator4 &elements, double tol) {
  SelectionTable t;
  t.elements = elements;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) t.allowed[i][j] = std::abs(elements(i, j)) > tol;
  return t;
}
}  // namespace detail

/// Matrix elements <Psi_m|I_axis|Psi_n> with a nonzero mask (|element| > 1e-14).
inline SelectionTable selection_rules(const EigenSystem &e, SpinAxis axis) {
  return detail::mask(to_eigenbasis(spin_operators()[axis], e), 1e-14);
}

/// Same table in the |chi> basis, where Ix and Iy only connect |delta m| = 1.
inline SelectionTable selection_rules_chi(SpinAxis axis) {
  return detail::mask(spin_operators()[axis], 1e-14);
}

}  // namespace vqubit

#endif  // VQUBIT_OPERATOR_ALGEBRA_HPP
