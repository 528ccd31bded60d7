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

#ifndef VQUBIT_VIRTUAL_QUBITS_HPP
#define VQUBIT_VIRTUAL_QUBITS_HPP

// Two virtual qubits R (first bit) and S (second bit) on the four levels:
//   |Psi_1> = |11>, |Psi_2> = |10>, |Psi_3> = |01>, |Psi_4> = |00>.
// In 2x2 form, index 1 of either qubit is bit 1 and index 2 is bit 0, and
// R_kl (x) S_mn = P_{2k-2+m, 2l-2+n}, i.e. the Kronecker product with R as the
// high index.

#include "vqubit/core.hpp"
#include "vqubit/matrix_exp.hpp"
#include "vqubit/operator_algebra.hpp"
#include "vqubit/pulse_engine.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace vqubit {

enum class VirtualQubit { R, S };

inline const char *qubit_name(VirtualQubit q) { return q == VirtualQubit::R ? "R" : "S"; }

struct VirtualLabel {
  int level = 4;
  std::string bits = "00";
};

inline std::string label_to_bits(int level) {
  check_level(level);
  const int code = 4 - level;
  return std::string{static_cast<char>('0' + (code >> 1)), static_cast<char>('0' + (code & 1))};
}

inline int bits_to_label(const std::string &bits) {
  if (bits.size() != 2 || (bits[0] != '0' && bits[0] != '1') || (bits[1] != '0' && bits[1] != '1'))
    throw Error(ErrorKind::kIndexOutOfRange, "virtual label must be two characters over {0,1}: '" + bits + "'");
  return 4 - ((bits[0] - '0') * 2 + (bits[1] - '0'));
}

inline VirtualLabel label_map(int level) { return {level, label_to_bits(level)}; }

/// R_kl (x) S_mn as a level projector.
inline Projector embed_tensor_projector(int k, int l, int m, int n) {
  for (int idx : {k, l, m, n})
    if (idx < 1 || idx > 2) throw Error(ErrorKind::kIndexOutOfRange, "virtual-qubit index outside 1..2");
  return projector(2 * k - 2 + m, 2 * l - 2 + n);
}

inline Operator2 qubit_projector(int k, int l) {
  Operator2 r = Operator2::Zero();
  r(k - 1, l - 1) = 1.0;
  return r;
}

inline Operator4 embed(const Operator2 &r, const Operator2 &s) { return kron(r, s); }

struct VirtualSpinComponents {
  Operator4 rx, ry, rz;
  Operator4 sx, sy, sz;
};

/// Spin-1/2 components of each virtual qubit embedded with the identity on
/// the other factor. The y components are i(X_21 - X_12)/2, which together
/// with x = (X_12 + X_21)/2 and z = (X_11 - X_22)/2 satisfy [x, y] = i z and
/// make V_Y(W12, phi; W34, phi) = exp(-i phi Sy).
inline VirtualSpinComponents virtual_spin_components() {
  const Operator2 one = Operator2::Identity();
  const Operator2 x = (qubit_projector(1, 2) + qubit_projector(2, 1)) / 2.0;
  const Operator2 y = kI * (qubit_projector(2, 1) - qubit_projector(1, 2)) / 2.0;
  const Operator2 z = (qubit_projector(1, 1) - qubit_projector(2, 2)) / 2.0;
  return {embed(x, one), embed(y, one), embed(z, one), embed(one, x), embed(one, y), embed(one, z)};
}

/// Generator G of a rotation exp(-i angle G) about `axis` on `target`.
inline Operator4 rotation_generator(VirtualQubit target, Axis axis) {
  const auto c = virtual_spin_components();
  if (target == VirtualQubit::R) return axis == Axis::X ? c.rx : c.ry;
  return axis == Axis::X ? c.sx : c.sy;
}

enum class GateKind { kRotation, kCnot };

struct GateRequest {
  GateKind kind = GateKind::kRotation;
  VirtualQubit qubit = VirtualQubit::S;  // rotation target, or CNOT control
  Axis axis = Axis::Y;
  double angle = 0.0;
};

struct CompiledGate {
  PulseProgram program;
  Operator4 unitary;
};

/// Rotation by `angle` about X or Y on one virtual qubit: a single
/// two-frequency step with equal flips on (W12, W34) for S or (W13, W24) for R.
/// Negative angles are realized with phase pi.
inline CompiledGate compile_single_qubit_rotation(VirtualQubit target, Axis axis, double angle,
                                                  const EigenSystem &e, const SpinParameters &p,
                                                  const PulseOptions &opts = {}) {
  if (!std::isfinite(angle)) throw Error(ErrorKind::kInvalidParameters, "rotation angle must be finite");
  const bool on_s = target == VirtualQubit::S;
  const double phase = angle < 0.0 ? kPi : 0.0;
  const double flip = std::abs(angle);
  PulseSpec a{on_s ? Transition{1, 2} : Transition{1, 3}, axis, phase, flip, std::nullopt};
  PulseSpec b{on_s ? Transition{3, 4} : Transition{2, 4}, axis, phase, flip, std::nullopt};
  CompiledGate g;
  g.program.params = p;
  g.program.steps.emplace_back(SimultaneousPulse{a, b});
  g.unitary = program_propagator(g.program, e, false, opts);
  return g;
}

/// CNOT as one pi pulse: control R uses W12 (R11 (x) (S21 - S12) + R22 (x) 1),
/// control S uses W13 (1 (x) S22 + (R21 - R12) (x) S11).
inline CompiledGate compile_cnot(VirtualQubit control, const EigenSystem &e, const SpinParameters &p,
                                 const PulseOptions &opts = {}) {
  const Transition t = control == VirtualQubit::R ? Transition{1, 2} : Transition{1, 3};
  CompiledGate g;
  g.program.params = p;
  g.program.steps.emplace_back(PulseSpec{t, Axis::Y, 0.0, kPi, std::nullopt});
  g.unitary = program_propagator(g.program, e, false, opts);
  return g;
}

inline CompiledGate compile_gate(const GateRequest &req, const EigenSystem &e, const SpinParameters &p,
                                 const PulseOptions &opts = {}) {
  if (req.kind == GateKind::kCnot) return compile_cnot(req.qubit, e, p, opts);
  return compile_single_qubit_rotation(req.qubit, req.axis, req.angle, e, p, opts);
}

struct TruthRow {
  int input_level = 1;
  bool is_basis = false;
  int output_level = 0;
  cplx phase{1.0, 0.0};  // relative to the table's reference phase
};

/// Maps each basis ket |Psi_m> through U. Phases are reported relative to the
/// first row that lands on a basis ket, so a global phase on U drops out while
/// relative signs (e.g. the -1 of a CNOT) are kept.
inline std::vector<TruthRow> truth_table(const Operator4 &u, double tol = 1e-10) {
  std::vector<TruthRow> rows;
  std::optional<cplx> reference;
  for (int m = 1; m <= 4; ++m) {
    TruthRow row;
    row.input_level = m;
    const Vector4 col = u.col(m - 1);
    int best = 0;
    for (int i = 1; i < 4; ++i)
      if (std::abs(col(i)) > std::abs(col(best))) best = i;
    bool basis = std::abs(1.0 - std::abs(col(best))) <= tol;
    for (int i = 0; i < 4 && basis; ++i)
      if (i != best && std::abs(col(i)) > tol) basis = false;
    if (basis) {
      const cplx ph = col(best) / std::abs(col(best));
      if (!reference) reference = ph;
      row.is_basis = true;
      row.output_level = best + 1;
      row.phase = ph / *reference;
    }
    rows.push_back(row);
  }
  return rows;
}

inline std::string format_phase_prefix(cplx phase, double tol = 1e-10) {
  if (std::abs(phase - cplx(1.0)) <= tol) return "";
  if (std::abs(phase + cplx(1.0)) <= tol) return "-";
  if (std::abs(phase - kI) <= tol) return "i";
  if (std::abs(phase + kI) <= tol) return "-i";
  char buf[64];
  std::snprintf(buf, sizeof buf, "exp(i*%.17g)", std::arg(phase));
  return buf;
}

/// "|bb> -> [sign]|bb'>" or "|bb> -> superposition".
inline std::string format_truth_row(const TruthRow &row) {
  std::string s = "|" + label_to_bits(row.input_level) + "> -> ";
  if (!row.is_basis) return s + "superposition";
  return s + format_phase_prefix(row.phase) + "|" + label_to_bits(row.output_level) + ">";
}

}  // namespace vqubit

#endif  // VQUBIT_VIRTUAL_QUBITS_HPP
