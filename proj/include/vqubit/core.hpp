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

#ifndef VQUBIT_CORE_HPP
#define VQUBIT_CORE_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace vqubit {

using cplx = std::complex<double>;

/// Dense 4x4 complex matrix. Used for Hamiltonians, propagators and density
/// matrices alike; which one is meant is carried by the function contract.
using Operator4 = Eigen::Matrix4cd;
using Vector4 = Eigen::Vector4cd;
using Operator2 = Eigen::Matrix2cd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

enum class ErrorKind {
  kInvalidParameters,
  kDegenerateSpectrum,
  kNotHermitian,
  kIndexOutOfRange,
  kZeroMatrixElement,
  kSelectivityViolation,
  kSharedLevel,
  kInvalidState,
  kStepTooLarge,
  kRegimeViolation,
  kNotDiagonal,
  kNotPositive,
  kSyntaxError,
  kSemanticError,
  kParseError,
};

inline const char *error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidParameters: return "InvalidParameters";
    case ErrorKind::kDegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorKind::kNotHermitian: return "NotHermitian";
    case ErrorKind::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::kZeroMatrixElement: return "ZeroMatrixElement";
    case ErrorKind::kSelectivityViolation: return "SelectivityViolation";
    case ErrorKind::kSharedLevel: return "SharedLevel";
    case ErrorKind::kInvalidState: return "InvalidState";
    case ErrorKind::kStepTooLarge: return "StepTooLarge";
    case ErrorKind::kRegimeViolation: return "RegimeViolation";
    case ErrorKind::kNotDiagonal: return "NotDiagonal";
    case ErrorKind::kNotPositive: return "NotPositive";
    case ErrorKind::kSyntaxError: return "SyntaxError";
    case ErrorKind::kSemanticError: return "SemanticError";
    case ErrorKind::kParseError: return "ParseError";
  }
  return "Unknown";
}

/// The single exception type thrown by the library. `kind()` lets callers
/// (and the CLI exit-code mapping) dispatch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Tolerances in this library are entrywise.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived> &m) {
  return m.cwiseAbs().maxCoeff();
}

template <typename Derived>
double frobenius(const Eigen::MatrixBase<Derived> &m) {
  return m.norm();
}

inline Operator4 identity4() { return Operator4::Identity(); }

inline Operator4 commutator(const Operator4 &a, const Operator4 &b) { return a * b - b * a; }

inline double hermiticity_defect(const Operator4 &m) { return max_abs(m - m.adjoint()); }

inline double unitarity_defect(const Operator4 &u) {
  return max_abs(u.adjoint() * u - Operator4::Identity());
}

inline bool is_hermitian(const Operator4 &m, double tol) {
  return hermiticity_defect(m) <= tol * std::max(1.0, max_abs(m));
}

/// Kronecker product of two 2x2 operators, first factor is the high index.
inline Operator4 kron(const Operator2 &a, const Operator2 &b) {
  Operator4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

}  // namespace vqubit

#endif  // VQUBIT_CORE_HPP
