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

#ifndef VQUBIT_MATRIX_EXP_HPP
#define VQUBIT_MATRIX_EXP_HPP

#include <Eigen/Dense>

#include <cmath>

namespace vqubit {

// Scaling and squaring with a truncated Taylor series. The argument is scaled
// so its 1-norm is at most 1/2, the series is summed until the next term falls
// below 1e-17 of the running sum (relative, which bounds truncation well under
// 1e-15), then squared back up.
template <typename Derived>
typename Derived::PlainObject expm(const Eigen::MatrixBase<Derived> &a) {
  using Matrix = typename Derived::PlainObject;
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  const double scale = std::ldexp(1.0, -squarings);
  const Matrix scaled = a * scale;

  Matrix sum = Matrix::Identity(a.rows(), a.cols());
  Matrix term = sum;
  for (int k = 1; k <= 40; ++k) {
    term = (term * scaled) / static_cast<double>(k);
    sum += term;
    if (term.cwiseAbs().maxCoeff() <= 1e-17 * sum.cwiseAbs().maxCoeff()) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

}  // namespace vqubit

#endif  // VQUBIT_MATRIX_EXP_HPP
