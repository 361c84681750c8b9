// Copyright 2026 The stalambda Authors
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

#pragma once

#include <array>
#include <complex>

#include <Eigen/Core>

namespace stalambda {

using Complex = std::complex<double>;

/// Amplitudes in the basis {|1>, |2>, |3>}.
using Complex3Vector = Eigen::Vector3cd;
using Complex3x3Matrix = Eigen::Matrix3cd;

inline constexpr Complex kI{0.0, 1.0};

/// Eigenpairs of a Hermitian 3x3 matrix. Eigenvalues ascend; column k of
/// `vectors` belongs to values[k].
struct Spectral3 {
  std::array<double, 3> values{};
  Complex3x3Matrix vectors = Complex3x3Matrix::Identity();

  Complex3x3Matrix reconstruct() const;
};

double max_abs(const Complex3x3Matrix& a);

/// max |A - A^dagger| over all entries.
double hermiticity_error(const Complex3x3Matrix& a);

Complex3x3Matrix commutator(const Complex3x3Matrix& a,
                            const Complex3x3Matrix& b);

/// Cyclic complex Jacobi eigendecomposition. Throws NotHermitian when
/// max|A - A^dagger| exceeds 1e-10 * max(1, max|A|).
Spectral3 hermitian_eigendecompose(const Complex3x3Matrix& a);

/// exp(i s A) for Hermitian A.
Complex3x3Matrix expi_hermitian(const Complex3x3Matrix& a, double s);
Complex3x3Matrix expi_hermitian(const Spectral3& spectrum, double s);

}  // namespace stalambda
