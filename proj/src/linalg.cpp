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

#include "stalambda/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "stalambda/error.hpp"

namespace stalambda {

Complex3x3Matrix Spectral3::reconstruct() const {
  Complex3x3Matrix out = Complex3x3Matrix::Zero();
  for (int k = 0; k < 3; ++k) {
    out += values[k] * vectors.col(k) * vectors.col(k).adjoint();
  }
  return out;
}

double max_abs(const Complex3x3Matrix& a) { return a.cwiseAbs().maxCoeff(); }

double hermiticity_error(const Complex3x3Matrix& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

Complex3x3Matrix commutator(const Complex3x3Matrix& a,
                            const Complex3x3Matrix& b) {
  return a * b - b * a;
}

namespace {

constexpr int kMaxSweeps = 64;

void check_hermitian(const Complex3x3Matrix& a) {
  const double err = hermiticity_error(a);
  const double bound = 1e-10 * std::max(1.0, max_abs(a));
  if (!(err <= bound)) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian: max|A - A^dagger| = " << err;
    throw NotHermitian(msg.str());
  }
}

// Zeroes the (p, q) entry with a phase fix followed by a real rotation.
void rotate(Complex3x3Matrix& a, Complex3x3Matrix& v, int p, int q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;

  Complex3x3Matrix w = Complex3x3Matrix::Identity();
  const Complex phase = std::conj(apq / mag);

  const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  // w = diag(phase at q) * R(c, s)
  w(p, p) = c;
  w(p, q) = s;
  w(q, p) = -s * phase;
  w(q, q) = c * phase;

  a = (w.adjoint() * a * w).eval();
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  v = (v * w).eval();
}

}  // namespace

Spectral3 hermitian_eigendecompose(const Complex3x3Matrix& input) {
  check_hermitian(input);
  Complex3x3Matrix a = 0.5 * (input + input.adjoint());
  Complex3x3Matrix v = Complex3x3Matrix::Identity();

  const double scale = max_abs(a);
  for (int sweep = 0; sweep < kMaxSweeps && scale > 0.0; ++sweep) {
    const double off = std::max({std::abs(a(0, 1)), std::abs(a(0, 2)),
                                 std::abs(a(1, 2))});
    if (off <= 1e-18 * scale) break;
    rotate(a, v, 0, 1);
    rotate(a, v, 0, 2);
    rotate(a, v, 1, 2);
  }

  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    return a(i, i).real() < a(j, j).real();
  });

  Spectral3 out;
  for (int k = 0; k < 3; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

Complex3x3Matrix expi_hermitian(const Spectral3& spectrum, double s) {
  if (s == 0.0) return Complex3x3Matrix::Identity();
  Complex3x3Matrix out = Complex3x3Matrix::Zero();
  for (int k = 0; k < 3; ++k) {
    const Complex phase = std::exp(kI * (s * spectrum.values[k]));
    out += phase * spectrum.vectors.col(k) * spectrum.vectors.col(k).adjoint();
  }
  return out;
}

Complex3x3Matrix expi_hermitian(const Complex3x3Matrix& a, double s) {
  // Validate first so s == 0 still rejects non-Hermitian input.
  const Spectral3 spectrum = hermitian_eigendecompose(a);
  return expi_hermitian(spectrum, s);
}

}  // namespace stalambda
