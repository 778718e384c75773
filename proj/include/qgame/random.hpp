// Copyright 2026 The qgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Seeded random states, observables and unitaries. Every generator takes the
// engine explicitly so callers own (and can reproduce) the random stream.

#pragma once

#include "qgame/tensor.hpp"

#include <cstdint>
#include <random>

namespace qgame {

using Rng = std::mt19937_64;

/// Matrix of independent standard complex Gaussians (E|z|^2 = 1).
inline ComplexMatrix random_gaussian(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(r, c) = Complex(re, im);
    }
  }
  return m;
}

inline HermitianMatrix random_hermitian(std::size_t dim, Rng& rng) {
  const ComplexMatrix g = random_gaussian(dim, dim, rng);
  return HermitianMatrix(ComplexMatrix((g + g.adjoint()) * 0.5));
}

inline double spectral_norm(const HermitianMatrix& h) {
  const RealVector v = eigenvalues(h);
  return std::max(std::abs(v(0)), std::abs(v(v.size() - 1)));
}

/// Random Hermitian rescaled to spectral norm exactly 1.
inline HermitianMatrix random_unit_hermitian(std::size_t dim, Rng& rng) {
  HermitianMatrix h = random_hermitian(dim, rng);
  return h * (1.0 / spectral_norm(h));
}

/// Haar-distributed unit vector.
inline ComplexVector random_unit_vector(std::size_t dim, Rng& rng) {
  ComplexVector v = random_gaussian(dim, 1, rng).col(0);
  return v / v.norm();
}

inline DensityMatrix random_pure_state(std::size_t dim, Rng& rng) {
  return DensityMatrix::pure(random_unit_vector(dim, rng));
}

/// Hilbert-Schmidt (Ginibre) random mixed state G G^dagger / Tr.
inline DensityMatrix random_density(std::size_t dim, Rng& rng) {
  const ComplexMatrix g = random_gaussian(dim, dim, rng);
  const ComplexMatrix w = g * g.adjoint();
  return DensityMatrix(HermitianMatrix(ComplexMatrix(w / w.trace().real())));
}

inline DensityMatrix random_product_state(const RegisterLayout& layout, Rng& rng) {
  std::vector<DensityMatrix> factors;
  for (std::size_t d : layout.dims()) factors.push_back(random_density(d, rng));
  return tensor_product(factors);
}

/// Haar unitary via QR of a Ginibre matrix with the R-diagonal phases removed.
inline ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
  const Eigen::MatrixXcd g = random_gaussian(dim, dim, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (std::size_t k = 0; k < dim; ++k) {
    const Complex d = r(k, k);
    if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

}  // namespace qgame
