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

#pragma once

#include "qgame/tensor.hpp"

namespace qgame {

/// Bloch vector (Tr(rho X), Tr(rho Y), Tr(rho Z)) of a qubit state.
struct BlochCoords {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline BlochCoords bloch_coordinates(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw DimensionMismatch("bloch_coordinates: need a qubit state");
  const Complex off = rho.matrix()(0, 1);
  return {2.0 * off.real(), -2.0 * off.imag(), (rho.matrix()(0, 0) - rho.matrix()(1, 1)).real()};
}

}  // namespace qgame
