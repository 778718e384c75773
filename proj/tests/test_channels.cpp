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

#include "test_util.hpp"

namespace qgame {
namespace {

using testing::MatrixNear;
using testing::swap_operator;

ComplexMatrix trace_times(const ComplexMatrix& x, const DensityMatrix& target) {
  return x.trace() * target.matrix();
}

TEST(ChoiOfIdentity, QubitEntries) {
  const ChoiMatrix c = choi_of_identity(2);
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 0) = expected(0, 3) = expected(3, 0) = expected(3, 3) = 1.0;
  EXPECT_TRUE(MatrixNear(c.matrix().matrix(), expected, 0.0));
}

TEST(ChoiOfIdentity, RankOneAndPsd) {
  for (std::size_t d = 1; d <= 4; ++d) {
    const RealVector v = eigenvalues(choi_of_identity(d).matrix());
    EXPECT_NEAR(v(0), static_cast<double>(d), 1e-12);
    EXPECT_GE(v(v.size() - 1), -1e-12);
    if (v.size() > 1) {
      EXPECT_NEAR(v(1), 0.0, 1e-12);
    }
    EXPECT_NEAR(choi_of_identity(d).matrix().trace(), static_cast<double>(d), 1e-12);
  }
}

TEST(ApplySuperop, IdentityReproducesInput) {
  Rng rng(1);
  const ComplexMatrix x = random_gaussian(3, 3, rng);
  EXPECT_TRUE(MatrixNear(apply_superop(choi_of_identity(3), x), x, 1e-14));
  EXPECT_TRUE(MatrixNear(apply_adjoint(choi_of_identity(3), x), x, 1e-14));
}

TEST(ApplySuperop, ReplacementChannel) {
  Rng rng(2);
  const DensityMatrix target = random_density(2, rng);
  const ChoiMatrix c = replacement_channel(target, 3);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix x = random_gaussian(3, 3, rng);
    EXPECT_TRUE(MatrixNear(apply_superop(c, x), trace_times(x, target), 1e-12));
  }
}

TEST(ApplySuperop, Linear) {
  Rng rng(3);
  const ChoiMatrix c(2, 3, random_hermitian(6, rng));
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix x = random_gaussian(3, 3, rng), y = random_gaussian(3, 3, rng);
    EXPECT_TRUE(MatrixNear(apply_superop(c, ComplexMatrix(2.0 * x - y)),
                           2.0 * apply_superop(c, x) - apply_superop(c, y), 1e-12));
  }
}

TEST(ApplySuperop, MatchesPartialTraceDefinition) {
  Rng rng(4);
  const HermitianMatrix r = random_hermitian(6, rng);
  const ChoiMatrix c(2, 3, r);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix x = random_gaussian(3, 3, rng);
    const ComplexMatrix direct = partial_trace(
        ComplexMatrix(r.matrix() * kron(ComplexMatrix::Identity(2, 2), ComplexMatrix(x.transpose()))),
        RegisterLayout{2, 3}, {0});
    EXPECT_TRUE(MatrixNear(apply_superop(c, x), direct, 1e-12));
  }
}

TEST(ApplySuperop, DimensionMismatchThrows) {
  EXPECT_THROW(apply_superop(choi_of_identity(2), ComplexMatrix::Identity(3, 3)), DimensionMismatch);
  EXPECT_THROW(apply_adjoint(choi_of_identity(2), ComplexMatrix::Identity(3, 3)), DimensionMismatch);
}

TEST(ChoiRoundtrip, RandomHermitianTensor) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t da = 2 + trial % 2, db = 2 + (trial / 2) % 2;
    const ChoiMatrix c(da, db, random_hermitian(da * db, rng));
    const ChoiMatrix rebuilt = choi_of(da, db, [&](const ComplexMatrix& x) { return apply_superop(c, x); });
    EXPECT_TRUE(MatrixNear(rebuilt.matrix().matrix(), c.matrix().matrix(), 1e-10));
  }
}

TEST(ApplyAdjoint, DefiningEquation) {
  Rng rng(6);
  const ChoiMatrix c(3, 2, random_hermitian(6, rng));
  for (int trial = 0; trial < 50; ++trial) {
    const HermitianMatrix a = random_hermitian(3, rng), b = random_hermitian(2, rng);
    EXPECT_NEAR(hs_inner(a, apply_superop(c, b)), hs_inner(apply_adjoint(c, a), b), 1e-10);
  }
}

TEST(ApplyAdjoint, ReplacementChannelGivesScaledIdentity) {
  Rng rng(7);
  const DensityMatrix target = random_density(2, rng);
  const ChoiMatrix c = replacement_channel(target, 3);
  for (int trial = 0; trial < 10; ++trial) {
    const HermitianMatrix a = random_hermitian(2, rng);
    EXPECT_TRUE(MatrixNear(apply_adjoint(c, a).matrix(),
                           hs_inner(target.hermitian(), a) * ComplexMatrix::Identity(3, 3), 1e-12));
  }
}

TEST(CompletePositivity, Examples) {
  EXPECT_TRUE(is_completely_positive(choi_of_identity(2)));
  const ChoiMatrix t = transpose_map(2);
  EXPECT_TRUE(MatrixNear(t.matrix().matrix(), swap_operator(2), 0.0));
  EXPECT_FALSE(is_completely_positive(t));
  EXPECT_NEAR(lambda_min(t.matrix()), -1.0, 1e-12);
  Rng rng(8);
  EXPECT_TRUE(is_completely_positive(replacement_channel(random_density(3, rng), 2)));
}

TEST(TracePreservation, Examples) {
  Rng rng(9);
  const ChoiMatrix rep = replacement_channel(random_density(2, rng), 3);
  EXPECT_TRUE(is_trace_preserving(rep));
  EXPECT_TRUE(MatrixNear(apply_adjoint(rep, ComplexMatrix::Identity(2, 2)),
                         ComplexMatrix::Identity(3, 3), 1e-12));

  const QuantumGame g = random_quantum_game({2, 2}, 17);
  const ChoiMatrix game_choi(2, 2, g.tensor(0));
  EXPECT_FALSE(is_trace_preserving(game_choi));

  EXPECT_TRUE(is_trace_preserving(choi_of_identity(3)));
  EXPECT_TRUE(is_unital(choi_of_identity(3)));
}

TEST(TracePreservation, EquivalentToAdjointUnitality) {
  Rng rng(10);
  const ChoiMatrix u = unitary_channel(random_unitary(3, rng));
  ASSERT_TRUE(is_trace_preserving(u));
  EXPECT_TRUE(is_unital(u));
  EXPECT_TRUE(MatrixNear(apply_adjoint(u, ComplexMatrix::Identity(3, 3)), ComplexMatrix::Identity(3, 3),
                         1e-10));
  // A replacement channel with a non-maximally-mixed target is not unital.
  EXPECT_FALSE(is_unital(replacement_channel(DensityMatrix::basis(2, 0), 2)));
}

TEST(UnitaryChannel, MatchesConjugation) {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix u = random_unitary(3, rng);
    const ChoiMatrix c = unitary_channel(u);
    EXPECT_TRUE(is_completely_positive(c));
    const ComplexMatrix x = random_gaussian(3, 3, rng);
    EXPECT_TRUE(MatrixNear(apply_superop(c, x), u * x * u.adjoint(), 1e-10));
  }
}

TEST(UnitaryChannel, RejectsNonUnitary) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(0, 0) = 2.0;
  EXPECT_THROW(unitary_channel(m), InvalidChannel);
}

TEST(LiftChannel, IdentityLeavesStateUnchanged) {
  Rng rng(12);
  const RegisterLayout layout{2, 3};
  const DensityMatrix rho = random_density(6, rng);
  const LiftedChannel lifted = lift_channel(choi_of_identity(3), layout, 1);
  EXPECT_TRUE(MatrixNear(lifted(rho).matrix(), rho.matrix(), 1e-14));
}

TEST(LiftChannel, ReplacementOnProductState) {
  Rng rng(13);
  const RegisterLayout layout{2, 3, 2};
  const DensityMatrix target = random_density(3, rng);
  const DensityMatrix a = random_density(2, rng), b = random_density(3, rng), c = random_density(2, rng);
  const DensityMatrix rho = tensor_product(std::vector<DensityMatrix>{a, b, c});
  const LiftedChannel lifted = lift_channel(replacement_channel(target, 3), layout, 1);
  const DensityMatrix expected = tensor_product(std::vector<DensityMatrix>{a, target, c});
  EXPECT_TRUE(MatrixNear(lifted(rho).matrix(), expected.matrix(), 1e-12));
}

TEST(LiftChannel, ReplacementOnJointState) {
  Rng rng(14);
  const RegisterLayout layout{2, 3};
  for (std::size_t i = 0; i < 2; ++i) {
    const DensityMatrix rho = random_density(6, rng);
    const DensityMatrix target = random_density(layout.dim(i), rng);
    const DensityMatrix out = lift_channel(replacement_channel(target, layout.dim(i)), layout, i)(rho);
    const DensityMatrix rest = trace_out(rho, layout, i);
    const ComplexMatrix expected = i == 0 ? kron(target.matrix(), rest.matrix())
                                          : kron(rest.matrix(), target.matrix());
    EXPECT_TRUE(MatrixNear(out.matrix(), expected, 1e-12));
  }
}

TEST(LiftChannel, UnitaryMatchesLiftedConjugation) {
  Rng rng(15);
  const RegisterLayout layout{2, 2, 2};
  const ComplexMatrix u = random_unitary(2, rng);
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix big = kron(kron(id, u), id);
  const DensityMatrix rho = random_density(8, rng);
  EXPECT_TRUE(MatrixNear(lift_channel(unitary_channel(u), layout, 1)(rho).matrix(),
                         big * rho.matrix() * big.adjoint(), 1e-12));
}

TEST(LiftChannel, MapsDensitiesToDensities) {
  Rng rng(16);
  const RegisterLayout layout{3, 2};
  const std::vector<ChoiMatrix> channels{replacement_channel(random_density(3, rng), 3),
                                         unitary_channel(random_unitary(3, rng)), choi_of_identity(3)};
  for (const auto& c : channels) {
    EXPECT_TRUE(is_completely_positive(c));
    EXPECT_TRUE(is_trace_preserving(c));
    for (int trial = 0; trial < 10; ++trial) {
      const DensityMatrix out = lift_channel(c, layout, 0)(random_density(6, rng));
      EXPECT_NEAR(out.hermitian().trace(), 1.0, 1e-9);
      EXPECT_GE(lambda_min(out), -1e-8);
    }
  }
}

TEST(LiftChannel, RejectsInvalidChannels) {
  const RegisterLayout layout{2, 2};
  EXPECT_THROW(lift_channel(transpose_map(2), layout, 0), InvalidChannel);
  EXPECT_THROW(lift_channel(choi_of_identity(3), layout, 0), DimensionMismatch);
  EXPECT_THROW(lift_channel(choi_of_identity(2), layout, 2), InvalidArgument);
}

}  // namespace
}  // namespace qgame
