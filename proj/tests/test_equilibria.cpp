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

ClassicalBimatrix matching_pennies() {
  Eigen::MatrixXd a(2, 2);
  a << 1, -1, -1, 1;
  return {a, -a};
}

ClassicalBimatrix common_payoff(const Eigen::Matrix2d& a) { return {a, a}; }

// A random game with dominant strategies: R_1 = A (x) I, R_2 = I (x) B. Its
// unique pure QNE plays the top eigenvectors of A and B.
struct DominantFixture {
  QuantumGame game;
  std::vector<DensityMatrix> qne;
};

DominantFixture dominant_game(std::uint64_t seed) {
  Rng rng(seed);
  const HermitianMatrix a = random_unit_hermitian(2, rng), b = random_unit_hermitian(3, rng);
  QuantumGame g(RegisterLayout{2, 3}, {kron(a, HermitianMatrix::identity(3)), kron(HermitianMatrix::identity(2), b)});
  std::vector<DensityMatrix> qne{DensityMatrix::pure(herm_eig(a).vectors.col(0)),
                                 DensityMatrix::pure(herm_eig(b).vectors.col(0))};
  return {std::move(g), std::move(qne)};
}

TEST(Exploitability, ZeroAtQne) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const DominantFixture f = dominant_game(seed);
    const DensityMatrix rho = tensor_product(f.qne);
    for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(exploitability(f.game, i, rho), 0.0, 1e-8);
  }
}

TEST(Exploitability, MatchingPenniesUniform) {
  const QuantumGame g = classical_embed(to_classical_game(matching_pennies()));
  const DensityMatrix rho = DensityMatrix::maximally_mixed(4);
  EXPECT_NEAR(exploitability(g, 0, rho), 0.0, 1e-14);
  EXPECT_NEAR(exploitability(g, 1, rho), 0.0, 1e-14);
}

TEST(Exploitability, MaxentBellStateAtMaximumEntry) {
  Eigen::Matrix2d a;
  a << 0.9, -0.3, 0.2, 0.5;
  const QuantumGame g = maxent_game(common_payoff(a));
  const double gap = exploitability(g, 0, bell_state(0, 0));
  EXPECT_NEAR(gap, a.sum() / 4.0 - 0.9, 1e-12);
  EXPECT_LE(gap, 0.0);
  EXPECT_TRUE(is_qcce(g, bell_state(0, 0), 1e-9).verdict);
}

TEST(Exploitability, NonNegativeForProducts) {
  Rng rng(1);
  const QuantumGame g = random_quantum_game({2, 2, 2}, 3);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix rho = random_product_state(g.layout(), rng);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_GE(exploitability(g, i, rho), -1e-9);
  }
}

TEST(Exploitability, InvariantUnderPlayerRelabeling) {
  Rng rng(2);
  const QuantumGame g = random_quantum_game({2, 3, 2}, 8);
  const std::size_t perm[] = {2, 0, 1};  // new position p holds old player perm[p]
  std::vector<HermitianMatrix> tensors;
  for (std::size_t p = 0; p < 3; ++p) tensors.push_back(permute_registers(g.tensor(perm[p]), g.layout(), perm));
  const QuantumGame relabeled(permuted(g.layout(), perm), tensors);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix rho = random_density(12, rng);
    const DensityMatrix moved = permute_registers(rho, g.layout(), perm);
    for (std::size_t p = 0; p < 3; ++p) {
      EXPECT_NEAR(exploitability(relabeled, p, moved), exploitability(g, perm[p], rho), 1e-10);
    }
  }
}

TEST(BestResponse, DiagonalGain) {
  const QuantumGame g(RegisterLayout{2, 2},
                      {kron(HermitianMatrix::diagonal({0.2, 0.8}), HermitianMatrix::identity(2)),
                       HermitianMatrix::zero(4)});
  const DensityMatrix br = best_response(g, 0, DensityMatrix::maximally_mixed(2).hermitian());
  EXPECT_TRUE(MatrixNear(br.matrix(), DensityMatrix::basis(2, 1).matrix(), 1e-12));
  EXPECT_NEAR(hs_inner(br.hermitian(), gain_matrix(g, 0, DensityMatrix::maximally_mixed(2).hermitian())),
              0.8, 1e-12);
}

TEST(BestResponse, TieGoesToLowestIndex) {
  const QuantumGame g(RegisterLayout{2, 2}, {HermitianMatrix::identity(4), HermitianMatrix::zero(4)});
  const DensityMatrix br = best_response(g, 0, DensityMatrix::maximally_mixed(2).hermitian());
  EXPECT_TRUE(MatrixNear(br.matrix(), DensityMatrix::basis(2, 0).matrix(), 1e-12));
}

TEST(BestResponse, BeatsSampledPureStates) {
  Rng rng(3);
  const QuantumGame g = random_quantum_game({2, 2}, 21);
  const DensityMatrix others = random_density(2, rng);
  const HermitianMatrix gain = gain_matrix(g, 0, others.hermitian());
  const double value = hs_inner(best_response(g, 0, others.hermitian()).hermitian(), gain);
  EXPECT_NEAR(value, lambda_max(gain), 1e-9);
  double sampled = -1e300;
  for (int s = 0; s < 10000; ++s) {
    sampled = std::max(sampled, hs_inner(random_pure_state(2, rng).hermitian(), gain));
  }
  EXPECT_LE(sampled, value + 1e-9);
  EXPECT_GE(sampled, value - 1e-2);
}

TEST(IsQcce, MaximallyMixedMaxentIsBoundary) {
  Rng rng(4);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::MatrixXd a(2, 2), b(2, 2);
    for (int e = 0; e < 4; ++e) a(e / 2, e % 2) = unit(rng), b(e / 2, e % 2) = unit(rng);
    const EquilibriumReport r = is_qcce(maxent_game({a, b}), DensityMatrix::maximally_mixed(4), 1e-9);
    EXPECT_TRUE(r.verdict);
    for (double gap : r.gaps) EXPECT_NEAR(gap, 0.0, 1e-9);
  }
}

TEST(IsQcce, QneImpliesQcce) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const DominantFixture f = dominant_game(seed);
    const EquilibriumReport qne = is_qne(f.game, std::span<const DensityMatrix>(f.qne), 1e-9);
    ASSERT_TRUE(qne.verdict);
    EXPECT_TRUE(is_qcce(f.game, tensor_product(f.qne), 1e-9).verdict);
    EXPECT_TRUE(is_qne(f.game, tensor_product(f.qne), 1e-9).verdict);
  }
}

TEST(IsQcce, MatchesDeviationFormOnRandomPairs) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const QuantumGame g = random_quantum_game(trial % 2 ? std::vector<std::size_t>{2, 3}
                                                        : std::vector<std::size_t>{2, 2, 2},
                                              1000 + trial);
    const DensityMatrix rho = random_density(g.layout().joint_dim(), rng);
    const EquilibriumReport r = is_qcce(g, rho);
    for (std::size_t i = 0; i < g.players(); ++i) {
      // Deviation form: u_i(rho' (x) Tr_i rho) - u_i(rho) at the best pure rho'.
      const DensityMatrix others = trace_out(rho, g.layout(), i);
      const DensityMatrix br = best_response(g, i, others.hermitian());
      const DensityMatrix deviated(
          HermitianMatrix(insert_register(br.matrix(), others.matrix(), g.layout(), i)));
      EXPECT_NEAR(r.gaps[i], utility(g, deviated, i) - utility(g, rho, i), 1e-10);
    }
  }
}

TEST(IsQne, EntangledStateFails) {
  const QuantumGame g = random_quantum_game({2, 2}, 1);
  const EquilibriumReport r = is_qne(g, bell_state(0, 0));
  EXPECT_FALSE(r.verdict);
  EXPECT_TRUE(std::isinf(r.max_gap));
}

TEST(PhiGap, IdentityDeviationGivesZero) {
  Rng rng(6);
  const QuantumGame g = random_quantum_game({2, 2}, 2);
  const DensityMatrix rho = random_density(4, rng);
  const EquilibriumReport r = phi_gap(g, rho, {{choi_of_identity(2)}, {choi_of_identity(2)}});
  for (double gap : r.gaps) EXPECT_NEAR(gap, 0.0, 1e-12);
  EXPECT_EQ(r.kind, CertificateKind::qphie);
}

TEST(PhiGap, ReplacementAtBestResponseEqualsQcceGap) {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const QuantumGame g = random_quantum_game({2, 3}, 50 + trial);
    const DensityMatrix rho = random_density(6, rng);
    std::vector<std::vector<ChoiMatrix>> deviations(2);
    for (std::size_t i = 0; i < 2; ++i) {
      const DensityMatrix br = best_response(g, i, trace_out(rho, g.layout(), i).hermitian());
      deviations[i].push_back(replacement_channel(br, g.layout().dim(i)));
    }
    const EquilibriumReport phi = phi_gap(g, rho, deviations);
    const EquilibriumReport qcce = is_qcce(g, rho);
    for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(phi.gaps[i], qcce.gaps[i], 1e-9);
  }
}

TEST(PhiGap, UnitaryDeviationsAtQne) {
  Rng rng(8);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const DominantFixture f = dominant_game(seed);
    std::vector<std::vector<ChoiMatrix>> deviations(2);
    for (int s = 0; s < 10; ++s) {
      deviations[0].push_back(unitary_channel(random_unitary(2, rng)));
      deviations[1].push_back(unitary_channel(random_unitary(3, rng)));
    }
    const EquilibriumReport r = phi_gap(f.game, tensor_product(f.qne), deviations, 1e-8);
    EXPECT_TRUE(r.verdict);
  }
}

TEST(PhiGap, RejectsNonCptp) {
  const QuantumGame g = random_quantum_game({2, 2}, 2);
  EXPECT_THROW(phi_gap(g, DensityMatrix::maximally_mixed(4), {{transpose_map(2)}, {}}), InvalidChannel);
}

TEST(ZsCertificate, MatchingPenniesUniform) {
  const QuantumGame g = classical_embed(to_classical_game(matching_pennies()));
  const ValueCertificate c =
      zs_certificate(to_zero_sum(g), DensityMatrix::maximally_mixed(2), DensityMatrix::maximally_mixed(2));
  EXPECT_NEAR(c.lower, 0.0, 1e-14);
  EXPECT_NEAR(c.upper, 0.0, 1e-14);
  EXPECT_NEAR(c.value_at, 0.0, 1e-14);
  EXPECT_TRUE(c.within(0.0));
}

TEST(ZsCertificate, WeakDualityAndExploitabilityLink) {
  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const QuantumGame g = random_zero_sum_game(2, 3, 300 + trial);
    const TwoPlayerZeroSum zs = to_zero_sum(g);
    const DensityMatrix rho = random_density(2, rng), sigma = random_density(3, rng);
    const ValueCertificate c = zs_certificate(zs, rho, sigma);
    EXPECT_LE(c.lower, c.value_at + 1e-9);
    EXPECT_LE(c.value_at, c.upper + 1e-9);
    // The certificate gap is the sum of the two players' Nash exploitabilities.
    const DensityMatrix joint = tensor_product(rho, sigma);
    EXPECT_NEAR(c.gap(), exploitability(g, 0, joint) + exploitability(g, 1, joint), 1e-10);
    EXPECT_NEAR(c.value_at, utility(g, joint, 0), 1e-12);
  }
}

TEST(Marginalize, Examples) {
  Rng rng(10);
  const RegisterLayout layout{2, 3};
  const DensityMatrix product = random_product_state(layout, rng);
  EXPECT_TRUE(MatrixNear(marginalize(product, layout).matrix(), product.matrix(), 1e-10));
  const DensityMatrix bell = marginalize(bell_state(0, 0), RegisterLayout{2, 2});
  EXPECT_TRUE(MatrixNear(bell.matrix(), DensityMatrix::maximally_mixed(4).matrix(), 1e-12));
  EXPECT_NEAR(marginalize(random_density(6, rng), layout).hermitian().trace(), 1.0, 1e-12);
}

TEST(Marginalize, PolymatrixQcceMarginalsAreQne) {
  // Time-averaged MMWU play is an approximate QCCE; its marginal product must
  // be a QNE at k times the QCCE tolerance.
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const GeneratedGame gen =
        random_game({GameKind::polymatrix, {2, 2, 2}, cycle_graph(3), true}, seed);
    std::vector<std::unique_ptr<Learner>> learners;
    for (std::size_t i = 0; i < 3; ++i) learners.push_back(make_mmwu(i, 2, Schedule::fixed(0.05)));
    const Trajectory traj = run_game(gen.game, learners, 300, seed, {300, 0, false});
    const DensityMatrix avg = traj.average_joint();
    const double tol = std::max(0.0, is_qcce(gen.game, avg).max_gap) + 1e-12;
    ASSERT_TRUE(is_qcce(gen.game, avg, tol).verdict);
    EXPECT_TRUE(is_qne(gen.game, marginalize(avg, gen.game.layout()), 3.0 * tol).verdict);
  }
}

TEST(MaxentCondition, UniformWeightsHoldWithEquality) {
  Eigen::Matrix2d a;
  a << 0.3, -0.8, 0.1, 0.6;
  EXPECT_TRUE(maxent_qcce_condition(common_payoff(a), Eigen::Matrix2d::Constant(0.25)));
}

TEST(MaxentCondition, ArgmaxPassesArgminFails) {
  Eigen::Matrix2d a;
  a << 0.3, -0.8, 0.1, 0.6;
  Eigen::Matrix2d at_max = Eigen::Matrix2d::Zero(), at_min = Eigen::Matrix2d::Zero();
  at_max(1, 1) = 1.0;
  at_min(0, 1) = 1.0;
  EXPECT_TRUE(maxent_qcce_condition(common_payoff(a), at_max));
  EXPECT_FALSE(maxent_qcce_condition(common_payoff(a), at_min));
  const QuantumGame g = maxent_game(common_payoff(a));
  EXPECT_TRUE(is_qcce(g, bell_state(1, 1), 1e-8).verdict);
  EXPECT_FALSE(is_qcce(g, bell_state(0, 1), 1e-8).verdict);
}

TEST(MaxentCondition, AgreesWithSpectrahedralTest) {
  Rng rng(11);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::gamma_distribution<double> gamma(1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::MatrixXd a(2, 2), b(2, 2);
    Eigen::Matrix2d lambda;
    for (int e = 0; e < 4; ++e) {
      a(e / 2, e % 2) = unit(rng);
      b(e / 2, e % 2) = unit(rng);
      lambda(e / 2, e % 2) = gamma(rng);
    }
    lambda /= lambda.sum();
    const ClassicalBimatrix bm{a, b};
    EXPECT_EQ(maxent_qcce_condition(bm, lambda), is_qcce(maxent_game(bm), bell_mixture(lambda), 1e-8).verdict);
  }
}

TEST(MaxentCondition, RejectsBadWeights) {
  Eigen::Matrix2d a = Eigen::Matrix2d::Identity();
  EXPECT_THROW(maxent_qcce_condition(common_payoff(a), Eigen::Matrix2d::Constant(0.3)), InvalidArgument);
}

TEST(PptWitness, Examples) {
  const PptResult bell = ppt_witness(bell_state(0, 0), 2, 2);
  EXPECT_EQ(bell.verdict, PptVerdict::entangled);
  EXPECT_NEAR(bell.min_eigenvalue, -0.5, 1e-12);
  Rng rng(12);
  EXPECT_EQ(ppt_witness(random_product_state(RegisterLayout{2, 3}, rng), 2, 3).verdict,
            PptVerdict::inconclusive);
  EXPECT_EQ(ppt_witness(DensityMatrix::maximally_mixed(4), 2, 2).verdict, PptVerdict::inconclusive);
}

TEST(BruteForceGap, ApproachesEigenvalueGapFromBelow) {
  Rng rng(13);
  for (int trial = 0; trial < 5; ++trial) {
    const QuantumGame g = random_quantum_game({2, 2}, 70 + trial);
    const DensityMatrix rho = random_density(4, rng);
    for (std::size_t i = 0; i < 2; ++i) {
      const double exact = exploitability(g, i, rho);
      const double sampled = brute_force_gap(g, i, rho, 10000, trial);
      EXPECT_LE(sampled, exact + 1e-9);
      EXPECT_GE(sampled, exact - 1e-2);
    }
  }
}

TEST(BruteForceGap, AtQneAndMonotone) {
  const DominantFixture f = dominant_game(3);
  const DensityMatrix rho = tensor_product(f.qne);
  EXPECT_LE(brute_force_gap(f.game, 1, rho, 1000, 1), 1e-8);
  const QuantumGame g = random_quantum_game({2, 2}, 5);
  double previous = -1e300;
  for (std::size_t n : {1, 10, 100, 1000}) {
    const double v = brute_force_gap(g, 0, DensityMatrix::maximally_mixed(4), n, 99);
    EXPECT_GE(v, previous);
    previous = v;
  }
  EXPECT_THROW(brute_force_gap(g, 0, DensityMatrix::maximally_mixed(4), 0, 1), InvalidArgument);
}

TEST(Reports, VerdictMatchesMaxGap) {
  const EquilibriumReport r = make_report({-0.5, 0.2}, 0.1, CertificateKind::qcce);
  EXPECT_EQ(r.max_gap, 0.2);
  EXPECT_FALSE(r.verdict);
  EXPECT_EQ(to_string(CertificateKind::zs_value), "zs_value");
}

}  // namespace
}  // namespace qgame
