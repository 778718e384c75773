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

// Exploitability, best responses and equilibrium certificates.

#pragma once

#include "qgame/channels.hpp"
#include "qgame/games.hpp"
#include "qgame/random.hpp"

#include <cstdint>
#include <limits>
#include <string_view>

namespace qgame {

enum class CertificateKind { qne, qcce, qphie, zs_value };

inline std::string_view to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::qne: return "qne";
    case CertificateKind::qcce: return "qcce";
    case CertificateKind::qphie: return "qphie";
    case CertificateKind::zs_value: return "zs_value";
  }
  return "unknown";
}

/// Per-player deviation gaps. Gaps are signed: a negative gap means the
/// player strictly loses by every considered deviation. Only the verdict
/// clamps.
struct EquilibriumReport {
  std::vector<double> gaps;
  double max_gap = 0.0;
  bool verdict = false;
  double tolerance = 0.0;
  CertificateKind kind = CertificateKind::qcce;
};

inline EquilibriumReport make_report(std::vector<double> gaps, double tolerance,
                                     CertificateKind kind) {
  EquilibriumReport r{std::move(gaps), 0.0, false, tolerance, kind};
  r.max_gap = r.gaps.empty() ? 0.0 : *std::max_element(r.gaps.begin(), r.gaps.end());
  r.verdict = r.max_gap <= tolerance;
  return r;
}

/// How much player i gains by the best coarse deviation from the joint state:
/// lambda_max(Theta_i((Tr_i rho)^T)) - u_i(rho). For product states this is
/// the Nash exploitability.
inline double exploitability(const QuantumGame& g, std::size_t i, const DensityMatrix& rho) {
  const DensityMatrix others = trace_out(rho, g.layout(), i, tol::kLearned);
  return lambda_max(gain_matrix(g, i, others.hermitian())) - utility(g, rho, i);
}

/// Pure best response: projector onto the top eigenvector of the gain matrix
/// (lowest-index eigenvector among exact ties).
inline DensityMatrix best_response(const QuantumGame& g, std::size_t i,
                                   const HermitianMatrix& rho_others) {
  const auto eig = herm_eig(gain_matrix(g, i, rho_others));
  return DensityMatrix::pure(eig.vectors.col(0));
}

/// Membership in the QCCE spectrahedron: Tr(R_i rho) I - Theta_i((Tr_i rho)^T)
/// must be PSD for every i. The per-player gap is the amount by which it fails.
inline EquilibriumReport is_qcce(const QuantumGame& g, const DensityMatrix& rho,
                                 double tolerance = tol::kLearned) {
  if (rho.dim() != g.layout().joint_dim()) throw DimensionMismatch("is_qcce: state dimension");
  std::vector<double> gaps;
  for (std::size_t i = 0; i < g.players(); ++i) gaps.push_back(exploitability(g, i, rho));
  return make_report(std::move(gaps), tolerance, CertificateKind::qcce);
}

/// Product of single-register marginals.
inline DensityMatrix marginalize(const DensityMatrix& rho, const RegisterLayout& layout,
                                 double tolerance = tol::kLearned) {
  std::vector<DensityMatrix> factors;
  for (std::size_t i = 0; i < layout.size(); ++i) factors.push_back(marginal(rho, layout, i, tolerance));
  return tensor_product(factors);
}

/// Nash certificate for a product profile.
inline EquilibriumReport is_qne(const QuantumGame& g, std::span<const DensityMatrix> profile,
                                double tolerance = tol::kLearned) {
  if (profile.size() != g.players()) throw InvalidArgument("is_qne: profile size");
  std::vector<double> gaps;
  const DensityMatrix joint = tensor_product(profile);
  for (std::size_t i = 0; i < g.players(); ++i) {
    gaps.push_back(lambda_max(gain_matrix(g, i, profile)) - utility(g, joint, i));
  }
  return make_report(std::move(gaps), tolerance, CertificateKind::qne);
}

/// Nash certificate for a joint state. A state that is not a product of its
/// marginals (max-entry distance above the tolerance) fails with an infinite gap.
inline EquilibriumReport is_qne(const QuantumGame& g, const DensityMatrix& rho,
                                double tolerance = tol::kLearned) {
  const DensityMatrix product = marginalize(rho, g.layout(), tolerance);
  if (max_abs(product.matrix() - rho.matrix()) > tolerance) {
    return make_report(std::vector<double>(g.players(), std::numeric_limits<double>::infinity()),
                       tolerance, CertificateKind::qne);
  }
  std::vector<double> gaps;
  for (std::size_t i = 0; i < g.players(); ++i) gaps.push_back(exploitability(g, i, rho));
  return make_report(std::move(gaps), tolerance, CertificateKind::qne);
}

/// Best gain over finite per-player deviation sets of CPTP maps:
/// max_phi u_i((phi (x) id_{-i})(rho)) - u_i(rho). An empty set contributes
/// only the trivial deviation, gap 0.
inline EquilibriumReport phi_gap(const QuantumGame& g, const DensityMatrix& rho,
                                 const std::vector<std::vector<ChoiMatrix>>& deviations,
                                 double tolerance = tol::kLearned) {
  if (deviations.size() != g.players()) throw InvalidArgument("phi_gap: one deviation set per player");
  std::vector<double> gaps;
  for (std::size_t i = 0; i < g.players(); ++i) {
    const double base = utility(g, rho, i);
    double best = deviations[i].empty() ? 0.0 : -std::numeric_limits<double>::infinity();
    for (const auto& phi : deviations[i]) {
      const LiftedChannel lifted = lift_channel(phi, g.layout(), i);
      best = std::max(best, utility(g, lifted(rho, tol::kLearned), i) - base);
    }
    gaps.push_back(best);
  }
  return make_report(std::move(gaps), tolerance, CertificateKind::qphie);
}

/// Value bracket for a two-player zero-sum strategy pair.
struct ValueCertificate {
  double lower = 0.0;     // lambda_min(Theta^dagger(rho)): Alice's guaranteed payoff
  double value_at = 0.0;  // <rho, Theta(sigma)>
  double upper = 0.0;     // lambda_max(Theta(sigma)): Bob's guaranteed cap

  double gap() const { return upper - lower; }
  /// (rho, sigma) is an eps-QNE when both exploitabilities are at most eps,
  /// which is implied by gap() <= 2 eps and implies gap() <= 2 eps.
  bool within(double eps) const { return gap() <= 2.0 * eps; }
};

inline ValueCertificate zs_certificate(const TwoPlayerZeroSum& zs, const DensityMatrix& rho,
                                       const DensityMatrix& sigma) {
  if (rho.dim() != zs.dim_a() || sigma.dim() != zs.dim_b()) {
    throw DimensionMismatch("zs_certificate: strategy dimensions");
  }
  const HermitianMatrix theta_sigma = apply_superop(zs.choi(), sigma.hermitian());
  const HermitianMatrix adjoint_rho = apply_adjoint(zs.choi(), rho.hermitian());
  return {lambda_min(adjoint_rho), hs_inner(rho.hermitian(), theta_sigma), lambda_max(theta_sigma)};
}

/// Scalar criterion for a Bell-diagonal state to be a QCCE of a max-ent game:
/// sum a_pq lambda_pq >= (1/4) sum a_pq, and the same for b.
inline bool maxent_qcce_condition(const ClassicalBimatrix& bm, const Eigen::Matrix2d& lambda,
                                  double tolerance = 1e-8) {
  if (bm.a.rows() != 2 || bm.a.cols() != 2 || bm.b.rows() != 2 || bm.b.cols() != 2) {
    throw InvalidArgument("maxent_qcce_condition: payoff matrices must be 2x2");
  }
  if (lambda.minCoeff() < -1e-12 || std::abs(lambda.sum() - 1.0) > tol::kAlgebra) {
    throw InvalidArgument("maxent_qcce_condition: weights are not a probability distribution");
  }
  const bool first = (bm.a.array() * lambda.array()).sum() >= 0.25 * bm.a.sum() - tolerance;
  const bool second = (bm.b.array() * lambda.array()).sum() >= 0.25 * bm.b.sum() - tolerance;
  return first && second;
}

enum class PptVerdict { entangled, inconclusive };

struct PptResult {
  PptVerdict verdict;
  double min_eigenvalue;  // of the partial transpose
};

/// Peres-Horodecki test across a bipartition (first, second). A negative
/// eigenvalue of the partial transpose proves entanglement; a PSD partial
/// transpose proves separability only for 2x2 and 2x3 systems.
inline PptResult ppt_witness(const DensityMatrix& rho, std::size_t dim_first, std::size_t dim_second) {
  if (rho.dim() != dim_first * dim_second) throw DimensionMismatch("ppt_witness: bipartition");
  const HermitianMatrix pt(partial_transpose(rho.matrix(), RegisterLayout{dim_first, dim_second}, 1));
  const double lmin = lambda_min(pt);
  return {lmin < -tol::kAlgebra ? PptVerdict::entangled : PptVerdict::inconclusive, lmin};
}

/// Places a state of register i into a joint state: rho_i (x) rest, with the
/// factors restored to layout order.
inline ComplexMatrix insert_register(const ComplexMatrix& rho_i, const ComplexMatrix& rest,
                                     const RegisterLayout& layout, std::size_t i) {
  const auto perm = detail::front_permutation(layout.size(), i);
  return permute_registers(kron(rho_i, rest), permuted(layout, perm),
                           detail::inverse_permutation(perm));
}

/// Sampling lower bound on player i's deviation gap: the best of n Haar-random
/// pure deviations rho' evaluated as u_i(rho' (x) Tr_i rho) - u_i(rho) on the
/// full joint state. Never exceeds the eigenvalue-based gap beyond rounding.
inline double brute_force_gap(const QuantumGame& g, std::size_t i, const DensityMatrix& rho,
                              std::size_t n_samples, std::uint64_t seed) {
  if (n_samples == 0) throw InvalidArgument("brute_force_gap: need at least one sample");
  std::vector<std::size_t> keep;
  for (std::size_t r = 0; r < g.players(); ++r) {
    if (r != i) keep.push_back(r);
  }
  const ComplexMatrix others = partial_trace(rho.matrix(), g.layout(), keep);
  const double base = utility(g, rho, i);
  Rng rng(seed);
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < n_samples; ++s) {
    const ComplexVector v = random_unit_vector(g.layout().dim(i), rng);
    const ComplexMatrix joint = insert_register(v * v.adjoint(), others, g.layout(), i);
    best = std::max(best, hs_inner(g.tensor(i).matrix(), joint).real() - base);
  }
  return best;
}

}  // namespace qgame
