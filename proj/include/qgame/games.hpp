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

// Quantum games: k players, each holding a register, with player i's payoff
// u_i(rho) = Tr(R_i rho) for a Hermitian utility tensor R_i on the joint space.

#pragma once

#include "qgame/channels.hpp"
#include "qgame/random.hpp"
#include "qgame/tensor.hpp"

#include <cstdint>
#include <optional>
#include <utility>

namespace qgame {

inline constexpr double kZeroSumTolerance = 1e-9;

class QuantumGame {
 public:
  QuantumGame(RegisterLayout layout, std::vector<HermitianMatrix> tensors, bool zero_sum = false)
      : layout_(std::move(layout)), tensors_(std::move(tensors)), zero_sum_(zero_sum) {
    if (layout_.size() < 2) throw InvalidArgument("QuantumGame: need at least two players");
    if (tensors_.size() != layout_.size()) {
      throw InvalidArgument("QuantumGame: one utility tensor per player required");
    }
    for (const auto& r : tensors_) {
      if (r.dim() != layout_.joint_dim()) {
        throw DimensionMismatch("QuantumGame: utility tensor does not match the joint dimension");
      }
    }
    if (zero_sum_ && max_abs(total_utility_tensor().matrix()) > kZeroSumTolerance) {
      throw InvalidArgument("QuantumGame: utility tensors do not sum to zero");
    }
    // Utility tensors with register i moved to the front, used by gain_matrix.
    for (std::size_t i = 0; i < tensors_.size(); ++i) {
      const auto perm = detail::front_permutation(layout_.size(), i);
      front_tensors_.push_back(permute_registers(tensors_[i].matrix(), layout_, perm));
    }
  }

  const RegisterLayout& layout() const { return layout_; }
  std::size_t players() const { return layout_.size(); }
  const HermitianMatrix& tensor(std::size_t i) const { return tensors_.at(i); }
  const std::vector<HermitianMatrix>& tensors() const { return tensors_; }
  bool zero_sum() const { return zero_sum_; }

  HermitianMatrix total_utility_tensor() const {
    HermitianMatrix sum = HermitianMatrix::zero(layout_.joint_dim());
    for (const auto& r : tensors_) sum += r;
    return sum;
  }

  const ComplexMatrix& front_tensor(std::size_t i) const { return front_tensors_.at(i); }

 private:
  RegisterLayout layout_;
  std::vector<HermitianMatrix> tensors_;
  bool zero_sum_;
  std::vector<ComplexMatrix> front_tensors_;
};

inline double utility(const QuantumGame& g, const DensityMatrix& rho, std::size_t i) {
  if (i >= g.players()) throw InvalidArgument("utility: player out of range");
  if (rho.dim() != g.layout().joint_dim()) throw DimensionMismatch("utility: state dimension");
  return hs_inner(g.tensor(i), rho.hermitian());
}

/// Player i's gain matrix Theta_i(rho_{-i}^T) against the opponents' joint
/// state rho_others (registers other than i, in layout order). For every
/// rho_i, <rho_i, gain> = u_i(rho_i (x) rho_others).
inline HermitianMatrix gain_matrix(const QuantumGame& g, std::size_t i,
                                   const HermitianMatrix& rho_others) {
  if (i >= g.players()) throw InvalidArgument("gain_matrix: player out of range");
  const std::size_t d = g.layout().dim(i);
  const std::size_t rest = g.layout().complement_dim(i);
  if (rho_others.dim() != rest) throw DimensionMismatch("gain_matrix: opponents' state dimension");
  const ComplexMatrix& r = g.front_tensor(i);
  const ComplexMatrix& s = rho_others.matrix();
  ComplexMatrix out(d, d);
  for (std::size_t p = 0; p < d; ++p) {
    for (std::size_t q = 0; q < d; ++q) {
      Complex acc = 0.0;
      for (std::size_t a = 0; a < rest; ++a) {
        for (std::size_t b = 0; b < rest; ++b) acc += r(p * rest + a, q * rest + b) * s(b, a);
      }
      out(p, q) = acc;
    }
  }
  return HermitianMatrix(out);
}

/// Gain matrix against a product profile; profile[i] itself is ignored.
inline HermitianMatrix gain_matrix(const QuantumGame& g, std::size_t i,
                                   std::span<const DensityMatrix> profile) {
  if (profile.size() != g.players()) throw InvalidArgument("gain_matrix: profile size");
  ComplexMatrix others = ComplexMatrix::Identity(1, 1);
  for (std::size_t j = 0; j < profile.size(); ++j) {
    if (j == i) continue;
    if (profile[j].dim() != g.layout().dim(j)) throw DimensionMismatch("gain_matrix: profile dims");
    others = kron(others, profile[j].matrix());
  }
  return gain_matrix(g, i, HermitianMatrix(others));
}

inline QuantumGame zero_sum_game(const HermitianMatrix& r, std::size_t dim_a, std::size_t dim_b) {
  return QuantumGame(RegisterLayout{dim_a, dim_b}, {r, -r}, /*zero_sum=*/true);
}

/// Two-player zero-sum game in the superoperator convention: Alice's payoff is
/// u_A(rho, sigma) = Tr(R (rho (x) sigma^T)) = <rho, Theta(sigma)>, where
/// Theta is the map whose Choi matrix is R; Bob receives -u_A.
class TwoPlayerZeroSum {
 public:
  TwoPlayerZeroSum(HermitianMatrix r, std::size_t dim_a, std::size_t dim_b)
      : choi_(dim_a, dim_b, std::move(r)) {}

  const HermitianMatrix& r() const { return choi_.matrix(); }
  const ChoiMatrix& choi() const { return choi_; }
  std::size_t dim_a() const { return choi_.out_dim(); }
  std::size_t dim_b() const { return choi_.in_dim(); }

 private:
  ChoiMatrix choi_;
};

// The general-game convention pairs R_1 with rho (x) sigma, the superoperator
// convention pairs R with rho (x) sigma^T. Converting between them is a
// partial transpose on Bob's register; this adapter is the only place the
// two conventions meet.
inline TwoPlayerZeroSum to_zero_sum(const QuantumGame& g) {
  if (g.players() != 2 || !g.zero_sum()) {
    throw InvalidArgument("to_zero_sum: need a two-player zero-sum game");
  }
  return TwoPlayerZeroSum(HermitianMatrix(partial_transpose(g.tensor(0).matrix(), g.layout(), 1)),
                          g.layout().dim(0), g.layout().dim(1));
}

inline QuantumGame to_quantum_game(const TwoPlayerZeroSum& zs) {
  const RegisterLayout layout{zs.dim_a(), zs.dim_b()};
  return zero_sum_game(HermitianMatrix(partial_transpose(zs.r().matrix(), layout, 1)), zs.dim_a(),
                       zs.dim_b());
}

/// Classical normal-form game: payoffs[i] lists player i's payoff for every
/// action profile, flattened with player 0's action most significant.
struct ClassicalGame {
  std::vector<std::size_t> actions;
  std::vector<std::vector<double>> payoffs;
};

/// Diagonal embedding R_i = sum_s u_i(s) |s><s| in the computational product basis.
inline QuantumGame classical_embed(const ClassicalGame& cg) {
  const RegisterLayout layout(cg.actions);
  if (cg.payoffs.size() != cg.actions.size()) {
    throw InvalidArgument("classical_embed: one payoff table per player required");
  }
  std::vector<HermitianMatrix> tensors;
  for (const auto& table : cg.payoffs) {
    if (table.size() != layout.joint_dim()) {
      throw InvalidArgument("classical_embed: payoff table size does not match action sets");
    }
    tensors.push_back(HermitianMatrix::diagonal(table));
  }
  HermitianMatrix sum = HermitianMatrix::zero(layout.joint_dim());
  for (const auto& r : tensors) sum += r;
  const bool zs = max_abs(sum.matrix()) <= kZeroSumTolerance;
  return QuantumGame(layout, std::move(tensors), zs);
}

struct ClassicalBimatrix {
  Eigen::MatrixXd a;
  Eigen::MatrixXd b;
};

inline ClassicalGame to_classical_game(const ClassicalBimatrix& bm) {
  if (bm.a.rows() != bm.b.rows() || bm.a.cols() != bm.b.cols()) {
    throw InvalidArgument("ClassicalBimatrix: payoff matrices differ in shape");
  }
  ClassicalGame cg{{static_cast<std::size_t>(bm.a.rows()), static_cast<std::size_t>(bm.a.cols())},
                   {{}, {}}};
  for (Eigen::Index p = 0; p < bm.a.rows(); ++p) {
    for (Eigen::Index q = 0; q < bm.a.cols(); ++q) {
      cg.payoffs[0].push_back(bm.a(p, q));
      cg.payoffs[1].push_back(bm.b(p, q));
    }
  }
  return cg;
}

/// Bell basis of C^2 (x) C^2 in the order e_00 = phi+, e_01 = phi-,
/// e_10 = psi+, e_11 = psi-.
inline ComplexVector bell_vector(std::size_t p, std::size_t q) {
  if (p > 1 || q > 1) throw InvalidArgument("bell_vector: indices must be 0 or 1");
  const double s = 1.0 / std::sqrt(2.0);
  const double sign = q == 0 ? 1.0 : -1.0;
  ComplexVector v = ComplexVector::Zero(4);
  if (p == 0) {
    v(0) = s;         // |00>
    v(3) = sign * s;  // |11>
  } else {
    v(1) = s;         // |01>
    v(2) = sign * s;  // |10>
  }
  return v;
}

inline DensityMatrix bell_state(std::size_t p, std::size_t q) {
  return DensityMatrix::pure(bell_vector(p, q));
}

/// Mixture sum_pq lambda(p, q) |e_pq><e_pq|.
inline DensityMatrix bell_mixture(const Eigen::Matrix2d& lambda) {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  for (std::size_t p = 0; p < 2; ++p) {
    for (std::size_t q = 0; q < 2; ++q) {
      const ComplexVector v = bell_vector(p, q);
      m += lambda(p, q) * v * v.adjoint();
    }
  }
  return DensityMatrix(HermitianMatrix(m));
}

/// Max-ent game: R_1 = sum a_pq |e_pq><e_pq|, R_2 = sum b_pq |e_pq><e_pq|.
inline QuantumGame maxent_game(const ClassicalBimatrix& bm) {
  if (bm.a.rows() != 2 || bm.a.cols() != 2 || bm.b.rows() != 2 || bm.b.cols() != 2) {
    throw InvalidArgument("maxent_game: payoff matrices must be 2x2");
  }
  ComplexMatrix r1 = ComplexMatrix::Zero(4, 4), r2 = ComplexMatrix::Zero(4, 4);
  for (std::size_t p = 0; p < 2; ++p) {
    for (std::size_t q = 0; q < 2; ++q) {
      const ComplexVector v = bell_vector(p, q);
      const ComplexMatrix proj = v * v.adjoint();
      r1 += bm.a(p, q) * proj;
      r2 += bm.b(p, q) * proj;
    }
  }
  HermitianMatrix h1(r1), h2(r2);
  const bool zs = max_abs((h1 + h2).matrix()) <= kZeroSumTolerance;
  return QuantumGame(RegisterLayout{2, 2}, {h1, h2}, zs);
}

/// One edge of a polymatrix game. r_ij is player i's utility tensor on
/// H_i (x) H_j; r_ji is player j's on H_j (x) H_i.
struct PolymatrixEdge {
  std::size_t i;
  std::size_t j;
  HermitianMatrix r_ij;
  HermitianMatrix r_ji;
};

class PolymatrixGame {
 public:
  PolymatrixGame(std::vector<std::size_t> dims, std::vector<PolymatrixEdge> edges)
      : layout_(std::move(dims)), edges_(std::move(edges)) {
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const auto& edge = edges_[e];
      if (edge.i >= layout_.size() || edge.j >= layout_.size()) {
        throw InvalidArgument("PolymatrixGame: edge endpoint out of range");
      }
      if (edge.i == edge.j) throw InvalidArgument("PolymatrixGame: self-loop");
      const std::size_t dd = layout_.dim(edge.i) * layout_.dim(edge.j);
      if (edge.r_ij.dim() != dd || edge.r_ji.dim() != dd) {
        throw DimensionMismatch("PolymatrixGame: edge tensor dimension");
      }
      for (std::size_t f = 0; f < e; ++f) {
        const auto& other = edges_[f];
        if ((other.i == edge.i && other.j == edge.j) || (other.i == edge.j && other.j == edge.i)) {
          throw InvalidArgument("PolymatrixGame: duplicate edge");
        }
      }
    }
  }

  const RegisterLayout& layout() const { return layout_; }
  std::size_t players() const { return layout_.size(); }
  const std::vector<PolymatrixEdge>& edges() const { return edges_; }

 private:
  RegisterLayout layout_;
  std::vector<PolymatrixEdge> edges_;
};

/// Places an operator on registers (a, b) of the layout, identity elsewhere.
inline ComplexMatrix embed_pair(const ComplexMatrix& op, const RegisterLayout& layout,
                                std::size_t a, std::size_t b) {
  std::vector<std::size_t> order{a, b};
  std::size_t rest = 1;
  for (std::size_t r = 0; r < layout.size(); ++r) {
    if (r != a && r != b) {
      order.push_back(r);
      rest *= layout.dim(r);
    }
  }
  const ComplexMatrix padded = kron(op, ComplexMatrix::Identity(rest, rest));
  return permute_registers(padded, permuted(layout, order), detail::inverse_permutation(order));
}

/// Swaps the two factors of an operator on H_a (x) H_b.
inline HermitianMatrix swap_factors(const HermitianMatrix& op, std::size_t dim_a, std::size_t dim_b) {
  const std::size_t perm[] = {1, 0};
  return permute_registers(op, RegisterLayout{dim_a, dim_b}, perm);
}

/// R_i = sum over edges at i of R_ij (x) I_{-ij}.
inline QuantumGame polymatrix_to_qg(const PolymatrixGame& pg) {
  const auto& layout = pg.layout();
  std::vector<ComplexMatrix> sums(pg.players(),
                                  ComplexMatrix::Zero(layout.joint_dim(), layout.joint_dim()));
  for (const auto& e : pg.edges()) {
    sums[e.i] += embed_pair(e.r_ij.matrix(), layout, e.i, e.j);
    sums[e.j] += embed_pair(e.r_ji.matrix(), layout, e.j, e.i);
  }
  std::vector<HermitianMatrix> tensors;
  ComplexMatrix total = ComplexMatrix::Zero(layout.joint_dim(), layout.joint_dim());
  for (const auto& s : sums) {
    tensors.emplace_back(s);
    total += s;
  }
  return QuantumGame(layout, std::move(tensors), max_abs(total) <= kZeroSumTolerance);
}

using Graph = std::vector<std::pair<std::size_t, std::size_t>>;

inline Graph cycle_graph(std::size_t k) {
  if (k < 3) throw InvalidArgument("cycle_graph: need at least 3 nodes");
  Graph g;
  for (std::size_t i = 0; i < k; ++i) g.emplace_back(i, (i + 1) % k);
  return g;
}

inline Graph path_graph(std::size_t k) {
  if (k < 2) throw InvalidArgument("path_graph: need at least 2 nodes");
  Graph g;
  for (std::size_t i = 0; i + 1 < k; ++i) g.emplace_back(i, i + 1);
  return g;
}

inline Graph complete_graph(std::size_t k) {
  if (k < 2) throw InvalidArgument("complete_graph: need at least 2 nodes");
  Graph g;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) g.emplace_back(i, j);
  }
  return g;
}

enum class GameKind { general, zero_sum, polymatrix };

struct GameSpec {
  GameKind kind = GameKind::general;
  std::vector<std::size_t> dims{2, 2};
  Graph graph;  // polymatrix only
  bool pairwise_zero_sum = true;
};

struct GeneratedGame {
  QuantumGame game;
  std::optional<PolymatrixGame> polymatrix;
};

/// k independent random Hermitian utility tensors, each of spectral norm 1.
inline QuantumGame random_quantum_game(const std::vector<std::size_t>& dims, std::uint64_t seed) {
  Rng rng(seed);
  const RegisterLayout layout(dims);
  std::vector<HermitianMatrix> tensors;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    tensors.push_back(random_unit_hermitian(layout.joint_dim(), rng));
  }
  return QuantumGame(layout, std::move(tensors));
}

inline QuantumGame random_zero_sum_game(std::size_t dim_a, std::size_t dim_b, std::uint64_t seed) {
  Rng rng(seed);
  return zero_sum_game(random_unit_hermitian(dim_a * dim_b, rng), dim_a, dim_b);
}

/// Random polymatrix game on a graph. With pairwise_zero_sum each edge has
/// R_ji = -swap(R_ij), which makes the whole game zero-sum (a strictly
/// stronger property than global zero-sum). All edge tensors are then scaled
/// by one common factor so that max_i ||R_i||_spec = 1 for the lifted tensors.
inline PolymatrixGame random_polymatrix_game(const std::vector<std::size_t>& dims, const Graph& graph,
                                             bool pairwise_zero_sum, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<PolymatrixEdge> edges;
  for (const auto& [i, j] : graph) {
    if (i >= dims.size() || j >= dims.size()) {
      throw InvalidArgument("random_polymatrix_game: edge endpoint out of range");
    }
    const std::size_t di = dims[i], dj = dims[j];
    HermitianMatrix r_ij = random_unit_hermitian(di * dj, rng);
    HermitianMatrix r_ji =
        pairwise_zero_sum ? -swap_factors(r_ij, di, dj) : random_unit_hermitian(di * dj, rng);
    edges.push_back({i, j, std::move(r_ij), std::move(r_ji)});
  }
  const QuantumGame lifted = polymatrix_to_qg(PolymatrixGame(dims, edges));
  double norm = 0.0;
  for (const auto& r : lifted.tensors()) norm = std::max(norm, spectral_norm(r));
  if (norm > 0.0) {
    for (auto& e : edges) {
      e.r_ij *= 1.0 / norm;
      e.r_ji *= 1.0 / norm;
    }
  }
  return PolymatrixGame(dims, std::move(edges));
}

inline GeneratedGame random_game(const GameSpec& spec, std::uint64_t seed) {
  switch (spec.kind) {
    case GameKind::general:
      return {random_quantum_game(spec.dims, seed), std::nullopt};
    case GameKind::zero_sum:
      if (spec.dims.size() != 2) throw InvalidArgument("random_game: zero-sum games have 2 players");
      return {random_zero_sum_game(spec.dims[0], spec.dims[1], seed), std::nullopt};
    case GameKind::polymatrix: {
      PolymatrixGame pg = random_polymatrix_game(spec.dims, spec.graph, spec.pairwise_zero_sum, seed);
      QuantumGame g = polymatrix_to_qg(pg);
      return {std::move(g), std::move(pg)};
    }
  }
  throw InvalidArgument("random_game: unknown kind");
}

}  // namespace qgame
