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

// Superoperators stored as Choi matrices.
//
// A map Theta: L(B) -> L(A) is represented by C = sum_ij Theta(E_ij) (x) E_ij
// on A (x) B, output factor first. All transposes refer to the computational
// basis of the stored matrices.
//
// Terminology note: a map whose adjoint sends I_A to I_B is sometimes called
// "unitary" in the quantum-games literature. Here that property is exposed as
// is_trace_preserving (the two are equivalent); is_unital is the separate
// condition Theta(I_B) = I_A.

#pragma once

#include "qgame/tensor.hpp"

#include <functional>
#include <optional>
#include <variant>

namespace qgame {

class InvalidChannel : public Error {
 public:
  using Error::Error;
};

namespace channel_kind {
struct General {};
struct Identity {};
struct Replacement {
  DensityMatrix target;
};
struct Unitary {
  ComplexMatrix u;
};
}  // namespace channel_kind

using ChannelKind = std::variant<channel_kind::General, channel_kind::Identity,
                                 channel_kind::Replacement, channel_kind::Unitary>;

class ChoiMatrix {
 public:
  ChoiMatrix(std::size_t out_dim, std::size_t in_dim, HermitianMatrix matrix,
             ChannelKind kind = channel_kind::General{})
      : out_dim_(out_dim), in_dim_(in_dim), matrix_(std::move(matrix)), kind_(std::move(kind)) {
    if (out_dim_ == 0 || in_dim_ == 0 || matrix_.dim() != out_dim_ * in_dim_) {
      throw DimensionMismatch("ChoiMatrix: matrix dimension must be out_dim * in_dim");
    }
  }

  std::size_t out_dim() const { return out_dim_; }
  std::size_t in_dim() const { return in_dim_; }
  const HermitianMatrix& matrix() const { return matrix_; }
  const ChannelKind& kind() const { return kind_; }

 private:
  std::size_t out_dim_;
  std::size_t in_dim_;
  HermitianMatrix matrix_;
  ChannelKind kind_;
};

/// Theta(x) = Tr_B(C (I_A (x) x^T)), evaluated entrywise as
/// Theta(x)(a, a') = sum_{b,b'} C[(a,b),(a',b')] x(b,b').
inline ComplexMatrix apply_superop(const ChoiMatrix& c, const ComplexMatrix& x) {
  const std::size_t da = c.out_dim(), db = c.in_dim();
  if (static_cast<std::size_t>(x.rows()) != db || static_cast<std::size_t>(x.cols()) != db) {
    throw DimensionMismatch("apply_superop: input must be " + std::to_string(db) + "x" +
                            std::to_string(db));
  }
  const ComplexMatrix& cm = c.matrix().matrix();
  ComplexMatrix out = ComplexMatrix::Zero(da, da);
  for (std::size_t a = 0; a < da; ++a) {
    for (std::size_t a2 = 0; a2 < da; ++a2) {
      Complex s = 0.0;
      for (std::size_t b = 0; b < db; ++b) {
        for (std::size_t b2 = 0; b2 < db; ++b2) s += cm(a * db + b, a2 * db + b2) * x(b, b2);
      }
      out(a, a2) = s;
    }
  }
  return out;
}

inline HermitianMatrix apply_superop(const ChoiMatrix& c, const HermitianMatrix& x) {
  return HermitianMatrix(apply_superop(c, x.matrix()));
}

/// Theta^dagger(a) = [Tr_A(C (a (x) I_B))]^T. Satisfies
/// <a, Theta(b)> = <Theta^dagger(a), b> for Hermitian a and b.
inline ComplexMatrix apply_adjoint(const ChoiMatrix& c, const ComplexMatrix& a) {
  const std::size_t da = c.out_dim(), db = c.in_dim();
  if (static_cast<std::size_t>(a.rows()) != da || static_cast<std::size_t>(a.cols()) != da) {
    throw DimensionMismatch("apply_adjoint: input must be " + std::to_string(da) + "x" +
                            std::to_string(da));
  }
  const ComplexMatrix& cm = c.matrix().matrix();
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (std::size_t b = 0; b < db; ++b) {
    for (std::size_t b2 = 0; b2 < db; ++b2) {
      // Tr_A(C (a (x) I))(b, b2), stored transposed
      Complex s = 0.0;
      for (std::size_t x = 0; x < da; ++x) {
        for (std::size_t y = 0; y < da; ++y) s += cm(x * db + b, y * db + b2) * a(y, x);
      }
      out(b2, b) = s;
    }
  }
  return out;
}

inline HermitianMatrix apply_adjoint(const ChoiMatrix& c, const HermitianMatrix& a) {
  return HermitianMatrix(apply_adjoint(c, a.matrix()));
}

/// Choi matrix of an arbitrary linear map given as a callable on in_dim x
/// in_dim matrices. Throws NotHermitian unless the map preserves Hermiticity.
inline ChoiMatrix choi_of(std::size_t out_dim, std::size_t in_dim,
                          const std::function<ComplexMatrix(const ComplexMatrix&)>& map) {
  ComplexMatrix c = ComplexMatrix::Zero(out_dim * in_dim, out_dim * in_dim);
  for (std::size_t i = 0; i < in_dim; ++i) {
    for (std::size_t j = 0; j < in_dim; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(in_dim, in_dim);
      e(i, j) = 1.0;
      const ComplexMatrix image = map(e);
      if (static_cast<std::size_t>(image.rows()) != out_dim ||
          static_cast<std::size_t>(image.cols()) != out_dim) {
        throw DimensionMismatch("choi_of: map output has the wrong shape");
      }
      for (std::size_t a = 0; a < out_dim; ++a) {
        for (std::size_t a2 = 0; a2 < out_dim; ++a2) c(a * in_dim + i, a2 * in_dim + j) = image(a, a2);
      }
    }
  }
  return ChoiMatrix(out_dim, in_dim, HermitianMatrix(c));
}

inline ChoiMatrix choi_of_identity(std::size_t dim) {
  if (dim == 0) throw InvalidArgument("choi_of_identity: dimension must be positive");
  ComplexMatrix c = ComplexMatrix::Zero(dim * dim, dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) c(i * dim + i, j * dim + j) = 1.0;
  }
  return ChoiMatrix(dim, dim, HermitianMatrix(c), channel_kind::Identity{});
}

/// X -> Tr(X) target, with Choi matrix target (x) I_in.
inline ChoiMatrix replacement_channel(const DensityMatrix& target, std::size_t in_dim) {
  return ChoiMatrix(target.dim(), in_dim,
                    HermitianMatrix(kron(target.matrix(), ComplexMatrix::Identity(in_dim, in_dim))),
                    channel_kind::Replacement{target});
}

/// X -> U X U^dagger, built column by column from the images of E_ij.
inline ChoiMatrix unitary_channel(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) throw InvalidChannel("unitary_channel: matrix is not square");
  const auto n = static_cast<std::size_t>(u.rows());
  if (max_abs(ComplexMatrix(u.adjoint() * u) - ComplexMatrix::Identity(n, n)) > tol::kAlgebra) {
    throw InvalidChannel("unitary_channel: matrix is not unitary");
  }
  ChoiMatrix c = choi_of(n, n, [&](const ComplexMatrix& x) { return ComplexMatrix(u * x * u.adjoint()); });
  return ChoiMatrix(n, n, c.matrix(), channel_kind::Unitary{u});
}

/// X -> X^T. Its Choi matrix is the swap operator, which is not PSD.
inline ChoiMatrix transpose_map(std::size_t dim) {
  return choi_of(dim, dim, [](const ComplexMatrix& x) { return ComplexMatrix(x.transpose()); });
}

inline bool is_completely_positive(const ChoiMatrix& c, double tolerance = tol::kAlgebra) {
  return lambda_min(c.matrix()) >= -tolerance;
}

/// Tr_A(C) = I_B.
inline bool is_trace_preserving(const ChoiMatrix& c, double tolerance = tol::kAlgebra) {
  const std::size_t dims[] = {c.out_dim(), c.in_dim()};
  const std::size_t keep[] = {1};
  const ComplexMatrix reduced = detail::partial_trace(c.matrix().matrix(), dims, keep);
  return max_abs(reduced - ComplexMatrix::Identity(c.in_dim(), c.in_dim())) <= tolerance;
}

/// Tr_B(C) = I_A, i.e. Theta(I_B) = I_A.
inline bool is_unital(const ChoiMatrix& c, double tolerance = tol::kAlgebra) {
  const std::size_t dims[] = {c.out_dim(), c.in_dim()};
  const std::size_t keep[] = {0};
  const ComplexMatrix reduced = detail::partial_trace(c.matrix().matrix(), dims, keep);
  return max_abs(reduced - ComplexMatrix::Identity(c.out_dim(), c.out_dim())) <= tolerance;
}

inline constexpr double kCptpAdmission = 1e-8;

/// phi_i (x) id_{-i} acting on joint states of a layout.
class LiftedChannel {
 public:
  LiftedChannel(ChoiMatrix channel, RegisterLayout layout, std::size_t player)
      : channel_(std::move(channel)), layout_(std::move(layout)), player_(player) {
    if (player_ >= layout_.size()) throw InvalidArgument("lift_channel: player out of range");
    const std::size_t d = layout_.dim(player_);
    if (channel_.in_dim() != d || channel_.out_dim() != d) {
      throw DimensionMismatch("lift_channel: channel does not act on register " +
                              std::to_string(player_));
    }
    if (!is_completely_positive(channel_, kCptpAdmission) ||
        !is_trace_preserving(channel_, kCptpAdmission)) {
      throw InvalidChannel("lift_channel: channel is not CPTP");
    }
  }

  ComplexMatrix apply(const ComplexMatrix& joint) const {
    if (std::holds_alternative<channel_kind::Identity>(channel_.kind())) return joint;
    const auto perm = detail::front_permutation(layout_.size(), player_);
    const ComplexMatrix front = permute_registers(joint, layout_, perm);
    const std::size_t d = layout_.dim(player_);
    const std::size_t rest = layout_.complement_dim(player_);

    ComplexMatrix out(d * rest, d * rest);
    ComplexMatrix block(d, d);
    for (std::size_t a = 0; a < rest; ++a) {
      for (std::size_t b = 0; b < rest; ++b) {
        for (std::size_t p = 0; p < d; ++p) {
          for (std::size_t q = 0; q < d; ++q) block(p, q) = front(p * rest + a, q * rest + b);
        }
        const ComplexMatrix image = apply_superop(channel_, block);
        for (std::size_t p = 0; p < d; ++p) {
          for (std::size_t q = 0; q < d; ++q) out(p * rest + a, q * rest + b) = image(p, q);
        }
      }
    }
    const RegisterLayout front_layout = permuted(layout_, perm);
    const auto back = detail::inverse_permutation(perm);
    return permute_registers(out, front_layout, back);
  }

  DensityMatrix operator()(const DensityMatrix& rho, double tolerance = tol::kAlgebra) const {
    if (rho.dim() != layout_.joint_dim()) throw DimensionMismatch("LiftedChannel: state dimension");
    return DensityMatrix(HermitianMatrix(apply(rho.matrix())), tolerance);
  }

  const ChoiMatrix& channel() const { return channel_; }
  const RegisterLayout& layout() const { return layout_; }
  std::size_t player() const { return player_; }

 private:
  ChoiMatrix channel_;
  RegisterLayout layout_;
  std::size_t player_;
};

inline LiftedChannel lift_channel(const ChoiMatrix& c, const RegisterLayout& layout,
                                  std::size_t player) {
  return LiftedChannel(c, layout, player);
}

}  // namespace qgame
