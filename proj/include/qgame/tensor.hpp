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

// Dense complex linear algebra over multi-register Hilbert spaces.
//
// Every joint-space operator uses the same register ordering: register 0 is
// the most significant tensor factor. permute_registers is the only way to
// reorder factors.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qgame {

using Complex = std::complex<double>;
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace tol {
// Hermitian symmetrization target.
inline constexpr double kSymmetrize = 1e-12;
// Exact algebraic identities and analytically constructed states.
inline constexpr double kAlgebra = 1e-9;
// States produced by iterated dynamics (accumulated rounding).
inline constexpr double kLearned = 1e-6;
}  // namespace tol

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidLayout : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class InvalidDensity : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

inline double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline ComplexMatrix dagger(const ComplexMatrix& m) { return m.adjoint(); }

/// A square matrix that equals its conjugate transpose.
///
/// Construction rejects inputs whose anti-Hermitian part exceeds the given
/// tolerance (relative to the largest entry, floored at 1) and then stores
/// (M + M^dagger) / 2, so the stored matrix is Hermitian to rounding.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const ComplexMatrix& m, double tolerance = tol::kAlgebra) {
    if (m.rows() != m.cols() || m.rows() == 0) {
      throw DimensionMismatch("HermitianMatrix: expected a non-empty square matrix, got " +
                              std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    const double scale = std::max(1.0, max_abs(m));
    const double skew = max_abs(m - m.adjoint());
    if (!(skew <= tolerance * scale)) {
      throw NotHermitian("HermitianMatrix: anti-Hermitian part " + std::to_string(skew) +
                         " exceeds tolerance");
    }
    m_ = (m + m.adjoint()) * 0.5;
  }

  static HermitianMatrix zero(std::size_t dim) {
    return HermitianMatrix(ComplexMatrix::Zero(dim, dim));
  }

  static HermitianMatrix identity(std::size_t dim) {
    return HermitianMatrix(ComplexMatrix::Identity(dim, dim));
  }

  static HermitianMatrix diagonal(std::span<const double> values) {
    ComplexMatrix m = ComplexMatrix::Zero(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return HermitianMatrix(m);
  }

  static HermitianMatrix diagonal(std::initializer_list<double> values) {
    return diagonal(std::span<const double>(values.begin(), values.size()));
  }

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  double trace() const { return m_.trace().real(); }

  HermitianMatrix& operator+=(const HermitianMatrix& other) {
    require_same_dim(other);
    m_ += other.m_;
    return *this;
  }
  HermitianMatrix& operator-=(const HermitianMatrix& other) {
    require_same_dim(other);
    m_ -= other.m_;
    return *this;
  }
  HermitianMatrix& operator*=(double s) {
    m_ *= s;
    return *this;
  }

  friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }
  friend HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b) { return a -= b; }
  friend HermitianMatrix operator*(HermitianMatrix a, double s) { return a *= s; }
  friend HermitianMatrix operator*(double s, HermitianMatrix a) { return a *= s; }
  HermitianMatrix operator-() const { return *this * -1.0; }

 private:
  void require_same_dim(const HermitianMatrix& other) const {
    if (other.dim() != dim()) throw DimensionMismatch("HermitianMatrix: dimension mismatch");
  }

  ComplexMatrix m_;
};

struct EigenDecomposition {
  RealVector values;      // descending
  ComplexMatrix vectors;  // orthonormal columns, matching values
};

/// Eigendecomposition with descending eigenvalues. Ties keep the solver's
/// order (stable sort); each eigenvector is rotated so its first entry of
/// non-negligible magnitude is real and positive.
inline EigenDecomposition herm_eig(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(Eigen::MatrixXcd(h.matrix()));
  if (solver.info() != Eigen::Success) throw Error("herm_eig: eigensolver failed");
  const auto& ascending = solver.eigenvalues();
  const auto& vecs = solver.eigenvectors();
  const auto n = static_cast<std::size_t>(ascending.size());

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return ascending(a) > ascending(b); });

  EigenDecomposition out{RealVector(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values(k) = ascending(order[k]);
    ComplexVector v = vecs.col(order[k]);
    for (std::size_t r = 0; r < n; ++r) {
      if (std::abs(v(r)) > 1e-10) {
        v *= std::conj(v(r)) / std::abs(v(r));
        v(r) = std::abs(v(r));
        break;
      }
    }
    out.vectors.col(k) = v;
  }
  return out;
}

inline RealVector eigenvalues(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(Eigen::MatrixXcd(h.matrix()),
                                                         Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("eigenvalues: eigensolver failed");
  RealVector v = solver.eigenvalues().reverse();
  return v;
}

inline double lambda_max(const HermitianMatrix& h) { return eigenvalues(h)(0); }

inline double lambda_min(const HermitianMatrix& h) {
  const RealVector v = eigenvalues(h);
  return v(v.size() - 1);
}

/// V f(diag) V^dagger for a real function f of the spectrum.
template <typename F>
HermitianMatrix spectral_apply(const EigenDecomposition& eig, F&& f) {
  const auto n = eig.values.size();
  ComplexMatrix scaled = eig.vectors;
  for (Eigen::Index k = 0; k < n; ++k) scaled.col(k) *= f(eig.values(k));
  return HermitianMatrix(ComplexMatrix(scaled * eig.vectors.adjoint()));
}

inline HermitianMatrix herm_exp(const HermitianMatrix& h) {
  return spectral_apply(herm_eig(h), [](double x) { return std::exp(x); });
}

/// Hilbert-Schmidt inner product Tr(A^dagger B); real for Hermitian inputs.
inline double hs_inner(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("hs_inner: dimension mismatch");
  return (a.matrix().conjugate().cwiseProduct(b.matrix())).sum().real();
}

inline Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("hs_inner: dimension mismatch");
  }
  return (a.conjugate().cwiseProduct(b)).sum();
}

/// Hermitian, positive semidefinite, unit-trace matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(HermitianMatrix h, double tolerance = tol::kAlgebra)
      : h_(std::move(h)) {
    const double tr = h_.trace();
    if (!(std::abs(tr - 1.0) <= tolerance)) {
      throw InvalidDensity("DensityMatrix: trace " + std::to_string(tr) + " is not 1");
    }
    const double lmin = lambda_min(h_);
    if (!(lmin >= -tolerance)) {
      throw InvalidDensity("DensityMatrix: minimum eigenvalue " + std::to_string(lmin) +
                           " is negative");
    }
  }

  static DensityMatrix maximally_mixed(std::size_t dim) {
    return DensityMatrix(HermitianMatrix::identity(dim) * (1.0 / static_cast<double>(dim)));
  }

  /// |v><v| / <v|v>.
  static DensityMatrix pure(const ComplexVector& v) {
    const double n2 = v.squaredNorm();
    if (!(n2 > 0.0)) throw InvalidDensity("DensityMatrix::pure: zero vector");
    return DensityMatrix(HermitianMatrix(ComplexMatrix(v * v.adjoint() / n2)));
  }

  static DensityMatrix basis(std::size_t dim, std::size_t k) {
    ComplexVector v = ComplexVector::Zero(dim);
    v(k) = 1.0;
    return pure(v);
  }

  std::size_t dim() const { return h_.dim(); }
  const HermitianMatrix& hermitian() const { return h_; }
  const ComplexMatrix& matrix() const { return h_.matrix(); }
  operator const HermitianMatrix&() const { return h_; }  // NOLINT(google-explicit-constructor)

 private:
  HermitianMatrix h_;
};

/// Per-register dimensions of a joint Hilbert space. Every register has
/// dimension at least 2.
class RegisterLayout {
 public:
  explicit RegisterLayout(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw InvalidLayout("RegisterLayout: no registers");
    for (std::size_t d : dims_) {
      if (d < 2) throw InvalidLayout("RegisterLayout: register dimension must be >= 2");
    }
  }
  RegisterLayout(std::initializer_list<std::size_t> dims)
      : RegisterLayout(std::vector<std::size_t>(dims)) {}

  std::size_t size() const { return dims_.size(); }
  std::size_t dim(std::size_t i) const { return dims_.at(i); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t joint_dim() const {
    return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
  }
  /// Dimensions of every register except i, in layout order.
  std::vector<std::size_t> dims_without(std::size_t i) const {
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < dims_.size(); ++r) {
      if (r != i) out.push_back(dims_[r]);
    }
    return out;
  }
  std::size_t complement_dim(std::size_t i) const { return joint_dim() / dim(i); }

  friend bool operator==(const RegisterLayout&, const RegisterLayout&) = default;

 private:
  std::vector<std::size_t> dims_;
};

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(kron(a.matrix(), b.matrix()));
}

/// Tensor product of densities, factor 0 most significant.
inline DensityMatrix tensor_product(std::span<const DensityMatrix> factors) {
  if (factors.empty()) throw InvalidArgument("tensor_product: no factors");
  ComplexMatrix m = factors[0].matrix();
  for (std::size_t i = 1; i < factors.size(); ++i) m = kron(m, factors[i].matrix());
  return DensityMatrix(HermitianMatrix(m));
}

inline DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(HermitianMatrix(kron(a.matrix(), b.matrix())));
}

namespace detail {

inline std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

inline void require_square(const ComplexMatrix& m, std::size_t dim, const char* who) {
  if (static_cast<std::size_t>(m.rows()) != dim || static_cast<std::size_t>(m.cols()) != dim) {
    throw InvalidLayout(std::string(who) + ": matrix is " + std::to_string(m.rows()) + "x" +
                        std::to_string(m.cols()) + ", layout needs " + std::to_string(dim));
  }
}

// Mixed-radix digits of a joint index, register 0 most significant.
inline void split_index(std::size_t index, std::span<const std::size_t> dims,
                        std::vector<std::size_t>& digits) {
  digits.resize(dims.size());
  for (std::size_t r = dims.size(); r-- > 0;) {
    digits[r] = index % dims[r];
    index /= dims[r];
  }
}

// Partial trace over arbitrary register dimensions (including 1).
inline ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                   std::span<const std::size_t> keep) {
  const std::size_t joint = product(dims);
  require_square(m, joint, "partial_trace");
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t r : keep) {
    if (r >= dims.size()) throw InvalidLayout("partial_trace: register index out of range");
    if (kept[r]) throw InvalidLayout("partial_trace: duplicate register in keep set");
    kept[r] = true;
  }

  std::vector<std::size_t> kept_index(joint), traced_index(joint), digits;
  std::size_t kept_dim = 1;
  for (std::size_t r = 0; r < dims.size(); ++r) {
    if (kept[r]) kept_dim *= dims[r];
  }
  for (std::size_t idx = 0; idx < joint; ++idx) {
    split_index(idx, dims, digits);
    std::size_t k = 0, t = 0;
    for (std::size_t r = 0; r < dims.size(); ++r) {
      if (kept[r]) {
        k = k * dims[r] + digits[r];
      } else {
        t = t * dims[r] + digits[r];
      }
    }
    kept_index[idx] = k;
    traced_index[idx] = t;
  }

  ComplexMatrix out = ComplexMatrix::Zero(kept_dim, kept_dim);
  for (std::size_t a = 0; a < joint; ++a) {
    for (std::size_t b = 0; b < joint; ++b) {
      if (traced_index[a] == traced_index[b]) out(kept_index[a], kept_index[b]) += m(a, b);
    }
  }
  return out;
}

// Joint-index map for a register permutation: position p of the output holds
// input register perm[p]. Returns old index for every new index.
inline std::vector<std::size_t> permutation_index_map(std::span<const std::size_t> dims,
                                                      std::span<const std::size_t> perm) {
  const std::size_t k = dims.size();
  if (perm.size() != k) throw InvalidArgument("permute_registers: permutation has wrong length");
  std::vector<bool> seen(k, false);
  for (std::size_t p : perm) {
    if (p >= k || seen[p]) throw InvalidArgument("permute_registers: not a permutation");
    seen[p] = true;
  }
  std::vector<std::size_t> new_dims(k);
  for (std::size_t p = 0; p < k; ++p) new_dims[p] = dims[perm[p]];

  const std::size_t joint = product(dims);
  std::vector<std::size_t> map(joint), digits, old_digits(k);
  for (std::size_t idx = 0; idx < joint; ++idx) {
    split_index(idx, new_dims, digits);
    for (std::size_t p = 0; p < k; ++p) old_digits[perm[p]] = digits[p];
    std::size_t old = 0;
    for (std::size_t r = 0; r < k; ++r) old = old * dims[r] + old_digits[r];
    map[idx] = old;
  }
  return map;
}

inline ComplexMatrix permute_registers(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                       std::span<const std::size_t> perm) {
  require_square(m, product(dims), "permute_registers");
  const auto map = permutation_index_map(dims, perm);
  const auto n = static_cast<Eigen::Index>(map.size());
  ComplexMatrix out(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) out(a, b) = m(map[a], map[b]);
  }
  return out;
}

// Permutation bringing register i to the front, the rest in layout order.
inline std::vector<std::size_t> front_permutation(std::size_t k, std::size_t i) {
  std::vector<std::size_t> perm{i};
  for (std::size_t r = 0; r < k; ++r) {
    if (r != i) perm.push_back(r);
  }
  return perm;
}

inline std::vector<std::size_t> inverse_permutation(std::span<const std::size_t> perm) {
  std::vector<std::size_t> inv(perm.size());
  for (std::size_t p = 0; p < perm.size(); ++p) inv[perm[p]] = p;
  return inv;
}

}  // namespace detail

/// Traces out every register not listed in `keep` (0-based). The result acts
/// on the kept registers in layout order; an empty keep set gives a 1x1 matrix
/// holding the full trace.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, const RegisterLayout& layout,
                                   std::span<const std::size_t> keep) {
  return detail::partial_trace(m, layout.dims(), keep);
}

inline ComplexMatrix partial_trace(const ComplexMatrix& m, const RegisterLayout& layout,
                                   std::initializer_list<std::size_t> keep) {
  return partial_trace(m, layout, std::span<const std::size_t>(keep.begin(), keep.size()));
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, const RegisterLayout& layout,
                                   std::span<const std::size_t> keep,
                                   double tolerance = tol::kAlgebra) {
  return DensityMatrix(HermitianMatrix(partial_trace(rho.matrix(), layout, keep)), tolerance);
}

/// Marginal on every register except i (Tr_i rho).
inline DensityMatrix trace_out(const DensityMatrix& rho, const RegisterLayout& layout,
                               std::size_t i, double tolerance = tol::kAlgebra) {
  std::vector<std::size_t> keep;
  for (std::size_t r = 0; r < layout.size(); ++r) {
    if (r != i) keep.push_back(r);
  }
  return partial_trace(rho, layout, keep, tolerance);
}

/// Marginal on register i alone (Tr_{-i} rho).
inline DensityMatrix marginal(const DensityMatrix& rho, const RegisterLayout& layout,
                              std::size_t i, double tolerance = tol::kAlgebra) {
  const std::size_t keep[] = {i};
  return partial_trace(rho, layout, keep, tolerance);
}

inline RegisterLayout permuted(const RegisterLayout& layout, std::span<const std::size_t> perm) {
  std::vector<std::size_t> dims(perm.size());
  for (std::size_t p = 0; p < perm.size(); ++p) dims[p] = layout.dim(perm[p]);
  return RegisterLayout(std::move(dims));
}

/// Conjugation by the tensor-factor permutation: output position p holds
/// input register perm[p]. The output lives on permuted(layout, perm).
inline ComplexMatrix permute_registers(const ComplexMatrix& m, const RegisterLayout& layout,
                                       std::span<const std::size_t> perm) {
  return detail::permute_registers(m, layout.dims(), perm);
}

inline HermitianMatrix permute_registers(const HermitianMatrix& m, const RegisterLayout& layout,
                                         std::span<const std::size_t> perm) {
  return HermitianMatrix(permute_registers(m.matrix(), layout, perm));
}

inline DensityMatrix permute_registers(const DensityMatrix& m, const RegisterLayout& layout,
                                       std::span<const std::size_t> perm) {
  return DensityMatrix(permute_registers(m.hermitian(), layout, perm));
}

/// Transpose on a single register, leaving the others untouched.
inline ComplexMatrix partial_transpose(const ComplexMatrix& m, const RegisterLayout& layout,
                                       std::size_t reg) {
  const std::size_t joint = layout.joint_dim();
  detail::require_square(m, joint, "partial_transpose");
  if (reg >= layout.size()) throw InvalidLayout("partial_transpose: register out of range");
  std::size_t stride = 1;
  for (std::size_t r = reg + 1; r < layout.size(); ++r) stride *= layout.dim(r);
  const std::size_t d = layout.dim(reg);

  ComplexMatrix out(joint, joint);
  for (std::size_t a = 0; a < joint; ++a) {
    const std::size_t da = (a / stride) % d;
    for (std::size_t b = 0; b < joint; ++b) {
      const std::size_t db = (b / stride) % d;
      // swap the reg digits of row and column
      const std::size_t a2 = a - da * stride + db * stride;
      const std::size_t b2 = b - db * stride + da * stride;
      out(a2, b2) = m(a, b);
    }
  }
  return out;
}

/// Euclidean projection onto the probability simplex (sort-based).
inline RealVector project_to_simplex(const RealVector& v) {
  const auto n = v.size();
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0, theta = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    cumulative += u[j];
    const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (u[j] - candidate > 0.0) theta = candidate;
  }
  RealVector out(n);
  for (Eigen::Index j = 0; j < n; ++j) out(j) = std::max(v(j) - theta, 0.0);
  return out;
}

/// Nearest density matrix in Hilbert-Schmidt norm.
inline DensityMatrix project_to_density(const HermitianMatrix& h) {
  const auto eig = herm_eig(h);
  const RealVector p = project_to_simplex(eig.values);
  std::size_t k = 0;
  return DensityMatrix(spectral_apply(eig, [&](double) { return p(k++); }));
}

/// exp(h - lambda_max(h) I) normalized to unit trace. The shift keeps every
/// exponent <= 0, so large cumulative gains never overflow.
inline DensityMatrix normalized_exp(const HermitianMatrix& h) {
  const auto eig = herm_eig(h);
  const double top = eig.values(0);
  double z = 0.0;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) z += std::exp(eig.values(k) - top);
  return DensityMatrix(spectral_apply(eig, [&](double x) { return std::exp(x - top) / z; }));
}

}  // namespace qgame
