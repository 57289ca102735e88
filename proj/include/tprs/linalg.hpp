// Copyright 2026 The tprs Authors
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

// Dense complex linear algebra on qubit registers.
//
// Basis convention: |x> for an integer x whose most significant bit is
// qubit 1. A t-copy index is i_1 * d^(t-1) + ... + i_t, i.e. copy 1 is the
// most significant factor, matching the Kronecker product order. A
// bipartition A:B puts A on the leading (most significant) n_A qubits.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tprs/errors.hpp"
#include "tprs/limits.hpp"

namespace tprs {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kNormTol = 1e-12;
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kZeroEigenvalue = 1e-12;

inline std::uint64_t dim_of(int qubits) { return pow2_or_zero(qubits); }

class PureState {
 public:
  /// Validates length 2^n and unit norm.
  PureState(int qubits, Vector amplitudes) : n_(qubits), amps_(std::move(amplitudes)) {
    require(n_ >= 0 && n_ < 63, ErrorKind::InvalidArgument, "qubit count out of range");
    require(static_cast<std::uint64_t>(amps_.size()) == dim_of(n_), ErrorKind::InvariantViolation,
            "amplitude vector length must be 2^n");
    require(std::abs(amps_.norm() - 1.0) <= kNormTol, ErrorKind::InvariantViolation,
            "state is not normalized");
  }

  /// Rescales `amplitudes` to unit norm.
  static PureState normalized(int qubits, Vector amplitudes) {
    const double norm = amplitudes.norm();
    require(norm > 0.0, ErrorKind::InvalidArgument, "cannot normalize the zero vector");
    amplitudes /= norm;
    return PureState(qubits, std::move(amplitudes));
  }

  static PureState basis(int qubits, std::uint64_t index) {
    require(index < dim_of(qubits), ErrorKind::DomainOverflow, "basis index out of range");
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dim_of(qubits)));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return PureState(qubits, std::move(v));
  }

  int qubits() const { return n_; }
  Eigen::Index dim() const { return amps_.size(); }
  const Vector& amplitudes() const { return amps_; }
  Complex operator[](Eigen::Index i) const { return amps_(i); }

  Matrix projector() const { return amps_ * amps_.adjoint(); }

  /// Number of amplitudes with magnitude above `tol`.
  std::size_t support_size(double tol = 1e-12) const {
    std::size_t count = 0;
    for (Eigen::Index i = 0; i < amps_.size(); ++i) count += std::abs(amps_(i)) > tol;
    return count;
  }

 private:
  int n_;
  Vector amps_;
};

class DensityOperator {
 public:
  /// Validates Hermiticity, unit trace and positivity.
  DensityOperator(int qubits, Matrix mat) : n_(qubits), mat_(std::move(mat)) {
    require(n_ >= 0 && n_ < 63, ErrorKind::InvalidArgument, "qubit count out of range");
    require(static_cast<std::uint64_t>(mat_.rows()) == dim_of(n_) && mat_.rows() == mat_.cols(),
            ErrorKind::InvariantViolation, "density operator must be 2^n x 2^n");
    validate();
  }

  static DensityOperator from_pure(const PureState& psi) {
    return DensityOperator(psi.qubits(), psi.projector(), Trusted{});
  }

  /// Skips validation; only for operators that are valid by construction
  /// (tensor powers, partial traces, convex mixtures of valid states).
  static DensityOperator trusted(int qubits, Matrix mat) {
    return DensityOperator(qubits, std::move(mat), Trusted{});
  }

  /// Maximally mixed state I / 2^n.
  static DensityOperator maximally_mixed(int qubits) {
    const auto d = static_cast<Eigen::Index>(dim_of(qubits));
    return DensityOperator(qubits, Matrix::Identity(d, d) / static_cast<double>(d), Trusted{});
  }

  int qubits() const { return n_; }
  Eigen::Index dim() const { return mat_.rows(); }
  const Matrix& matrix() const { return mat_; }

  /// Throws InvariantViolation when any density-operator invariant fails.
  void validate() const {
    const double herm = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
    require(herm <= kHermitianTol, ErrorKind::InvariantViolation,
            "operator is not Hermitian (deviation " + std::to_string(herm) + ")");
    const double tr = mat_.trace().real();
    require(std::abs(tr - 1.0) <= kTraceTol, ErrorKind::InvariantViolation,
            "trace is " + std::to_string(tr) + ", expected 1");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(mat_, Eigen::EigenvaluesOnly);
    const double lowest = solver.eigenvalues().minCoeff();
    require(lowest >= -kPsdTol, ErrorKind::InvariantViolation,
            "operator is not positive semidefinite (min eigenvalue " + std::to_string(lowest) + ")");
  }

 private:
  struct Trusted {};
  DensityOperator(int qubits, Matrix mat, Trusted) : n_(qubits), mat_(std::move(mat)) {}

  int n_;
  Matrix mat_;
};

struct PartitionSpec {
  int n_a = 1;
  int n_b = 1;

  int total() const { return n_a + n_b; }

  void check(int qubits) const {
    require(n_a >= 1 && n_b >= 1, ErrorKind::PartitionMismatch, "both parts need at least one qubit");
    require(n_a + n_b == qubits, ErrorKind::PartitionMismatch,
            "partition " + std::to_string(n_a) + ":" + std::to_string(n_b) + " does not match " +
                std::to_string(qubits) + " qubits");
  }

  /// The balanced split with n_A <= n_B.
  static PartitionSpec balanced(int qubits) { return {qubits / 2, qubits - qubits / 2}; }
};

enum class Keep { A, B };

// ---------------------------------------------------------------------------
// Tensor structure

inline Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// |psi>^{(x)t} as a plain vector.
inline Vector tensor_power(const PureState& psi, int copies, const Limits& limits = default_limits()) {
  require(copies >= 1, ErrorKind::InvalidArgument, "copy count must be positive");
  require_dim(psi.qubits() * copies, limits, "tensor_power");
  Vector out = psi.amplitudes();
  for (int k = 1; k < copies; ++k) out = kron(out, psi.amplitudes());
  return out;
}

inline DensityOperator tensor_power(const DensityOperator& rho, int copies,
                                    const Limits& limits = default_limits()) {
  require(copies >= 1, ErrorKind::InvalidArgument, "copy count must be positive");
  require_dim(rho.qubits() * copies, limits, "tensor_power");
  Matrix out = rho.matrix();
  for (int k = 1; k < copies; ++k) out = kron(out, rho.matrix());
  return DensityOperator::trusted(rho.qubits() * copies, std::move(out));
}

namespace detail {
inline DensityOperator partial_trace_unchecked(const DensityOperator& rho, int n_a, int n_b, bool keep_a) {
  const auto da = static_cast<Eigen::Index>(dim_of(n_a));
  const auto db = static_cast<Eigen::Index>(dim_of(n_b));
  const Matrix& m = rho.matrix();
  if (keep_a) {
    Matrix out = Matrix::Zero(da, da);
    for (Eigen::Index a1 = 0; a1 < da; ++a1)
      for (Eigen::Index a2 = 0; a2 < da; ++a2) {
        Complex acc = 0.0;
        for (Eigen::Index b = 0; b < db; ++b) acc += m(a1 * db + b, a2 * db + b);
        out(a1, a2) = acc;
      }
    return DensityOperator::trusted(n_a, std::move(out));
  }
  Matrix out = Matrix::Zero(db, db);
  for (Eigen::Index a = 0; a < da; ++a) out += m.block(a * db, a * db, db, db);
  return DensityOperator::trusted(n_b, std::move(out));
}
}  // namespace detail

inline DensityOperator partial_trace(const DensityOperator& rho, const PartitionSpec& part, Keep keep) {
  part.check(rho.qubits());
  return detail::partial_trace_unchecked(rho, part.n_a, part.n_b, keep == Keep::A);
}

/// Reduced state of a pure state, via the da x db amplitude reshape. A A^dagger
/// is positive by construction, so the eigenvalue check is skipped.
inline DensityOperator reduced_state(const PureState& psi, const PartitionSpec& part, Keep keep) {
  part.check(psi.qubits());
  const auto da = static_cast<Eigen::Index>(dim_of(part.n_a));
  const auto db = static_cast<Eigen::Index>(dim_of(part.n_b));
  // Row-major reshape: amplitude index a*db + b.
  Matrix amp(da, db);
  for (Eigen::Index a = 0; a < da; ++a)
    for (Eigen::Index b = 0; b < db; ++b) amp(a, b) = psi[a * db + b];
  if (keep == Keep::A) {
    Matrix red = amp * amp.adjoint();
    red = 0.5 * (red + red.adjoint()).eval();
    return DensityOperator::trusted(part.n_a, std::move(red));
  }
  Matrix red = (amp.adjoint() * amp).transpose();
  red = 0.5 * (red + red.adjoint()).eval();
  return DensityOperator::trusted(part.n_b, std::move(red));
}

// ---------------------------------------------------------------------------
// Spectra and entropies (base 2)

inline RealVector hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

/// Shannon entropy in bits of a probability vector; entries below the zero
/// threshold contribute 0.
inline double shannon_entropy(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs)
    if (p > kZeroEigenvalue) h -= p * std::log2(p);
  return h;
}

inline double von_neumann_entropy(const DensityOperator& rho) {
  const RealVector ev = hermitian_eigenvalues(rho.matrix());
  return shannon_entropy(std::span<const double>(ev.data(), static_cast<std::size_t>(ev.size())));
}

inline double purity(const DensityOperator& rho) {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return rho.matrix().squaredNorm();
}

/// Renyi-2 entropy -log2 Tr(rho^2).
inline double collision_entropy(const DensityOperator& rho) { return -std::log2(purity(rho)); }

inline double trace_norm_hermitian(const Matrix& m) {
  return hermitian_eigenvalues(m).cwiseAbs().sum();
}

/// Half the trace norm of a Hermitian difference; works on any equal-size
/// Hermitian operators (moment operators included).
inline double trace_distance(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorKind::DimensionMismatch,
          "trace_distance needs operators of equal dimension");
  const Matrix diff = a - b;
  return 0.5 * trace_norm_hermitian(0.5 * (diff + diff.adjoint()));
}

inline double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  require(rho.qubits() == sigma.qubits(), ErrorKind::DimensionMismatch,
          "trace_distance needs states on the same number of qubits");
  return trace_distance(rho.matrix(), sigma.matrix());
}

// ---------------------------------------------------------------------------
// Copy-permutation structure of (C^d)^{(x)t}

/// Digits of a t-copy index in base d, copy 1 first.
inline std::vector<std::uint64_t> copy_digits(std::uint64_t index, std::uint64_t d, int copies) {
  std::vector<std::uint64_t> digits(static_cast<std::size_t>(copies));
  for (int k = copies - 1; k >= 0; --k) {
    digits[static_cast<std::size_t>(k)] = index % d;
    index /= d;
  }
  return digits;
}

/// Permutation matrix W with W |i_1 ... i_t> = |i_perm^{-1}(1) ... >, i.e.
/// the factor in copy k moves to copy perm[k].
inline Matrix copy_permutation_operator(int qubits, int copies, std::span<const int> perm,
                                        const Limits& limits = default_limits()) {
  require(static_cast<int>(perm.size()) == copies, ErrorKind::InvalidArgument,
          "permutation length must equal the copy count");
  require_dim(qubits * copies, limits, "copy_permutation_operator");
  const std::uint64_t d = dim_of(qubits);
  const std::uint64_t total = dim_of(qubits * copies);
  Matrix w = Matrix::Zero(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(total));
  for (std::uint64_t src = 0; src < total; ++src) {
    const auto digits = copy_digits(src, d, copies);
    std::vector<std::uint64_t> moved(digits.size());
    for (int k = 0; k < copies; ++k)
      moved[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])] = digits[static_cast<std::size_t>(k)];
    std::uint64_t dst = 0;
    for (auto digit : moved) dst = dst * d + digit;
    w(static_cast<Eigen::Index>(dst), static_cast<Eigen::Index>(src)) = 1.0;
  }
  return w;
}

/// Orthogonal projector onto the symmetric subspace of (C^{2^n})^{(x)t}.
///
/// Basis vectors sharing a multiset of digits span one symmetric direction,
/// so the projector is block-constant: P_ij = 1/|class| when i and j are
/// permutations of each other. Its trace is C(2^n + t - 1, t).
inline Matrix symmetric_projector(int qubits, int copies, const Limits& limits = default_limits()) {
  require(copies >= 1, ErrorKind::InvalidArgument, "copy count must be positive");
  require_dim(qubits * copies, limits, "symmetric_projector");
  const std::uint64_t d = dim_of(qubits);
  const std::uint64_t total = dim_of(qubits * copies);
  std::map<std::vector<std::uint64_t>, std::vector<Eigen::Index>> classes;
  for (std::uint64_t i = 0; i < total; ++i) {
    auto digits = copy_digits(i, d, copies);
    std::sort(digits.begin(), digits.end());
    classes[std::move(digits)].push_back(static_cast<Eigen::Index>(i));
  }
  Matrix p = Matrix::Zero(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(total));
  for (const auto& [key, members] : classes) {
    const double weight = 1.0 / static_cast<double>(members.size());
    for (auto i : members)
      for (auto j : members) p(i, j) = weight;
  }
  return p;
}

}  // namespace tprs
