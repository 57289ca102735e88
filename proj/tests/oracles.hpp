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

// Independent reference computations for the tests. Nothing here calls the
// library beyond its plain types, so a bug in a library routine cannot hide
// in its own oracle.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

inline Vector random_vector(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(g(rng), g(rng));
  return v / v.norm();
}

/// Ginibre-distributed density matrix G G^dagger / Tr, of full rank.
inline Matrix random_density(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = Complex(g(rng), g(rng));
  Matrix rho = a * a.adjoint();
  return rho / rho.trace().real();
}

/// Mixture of `rank` random pure states with random weights.
inline Matrix random_low_rank_density(int dim, int rank, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix rho = Matrix::Zero(dim, dim);
  double total = 0;
  for (int k = 0; k < rank; ++k) {
    const double w = u(rng) + 1e-3;
    const Vector v = random_vector(dim, rng);
    rho += w * v * v.adjoint();
    total += w;
  }
  return rho / total;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

/// Tr_B of an operator on C^da (x) C^db, by explicit index sums.
inline Matrix trace_out_b(const Matrix& m, int da, int db) {
  Matrix out = Matrix::Zero(da, da);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      for (int k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
  return out;
}

inline Matrix trace_out_a(const Matrix& m, int da, int db) {
  Matrix out = Matrix::Zero(db, db);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k) out(i, j) += m(k * db + i, k * db + j);
  return out;
}

inline std::vector<double> eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  const Eigen::VectorXd ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

inline double entropy_bits(const Matrix& rho) {
  double h = 0;
  for (double l : eigenvalues(rho))
    if (l > 1e-14) h -= l * std::log2(l);
  return h;
}

/// Operator permuting t tensor factors of dimension d: the factor in slot k
/// moves to slot perm[k].
inline Matrix factor_permutation(int d, int t, const std::vector<int>& perm) {
  int total = 1;
  for (int k = 0; k < t; ++k) total *= d;
  Matrix w = Matrix::Zero(total, total);
  std::vector<int> digit(t), moved(t);
  for (int src = 0; src < total; ++src) {
    int x = src;
    for (int k = t - 1; k >= 0; --k) {
      digit[k] = x % d;
      x /= d;
    }
    for (int k = 0; k < t; ++k) moved[perm[k]] = digit[k];
    int dst = 0;
    for (int k = 0; k < t; ++k) dst = dst * d + moved[k];
    w(dst, src) = 1.0;
  }
  return w;
}

/// (1/t!) sum over all factor permutations.
inline Matrix symmetrizer(int d, int t) {
  std::vector<int> perm(t);
  std::iota(perm.begin(), perm.end(), 0);
  Matrix p;
  double count = 0;
  do {
    const Matrix w = factor_permutation(d, t, perm);
    p = count == 0 ? w : Matrix(p + w);
    count += 1;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return p / count;
}

/// Single-qubit Paulis I, X, Y, Z.
inline Matrix pauli(int which) {
  Matrix p(2, 2);
  switch (which) {
    case 0: p << 1, 0, 0, 1; break;
    case 1: p << 0, 1, 1, 0; break;
    case 2: p << 0, Complex(0, -1), Complex(0, 1), 0; break;
    default: p << 1, 0, 0, -1; break;
  }
  return p;
}

/// All 4^n Pauli strings, as explicit Kronecker products.
inline std::vector<Matrix> pauli_group(int n) {
  std::vector<Matrix> out{Matrix::Identity(1, 1)};
  for (int q = 0; q < n; ++q) {
    std::vector<Matrix> next;
    for (const auto& m : out)
      for (int p = 0; p < 4; ++p) next.push_back(kron(m, pauli(p)));
    out = std::move(next);
  }
  return out;
}

/// Stabilizer Renyi entropy of a pure state by summing Tr(P rho)^{2 alpha}
/// over the explicit Pauli group.
inline double stabilizer_renyi(const Vector& psi, int alpha) {
  const int n = static_cast<int>(std::lround(std::log2(psi.size())));
  const Matrix rho = psi * psi.adjoint();
  double s = 0;
  for (const auto& p : pauli_group(n)) s += std::pow((p * rho).trace().real(), 2 * alpha);
  return std::log2(s / std::exp2(n)) / (1.0 - alpha);
}

inline double binomial(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Average of |S,f><S,f|^{(x)t} over every size-m subset (bitmask loop) and,
// with phases, every sign pattern on S.
inline Matrix subset_moment(int n, int m, int t, bool phases) {
  const int d = 1 << n;
  Matrix acc = Matrix::Zero(1 << (n * t), 1 << (n * t));
  double count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
    if (std::popcount(mask) != m) continue;
    const std::uint64_t patterns = phases ? (std::uint64_t{1} << m) : 1;
    for (std::uint64_t signs = 0; signs < patterns; ++signs) {
      Matrix v = Matrix::Zero(d, 1);
      int k = 0;
      for (int x = 0; x < d; ++x)
        if ((mask >> x) & 1U) v(x, 0) = ((signs >> k++) & 1U) ? -1.0 : 1.0;
      v /= std::sqrt(static_cast<double>(m));
      Matrix vt = v;
      for (int c = 1; c < t; ++c) vt = kron(vt, v);
      acc += vt * vt.adjoint();
      count += 1;
    }
  }
  return acc / count;
}

}  // namespace oracle
