// Copyright 2026 The wexpand Authors
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

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wexpand/density_matrix.hpp"
#include "wexpand/gates.hpp"

namespace wexpand {

/// Reduced state on the qubits at positions `keep` (in that order).
inline DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  const int n = static_cast<int>(rho.num_qubits());
  if (keep.empty()) throw std::invalid_argument("partial_trace: nothing to keep");
  std::set<int> seen;
  for (int k : keep) {
    if (k < 0 || k >= n) throw std::out_of_range("partial_trace: qubit index " + std::to_string(k) + " out of range");
    if (!seen.insert(k).second) throw std::invalid_argument("partial_trace: repeated qubit index");
  }
  std::vector<int> traced;
  for (int k = 0; k < n; ++k) {
    if (!seen.count(k)) traced.push_back(k);
  }
  const int nk = static_cast<int>(keep.size());
  const int nt = static_cast<int>(traced.size());
  auto compose = [&](Eigen::Index kept, Eigen::Index rest) {
    Eigen::Index full = 0;
    for (int i = 0; i < nk; ++i) full |= ((kept >> (nk - 1 - i)) & 1) << (n - 1 - keep[static_cast<std::size_t>(i)]);
    for (int i = 0; i < nt; ++i) full |= ((rest >> (nt - 1 - i)) & 1) << (n - 1 - traced[static_cast<std::size_t>(i)]);
    return full;
  };
  const Eigen::Index dk = Eigen::Index{1} << nk;
  const Eigen::Index dt = Eigen::Index{1} << nt;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dk, dk);
  for (Eigen::Index i = 0; i < dk; ++i) {
    for (Eigen::Index j = 0; j < dk; ++j) {
      Complex s{};
      for (Eigen::Index t = 0; t < dt; ++t) s += rho.matrix()(compose(i, t), compose(j, t));
      out(i, j) = s;
    }
  }
  std::vector<int> order;
  for (int k : keep) order.push_back(rho.qubit_order()[static_cast<std::size_t>(k)]);
  return DensityMatrix(std::move(out), std::move(order));
}

/// Wootters concurrence. The lambdas are the square roots of the eigenvalues
/// of sqrt(rho) rho~ sqrt(rho), with rho~ = (Y x Y) rho* (Y x Y).
inline double concurrence(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw std::invalid_argument("concurrence: needs a two-qubit state");
  Eigen::Matrix4cd spin_flip = Eigen::Matrix4cd::Zero();
  spin_flip(0, 3) = -1.0;
  spin_flip(1, 2) = 1.0;
  spin_flip(2, 1) = 1.0;
  spin_flip(3, 0) = -1.0;
  const Eigen::Matrix4cd m = rho.matrix();
  const Eigen::Matrix4cd tilde = spin_flip * m.conjugate() * spin_flip;

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(m);
  const Eigen::Vector4d ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::Matrix4cd sqrt_rho = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
  Eigen::Matrix4cd r = sqrt_rho * tilde * sqrt_rho;
  r = (r + r.adjoint()).eval() * 0.5;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> rs(r, Eigen::EigenvaluesOnly);
  std::vector<double> lambda(4);
  for (int i = 0; i < 4; ++i) lambda[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, rs.eigenvalues()(i)));
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  return std::clamp(lambda[0] - lambda[1] - lambda[2] - lambda[3], 0.0, 1.0);
}

inline double binary_entropy(double x) {
  auto term = [](double p) { return p <= 0.0 ? 0.0 : -p * std::log2(p); };
  return term(x) + term(1.0 - x);
}

inline double eof_from_concurrence(double c) {
  if (!(c >= 0.0 && c <= 1.0 + 1e-12)) throw std::invalid_argument("eof: concurrence outside [0, 1]");
  c = std::min(c, 1.0);
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

/// Entanglement of formation of a two-qubit state, in ebits.
inline double eof(const DensityMatrix& rho) { return eof_from_concurrence(concurrence(rho)); }

/// ((N-1)/N) 1 - |W_N><W_N|.
inline Eigen::MatrixXcd w_witness_operator(int n) {
  const Eigen::VectorXcd w = w_state_qubits(n);
  const Eigen::Index d = w.size();
  return Eigen::MatrixXcd::Identity(d, d) * ((n - 1.0) / n) - w * w.adjoint();
}

/// Tr(W rho); negative values certify genuine N-partite entanglement.
inline double witness_value(const DensityMatrix& rho, int n) {
  if (rho.dim() != (std::size_t{1} << n)) throw std::invalid_argument("witness_value: dimension mismatch");
  return (w_witness_operator(n) * rho.matrix()).trace().real();
}

/// Mode-id pair -> EOF of the corresponding two-qubit marginal.
using PairwiseEofTable = std::map<std::pair<int, int>, double>;

inline PairwiseEofTable pairwise_eof_table(const DensityMatrix& rho) {
  const int n = static_cast<int>(rho.num_qubits());
  if (n < 2) throw std::invalid_argument("pairwise_eof_table: needs at least two qubits");
  PairwiseEofTable table;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto& order = rho.qubit_order();
      table[{order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]}] =
          eof(partial_trace(rho, {i, j}));
    }
  }
  return table;
}

/// "45" style key for report tables.
inline std::string pair_key(const std::pair<int, int>& p) {
  return std::to_string(p.first) + std::to_string(p.second);
}

}  // namespace wexpand
