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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "wexpand/tolerances.hpp"

namespace wexpand {

using Complex = std::complex<double>;

/// Polarization-qubit density operator. Qubit k of `qubit_order` is bit
/// (n-1-k) of the basis index, with H = 0 and V = 1, so |HV> is index 1.
/// Construction validates hermiticity, trace and positivity and stores the
/// hermitian-symmetrized matrix.
class DensityMatrix {
 public:
  DensityMatrix(Eigen::MatrixXcd m, std::vector<int> qubit_order)
      : m_(std::move(m)), order_(std::move(qubit_order)) {
    validate();
  }

  static DensityMatrix from_pure(const Eigen::VectorXcd& psi, std::vector<int> qubit_order) {
    const double n2 = psi.squaredNorm();
    if (n2 <= 0.0) throw std::invalid_argument("DensityMatrix::from_pure: zero vector");
    return DensityMatrix(psi * psi.adjoint() / n2, std::move(qubit_order));
  }

  static DensityMatrix maximally_mixed(std::vector<int> qubit_order) {
    const auto d = std::size_t{1} << qubit_order.size();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d);
    return DensityMatrix(std::move(m), std::move(qubit_order));
  }

  const Eigen::MatrixXcd& matrix() const { return m_; }
  const std::vector<int>& qubit_order() const { return order_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  std::size_t num_qubits() const { return order_.size(); }
  Complex operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  double min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }

 private:
  void validate() {
    if (m_.rows() != m_.cols()) throw std::invalid_argument("DensityMatrix: matrix is not square");
    if (order_.empty()) throw std::invalid_argument("DensityMatrix: empty qubit order");
    if (order_.size() >= 31 || m_.rows() != (Eigen::Index{1} << order_.size())) {
      throw std::invalid_argument("DensityMatrix: dimension " + std::to_string(m_.rows()) +
                                  " does not match " + std::to_string(order_.size()) + " qubits");
    }
    if (!m_.allFinite()) throw std::invalid_argument("DensityMatrix: non-finite entries");
    const double asym = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (asym > tol::hermitian) {
      throw std::invalid_argument("DensityMatrix: not Hermitian (max asymmetry " +
                                  std::to_string(asym) + ")");
    }
    m_ = (m_ + m_.adjoint()) * 0.5;
    const double tr = m_.trace().real();
    if (std::abs(tr - 1.0) > tol::trace) {
      throw std::invalid_argument("DensityMatrix: trace " + std::to_string(tr) + " != 1");
    }
    const double lo = min_eigenvalue();
    if (lo < tol::min_eigenvalue) {
      throw std::invalid_argument("DensityMatrix: negative eigenvalue " + std::to_string(lo));
    }
  }

  Eigen::MatrixXcd m_;
  std::vector<int> order_;
};

/// Half the trace norm of the difference.
inline double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("trace_distance: dimension mismatch");
  Eigen::MatrixXcd diff = a.matrix() - b.matrix();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(diff, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

/// Reorders qubits: qubit k of the result is qubit perm[k] of the input.
inline Eigen::MatrixXcd permute_qubits(const Eigen::MatrixXcd& m, const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  const Eigen::Index d = Eigen::Index{1} << n;
  if (m.rows() != d) throw std::invalid_argument("permute_qubits: dimension mismatch");
  auto map_index = [&](Eigen::Index i) {
    Eigen::Index out = 0;
    for (int k = 0; k < n; ++k) {
      const Eigen::Index bit = (i >> (n - 1 - perm[k])) & 1;
      out |= bit << (n - 1 - k);
    }
    return out;
  };
  Eigen::MatrixXcd r(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) r(map_index(i), map_index(j)) = m(i, j);
  }
  return r;
}

inline Eigen::VectorXcd permute_qubits(const Eigen::VectorXcd& v, const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  const Eigen::Index d = Eigen::Index{1} << n;
  if (v.size() != d) throw std::invalid_argument("permute_qubits: dimension mismatch");
  Eigen::VectorXcd r(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    Eigen::Index out = 0;
    for (int k = 0; k < n; ++k) out |= ((i >> (n - 1 - perm[k])) & 1) << (n - 1 - k);
    r(out) = v(i);
  }
  return r;
}

inline DensityMatrix permute_qubits(const DensityMatrix& rho, const std::vector<int>& perm) {
  if (perm.size() != rho.num_qubits()) throw std::invalid_argument("permute_qubits: bad permutation");
  std::vector<int> order(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) order[k] = rho.qubit_order().at(static_cast<std::size_t>(perm[k]));
  return DensityMatrix(permute_qubits(rho.matrix(), perm), std::move(order));
}

// {dim, qubit_order, re, im}; re/im are row-major flat arrays.
inline void to_json(nlohmann::json& j, const DensityMatrix& rho) {
  const auto d = static_cast<Eigen::Index>(rho.dim());
  std::vector<double> re, im;
  re.reserve(static_cast<std::size_t>(d * d));
  im.reserve(static_cast<std::size_t>(d * d));
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) {
      re.push_back(rho.matrix()(r, c).real());
      im.push_back(rho.matrix()(r, c).imag());
    }
  }
  j = nlohmann::json{{"dim", d}, {"qubit_order", rho.qubit_order()}, {"re", re}, {"im", im}};
}

inline DensityMatrix density_matrix_from_json(const nlohmann::json& j) {
  for (const char* key : {"dim", "qubit_order", "re", "im"}) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("density matrix JSON: missing field '") + key + "'");
  }
  const auto d = j.at("dim").get<Eigen::Index>();
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (d <= 0 || re.size() != static_cast<std::size_t>(d * d) || im.size() != re.size()) {
    throw std::invalid_argument("density matrix JSON: entry count does not match dim");
  }
  Eigen::MatrixXcd m(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) {
      const auto k = static_cast<std::size_t>(r * d + c);
      m(r, c) = Complex(re[k], im[k]);
    }
  }
  return DensityMatrix(std::move(m), j.at("qubit_order").get<std::vector<int>>());
}

}  // namespace wexpand
