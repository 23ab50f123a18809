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

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wexpand/fock.hpp"
#include "wexpand/modes.hpp"
#include "wexpand/optics.hpp"
#include "wexpand/sources.hpp"

namespace wexpand {

/// Two balanced beamsplitters and a sign-compensation plate. The photon to be
/// expanded enters mode 1, the two-photon ancilla mode 2; success is one
/// photon in each of modes 4, 5 and 6.
struct ExpansionGate {
  // Reflection from mode 1 into mode 4 carries the minus sign.
  BeamsplitterSpec first{modes::input, modes::ancilla, modes::internal, modes::out4, 0.5,
                         SignConvention::reflection_minus_on_out_b};
  std::optional<JonesUnitary> compensation = JonesUnitary::sign_flip_v();
  BeamsplitterSpec second{modes::internal, modes::aux, modes::out5, modes::out6, 0.5,
                          SignConvention::reflection_minus_on_out_a};

  Circuit circuit() const {
    Circuit c{first};
    if (compensation) c.emplace_back(JonesElement{modes::out4, *compensation});
    c.emplace_back(second);
    return c;
  }

  ExpansionGate without_compensation() const {
    ExpansionGate g = *this;
    g.compensation.reset();
    return g;
  }
};

/// (1/sqrt N) sum over the N basis states with exactly one V.
inline Eigen::VectorXcd w_state_qubits(int n) {
  if (n < 1) throw std::invalid_argument("w_state_qubits: N must be >= 1");
  if (n > 24) throw std::invalid_argument("w_state_qubits: N too large for a dense vector");
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
  const double a = 1.0 / std::sqrt(static_cast<double>(n));
  for (int k = 0; k < n; ++k) psi(Eigen::Index{1} << k) = a;
  return psi;
}

/// Runs `circuit` after checking that every gate-internal and output mode is
/// vacuum at the input.
inline PhotonicState run_gate(const PhotonicState& input, const Circuit& circuit) {
  for (int m : {modes::internal, modes::out4, modes::out5, modes::out6, modes::aux}) {
    if (!input.is_vacuum_at(m)) {
      throw std::invalid_argument("run_gate: mode " + std::to_string(m) + " must be vacuum at the input");
    }
  }
  return apply_circuit(input, circuit);
}

inline PhotonicState run_gate(const PhotonicState& input, const ExpansionGate& gate = {}) {
  return run_gate(input, gate.circuit());
}

inline double success_probability_analytic(int n) {
  if (n < 1) throw std::invalid_argument("success_probability_analytic: N must be >= 1");
  return (n + 2.0) / (16.0 * n);
}

struct ExpansionOptions {
  ExpansionGate gate{};
  /// Replaces `gate` when set, e.g. wiring loaded from a circuit file.
  std::optional<Circuit> circuit{};
  /// Overlap between the ancilla photons and the input photon.
  double ancilla_overlap = 1.0;
};

struct ExpansionResult {
  DensityMatrix rho;
  double probability;
};

/// Expands an n-qubit polarization state whose last qubit is fed to the gate.
/// The other n-1 qubits never meet an optical element, so they are carried as
/// plain qubit amplitudes; only the single-photon responses of the gate are
/// simulated in Fock space and combined by linearity. Output qubits are the
/// untouched ones first (ascending modes), then 4, 5, 6.
inline ExpansionResult expand_qubit_state(const Eigen::VectorXcd& psi, int n, const ExpansionOptions& opt = {}) {
  if (n < 1) throw std::invalid_argument("expand: need at least one qubit");
  if (psi.size() != (Eigen::Index{1} << n)) throw std::invalid_argument("expand: state dimension mismatch");

  using Key = PostselectedBranches::Key;
  const PhotonicState ancilla = apply_delay(two_photon_ancilla(), modes::ancilla, opt.ancilla_overlap);
  std::array<std::map<Key, Eigen::VectorXcd>, 2> response;
  for (int p = 0; p < 2; ++p) {
    const ModeLabel in{modes::input, p == 0 ? Polarization::H : Polarization::V, TemporalBin::principal};
    const PhotonicState input = tensor(apply_creation(PhotonicState::vacuum(), in), ancilla);
    const PhotonicState out = opt.circuit ? run_gate(input, *opt.circuit) : run_gate(input, opt.gate);
    response[static_cast<std::size_t>(p)] =
        postselect_branches(out, {modes::out4, modes::out5, modes::out6}).branches;
  }

  const int untouched = n - 1;
  const Eigen::Index d = Eigen::Index{1} << (untouched + 3);
  std::map<Key, Eigen::VectorXcd> joint;
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    if (psi(i) == Complex{}) continue;
    const Eigen::Index rest = i >> 1;
    for (const auto& [key, amp] : response[static_cast<std::size_t>(i & 1)]) {
      auto [it, inserted] = joint.try_emplace(key, Eigen::VectorXcd::Zero(d));
      it->second.segment(rest * 8, 8) += psi(i) * amp;
    }
  }

  double probability = 0.0;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& [key, v] : joint) {
    probability += v.squaredNorm();
    m += v * v.adjoint();
  }
  probability /= psi.squaredNorm();
  if (probability < tol::empty_postselection) throw std::domain_error("expand: post-selection never succeeds");

  std::vector<int> order = modes::untouched_modes(untouched);
  order.insert(order.end(), {modes::out4, modes::out5, modes::out6});
  return {DensityMatrix(m / m.trace().real(), order), probability};
}

/// Ideal |W_N> -> |W_{N+2}> expansion.
inline ExpansionResult expand_w(int n, const ExpansionOptions& opt = {}) {
  return expand_qubit_state(w_state_qubits(n), n, opt);
}

/// Same expansion with every photon of |W_N> embedded in Fock space. Used to
/// cross-check the hybrid route.
inline ExpansionResult expand_w_full_fock(int n, const ExpansionOptions& opt = {}) {
  std::vector<int> carriers = modes::untouched_modes(n - 1);
  carriers.push_back(modes::input);
  const PhotonicState ancilla = apply_delay(two_photon_ancilla(), modes::ancilla, opt.ancilla_overlap);
  const PhotonicState input = tensor(embed_qubits(w_state_qubits(n), carriers), ancilla);
  std::vector<int> qubits = modes::untouched_modes(n - 1);
  qubits.insert(qubits.end(), {modes::out4, modes::out5, modes::out6});
  PostselectionResult r =
      postselect_qubits(opt.circuit ? run_gate(input, *opt.circuit) : run_gate(input, opt.gate), qubits);
  if (!r.accepted()) throw std::domain_error("expand: post-selection never succeeds");
  return {std::move(*r.rho), r.probability};
}

}  // namespace wexpand
