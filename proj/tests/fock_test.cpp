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

#include "wexpand/fock.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "wexpand/gates.hpp"

using namespace wexpand;

namespace {

const ModeLabel k1V{1, Polarization::V};
const ModeLabel k1H{1, Polarization::H};
const ModeLabel k2H{2, Polarization::H};

PhotonicState create(std::initializer_list<ModeLabel> ms) {
  PhotonicState s = PhotonicState::vacuum();
  for (const auto& m : ms) s = apply_creation(s, m);
  return s;
}

double distance(const PhotonicState& a, const PhotonicState& b) {
  PhotonicState d = a;
  d += b.scaled(-1.0);
  return d.norm();
}

}  // namespace

TEST(Fock, creation_on_vacuum) {
  const PhotonicState s = create({k1V});
  ASSERT_EQ(s.size(), 1u);
  FockBasisVector b = FockBasisVector{}.with_change(k1V, 1);
  EXPECT_EQ(s.amplitude(b), Complex(1.0));
}

TEST(Fock, bosonic_sqrt_factor) {
  const PhotonicState s = apply_creation(create({k2H}), k2H);
  FockBasisVector two = FockBasisVector{}.with_change(k2H, 2);
  EXPECT_NEAR(std::abs(s.amplitude(two) - std::sqrt(2.0)), 0.0, 1e-15);
}

TEST(Fock, double_creation_normalizes_with_factorial) {
  const PhotonicState s = create({k2H, k2H});
  // (a^dag)^2 |vac> = sqrt(2!) |2>.
  EXPECT_NEAR(s.norm(), std::sqrt(2.0), 1e-15);
  const PhotonicState n = s.normalized();
  EXPECT_NEAR(n.norm(), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(n.amplitude(FockBasisVector{}.with_change(k2H, 2)) - 1.0), 0.0, 1e-15);
}

TEST(Fock, inner_products) {
  EXPECT_NEAR(std::abs(inner_product(create({k1V}), create({k1V})) - 1.0), 0.0, 1e-15);
  EXPECT_EQ(inner_product(create({k1V}), create({k1H})), Complex(0.0));
  const PhotonicState w3 = embed_qubits(w_state_qubits(3), {4, 5, 6});
  EXPECT_NEAR(inner_product(w3, w3).real(), 1.0, 1e-15);
}

TEST(Fock, inner_product_is_conjugate_linear_in_first_argument) {
  const PhotonicState a = create({k1V}).scaled(Complex(0.0, 1.0));
  const PhotonicState b = create({k1V});
  EXPECT_NEAR(std::abs(inner_product(a, b) - Complex(0.0, -1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(inner_product(b, a) - Complex(0.0, 1.0)), 0.0, 1e-15);
}

TEST(Fock, tensor_builds_gate_input) {
  const PhotonicState in = tensor(create({k1V}), two_photon_ancilla());
  ASSERT_EQ(in.size(), 1u);
  const auto& [basis, amp] = *in.terms().begin();
  EXPECT_EQ(basis.total_photons(), 3);
  EXPECT_EQ(basis.occupation(k1V), 1);
  EXPECT_EQ(basis.occupation(k2H), 2);
  EXPECT_NEAR(std::abs(amp - 1.0), 0.0, 1e-15);
}

TEST(Fock, tensor_with_vacuum_is_identity) {
  const PhotonicState x = create({k1V, k2H});
  EXPECT_LT(distance(tensor(x, PhotonicState::vacuum()), x), 1e-15);
}

TEST(Fock, tensor_norm_is_product) {
  const PhotonicState a = create({k1V}).scaled(0.5);
  const PhotonicState b = create({k2H, k2H});
  EXPECT_NEAR(tensor(a, b).norm(), a.norm() * b.norm(), 1e-14);
}

TEST(Fock, tensor_overlapping_modes_is_wiring_error) {
  EXPECT_THROW(tensor(create({k1V}), create({k1H})), std::logic_error);
}

TEST(Fock, creation_operators_commute) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> sp(0, 3), pol(0, 1), bin(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    PhotonicState base = PhotonicState::vacuum();
    for (int k = 0; k < 3; ++k) {
      base = apply_creation(base, ModeLabel{sp(rng), static_cast<Polarization>(pol(rng)), static_cast<TemporalBin>(bin(rng))});
    }
    const ModeLabel a{sp(rng), static_cast<Polarization>(pol(rng)), TemporalBin::principal};
    const ModeLabel b{sp(rng), static_cast<Polarization>(pol(rng)), TemporalBin::orthogonal};
    EXPECT_LT(distance(apply_creation(apply_creation(base, a), b), apply_creation(apply_creation(base, b), a)), 1e-12);
  }
}

TEST(Fock, annihilation_after_creation_on_number_states) {
  for (int n = 0; n < 5; ++n) {
    PhotonicState s = PhotonicState::basis(FockBasisVector{}.with_change(k2H, n).with_change(k1V, 1));
    const PhotonicState back = apply_annihilation(apply_creation(s, k2H), k2H);
    EXPECT_LT(distance(back, s.scaled(n + 1.0)), 1e-12);
  }
}

TEST(Fock, postselect_empty_list_is_error) {
  EXPECT_THROW(postselect_qubits(create({k1V}), {}), std::invalid_argument);
}

TEST(Fock, postselect_missing_photon_is_flagged) {
  const PhotonicState s = create({{4, Polarization::H}, {6, Polarization::V}});
  const PostselectionResult r = postselect_qubits(s, {4, 5, 6});
  EXPECT_FALSE(r.accepted());
  EXPECT_EQ(r.probability, 0.0);
}

TEST(Fock, postselect_requires_vacuum_elsewhere) {
  const PhotonicState s = create({{4, Polarization::H}, {5, Polarization::V}, {3, Polarization::H}});
  EXPECT_FALSE(postselect_qubits(s, {4, 5}).accepted());
  EXPECT_TRUE(postselect_qubits(s, {4, 5}, {3}).accepted());
}

TEST(Fock, postselect_distinguishable_bins_gives_classical_marginal) {
  // (|H_p V_o> + |V_p H_o>)/sqrt2 over modes 4,5: the bins reveal which photon
  // is where, so tracing them out must kill the coherence.
  PhotonicState s;
  s += create({{4, Polarization::H, TemporalBin::principal}, {5, Polarization::V, TemporalBin::orthogonal}});
  s += create({{4, Polarization::V, TemporalBin::orthogonal}, {5, Polarization::H, TemporalBin::principal}});
  s = s.normalized();
  const PostselectionResult r = postselect_qubits(s, {4, 5});
  ASSERT_TRUE(r.accepted());

  // Oracle: direct partial trace over the temporal labels.
  Eigen::Matrix4cd expected = Eigen::Matrix4cd::Zero();
  expected(1, 1) = 0.5;  // HV
  expected(2, 2) = 0.5;  // VH
  EXPECT_LT((r.rho->matrix() - expected).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_NEAR(r.probability, 1.0, 1e-14);
}

TEST(Fock, postselect_probability_matches_term_filter) {
  std::mt19937 rng(11);
  std::normal_distribution<double> g;
  std::uniform_int_distribution<int> sp(3, 6), pol(0, 1), bin(0, 1);
  for (int trial = 0; trial < 30; ++trial) {
    PhotonicState s;
    for (int t = 0; t < 20; ++t) {
      PhotonicState term = PhotonicState::vacuum();
      for (int k = 0; k < 3; ++k) {
        term = apply_creation(term, {sp(rng), static_cast<Polarization>(pol(rng)), static_cast<TemporalBin>(bin(rng))});
      }
      s += term.scaled(Complex(g(rng), g(rng)));
    }
    s = s.normalized();
    // Independent filter: count photons per spatial mode by hand.
    double expected = 0.0;
    for (const auto& [b, a] : s.terms()) {
      int c[8] = {0};
      for (const auto& [m, k] : b.occupations()) c[m.spatial] += k;
      if (c[3] == 0 && c[4] == 1 && c[5] == 1 && c[6] == 1) expected += std::norm(a);
    }
    const PostselectionResult r = postselect_qubits(s, {4, 5, 6});
    EXPECT_NEAR(r.probability, expected, 1e-14);
    if (r.probability > 1e-12) {
      EXPECT_NEAR(r.rho->matrix().trace().real(), 1.0, 1e-9);
      EXPECT_GE(r.rho->min_eigenvalue(), -1e-10);
    }
  }
}

TEST(DensityMatrixTest, rejects_invalid_matrices) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
  EXPECT_THROW(DensityMatrix(m, {0}), std::invalid_argument);  // trace 2
  m *= 0.5;
  EXPECT_THROW(DensityMatrix(m, {0, 1}), std::invalid_argument);  // dimension
  Eigen::MatrixXcd neg(2, 2);
  neg << 1.5, 0, 0, -0.5;
  EXPECT_THROW(DensityMatrix(neg, {0}), std::invalid_argument);
  Eigen::MatrixXcd asym(2, 2);
  asym << 0.5, 0.1, 0.0, 0.5;
  EXPECT_THROW(DensityMatrix(asym, {0}), std::invalid_argument);
}

TEST(DensityMatrixTest, json_fields_and_round_trip) {
  const DensityMatrix rho = DensityMatrix::from_pure(w_state_qubits(3), {4, 5, 6});
  nlohmann::json j = rho;
  EXPECT_EQ(j.at("dim").get<int>(), 8);
  EXPECT_EQ(j.at("qubit_order").get<std::vector<int>>(), (std::vector<int>{4, 5, 6}));
  EXPECT_EQ(j.at("re").size(), 64u);
  EXPECT_EQ(j.at("im").size(), 64u);
  const DensityMatrix back = density_matrix_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(back.qubit_order(), rho.qubit_order());
  EXPECT_EQ((back.matrix() - rho.matrix()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(DensityMatrixTest, json_missing_field) {
  EXPECT_THROW(density_matrix_from_json(nlohmann::json{{"dim", 2}}), std::invalid_argument);
}
