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

#include "wexpand/sources.hpp"

#include <numbers>
#include <sstream>

#include "gtest/gtest.h"
#include "wexpand/hom.hpp"
#include "wexpand/physical.hpp"
#include "wexpand/tomography.hpp"

using namespace wexpand;

namespace {

const ModeLabel k2H{2, Polarization::H};

SourceParams with_nu(double nu, int n_max = 4) {
  SourceParams p;
  p.nu = nu;
  p.n_max = n_max;
  return p;
}

}  // namespace

TEST(Ancilla, is_normalized_two_photon_fock_state) {
  const PhotonicState a = two_photon_ancilla();
  EXPECT_NEAR(a.norm(), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(a.amplitude(FockBasisVector{}.with_change(k2H, 2)) - 1.0), 0.0, 1e-15);
}

TEST(Ancilla, overlap_with_coherent_two_photon_component) {
  // Oracle (mpmath): e^{-nu/2} nu / sqrt2 at nu = 0.3.
  const PhotonicState wcp = weak_coherent_pulse(with_nu(0.3, 20));
  EXPECT_NEAR(inner_product(two_photon_ancilla(), wcp).real(), 0.18258373402545284, 1e-12);
}

TEST(Wcp, two_photon_probability) {
  // Oracle: Poisson term e^{-0.3} 0.3^2 / 2.
  const PhotonicState wcp = weak_coherent_pulse(with_nu(0.3, 20));
  EXPECT_NEAR(std::norm(wcp.amplitude(FockBasisVector{}.with_change(k2H, 2))), 0.0333368199306773, 1e-13);
  EXPECT_NEAR(poisson_probability(2, 0.3), 0.0333368199306773, 1e-15);
}

TEST(Wcp, truncated_two_photon_probability_close_to_small_nu_estimate) {
  for (double nu : {0.01, 0.03, 0.1}) {
    const PhotonicState wcp = weak_coherent_pulse(with_nu(nu));
    const double p2 = std::norm(wcp.amplitude(FockBasisVector{}.with_change(k2H, 2)));
    EXPECT_NEAR(p2, nu * nu / 2.0, nu * nu * nu) << nu;
  }
}

TEST(Wcp, zero_mean_is_vacuum) {
  const PhotonicState wcp = weak_coherent_pulse(with_nu(0.0));
  ASSERT_EQ(wcp.size(), 1u);
  EXPECT_TRUE(wcp.terms().begin()->first.occupations().empty());
}

TEST(Wcp, default_truncation_weight_is_small) {
  double kept = 0.0;
  for (int n = 0; n <= 4; ++n) kept += poisson_probability(n, 0.3);
  EXPECT_LT(1.0 - kept, 1e-4);
}

TEST(Sources, outputs_are_normalized) {
  for (double nu : {0.0, 0.03, 0.3, 0.9}) {
    for (int n_max : {2, 4, 8}) {
      SourceParams p = with_nu(nu, n_max);
      p.wcp_phase = 0.7;
      EXPECT_NEAR(weak_coherent_pulse(p).norm(), 1.0, 1e-12);
    }
  }
  for (bool second : {false, true}) {
    SourceParams p;
    p.gamma = 0.05;
    p.spdc_second_order = second;
    EXPECT_NEAR(spdc_pair(p, Pump::v_polarized).norm(), 1.0, 1e-12);
    EXPECT_NEAR(spdc_pair(p, Pump::diagonal).norm(), 1.0, 1e-12);
  }
}

TEST(Sources, parameter_validation) {
  SourceParams p;
  p.n_max = 1;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.nu = -1.0;
  EXPECT_THROW(weak_coherent_pulse(p), std::invalid_argument);
  p = {};
  p.gamma = 0.2;
  p.nu = 0.3;
  EXPECT_NO_THROW(p.validate());
  EXPECT_FALSE(p.warnings().empty());
  EXPECT_TRUE(SourceParams{}.warnings().empty());
}

TEST(Spdc, diagonal_pump_gives_w2) {
  SourceParams p;
  p.gamma = 0.01;
  const PostselectionResult r = physical_w2(p);
  ASSERT_TRUE(r.accepted());
  EXPECT_NEAR(fidelity(*r.rho, w_state_qubits(2)), 1.0, 1e-12);
  EXPECT_EQ(r.rho->qubit_order(), (std::vector<int>{0, 1}));
}

TEST(Spdc, v_pump_heralds_h_photon_in_mode_one) {
  SourceParams p;
  p.gamma = 0.01;
  const PostselectionResult r = postselect_qubits(spdc_pair(p, Pump::v_polarized), {1}, {0});
  ASSERT_TRUE(r.accepted());
  EXPECT_NEAR((*r.rho)(0, 0).real(), 1.0, 1e-12);
  EXPECT_NEAR(r.probability, 0.01 / 1.01, 1e-12);
}

TEST(Spdc, zero_gamma_is_vacuum) {
  SourceParams p;
  p.gamma = 0.0;
  const PhotonicState s = spdc_pair(p, Pump::diagonal);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_TRUE(s.terms().begin()->first.occupations().empty());
}

TEST(Physical, ideal_limit_matches_fock_gate) {
  // Pair and two-photon pulse on vacuum background: the fourfold rate is the
  // gate probability times the source weights.
  SourceParams p;
  p.gamma = 1e-4;
  p.nu = 0.3;
  const PostselectionResult r = physical_w1_to_w3(p);
  ASSERT_TRUE(r.accepted());
  EXPECT_GT(fidelity(*r.rho, w_state_qubits(3)), 0.99);
  const double pair = p.gamma / (1.0 + p.gamma);
  const double two = std::norm(weak_coherent_pulse(p).amplitude(FockBasisVector{}.with_change(k2H, 2)));
  EXPECT_NEAR(r.probability, pair * two * 3.0 / 16.0, 1e-3 * r.probability);
}

TEST(Physical, wcp_phase_does_not_change_postselected_state) {
  SourceParams p;
  p.gamma = 0.01;
  p.spdc_second_order = true;
  const PostselectionResult ref = physical_w1_to_w3(p);
  for (double phase : {std::numbers::pi / 2, std::numbers::pi}) {
    p.wcp_phase = phase;
    const PostselectionResult r = physical_w1_to_w3(p);
    EXPECT_NEAR(r.probability, ref.probability, 1e-15);
    EXPECT_LT((r.rho->matrix() - ref.rho->matrix()).cwiseAbs().maxCoeff(), 1e-12) << phase;
  }
  p.wcp_phase = std::numbers::pi / 2;
  const PostselectionResult w4 = physical_w2_to_w4(p);
  p.wcp_phase = 0.0;
  EXPECT_LT((physical_w2_to_w4(p).rho->matrix() - w4.rho->matrix()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Physical, double_pairs_without_pulse_are_suppressed) {
  SourceParams p;
  p.nu = 0.0;
  p.spdc_second_order = true;
  for (double gamma : {1e-3, 1e-2, 1e-1}) {
    p.gamma = gamma;
    EXPECT_LE(physical_w1_to_w3(p).probability, gamma * gamma) << gamma;
  }
}

TEST(Physical, contamination_grows_with_gamma_over_nu) {
  SourceParams p;
  p.nu = 0.3;
  p.spdc_second_order = true;
  double last = 1.0;
  for (double gamma : {1e-3, 1e-2, 5e-2, 1.5e-1}) {
    p.gamma = gamma;
    const double f = fidelity(*physical_w1_to_w3(p).rho, w_state_qubits(3));
    EXPECT_LT(f, last) << gamma;
    last = f;
  }
  EXPECT_LT(last, 0.95);
}

TEST(Physical, w2_seed_expands_to_w4) {
  SourceParams p;
  p.gamma = 1e-4;
  const PostselectionResult r = physical_w2_to_w4(p);
  ASSERT_TRUE(r.accepted());
  EXPECT_GT(fidelity(*r.rho, w_state_qubits(4)), 0.99);
  EXPECT_EQ(r.rho->qubit_order(), (std::vector<int>{0, 4, 5, 6}));
}

TEST(Hom, ideal_two_photon_interference_cancels) {
  // Heralded H photon and one H photon in mode 2 at the first splitter.
  const PhotonicState in = tensor(apply_creation(PhotonicState::vacuum(), ModeLabel{1, Polarization::H}),
                                  apply_creation(PhotonicState::vacuum(), k2H));
  const PhotonicState out = apply_beamsplitter(in, ExpansionGate{}.first);
  EXPECT_LT(coincidence_probability(out, {modes::internal, modes::out4}), 1e-12);
}

TEST(Hom, curve_is_even_and_flattens) {
  SourceParams p = with_nu(0.03);
  p.gamma = 1e-3;
  const double lc = p.coherence_length_um;
  std::vector<double> delays;
  for (int k = -20; k <= 20; ++k) delays.push_back(k * 0.1 * lc);
  const auto curve = hom_scan(delays, p);
  for (std::size_t i = 0; i < curve.size(); ++i) {
    EXPECT_NEAR(curve[i].coincidence_probability, curve[curve.size() - 1 - i].coincidence_probability, 1e-12 * curve[i].coincidence_probability);
  }
  for (std::size_t i = 1; i <= 20; ++i) {
    EXPECT_LE(curve[i].coincidence_probability, curve[i - 1].coincidence_probability * (1 + 1e-12));
  }
  const double far = hom_coincidence_at_overlap(p, 0.0);
  const auto tail = hom_scan({10 * lc, -10 * lc}, p);
  for (const auto& pt : tail) EXPECT_NEAR(pt.coincidence_probability, far, 1e-6 * far);
  EXPECT_THROW(hom_scan({}, p), std::invalid_argument);
}

TEST(Hom, calibration_reaches_target_visibility_and_width) {
  SourceParams p = with_nu(0.03);
  const HomCalibration cal = calibrate_hom(p, 0.85);
  EXPECT_NEAR(cal.visibility, 0.85, 1e-9);
  EXPECT_GT(cal.overlap, 0.85);
  EXPECT_LT(cal.overlap, 1.0);
  // The dip depth is quadratic in the overlap at this nu, so the fitted
  // exponent is close to one half.
  EXPECT_NEAR(cal.exponent_scale, 0.5, 0.01);
  EXPECT_THROW(calibrate_hom(p, 1.0), std::domain_error);
}

TEST(Hom, csv_header_and_rows) {
  std::ostringstream os;
  write_hom_csv(os, {{0.0, 0.25}, {10.0, 0.5}});
  const std::string text = os.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "delay_um,coincidence_probability");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
}
