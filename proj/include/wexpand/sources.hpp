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

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "wexpand/fock.hpp"
#include "wexpand/modes.hpp"

namespace wexpand {

struct SourceParams {
  double nu = 0.3;        // mean photon number of the weak coherent pulse
  double gamma = 1e-3;    // SPDC pair probability per pulse
  int n_max = 4;          // Fock truncation of the weak coherent pulse
  double coherence_length_um = 144.0;
  double overlap = 1.0;   // peak mode overlap between WCP and SPDC photons
  double exponent_scale = 0.5;  // xi(delay) = overlap * exp(-scale (delay/l_c)^2)
  double wcp_phase = 0.0;
  bool spdc_second_order = false;

  void validate() const {
    if (!(nu >= 0.0)) throw std::invalid_argument("SourceParams: nu must be >= 0");
    if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("SourceParams: gamma must be in [0, 1)");
    if (n_max < 2) throw std::invalid_argument("SourceParams: n_max must be >= 2");
    if (!(overlap >= 0.0 && overlap <= 1.0)) throw std::invalid_argument("SourceParams: overlap outside [0, 1]");
    if (!(coherence_length_um > 0.0)) throw std::invalid_argument("SourceParams: coherence length must be > 0");
  }

  /// Soft checks; the pulse regime wants gamma << nu << 1.
  std::vector<std::string> warnings() const {
    std::vector<std::string> w;
    if (gamma > 0.0 && nu > 0.0 && gamma >= 0.1 * nu) w.push_back("gamma is not small compared with nu");
    if (nu >= 1.0) w.push_back("nu is not small compared with 1");
    return w;
  }
};

/// |2_H> in the given spatial mode.
inline PhotonicState two_photon_ancilla(int spatial = modes::ancilla) {
  const ModeLabel h{spatial, Polarization::H, TemporalBin::principal};
  return apply_creation(apply_creation(PhotonicState::vacuum(), h), h).normalized();
}

/// Poisson weight of n photons at mean nu.
inline double poisson_probability(int n, double nu) {
  return std::exp(-nu + n * std::log(nu) - std::lgamma(n + 1.0));
}

/// H-polarized coherent state truncated at n_max photons and renormalized.
inline PhotonicState weak_coherent_pulse(const SourceParams& p, int spatial = modes::ancilla) {
  p.validate();
  if (p.nu == 0.0) return PhotonicState::vacuum();
  const ModeLabel h{spatial, Polarization::H, TemporalBin::principal};
  PhotonicState s;
  FockBasisVector b;
  for (int n = 0; n <= p.n_max; ++n) {
    const double mag = std::sqrt(poisson_probability(n, p.nu));
    s.add(b, std::polar(mag, n * p.wcp_phase));
    b = b.with_change(h, +1);
  }
  return s.normalized();
}

enum class Pump { v_polarized, diagonal };

/// Pair-creation operator applied to a state: a_0H a_1H for the V pump,
/// (a_0H a_1V + a_0V a_1H)/sqrt 2 for the diagonal pump. The diagonal form is
/// the sandwich source's |HH>+|VV> after a local half-wave rotation on one arm.
inline PhotonicState apply_pair_creation(const PhotonicState& s, Pump pump, int mode_a, int mode_b) {
  auto op = [&](const PhotonicState& x, Polarization pa, Polarization pb) {
    return apply_creation(apply_creation(x, ModeLabel{mode_a, pa, TemporalBin::principal}),
                          ModeLabel{mode_b, pb, TemporalBin::principal});
  };
  if (pump == Pump::v_polarized) return op(s, Polarization::H, Polarization::H);
  PhotonicState r = op(s, Polarization::H, Polarization::V);
  r += op(s, Polarization::V, Polarization::H);
  return r.scaled(1.0 / std::sqrt(2.0));
}

/// Vacuum + sqrt(gamma) K|vac> (+ gamma/2 K^2|vac> when second order is on),
/// normalized, with K the pair-creation operator on (mode_a, mode_b).
inline PhotonicState spdc_pair(const SourceParams& p, Pump pump, int mode_a = modes::untouched,
                               int mode_b = modes::input) {
  p.validate();
  if (p.gamma == 0.0) return PhotonicState::vacuum();
  const PhotonicState one = apply_pair_creation(PhotonicState::vacuum(), pump, mode_a, mode_b);
  PhotonicState s = PhotonicState::vacuum();
  s += one.scaled(std::sqrt(p.gamma));
  if (p.spdc_second_order) s += apply_pair_creation(one, pump, mode_a, mode_b).scaled(p.gamma / 2.0);
  return s.normalized();
}

}  // namespace wexpand
