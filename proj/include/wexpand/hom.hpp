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
#include <ostream>
#include <stdexcept>
#include <vector>

#include "wexpand/gates.hpp"
#include "wexpand/optics.hpp"
#include "wexpand/sources.hpp"

namespace wexpand {

// Two-photon interference between the heralded SPDC photon (mode 1) and the
// weak coherent pulse (mode 2), read out as threefold coincidences on the
// herald detector and detectors 4 and 5.

struct HomPoint {
  double delay_um;
  double coincidence_probability;
};

/// Threefold coincidence probability per pulse at a given mode overlap.
inline double hom_coincidence_at_overlap(const SourceParams& p, double overlap) {
  const PhotonicState input = tensor(spdc_pair(p, Pump::v_polarized), weak_coherent_pulse(p));
  const PhotonicState out = run_gate(apply_delay(input, modes::ancilla, overlap));
  return coincidence_probability(out, {modes::untouched, modes::out4, modes::out5});
}

inline double hom_overlap_at(double delay_um, const SourceParams& p) {
  return gaussian_overlap(delay_um, p.coherence_length_um, p.exponent_scale, p.overlap);
}

inline std::vector<HomPoint> hom_scan(const std::vector<double>& delays_um, const SourceParams& p) {
  if (delays_um.empty()) throw std::invalid_argument("hom_scan: empty delay list");
  p.validate();
  std::vector<HomPoint> out;
  out.reserve(delays_um.size());
  for (double d : delays_um) out.push_back({d, hom_coincidence_at_overlap(p, hom_overlap_at(d, p))});
  return out;
}

/// 1 - C(zero delay) / C(far from zero delay).
inline double hom_visibility(const SourceParams& p) {
  const double far = hom_coincidence_at_overlap(p, 0.0);
  if (far <= 0.0) throw std::domain_error("hom_visibility: no coincidences away from the dip");
  return 1.0 - hom_coincidence_at_overlap(p, p.overlap) / far;
}

struct HomCalibration {
  double overlap;         // peak overlap giving the target visibility
  double exponent_scale;  // makes the dip depth fall to 1/e at |delay| = l_c
  double visibility;
};

/// Fits the two free knobs of the overlap model to a Gaussian dip of the given
/// visibility whose depth falls by 1/e at one coherence length. Both are
/// one-dimensional monotone problems solved by bisection.
inline HomCalibration calibrate_hom(SourceParams p, double target_visibility) {
  p.validate();
  p.overlap = 1.0;
  const double vmax = hom_visibility(p);
  if (!(target_visibility > 0.0 && target_visibility <= vmax)) {
    throw std::domain_error("calibrate_hom: visibility " + std::to_string(target_visibility) +
                            " not reachable (max " + std::to_string(vmax) + " at this nu)");
  }
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    p.overlap = 0.5 * (lo + hi);
    (hom_visibility(p) < target_visibility ? lo : hi) = p.overlap;
  }
  p.overlap = 0.5 * (lo + hi);

  const double far = hom_coincidence_at_overlap(p, 0.0);
  const double depth0 = far - hom_coincidence_at_overlap(p, p.overlap);
  const double target_depth = depth0 * std::exp(-1.0);
  lo = 1e-3;
  hi = 10.0;
  for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
    p.exponent_scale = 0.5 * (lo + hi);
    const double depth = far - hom_coincidence_at_overlap(p, hom_overlap_at(p.coherence_length_um, p));
    // Larger scale -> narrower dip -> smaller depth at delay = l_c.
    (depth > target_depth ? lo : hi) = p.exponent_scale;
  }
  p.exponent_scale = 0.5 * (lo + hi);
  return {p.overlap, p.exponent_scale, hom_visibility(p)};
}

inline void write_hom_csv(std::ostream& os, const std::vector<HomPoint>& points) {
  os << "delay_um,coincidence_probability\n";
  os.precision(17);
  for (const auto& pt : points) os << pt.delay_um << ',' << pt.coincidence_probability << '\n';
}

}  // namespace wexpand
