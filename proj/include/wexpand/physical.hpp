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

#include <numbers>

#include "wexpand/gates.hpp"
#include "wexpand/optics.hpp"
#include "wexpand/sources.hpp"

// Gate runs driven by the photon sources instead of ideal Fock inputs. The
// returned probabilities are per pump pulse.

namespace wexpand {

/// SPDC photon in mode 0 heralds the mode-1 photon, which a half-wave plate
/// turns from H to V before the gate. Fourfold coincidence 0, 4, 5, 6 with
/// mode 0 read by a threshold detector.
inline PostselectionResult physical_w1_to_w3(const SourceParams& p, const Circuit& circuit = ExpansionGate{}.circuit()) {
  const PhotonicState pair =
      apply_jones(spdc_pair(p, Pump::v_polarized), modes::input, JonesUnitary::rotation(std::numbers::pi / 2));
  const PhotonicState wcp = apply_delay(weak_coherent_pulse(p), modes::ancilla, p.overlap);
  return postselect_qubits(run_gate(tensor(pair, wcp), circuit), {modes::out4, modes::out5, modes::out6},
                           {modes::untouched});
}

/// Diagonally pumped pair (|W2> on modes 0, 1) expanded to |W4> on 0, 4, 5, 6.
inline PostselectionResult physical_w2_to_w4(const SourceParams& p, const Circuit& circuit = ExpansionGate{}.circuit()) {
  const PhotonicState pair = spdc_pair(p, Pump::diagonal);
  const PhotonicState wcp = apply_delay(weak_coherent_pulse(p), modes::ancilla, p.overlap);
  return postselect_qubits(run_gate(tensor(pair, wcp), circuit),
                           {modes::untouched, modes::out4, modes::out5, modes::out6});
}

/// The seed pair itself, one photon in each of modes 0 and 1.
inline PostselectionResult physical_w2(const SourceParams& p) {
  return postselect_qubits(spdc_pair(p, Pump::diagonal), {modes::untouched, modes::input});
}

}  // namespace wexpand
