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

#include <vector>

namespace wexpand {

/// Spatial mode ids of the expansion setup.
namespace modes {
inline constexpr int untouched = 0;  // first qubit that never enters the gate
inline constexpr int input = 1;
inline constexpr int ancilla = 2;
inline constexpr int internal = 3;  // between the two beamsplitters
inline constexpr int out4 = 4;
inline constexpr int out5 = 5;
inline constexpr int out6 = 6;
inline constexpr int aux = 7;  // vacuum input of the second beamsplitter

/// Carrier modes of k untouched qubits, ascending: 0, then 8, 9, ...
inline std::vector<int> untouched_modes(int k) {
  std::vector<int> out;
  for (int i = 0; i < k; ++i) out.push_back(i == 0 ? untouched : aux + i);
  return out;
}
}  // namespace modes

}  // namespace wexpand
