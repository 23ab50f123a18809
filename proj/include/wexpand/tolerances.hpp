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

/// Numerical tolerances shared by every module. Nothing else in the library
/// hard-codes a threshold.
namespace wexpand::tol {

/// Amplitudes with modulus below this are dropped after each elementary
/// Fock-space operation.
inline constexpr double amplitude_prune = 1e-14;

inline constexpr double unitary = 1e-12;

/// Normalized states: |norm^2 - 1| within this.
inline constexpr double state_norm = 1e-9;

/// Density-matrix validity.
inline constexpr double hermitian = 1e-10;
inline constexpr double min_eigenvalue = -1e-10;
inline constexpr double trace = 1e-9;

/// A post-selection whose retained weight is below this is reported empty.
inline constexpr double empty_postselection = 1e-28;

/// Iterative maximum-likelihood defaults.
inline constexpr double probability_floor = 1e-12;
inline constexpr double imlm_gain = 1e-10;
inline constexpr int imlm_max_iterations = 100000;

}  // namespace wexpand::tol
