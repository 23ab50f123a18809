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

#include "wexpand/density_matrix.hpp"
#include "wexpand/entanglement.hpp"
#include "wexpand/fock.hpp"
#include "wexpand/gates.hpp"
#include "wexpand/hom.hpp"
#include "wexpand/modes.hpp"
#include "wexpand/optics.hpp"
#include "wexpand/physical.hpp"
#include "wexpand/scenario.hpp"
#include "wexpand/sources.hpp"
#include "wexpand/tolerances.hpp"
#include "wexpand/tomography.hpp"
