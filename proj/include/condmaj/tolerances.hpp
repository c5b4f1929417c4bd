// Copyright 2026 The condmaj Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

namespace condmaj {

// Stochasticity validation for probability vectors and matrices.
inline constexpr double kEpsProb = 1e-9;
// Relative tolerance for proportional-column detection in the standard form.
inline constexpr double kEpsProp = 1e-9;
// Witness reconstruction and closed-form sign tests.
inline constexpr double kEpsWit = 1e-7;
// Phase-I objective threshold below which the LP is declared feasible.
inline constexpr double kEpsLp = 1e-8;
// PSD, Hermiticity, trace and completeness checks on quantum objects.
inline constexpr double kEpsPsd = 1e-9;
// Eigenvalues closer than this form a degenerate block.
inline constexpr double kEpsDegenerate = 1e-10;

}  // namespace condmaj
