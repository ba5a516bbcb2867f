// Copyright 2026 The vdclab Authors
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

#ifndef VDC_PREPARE_H
#define VDC_PREPARE_H

#include <cstdint>
#include <optional>
#include <vector>

#include "vdc/field.h"
#include "vdc/observables.h"

namespace vdc {

/// Beam settings for the canonical preparation s_a = x, s_b = e^{i xi} cos(theta) x + sin(theta) y.
struct PreparationParams {
    double r = 1;      // |B / A|
    double theta = 0;  // [0, pi/2]
    double xi = 0;
    /// Set when theta cannot be observed (one path dark); theta is then 0.
    bool theta_indeterminate = false;
};

/// Forward map: (V, D, C) of the canonical beam with the given parameters.
ObservableTriple predict(const PreparationParams &params);

/// Inverse map onto the branch R <= 1 with cos(theta) >= 0.
/// Throws std::invalid_argument for negative components or when
/// |v^2 + d^2 + c^2 - 1| exceeds 1e-9 (the message carries the defect).
PreparationParams solve_target(double v, double d, double c);
PreparationParams solve_target(const ObservableTriple &target);

/// Rescales a nonzero triple onto the unit sphere.
ObservableTriple project_to_sphere(const ObservableTriple &t);

/// Real positive A, B with |B/A| = R and |A|^2 + |B|^2 = total_intensity.
/// Throws std::invalid_argument for nonpositive intensity.
TwoPathBeam realize(const PreparationParams &params, double total_intensity = 1);

struct GridState {
    int index = 0;  // 1..13
    ObservableTriple target;
    double r_squared = 0;
    double cos_theta = 0;  // |cos(theta)|
    PreparationParams params;
    /// Laboratory values for the same target, as reported with the data set.
    std::optional<ObservableTriple> measured;
};

/// The 13 sphere nodes on the lines V = 0, D = 0, C = 0, C = 1/2,
/// C = sqrt(3)/2, V/D = sqrt(3) and V/D = 1/sqrt(3), ordered by rows of C.
std::vector<GridState> grid_states();

/// Area-uniform points on the positive octant of the unit sphere.
std::vector<ObservableTriple> sample_octant(std::size_t n, std::uint64_t seed);

}  // namespace vdc

#endif
