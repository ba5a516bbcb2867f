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

#ifndef VDC_OBSERVABLES_H
#define VDC_OBSERVABLES_H

#include "vdc/coherence_matrix.h"
#include "vdc/field.h"

namespace vdc {

/// Visibility, distinguishability and concurrence of one beam.
struct ObservableTriple {
    double v = 0;
    double d = 0;
    double c = 0;

    /// sqrt(v^2 + d^2)
    double p() const {
        return std::sqrt(v * v + d * d);
    }
    /// v^2 + d^2 + c^2
    double sum() const {
        return v * v + d * d + c * c;
    }
};

/// 2 |gamma| sqrt(I_a I_b) / (I_a + I_b)
double visibility(const TwoPathBeam &beam);

/// |I_a - I_b| / (I_a + I_b)
double distinguishability(const TwoPathBeam &beam);

/// 2 sqrt((1 - |gamma|^2) I_a I_b) / (I_a + I_b), valid for the pure two-path field.
double concurrence_pure(const TwoPathBeam &beam);

/// sqrt(2 Tr(rho^2) - 1) of a unit-trace 2x2 polarization matrix.
double polarization_degree(const CMat2 &rho);

/// 2 sqrt(det rho_pol): concurrence of a pure state from its reduced matrix.
double concurrence_from_reduced(const CMat2 &rho);

/// Degree of polarization, evaluated both from sqrt(V^2 + D^2) and from the
/// reduced polarization matrix of the beam. Returns the reduced-matrix value;
/// throws std::logic_error if the two squared values differ by more than 1e-10.
double degree_of_polarization(const TwoPathBeam &beam);

/// v^2 + d^2 + c^2
double identity_sum(const ObservableTriple &triple);

/// 1 - V^2 - D^2. Cross-checked against 4 I_a I_b (1 - |gamma|^2) / (I_a + I_b)^2
/// and against C^2; throws std::logic_error on a mismatch beyond 1e-12.
double duality_defect(const TwoPathBeam &beam);

/// (V, D, C) from the analytic formulas.
ObservableTriple observe(const TwoPathBeam &beam);

}  // namespace vdc

#endif
