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

#ifndef VDC_COHERENCE_MATRIX_H
#define VDC_COHERENCE_MATRIX_H

#include "vdc/cxmat.h"

namespace vdc {

/// Basis index of the 4x4 coherence matrix: {u_a x, u_a y, u_b x, u_b y}.
constexpr std::size_t basis_index(std::size_t path, std::size_t polarization) {
    return 2 * path + polarization;
}

/// A joint spatial x polarization coherence matrix: Hermitian, unit trace,
/// positive semidefinite. The checked constructor enforces all three
/// (Hermitian and trace to 1e-10, eigenvalues to -1e-9).
class CoherenceMatrix {
   public:
    /// Throws std::invalid_argument naming the violated property.
    explicit CoherenceMatrix(const CMat4 &w);

    /// Builds |psi><psi| / <psi|psi>. Throws on a zero vector.
    static CoherenceMatrix from_state(const std::array<Complex, 4> &psi);

    /// Rescales a Hermitian PSD matrix to unit trace, then validates.
    static CoherenceMatrix normalized(const CMat4 &w);

    const CMat4 &matrix() const {
        return w_;
    }
    const Complex &operator()(std::size_t row, std::size_t col) const {
        return w_(row, col);
    }

    /// Tr(W^2)
    double purity() const;

    /// Reduced 2x2 polarization matrix (spatial index traced out).
    CMat2 polarization_matrix() const {
        return partial_trace(w_, Subsystem::kSpatial);
    }
    CMat2 spatial_matrix() const {
        return partial_trace(w_, Subsystem::kPolarization);
    }

   private:
    CMat4 w_;
};

/// Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2.
double fidelity(const CoherenceMatrix &a, const CoherenceMatrix &b);

}  // namespace vdc

#endif
