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

#ifndef VDC_TOMOGRAPHY_H
#define VDC_TOMOGRAPHY_H

#include <array>
#include <cstdint>
#include <string_view>

#include "vdc/coherence_matrix.h"
#include "vdc/observables.h"

namespace vdc {

/// Six projection states per degree of freedom, grouped as eigenvector pairs
/// of sigma_z, sigma_x, sigma_y (+ then -):
///   spatial:      u_a, u_b, (u_a + u_b)/sqrt2, (u_a - u_b)/sqrt2, (u_a + i u_b)/sqrt2, (u_a - i u_b)/sqrt2
///   polarization: x,   y,   (x + y)/sqrt2,     (x - y)/sqrt2,     (x + i y)/sqrt2,     (x - i y)/sqrt2
constexpr std::size_t kBasesPerFactor = 6;
constexpr std::size_t kJointBases = kBasesPerFactor * kBasesPerFactor;

/// Unit 2-vector of projection state `index` (0..5) in the order above.
std::array<Complex, 2> projection_vector(std::size_t index);

/// Labels "a", "b", "a+b", "a-b", "a+ib", "a-ib".
std::string_view spatial_label(std::size_t index);
/// Labels "x", "y", "x+y", "x-y", "x+iy", "x-iy".
std::string_view polarization_label(std::size_t index);

struct ProjectionBasis {
    std::size_t spatial = 0;
    std::size_t polarization = 0;

    std::array<Complex, 2> spatial_vector() const {
        return projection_vector(spatial);
    }
    std::array<Complex, 2> polarization_vector() const {
        return projection_vector(polarization);
    }
    /// spatial (x) polarization in the coherence-matrix basis.
    std::array<Complex, 4> joint_vector() const;
};

/// All 36 joint bases, spatial-major: entry 6 * s + p pairs spatial s with polarization p.
std::array<ProjectionBasis, kJointBases> projection_set();

/// Interferometer and detector imperfections applied by `measure`.
struct NoiseModel {
    /// Gaussian error on each intensity, as a fraction of that intensity.
    double sigma_rel = 0;
    /// Factor on the coherences between paths a and b (1 = perfect overlap).
    double sys_visibility = 1;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument unless sigma_rel >= 0 and 0 < sys_visibility <= 1.
    void validate() const;
};

struct TomographyRecord {
    /// Relative intensities indexed by 6 * spatial + polarization.
    std::array<double, kJointBases> intensities{};
    NoiseModel noise;

    double at(std::size_t spatial, std::size_t polarization) const {
        return intensities[kBasesPerFactor * spatial + polarization];
    }
};

/// Simulated joint projections. Order of operations: path coherences scaled
/// by sys_visibility, ideal Tr(W Pi) per basis, multiplicative Gaussian error
/// with the record's own counter-based stream, clip at zero.
TomographyRecord measure(const CoherenceMatrix &w, const NoiseModel &noise = {});

/// The 16 two-factor Stokes parameters S_ij = Tr(W sigma_i (x) sigma_j),
/// averaged over every redundant estimate in the 36 intensities and
/// normalized to S_00 = 1. Throws std::invalid_argument for a record with no signal.
std::array<std::array<double, 4>, 4> stokes_parameters(const TomographyRecord &record);

struct Reconstruction {
    CoherenceMatrix w;
    /// Linear-inversion estimate before positivity projection.
    CMat4 raw;
    /// Smallest eigenvalue of `raw`.
    double min_raw_eigenvalue = 0;
    /// True when `raw` had an eigenvalue below -1e-10.
    bool nonphysical = false;
};

/// Linear inversion W = 1/4 sum S_ij sigma_i (x) sigma_j, then negative
/// eigenvalues clipped to zero and the trace renormalized.
Reconstruction reconstruct(const TomographyRecord &record);

/// Clips negative eigenvalues and renormalizes the trace. Reports the
/// smallest eigenvalue seen through `min_eigenvalue` when non-null.
CoherenceMatrix project_psd(const CMat4 &m, double *min_eigenvalue = nullptr);

/// Wootters concurrence max(0, l1 - l2 - l3 - l4), with l_k the square roots
/// of the eigenvalues of sqrt(W) W~ sqrt(W), W~ = (sy (x) sy) conj(W) (sy (x) sy).
/// The l_k are obtained as singular values of an equivalent symmetric matrix.
double wootters_concurrence(const CoherenceMatrix &w);

/// D = |W11 + W22 - W33 - W44|, V = 2 |W13 + W24|, C from wootters_concurrence.
ObservableTriple observables_from_matrix(const CoherenceMatrix &w);

/// sqrt(2 Tr(rho_pol^2) - 1) of the reduced polarization matrix.
double polarization_degree(const CoherenceMatrix &w);

/// Divides V by the interferometer's maximum visibility (capped at 1).
/// D and C are left alone.
ObservableTriple correct_visibility(const ObservableTriple &measured, double sys_visibility);

/// Undoes the systematic degradation on the matrix itself: the spatial
/// off-diagonal block is divided by `sys_visibility`, then the result is
/// projected back onto the physical set. Restores both V and C.
CoherenceMatrix correct_coherences(const CoherenceMatrix &w, double sys_visibility);

enum class Correction {
    kNone,
    kVisibility,  // correct_visibility on the triple
    kCoherence,   // correct_coherences on the matrix
};

/// Observables of a reconstructed matrix after the requested correction.
ObservableTriple corrected_observables(const CoherenceMatrix &w, double sys_visibility, Correction mode);

}  // namespace vdc

#endif
