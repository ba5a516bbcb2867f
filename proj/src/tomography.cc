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

#include "vdc/tomography.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "vdc/random.h"

namespace vdc {

namespace {

constexpr double kClipTolerance = 1e-10;

// Pauli index measured by each eigenvector pair: z, x, y.
constexpr std::size_t kPairPauli[3] = {3, 1, 2};

}  // namespace

std::array<Complex, 2> projection_vector(std::size_t index) {
    const double h = 1 / std::sqrt(2.0);
    switch (index) {
        case 0:
            return {1.0, 0.0};
        case 1:
            return {0.0, 1.0};
        case 2:
            return {h, h};
        case 3:
            return {h, -h};
        case 4:
            return {h, Complex(0, h)};
        case 5:
            return {h, Complex(0, -h)};
        default:
            throw std::out_of_range("projection_vector: index must be in 0..5");
    }
}

std::string_view spatial_label(std::size_t index) {
    static constexpr std::string_view kLabels[] = {"a", "b", "a+b", "a-b", "a+ib", "a-ib"};
    if (index >= kBasesPerFactor) {
        throw std::out_of_range("spatial_label: index must be in 0..5");
    }
    return kLabels[index];
}

std::string_view polarization_label(std::size_t index) {
    static constexpr std::string_view kLabels[] = {"x", "y", "x+y", "x-y", "x+iy", "x-iy"};
    if (index >= kBasesPerFactor) {
        throw std::out_of_range("polarization_label: index must be in 0..5");
    }
    return kLabels[index];
}

std::array<Complex, 4> ProjectionBasis::joint_vector() const {
    const auto s = spatial_vector();
    const auto p = polarization_vector();
    return {s[0] * p[0], s[0] * p[1], s[1] * p[0], s[1] * p[1]};
}

std::array<ProjectionBasis, kJointBases> projection_set() {
    std::array<ProjectionBasis, kJointBases> out;
    for (std::size_t s = 0; s < kBasesPerFactor; s++) {
        for (std::size_t p = 0; p < kBasesPerFactor; p++) {
            out[kBasesPerFactor * s + p] = {s, p};
        }
    }
    return out;
}

void NoiseModel::validate() const {
    if (!(sigma_rel >= 0) || !std::isfinite(sigma_rel)) {
        throw std::invalid_argument("noise: sigma_rel must be >= 0");
    }
    if (!(sys_visibility > 0 && sys_visibility <= 1)) {
        throw std::invalid_argument("noise: sys_visibility must lie in (0, 1]");
    }
}

TomographyRecord measure(const CoherenceMatrix &w, const NoiseModel &noise) {
    noise.validate();
    CMat4 degraded = w.matrix();
    for (std::size_t i = 0; i < 2; i++) {
        for (std::size_t j = 2; j < 4; j++) {
            degraded(i, j) *= noise.sys_visibility;
            degraded(j, i) *= noise.sys_visibility;
        }
    }

    TomographyRecord record;
    record.noise = noise;
    CounterRng rng(noise.seed, 0);
    const auto bases = projection_set();
    for (std::size_t k = 0; k < kJointBases; k++) {
        const auto v = bases[k].joint_vector();
        const auto wv = degraded * v;
        double ideal = 0;
        for (std::size_t i = 0; i < 4; i++) {
            ideal += (std::conj(v[i]) * wv[i]).real();
        }
        ideal = std::max(ideal, 0.0);
        double observed = ideal;
        if (noise.sigma_rel > 0) {
            observed = ideal * (1 + noise.sigma_rel * rng.normal());
        }
        record.intensities[k] = std::max(observed, 0.0);
    }
    return record;
}

std::array<std::array<double, 4>, 4> stokes_parameters(const TomographyRecord &record) {
    std::array<std::array<double, 4>, 4> sums{};
    std::array<std::array<int, 4>, 4> counts{};
    for (std::size_t ms = 0; ms < 3; ms++) {
        for (std::size_t mp = 0; mp < 3; mp++) {
            double total = 0, by_s = 0, by_p = 0, by_sp = 0;
            for (std::size_t es = 0; es < 2; es++) {
                for (std::size_t ep = 0; ep < 2; ep++) {
                    const double i = record.at(2 * ms + es, 2 * mp + ep);
                    const double sign_s = es == 0 ? 1 : -1;
                    const double sign_p = ep == 0 ? 1 : -1;
                    total += i;
                    by_s += sign_s * i;
                    by_p += sign_p * i;
                    by_sp += sign_s * sign_p * i;
                }
            }
            const std::size_t ps = kPairPauli[ms];
            const std::size_t pp = kPairPauli[mp];
            sums[0][0] += total;
            counts[0][0]++;
            sums[ps][0] += by_s;
            counts[ps][0]++;
            sums[0][pp] += by_p;
            counts[0][pp]++;
            sums[ps][pp] += by_sp;
            counts[ps][pp]++;
        }
    }
    const double s00 = sums[0][0] / counts[0][0];
    if (!(s00 > 0)) {
        throw std::invalid_argument("reconstruct: tomography record carries no signal");
    }
    std::array<std::array<double, 4>, 4> s{};
    for (std::size_t i = 0; i < 4; i++) {
        for (std::size_t j = 0; j < 4; j++) {
            s[i][j] = sums[i][j] / counts[i][j] / s00;
        }
    }
    return s;
}

CoherenceMatrix project_psd(const CMat4 &m, double *min_eigenvalue) {
    EigenSystem<4> es = eig_hermitian(m);
    if (min_eigenvalue != nullptr) {
        *min_eigenvalue = es.values[3];
    }
    double total = 0;
    for (double &lambda : es.values) {
        lambda = std::max(lambda, 0.0);
        total += lambda;
    }
    if (!(total > 0)) {
        throw std::invalid_argument("project_psd: matrix has no positive spectrum");
    }
    for (double &lambda : es.values) {
        lambda /= total;
    }
    CMat4 w = compose(es);
    for (std::size_t i = 0; i < 4; i++) {
        w(i, i) = w(i, i).real();
    }
    // compose() leaves O(eps) anti-Hermitian residue; symmetrize before validation.
    return CoherenceMatrix((w + w.adjoint()) * Complex(0.5));
}

Reconstruction reconstruct(const TomographyRecord &record) {
    const auto s = stokes_parameters(record);
    CMat4 raw;
    for (std::size_t i = 0; i < 4; i++) {
        for (std::size_t j = 0; j < 4; j++) {
            raw += tensor_product(pauli(i), pauli(j)) * Complex(s[i][j] / 4);
        }
    }
    double min_eig = 0;
    CoherenceMatrix w = project_psd(raw, &min_eig);
    return {w, raw, min_eig, min_eig < -kClipTolerance};
}

double wootters_concurrence(const CoherenceMatrix &w) {
    // With W = sum_k psi_k psi_k^dagger, the Wootters lambdas are the singular values of
    // tau_jk = psi_j^T (sigma_y x sigma_y) psi_k. Working with tau avoids square roots of
    // near-zero eigenvalues, which would turn rounding noise into ~1e-8 errors.
    const CMat4 flip = tensor_product(pauli(2), pauli(2));
    const EigenSystem<4> es = eig_hermitian(w.matrix());
    CMat4 psi;
    for (std::size_t k = 0; k < 4; k++) {
        const double scale = std::sqrt(std::max(es.values[k], 0.0));
        for (std::size_t i = 0; i < 4; i++) {
            psi(i, k) = scale * es.vectors(i, k);
        }
    }
    CMat4 psi_t;
    for (std::size_t i = 0; i < 4; i++) {
        for (std::size_t k = 0; k < 4; k++) {
            psi_t(k, i) = psi(i, k);
        }
    }
    const std::array<double, 4> l = singular_values(psi_t * flip * psi);
    return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

ObservableTriple observables_from_matrix(const CoherenceMatrix &w) {
    const double d = std::abs((w(0, 0) + w(1, 1) - w(2, 2) - w(3, 3)).real());
    const double v = 2 * std::abs(w(0, 2) + w(1, 3));
    return {std::min(v, 1.0), std::min(d, 1.0), wootters_concurrence(w)};
}

double polarization_degree(const CoherenceMatrix &w) {
    return polarization_degree(w.polarization_matrix());
}

ObservableTriple correct_visibility(const ObservableTriple &measured, double sys_visibility) {
    if (!(sys_visibility > 0 && sys_visibility <= 1)) {
        throw std::invalid_argument("correct_visibility: factor must lie in (0, 1]");
    }
    ObservableTriple t = measured;
    t.v = std::min(1.0, t.v / sys_visibility);
    return t;
}

CoherenceMatrix correct_coherences(const CoherenceMatrix &w, double sys_visibility) {
    if (!(sys_visibility > 0 && sys_visibility <= 1)) {
        throw std::invalid_argument("correct_coherences: factor must lie in (0, 1]");
    }
    CMat4 m = w.matrix();
    for (std::size_t i = 0; i < 2; i++) {
        for (std::size_t j = 2; j < 4; j++) {
            m(i, j) /= sys_visibility;
            m(j, i) /= sys_visibility;
        }
    }
    return project_psd(m);
}

ObservableTriple corrected_observables(const CoherenceMatrix &w, double sys_visibility, Correction mode) {
    switch (mode) {
        case Correction::kVisibility:
            return correct_visibility(observables_from_matrix(w), sys_visibility);
        case Correction::kCoherence:
            return observables_from_matrix(correct_coherences(w, sys_visibility));
        case Correction::kNone:
            break;
    }
    return observables_from_matrix(w);
}

}  // namespace vdc
