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

#include "vdc/field.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "vdc/observables.h"

namespace vdc {

namespace {

constexpr double kSpinNormTolerance = 1e-12;
constexpr double kClassifyTolerance = 1e-9;

}  // namespace

SpinState::SpinState(Complex cx, Complex cy) : cx_(cx), cy_(cy) {
    const double n = std::norm(cx) + std::norm(cy);
    if (!(std::abs(n - 1) <= kSpinNormTolerance)) {
        std::ostringstream ss;
        ss << "spin state is not normalized: |cx|^2 + |cy|^2 = " << n;
        throw std::invalid_argument(ss.str());
    }
}

SpinState SpinState::x() {
    return {1.0, 0.0};
}

SpinState SpinState::y() {
    return {0.0, 1.0};
}

SpinState SpinState::canonical(double theta, double xi) {
    return {std::polar(std::cos(theta), xi), std::sin(theta)};
}

Complex inner(const SpinState &a, const SpinState &b) {
    return std::conj(a.cx()) * b.cx() + std::conj(a.cy()) * b.cy();
}

TwoPathBeam::TwoPathBeam(Complex amp_a, Complex amp_b, SpinState spin_a, SpinState spin_b)
    : amp_a_(amp_a), amp_b_(amp_b), spin_a_(spin_a), spin_b_(spin_b) {
    if (!(std::norm(amp_a) + std::norm(amp_b) > 0)) {
        throw std::invalid_argument("two-path beam carries no signal: |A| = |B| = 0");
    }
}

Complex mutual_coherence(const TwoPathBeam &beam) {
    return inner(beam.spin_a(), beam.spin_b());
}

double intensity_at_phase(const TwoPathBeam &beam, double delta) {
    const Complex gamma = mutual_coherence(beam);
    const double ia = beam.intensity_a();
    const double ib = beam.intensity_b();
    const double cross = std::abs(gamma) * std::sqrt(ia * ib);
    const double phase = std::arg(gamma * std::conj(beam.amp_a()) * beam.amp_b());
    return std::max(0.0, ia + ib + 2 * cross * std::cos(phase + delta));
}

std::vector<FringeSample> fringe_scan(const TwoPathBeam &beam, std::size_t n_points, double phase_lo,
                                      double phase_hi) {
    if (n_points < 2) {
        throw std::invalid_argument("fringe scan needs at least 2 points");
    }
    std::vector<FringeSample> out;
    out.reserve(n_points);
    const double step = (phase_hi - phase_lo) / static_cast<double>(n_points - 1);
    for (std::size_t k = 0; k < n_points; k++) {
        const double delta = k + 1 == n_points ? phase_hi : phase_lo + step * static_cast<double>(k);
        out.push_back({delta, intensity_at_phase(beam, delta)});
    }
    return out;
}

double fringe_contrast(const std::vector<FringeSample> &trace) {
    if (trace.empty()) {
        return 0;
    }
    auto [lo, hi] = std::minmax_element(trace.begin(), trace.end(),
                                        [](const auto &a, const auto &b) { return a.intensity < b.intensity; });
    const double sum = hi->intensity + lo->intensity;
    return sum > 0 ? (hi->intensity - lo->intensity) / sum : 0.0;
}

double fitted_visibility(const std::vector<FringeSample> &trace) {
    // Normal equations for the basis (1, cos, sin).
    double m[3][4] = {};
    for (const FringeSample &s : trace) {
        const double basis[3] = {1, std::cos(s.phase), std::sin(s.phase)};
        for (int i = 0; i < 3; i++) {
            for (int j = 0; j < 3; j++) {
                m[i][j] += basis[i] * basis[j];
            }
            m[i][3] += basis[i] * s.intensity;
        }
    }
    const double scale = std::max(1.0, m[0][0]);
    for (int col = 0; col < 3; col++) {
        int pivot = col;
        for (int row = col + 1; row < 3; row++) {
            if (std::abs(m[row][col]) > std::abs(m[pivot][col])) {
                pivot = row;
            }
        }
        if (std::abs(m[pivot][col]) < 1e-9 * scale) {
            throw std::invalid_argument("fitted_visibility: phases do not span a full sinusoid fit");
        }
        std::swap(m[col], m[pivot]);
        for (int row = 0; row < 3; row++) {
            if (row != col) {
                const double f = m[row][col] / m[col][col];
                for (int k = col; k < 4; k++) {
                    m[row][k] -= f * m[col][k];
                }
            }
        }
    }
    const double mean = m[0][3] / m[0][0];
    const double a = m[1][3] / m[1][1];
    const double b = m[2][3] / m[2][2];
    return mean > 0 ? std::hypot(a, b) / mean : 0.0;
}

std::string_view to_string(ExtremeKind kind) {
    switch (kind) {
        case ExtremeKind::kFullyCoherentBalanced:
            return "fully_coherent_balanced";
        case ExtremeKind::kSinglePath:
            return "single_path";
        case ExtremeKind::kBellLike:
            return "bell_like";
        case ExtremeKind::kGeneric:
            return "generic";
    }
    return "generic";
}

ExtremeClass classify_extreme(const TwoPathBeam &beam) {
    const double v = visibility(beam);
    const double d = distinguishability(beam);
    ExtremeClass result;
    if (std::abs(v - 1) <= kClassifyTolerance) {
        result.kind = ExtremeKind::kFullyCoherentBalanced;
        double theta = std::arg(mutual_coherence(beam) * std::conj(beam.amp_a()) * beam.amp_b());
        if (theta <= -std::numbers::pi) {
            theta += 2 * std::numbers::pi;
        }
        result.factored_phase = theta;
    } else if (std::abs(d - 1) <= kClassifyTolerance) {
        result.kind = ExtremeKind::kSinglePath;
    } else if (v <= kClassifyTolerance && d <= kClassifyTolerance) {
        result.kind = ExtremeKind::kBellLike;
    }
    return result;
}

std::array<Complex, 4> state_vector(const TwoPathBeam &beam) {
    const double norm = std::sqrt(beam.total_intensity());
    const Complex a = beam.amp_a() / norm;
    const Complex b = beam.amp_b() / norm;
    return {a * beam.spin_a().cx(), a * beam.spin_a().cy(), b * beam.spin_b().cx(), b * beam.spin_b().cy()};
}

CoherenceMatrix to_coherence_matrix(const TwoPathBeam &beam) {
    return CoherenceMatrix::from_state(state_vector(beam));
}

}  // namespace vdc
