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

#ifndef VDC_FIELD_H
#define VDC_FIELD_H

#include <optional>
#include <string_view>
#include <vector>

#include "vdc/coherence_matrix.h"
#include "vdc/cxmat.h"

namespace vdc {

/// Unit polarization vector cx x + cy y.
class SpinState {
   public:
    /// Throws std::invalid_argument unless |cx|^2 + |cy|^2 = 1 within 1e-12.
    SpinState(Complex cx, Complex cy);

    static SpinState x();
    static SpinState y();
    /// e^{i xi} cos(theta) x + sin(theta) y
    static SpinState canonical(double theta, double xi = 0);

    Complex cx() const {
        return cx_;
    }
    Complex cy() const {
        return cy_;
    }

   private:
    Complex cx_;
    Complex cy_;
};

/// conj(a) . b
Complex inner(const SpinState &a, const SpinState &b);

/// A u_a s_a + B u_b s_b with orthonormal spatial labels u_a, u_b.
/// Amplitudes are left unnormalized; observables divide by |A|^2 + |B|^2.
class TwoPathBeam {
   public:
    /// Throws std::invalid_argument when both amplitudes vanish.
    TwoPathBeam(Complex amp_a, Complex amp_b, SpinState spin_a, SpinState spin_b);

    Complex amp_a() const {
        return amp_a_;
    }
    Complex amp_b() const {
        return amp_b_;
    }
    const SpinState &spin_a() const {
        return spin_a_;
    }
    const SpinState &spin_b() const {
        return spin_b_;
    }

    double intensity_a() const {
        return std::norm(amp_a_);
    }
    double intensity_b() const {
        return std::norm(amp_b_);
    }
    double total_intensity() const {
        return intensity_a() + intensity_b();
    }

   private:
    Complex amp_a_;
    Complex amp_b_;
    SpinState spin_a_;
    SpinState spin_b_;
};

/// gamma = s_a . s_b (conjugating s_a).
Complex mutual_coherence(const TwoPathBeam &beam);

/// Screen intensity with an added interferometer phase `delta`:
/// I_a + I_b + 2 |gamma| sqrt(I_a I_b) cos(arg(gamma conj(A) B) + delta).
double intensity_at_phase(const TwoPathBeam &beam, double delta);

struct FringeSample {
    double phase;
    double intensity;
};

/// Uniform grid of `n_points` phases spanning [phase_lo, phase_hi] inclusive.
/// Throws std::invalid_argument when n_points < 2.
std::vector<FringeSample> fringe_scan(const TwoPathBeam &beam, std::size_t n_points, double phase_lo,
                                      double phase_hi);

/// (max - min) / (max + min) of a sampled trace; 0 for an all-dark trace.
double fringe_contrast(const std::vector<FringeSample> &trace);

/// Visibility of the least-squares fit I0 + a cos(delta) + b sin(delta):
/// sqrt(a^2 + b^2) / I0. Exact for a clean sinusoid sampled at three or more
/// distinct phases, regardless of where the extremes fall. Throws
/// std::invalid_argument when the phases do not determine the fit.
double fitted_visibility(const std::vector<FringeSample> &trace);

enum class ExtremeKind {
    kFullyCoherentBalanced,  // V = 1: field factorizes as phi (u_a + e^{i Theta} u_b)
    kSinglePath,             // D = 1: one path dark
    kBellLike,               // V = D = 0
    kGeneric,
};

std::string_view to_string(ExtremeKind kind);

struct ExtremeClass {
    ExtremeKind kind = ExtremeKind::kGeneric;
    /// Relative phase Theta of the factorized spatial mode, in (-pi, pi].
    /// Present only for kFullyCoherentBalanced.
    std::optional<double> factored_phase;
};

/// Classifies with tolerance 1e-9 on V and D.
ExtremeClass classify_extreme(const TwoPathBeam &beam);

/// (A cx_a, A cy_a, B cx_b, B cy_b) / sqrt(I_a + I_b)
std::array<Complex, 4> state_vector(const TwoPathBeam &beam);

/// Rank-1 coherence matrix of the normalized beam.
CoherenceMatrix to_coherence_matrix(const TwoPathBeam &beam);

}  // namespace vdc

#endif
