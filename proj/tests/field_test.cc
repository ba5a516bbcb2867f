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

#include <gtest/gtest.h>

#include "test_util.h"
#include "vdc/observables.h"

using namespace vdc;
using std::numbers::pi;

namespace {

const double kHalf = 1 / std::sqrt(2.0);

TwoPathBeam balanced(const SpinState &sb) {
    return TwoPathBeam(kHalf, kHalf, SpinState::x(), sb);
}

}  // namespace

TEST(field, spin_state_rejects_unnormalized) {
    EXPECT_THROW(SpinState(1.0, 0.1), std::invalid_argument);
    EXPECT_NO_THROW(SpinState(kHalf, Complex(0, kHalf)));
}

TEST(field, beam_rejects_no_signal) {
    EXPECT_THROW(TwoPathBeam(0.0, 0.0, SpinState::x(), SpinState::y()), std::invalid_argument);
}

TEST(field, mutual_coherence_examples) {
    EXPECT_EQ(mutual_coherence(balanced(SpinState::x())), Complex(1));
    EXPECT_EQ(mutual_coherence(balanced(SpinState::y())), Complex(0));
    const Complex g = mutual_coherence(balanced(SpinState::canonical(pi / 3, pi / 4)));
    EXPECT_NEAR(std::abs(g - std::polar(0.5, pi / 4)), 0, 1e-15);
}

TEST(field, mutual_coherence_bounded) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 10000; i++) {
        EXPECT_LE(std::abs(mutual_coherence(vdc::testing::random_general_beam(rng))), 1 + 1e-12);
    }
}

TEST(field, intensity_at_phase_examples) {
    EXPECT_NEAR(intensity_at_phase(balanced(SpinState::x()), 0), 2, 1e-15);
    EXPECT_NEAR(intensity_at_phase(balanced(SpinState::x()), pi), 0, 1e-15);
    for (double delta : {0.0, 0.3, 1.0, pi, 5.0}) {
        EXPECT_NEAR(intensity_at_phase(balanced(SpinState::y()), delta), 1, 1e-15);
    }
}

TEST(field, intensity_matches_direct_superposition) {
    // |A s_a + B e^{i delta} s_b|^2 summed over polarization.
    std::mt19937_64 rng(2);
    for (int i = 0; i < 1000; i++) {
        const TwoPathBeam b = vdc::testing::random_general_beam(rng);
        const double delta = std::uniform_real_distribution<double>(-10, 10)(rng);
        const Complex e = std::polar(1.0, delta);
        const Complex ex = b.amp_a() * b.spin_a().cx() + b.amp_b() * e * b.spin_b().cx();
        const Complex ey = b.amp_a() * b.spin_a().cy() + b.amp_b() * e * b.spin_b().cy();
        const double direct = std::norm(ex) + std::norm(ey);
        EXPECT_NEAR(intensity_at_phase(b, delta), direct, 1e-12 * (1 + direct));
    }
}

TEST(field, fringe_scan_examples) {
    const auto trace = fringe_scan(balanced(SpinState::x()), 101, 0, 2 * pi);
    ASSERT_EQ(trace.size(), 101u);
    EXPECT_EQ(trace.front().phase, 0);
    EXPECT_EQ(trace.back().phase, 2 * pi);
    double lo = 10, hi = -10;
    for (const auto &s : trace) {
        lo = std::min(lo, s.intensity);
        hi = std::max(hi, s.intensity);
    }
    EXPECT_NEAR(hi, 2, 1e-12);
    EXPECT_NEAR(lo, 0, 1e-12);

    for (const auto &s : fringe_scan(balanced(SpinState::y()), 17, -1, 1)) {
        EXPECT_NEAR(s.intensity, 1, 1e-15);
    }
    EXPECT_THROW(fringe_scan(balanced(SpinState::x()), 1, 0, 1), std::invalid_argument);
}

TEST(field, fringe_scan_state2_contrast) {
    // R^2 = 1/3, cos(theta) = 1 -> V = sqrt(3)/2.
    PreparationParams p;
    p.r = std::sqrt(1.0 / 3);
    const auto trace = fringe_scan(realize(p), 2001, 0, 2 * pi);
    EXPECT_NEAR(fringe_contrast(trace), std::sqrt(3.0) / 2, 1e-6);
}

TEST(field, fringe_contrast_matches_visibility) {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 10000; i++) {
        const TwoPathBeam b = vdc::testing::random_general_beam(rng);
        // Sample exactly at the fringe extremes plus a coarse grid.
        const double peak = -std::arg(mutual_coherence(b) * std::conj(b.amp_a()) * b.amp_b());
        std::vector<FringeSample> trace = fringe_scan(b, 16, 0, 2 * pi);
        trace.push_back({peak, intensity_at_phase(b, peak)});
        trace.push_back({peak + pi, intensity_at_phase(b, peak + pi)});
        EXPECT_NEAR(fringe_contrast(trace), visibility(b), 1e-6);
    }
}

TEST(field, classify_case_a_reports_factored_phase) {
    const TwoPathBeam b(std::polar(kHalf, 0.4), std::polar(kHalf, 1.5), SpinState::x(),
                        SpinState(std::polar(1.0, -0.3), 0.0));
    const ExtremeClass cls = classify_extreme(b);
    ASSERT_EQ(cls.kind, ExtremeKind::kFullyCoherentBalanced);
    ASSERT_TRUE(cls.factored_phase.has_value());
    const double expected = std::arg(mutual_coherence(b)) + std::arg(std::conj(b.amp_a()) * b.amp_b());
    EXPECT_NEAR(*cls.factored_phase, expected, 1e-12);
    // The field is phi (x) (u_a + e^{i Theta} u_b) up to a global phase.
    const auto psi = state_vector(b);
    const Complex ratio_x = psi[2] / psi[0];
    EXPECT_NEAR(std::abs(ratio_x - std::polar(1.0, *cls.factored_phase)), 0, 1e-12);
}

TEST(field, classify_cases_b_c_and_generic) {
    EXPECT_EQ(classify_extreme(TwoPathBeam(1.0, 0.0, SpinState::x(), SpinState::y())).kind,
              ExtremeKind::kSinglePath);
    EXPECT_EQ(classify_extreme(TwoPathBeam(0.0, 2.0, SpinState::x(), SpinState::x())).kind,
              ExtremeKind::kSinglePath);
    EXPECT_EQ(classify_extreme(balanced(SpinState::y())).kind, ExtremeKind::kBellLike);
    EXPECT_EQ(classify_extreme(balanced(SpinState::canonical(0.7))).kind, ExtremeKind::kGeneric);
    EXPECT_FALSE(classify_extreme(balanced(SpinState::y())).factored_phase.has_value());
}

TEST(field, coherence_matrix_examples) {
    const auto single = to_coherence_matrix(TwoPathBeam(1.0, 0.0, SpinState::x(), SpinState::y()));
    EXPECT_EQ(vdc::testing::max_abs_diff(single.matrix(), CMat4::diagonal({1, 0, 0, 0})), 0);

    const auto bell = to_coherence_matrix(balanced(SpinState::y()));
    CMat4 expected;
    expected(0, 0) = expected(0, 3) = expected(3, 0) = expected(3, 3) = 0.5;
    EXPECT_LT(vdc::testing::max_abs_diff(bell.matrix(), expected), 1e-15);
}

TEST(field, coherence_matrix_is_pure_state) {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 2000; i++) {
        const auto w = to_coherence_matrix(vdc::testing::random_general_beam(rng));
        EXPECT_LT(w.matrix().hermiticity_defect(), 1e-15);
        EXPECT_NEAR(w.matrix().trace().real(), 1, 1e-12);
        EXPECT_NEAR(w.purity(), 1, 1e-12);
        const auto es = eig_hermitian(w.matrix());
        EXPECT_NEAR(es.values[0], 1, 1e-10);
        EXPECT_NEAR(es.values[1], 0, 1e-10);
        EXPECT_GE(es.values[3], -1e-10);
    }
}

TEST(field, fitted_visibility_is_exact_for_any_sampling) {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 1000; i++) {
        const TwoPathBeam b = vdc::testing::random_general_beam(rng);
        EXPECT_NEAR(fitted_visibility(fringe_scan(b, 7, 0.3, 2.9)), visibility(b), 1e-9);
    }
    EXPECT_NEAR(fitted_visibility(fringe_scan(balanced(SpinState::y()), 11, 0, 2 * pi)), 0, 1e-12);
    EXPECT_THROW(fitted_visibility(fringe_scan(balanced(SpinState::x()), 2, 0, 2 * pi)), std::invalid_argument);
}
