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

#ifndef VDC_TESTS_TEST_UTIL_H
#define VDC_TESTS_TEST_UTIL_H

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "vdc/coherence_matrix.h"
#include "vdc/cxmat.h"
#include "vdc/field.h"
#include "vdc/prepare.h"

namespace vdc::testing {

inline Complex random_complex(std::mt19937_64 &rng) {
    std::normal_distribution<double> n;
    return {n(rng), n(rng)};
}

template <std::size_t N>
CMat<N> random_hermitian(std::mt19937_64 &rng) {
    CMat<N> m;
    for (std::size_t i = 0; i < N; i++) {
        for (std::size_t j = 0; j < N; j++) {
            m(i, j) = random_complex(rng);
        }
    }
    return (m + m.adjoint()) * Complex(0.5);
}

/// G G^dagger / Tr, G with complex Gaussian entries (Ginibre ensemble).
inline CoherenceMatrix random_density(std::mt19937_64 &rng, std::size_t rank = 4) {
    CMat4 g;
    for (std::size_t i = 0; i < 4; i++) {
        for (std::size_t j = 0; j < rank; j++) {
            g(i, j) = random_complex(rng);
        }
    }
    CMat4 w = g * g.adjoint();
    w = (w + w.adjoint()) * Complex(0.5);
    return CoherenceMatrix::normalized(w);
}

inline SpinState random_spin(std::mt19937_64 &rng) {
    Complex x = random_complex(rng);
    Complex y = random_complex(rng);
    const double n = std::sqrt(std::norm(x) + std::norm(y));
    return {x / n, y / n};
}

/// Canonical beam with log-uniform R in [1e-3, 1e3], theta in [0, pi/2],
/// xi in [0, 2 pi), and a random global phase and scale.
inline TwoPathBeam random_canonical_beam(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0, 1);
    PreparationParams p;
    p.r = std::pow(10.0, -3 + 6 * u(rng));
    p.theta = u(rng) * std::numbers::pi / 2;
    p.xi = u(rng) * 2 * std::numbers::pi;
    const TwoPathBeam b = realize(p, 0.1 + 10 * u(rng));
    const Complex phase = std::polar(1.0, 2 * std::numbers::pi * u(rng));
    return TwoPathBeam(b.amp_a() * phase, b.amp_b() * phase, b.spin_a(), b.spin_b());
}

/// Arbitrary complex amplitudes and arbitrary spin states on both paths.
inline TwoPathBeam random_general_beam(std::mt19937_64 &rng) {
    return TwoPathBeam(random_complex(rng), random_complex(rng), random_spin(rng), random_spin(rng));
}

template <std::size_t N>
Eigen::Matrix<std::complex<double>, N, N> to_eigen(const CMat<N> &m) {
    Eigen::Matrix<std::complex<double>, N, N> e;
    for (std::size_t i = 0; i < N; i++) {
        for (std::size_t j = 0; j < N; j++) {
            e(i, j) = m(i, j);
        }
    }
    return e;
}

template <std::size_t N>
double max_abs_diff(const CMat<N> &a, const CMat<N> &b) {
    double worst = 0;
    for (std::size_t i = 0; i < N; i++) {
        for (std::size_t j = 0; j < N; j++) {
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
        }
    }
    return worst;
}

/// Brute-force Wootters concurrence: square roots of the (complex)
/// eigenvalues of the non-Hermitian product W W~, via Eigen's general solver.
inline double brute_force_concurrence(const CMat4 &w) {
    Eigen::Matrix4cd e = to_eigen(w);
    Eigen::Matrix2cd sy;
    sy << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0;
    Eigen::Matrix4cd flip;
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            for (int k = 0; k < 2; k++) {
                for (int l = 0; l < 2; l++) {
                    flip(2 * i + k, 2 * j + l) = sy(i, j) * sy(k, l);
                }
            }
        }
    }
    const Eigen::Matrix4cd tilde = flip * e.conjugate() * flip;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(e * tilde);
    std::array<double, 4> l;
    for (int k = 0; k < 4; k++) {
        l[k] = std::sqrt(std::max(0.0, solver.eigenvalues()(k).real()));
    }
    std::sort(l.begin(), l.end(), std::greater<>());
    return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

/// p |Phi+><Phi+| + (1 - p) I / 4
inline CMat4 werner(double p) {
    const double h = 1 / std::sqrt(2.0);
    CMat4 bell = CMat4::outer({h, 0.0, 0.0, h});
    return bell * Complex(p) + CMat4::identity() * Complex((1 - p) / 4);
}

}  // namespace vdc::testing

#endif
