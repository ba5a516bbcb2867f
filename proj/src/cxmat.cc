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

#include "vdc/cxmat.h"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace vdc {

namespace {

constexpr double kHermitianTolerance = 1e-10;
constexpr double kOffDiagonalTolerance = 1e-14;
constexpr int kMaxSweeps = 100;
constexpr double kNegativeClip = 1e-10;

template <std::size_t N>
double off_diagonal_norm(const CMat<N> &a) {
    double s = 0;
    for (std::size_t i = 0; i < N; i++) {
        for (std::size_t j = 0; j < N; j++) {
            if (i != j) {
                s += std::norm(a(i, j));
            }
        }
    }
    return std::sqrt(s);
}

// Zeroes a(p, q) with the unitary J = D * R, where D = diag(.., 1 at p, e^{-i phi} at q, ..)
// makes the pivot real and R is the usual real symmetric Jacobi rotation.
template <std::size_t N>
void rotate(CMat<N> &a, CMat<N> &v, std::size_t p, std::size_t q) {
    const Complex apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0) {
        return;
    }
    const Complex phase = apq / mag;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double theta = (aqq - app) / (2 * mag);
    double t = 1 / (std::abs(theta) + std::sqrt(theta * theta + 1));
    if (theta < 0) {
        t = -t;
    }
    const double c = 1 / std::sqrt(t * t + 1);
    const double s = t * c;

    // Columns p, q of J.
    const Complex jpp = c;
    const Complex jqp = -s * std::conj(phase);
    const Complex jpq = s;
    const Complex jqq = c * std::conj(phase);

    // a <- a J
    for (std::size_t k = 0; k < N; k++) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = akp * jpp + akq * jqp;
        a(k, q) = akp * jpq + akq * jqq;
    }
    // a <- J^dagger a
    for (std::size_t k = 0; k < N; k++) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
        a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
    }
    a(p, q) = 0;
    a(q, p) = 0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();

    for (std::size_t k = 0; k < N; k++) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = vkp * jpp + vkq * jqp;
        v(k, q) = vkp * jpq + vkq * jqq;
    }
}

}  // namespace

template <std::size_t N>
EigenSystem<N> eig_hermitian(const CMat<N> &m) {
    const double defect = m.hermiticity_defect();
    if (!(defect <= kHermitianTolerance)) {
        std::ostringstream ss;
        ss << "eig_hermitian: matrix is not Hermitian (max |M - M^dagger| entry = " << defect << ")";
        throw std::invalid_argument(ss.str());
    }

    CMat<N> a = (m + m.adjoint()) * Complex(0.5);
    CMat<N> v = CMat<N>::identity();
    const double scale = a.frobenius_norm();
    if (scale > 0) {
        for (int sweep = 0; sweep < kMaxSweeps; sweep++) {
            if (off_diagonal_norm(a) < kOffDiagonalTolerance * scale) {
                break;
            }
            for (std::size_t p = 0; p + 1 < N; p++) {
                for (std::size_t q = p + 1; q < N; q++) {
                    rotate(a, v, p, q);
                }
            }
        }
    }

    std::array<std::size_t, N> order;
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() > a(j, j).real();
    });

    EigenSystem<N> es;
    for (std::size_t k = 0; k < N; k++) {
        es.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < N; i++) {
            es.vectors(i, k) = v(i, order[k]);
        }
    }
    return es;
}

template EigenSystem<2> eig_hermitian<2>(const CMat<2> &);
template EigenSystem<4> eig_hermitian<4>(const CMat<4> &);

CMat4 sqrt_psd(const CMat4 &m) {
    EigenSystem<4> es = eig_hermitian(m);
    for (double &lambda : es.values) {
        if (lambda < -kNegativeClip) {
            std::ostringstream ss;
            ss << "sqrt_psd: eigenvalue " << lambda << " is below -1e-10; not a valid density operator";
            throw std::domain_error(ss.str());
        }
        lambda = std::sqrt(std::max(lambda, 0.0));
    }
    return compose(es);
}

std::array<double, 4> singular_values(const CMat4 &m) {
    CMat4 a = m;
    for (int sweep = 0; sweep < kMaxSweeps; sweep++) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < 4; p++) {
            for (std::size_t q = p + 1; q < 4; q++) {
                double alpha = 0;
                double beta = 0;
                Complex g = 0;
                for (std::size_t i = 0; i < 4; i++) {
                    alpha += std::norm(a(i, p));
                    beta += std::norm(a(i, q));
                    g += std::conj(a(i, p)) * a(i, q);
                }
                const double mag = std::abs(g);
                if (mag == 0 || mag <= 1e-15 * std::sqrt(alpha * beta)) {
                    continue;
                }
                rotated = true;
                // Rephase column q so the pair overlap is real, then rotate as in the real case.
                const Complex phase = std::conj(g) / mag;
                const double zeta = (beta - alpha) / (2 * mag);
                double t = 1 / (std::abs(zeta) + std::sqrt(1 + zeta * zeta));
                if (zeta < 0) {
                    t = -t;
                }
                const double c = 1 / std::sqrt(1 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < 4; i++) {
                    const Complex x = a(i, p);
                    const Complex y = a(i, q) * phase;
                    a(i, p) = c * x - s * y;
                    a(i, q) = s * x + c * y;
                }
            }
        }
        if (!rotated) {
            break;
        }
    }
    std::array<double, 4> sv;
    for (std::size_t j = 0; j < 4; j++) {
        double n = 0;
        for (std::size_t i = 0; i < 4; i++) {
            n += std::norm(a(i, j));
        }
        sv[j] = std::sqrt(n);
    }
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

CMat4 tensor_product(const CMat2 &a, const CMat2 &b) {
    CMat4 r;
    for (std::size_t i = 0; i < 2; i++) {
        for (std::size_t j = 0; j < 2; j++) {
            for (std::size_t k = 0; k < 2; k++) {
                for (std::size_t l = 0; l < 2; l++) {
                    r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return r;
}

CMat2 partial_trace(const CMat4 &m, Subsystem traced) {
    CMat2 r;
    for (std::size_t i = 0; i < 2; i++) {
        for (std::size_t j = 0; j < 2; j++) {
            for (std::size_t k = 0; k < 2; k++) {
                if (traced == Subsystem::kSpatial) {
                    r(i, j) += m(2 * k + i, 2 * k + j);
                } else {
                    r(i, j) += m(2 * i + k, 2 * j + k);
                }
            }
        }
    }
    return r;
}

const CMat2 &pauli(std::size_t index) {
    static const std::array<CMat2, 4> kPauli = [] {
        std::array<CMat2, 4> p;
        p[0] = CMat2::identity();
        p[1](0, 1) = 1;
        p[1](1, 0) = 1;
        p[2](0, 1) = Complex(0, -1);
        p[2](1, 0) = Complex(0, 1);
        p[3](0, 0) = 1;
        p[3](1, 1) = -1;
        return p;
    }();
    return kPauli.at(index);
}

}  // namespace vdc
