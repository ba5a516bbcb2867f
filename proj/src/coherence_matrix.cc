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

#include "vdc/coherence_matrix.h"

#include <sstream>
#include <stdexcept>

namespace vdc {

namespace {

constexpr double kHermitianTolerance = 1e-10;
constexpr double kTraceTolerance = 1e-10;
constexpr double kEigenvalueFloor = -1e-9;

}  // namespace

CoherenceMatrix::CoherenceMatrix(const CMat4 &w) : w_(w) {
    const double defect = w.hermiticity_defect();
    if (!(defect <= kHermitianTolerance)) {
        std::ostringstream ss;
        ss << "coherence matrix is not Hermitian (defect " << defect << ")";
        throw std::invalid_argument(ss.str());
    }
    const Complex tr = w.trace();
    if (!(std::abs(tr - Complex(1)) <= kTraceTolerance)) {
        std::ostringstream ss;
        ss << "coherence matrix trace is " << tr.real() << " (expected 1)";
        throw std::invalid_argument(ss.str());
    }
    const double smallest = eig_hermitian(w).values[3];
    if (smallest < kEigenvalueFloor) {
        std::ostringstream ss;
        ss << "coherence matrix is not positive semidefinite (smallest eigenvalue " << smallest << ")";
        throw std::invalid_argument(ss.str());
    }
}

CoherenceMatrix CoherenceMatrix::from_state(const std::array<Complex, 4> &psi) {
    double norm2 = 0;
    for (const auto &z : psi) {
        norm2 += std::norm(z);
    }
    if (!(norm2 > 0)) {
        throw std::invalid_argument("coherence matrix: state vector has zero norm");
    }
    CMat4 w = CMat4::outer(psi) * Complex(1 / norm2);
    for (std::size_t i = 0; i < 4; i++) {
        w(i, i) = w(i, i).real();
    }
    return CoherenceMatrix(w);
}

CoherenceMatrix CoherenceMatrix::normalized(const CMat4 &w) {
    const double tr = w.trace().real();
    if (!(tr > 0)) {
        throw std::invalid_argument("coherence matrix: trace is not positive");
    }
    return CoherenceMatrix(w * Complex(1 / tr));
}

double CoherenceMatrix::purity() const {
    return (w_ * w_).trace().real();
}

double fidelity(const CoherenceMatrix &a, const CoherenceMatrix &b) {
    const CMat4 root = sqrt_psd(a.matrix());
    const CMat4 inner = root * b.matrix() * root;
    const EigenSystem<4> es = eig_hermitian(inner);
    double tr = 0;
    for (double lambda : es.values) {
        tr += std::sqrt(std::max(lambda, 0.0));
    }
    return tr * tr;
}

}  // namespace vdc
