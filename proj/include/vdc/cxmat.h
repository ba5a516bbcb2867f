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

#ifndef VDC_CXMAT_H
#define VDC_CXMAT_H

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace vdc {

using Complex = std::complex<double>;

/// Dense N x N complex matrix, row-major. Only N = 2 and N = 4 are used.
template <std::size_t N>
class CMat {
   public:
    static constexpr std::size_t kDim = N;

    constexpr CMat() = default;

    static CMat identity() {
        CMat m;
        for (std::size_t i = 0; i < N; i++) {
            m(i, i) = 1.0;
        }
        return m;
    }

    static CMat diagonal(const std::array<double, N> &diag) {
        CMat m;
        for (std::size_t i = 0; i < N; i++) {
            m(i, i) = diag[i];
        }
        return m;
    }

    /// |v><v|
    static CMat outer(const std::array<Complex, N> &v) {
        CMat m;
        for (std::size_t i = 0; i < N; i++) {
            for (std::size_t j = 0; j < N; j++) {
                m(i, j) = v[i] * std::conj(v[j]);
            }
        }
        return m;
    }

    Complex &operator()(std::size_t row, std::size_t col) {
        return entries_[row * N + col];
    }
    const Complex &operator()(std::size_t row, std::size_t col) const {
        return entries_[row * N + col];
    }

    CMat adjoint() const {
        CMat r;
        for (std::size_t i = 0; i < N; i++) {
            for (std::size_t j = 0; j < N; j++) {
                r(i, j) = std::conj((*this)(j, i));
            }
        }
        return r;
    }

    /// Entrywise complex conjugate (no transpose).
    CMat conjugate() const {
        CMat r;
        for (std::size_t k = 0; k < N * N; k++) {
            r.entries_[k] = std::conj(entries_[k]);
        }
        return r;
    }

    Complex trace() const {
        Complex t = 0;
        for (std::size_t i = 0; i < N; i++) {
            t += (*this)(i, i);
        }
        return t;
    }

    double frobenius_norm() const {
        double s = 0;
        for (const auto &z : entries_) {
            s += std::norm(z);
        }
        return std::sqrt(s);
    }

    /// Largest |M - M^dagger| entry.
    double hermiticity_defect() const {
        double worst = 0;
        for (std::size_t i = 0; i < N; i++) {
            for (std::size_t j = i; j < N; j++) {
                worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
            }
        }
        return worst;
    }

    CMat &operator+=(const CMat &o) {
        for (std::size_t k = 0; k < N * N; k++) {
            entries_[k] += o.entries_[k];
        }
        return *this;
    }
    CMat &operator-=(const CMat &o) {
        for (std::size_t k = 0; k < N * N; k++) {
            entries_[k] -= o.entries_[k];
        }
        return *this;
    }
    CMat &operator*=(Complex s) {
        for (auto &z : entries_) {
            z *= s;
        }
        return *this;
    }

    friend CMat operator+(CMat a, const CMat &b) {
        return a += b;
    }
    friend CMat operator-(CMat a, const CMat &b) {
        return a -= b;
    }
    friend CMat operator*(CMat a, Complex s) {
        return a *= s;
    }
    friend CMat operator*(Complex s, CMat a) {
        return a *= s;
    }
    friend CMat operator*(const CMat &a, const CMat &b) {
        CMat r;
        for (std::size_t i = 0; i < N; i++) {
            for (std::size_t k = 0; k < N; k++) {
                const Complex aik = a(i, k);
                for (std::size_t j = 0; j < N; j++) {
                    r(i, j) += aik * b(k, j);
                }
            }
        }
        return r;
    }
    friend std::array<Complex, N> operator*(const CMat &a, const std::array<Complex, N> &v) {
        std::array<Complex, N> r{};
        for (std::size_t i = 0; i < N; i++) {
            for (std::size_t j = 0; j < N; j++) {
                r[i] += a(i, j) * v[j];
            }
        }
        return r;
    }

    bool operator==(const CMat &o) const = default;

   private:
    std::array<Complex, N * N> entries_{};
};

using CMat2 = CMat<2>;
using CMat4 = CMat<4>;

/// Eigenvalues sorted descending; column k of `vectors` pairs with values[k].
template <std::size_t N>
struct EigenSystem {
    std::array<double, N> values{};
    CMat<N> vectors;
};

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// Rejects input whose largest |M - M^dagger| entry exceeds 1e-10 by throwing
/// std::invalid_argument (the message carries the defect). Iterates until the
/// off-diagonal Frobenius norm drops below 1e-14 relative to ||M||_F, with a
/// cap of 100 sweeps.
template <std::size_t N>
EigenSystem<N> eig_hermitian(const CMat<N> &m);

extern template EigenSystem<2> eig_hermitian<2>(const CMat<2> &);
extern template EigenSystem<4> eig_hermitian<4>(const CMat<4> &);

/// Reassembles sum_k values[k] |v_k><v_k|.
template <std::size_t N>
CMat<N> compose(const EigenSystem<N> &es) {
    CMat<N> r;
    for (std::size_t k = 0; k < N; k++) {
        for (std::size_t i = 0; i < N; i++) {
            for (std::size_t j = 0; j < N; j++) {
                r(i, j) += es.values[k] * es.vectors(i, k) * std::conj(es.vectors(j, k));
            }
        }
    }
    return r;
}

/// Principal square root of a Hermitian PSD matrix. Eigenvalues in
/// [-1e-10, 0) are clipped to zero; anything more negative throws
/// std::domain_error.
CMat4 sqrt_psd(const CMat4 &m);

/// Singular values in descending order, by one-sided Jacobi rotations. Small
/// singular values keep absolute accuracy near eps * ||m|| (no squaring).
std::array<double, 4> singular_values(const CMat4 &m);

/// (a (x) b)[2i+k][2j+l] = a[i][j] * b[k][l]
CMat4 tensor_product(const CMat2 &a, const CMat2 &b);

/// Index layout of the 4x4 space: 2 * spatial + polarization.
enum class Subsystem { kSpatial, kPolarization };

/// Traces out `traced` and returns the reduced 2x2 matrix of the other factor.
CMat2 partial_trace(const CMat4 &m, Subsystem traced);

/// The Pauli matrices with sigma_y = ((0, -i), (i, 0)); index 0 is identity.
const CMat2 &pauli(std::size_t index);

}  // namespace vdc

#endif
