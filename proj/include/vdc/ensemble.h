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

#ifndef VDC_ENSEMBLE_H
#define VDC_ENSEMBLE_H

#include <cstdint>
#include <vector>

#include "vdc/field.h"
#include "vdc/observables.h"

namespace vdc {

constexpr std::size_t kDefaultTimeSamples = 64;

/// Partially coherent pair of spin-time functions phi_a, phi_b with
/// <phi_a* . phi_b> = gamma on ensemble average.
///
/// Realization r draws, from its own counter-based stream (seed, r):
///   phi_a, phi_perp   orthonormalized isotropic complex Gaussian vectors,
///   chi_r             wrapped-normal relative phase,
/// and sets phi_b = kappa e^{i (arg gamma + chi_r)} phi_a + sqrt(1 - kappa^2) phi_perp
/// with kappa = (1 + |gamma|) / 2 and E[e^{i chi}] = |gamma| / kappa. Both
/// functions are unit-normalized in every realization; the per-realization
/// overlap fluctuates around gamma. gamma = 1 gives phi_b = phi_a exactly.
struct EnsembleSpec {
    Complex target_gamma = 1;
    std::size_t n_realizations = 0;
    std::size_t n_time_samples = kDefaultTimeSamples;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument for |gamma| > 1, zero realizations or fewer than 2 time samples.
    void validate() const;
};

/// Discretized phi: 2 spin components x n_time_samples, stored spin-major
/// (all x samples, then all y samples).
using SpinTimeFunction = std::vector<Complex>;

struct Realization {
    SpinTimeFunction phi_a;
    SpinTimeFunction phi_b;
};

enum class PathRole { kA, kB };

/// One path's stochastic field. Realizations are regenerated on demand from
/// the counter-based stream, so ensembles of 10^6 draws need no storage.
class StochasticField {
   public:
    StochasticField(EnsembleSpec spec, PathRole role);

    const EnsembleSpec &spec() const {
        return spec_;
    }
    PathRole role() const {
        return role_;
    }
    std::size_t n_realizations() const {
        return spec_.n_realizations;
    }
    std::size_t n_time_samples() const {
        return spec_.n_time_samples;
    }

    SpinTimeFunction realization(std::size_t r) const;

   private:
    EnsembleSpec spec_;
    PathRole role_;
};

/// Both paths of realization r.
Realization draw_realization(const EnsembleSpec &spec, std::size_t r);

/// Throws std::invalid_argument when |target_gamma| > 1.
std::pair<StochasticField, StochasticField> generate_pair(Complex target_gamma, std::size_t n_realizations,
                                                          std::uint64_t seed,
                                                          std::size_t n_time_samples = kDefaultTimeSamples);

/// sum_k conj(f[k]) g[k]
Complex inner(const SpinTimeFunction &f, const SpinTimeFunction &g);

struct EnsembleEstimate {
    Complex gamma_hat;
    /// Ensemble-averaged path intensities |A|^2 <phi_a* . phi_a>, |B|^2 <phi_b* . phi_b>.
    double intensity_a = 0;
    double intensity_b = 0;
    /// V, D, C with gamma_hat substituted into the analytic formulas.
    ObservableTriple triple;
    /// Ensemble-averaged |E|^2 at equally spaced interferometer phases over one period.
    std::vector<FringeSample> fringe;
    /// Visibility from the first Fourier component of `fringe`.
    double fringe_visibility = 0;
};

/// Streams both fields realization by realization. Sums use a pairwise
/// cascade, so the result is independent of thread or block layout.
/// Throws std::invalid_argument unless a and b are the two paths of one ensemble.
EnsembleEstimate empirical_observables(const StochasticField &a, const StochasticField &b, Complex amp_a,
                                       Complex amp_b, std::size_t n_phase_steps = 8);

/// V, D, C for amplitudes A, B and mutual coherence gamma.
ObservableTriple analytic_observables(Complex amp_a, Complex amp_b, Complex gamma);

struct ConvergenceRow {
    std::size_t n = 0;
    double v_err = 0;
    double d_err = 0;
    double c_err = 0;
    double gamma_err = 0;
};

struct ConvergenceStudy {
    std::vector<ConvergenceRow> rows;
    /// Least-squares slopes of log(error) against log(N); NaN when a column
    /// is identically zero (the estimate is exact at every N).
    double v_slope = 0;
    double d_slope = 0;
    double c_slope = 0;
    double gamma_slope = 0;
};

struct ConvergenceConfig {
    Complex gamma = 1;
    Complex amp_a = 1;
    Complex amp_b = 1;
    std::vector<std::size_t> schedule = {1000, 10000, 100000, 1000000};
    /// Independent ensembles at the largest N; smaller N get
    /// replicates_at() of them. Errors are RMS over replicates.
    std::size_t replicates = 16;
    std::size_t n_time_samples = 8;
    std::uint64_t seed = 0;
};

/// ceil(base * sqrt(n_max / n)). Small ensembles are cheap, so they get more
/// replicates, which steadies the fitted slope.
std::size_t replicates_at(std::size_t base, std::size_t n, std::size_t n_max);

ConvergenceStudy convergence_study(const ConvergenceConfig &config);

/// Least-squares slope of log(y) on log(x); NaN if any y is zero.
double log_log_slope(const std::vector<double> &x, const std::vector<double> &y);

}  // namespace vdc

#endif
