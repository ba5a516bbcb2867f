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

#include "vdc/ensemble.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "vdc/random.h"

namespace vdc {

namespace {

constexpr double kGammaTolerance = 1e-12;

// Cascade (binary-counter) pairwise summation over a stream.
template <typename T>
class PairwiseSum {
   public:
    void add(T x) {
        std::size_t level = 0;
        std::size_t n = count_++;
        while (n & 1) {
            x = levels_[level] + x;
            n >>= 1;
            level++;
        }
        if (level == levels_.size()) {
            levels_.push_back(x);
        } else {
            levels_[level] = x;
        }
    }

    T total() const {
        T acc{};
        for (std::size_t level = 0; level < levels_.size(); level++) {
            if ((count_ >> level) & 1) {
                acc = levels_[level] + acc;
            }
        }
        return acc;
    }

    std::size_t count() const {
        return count_;
    }

   private:
    std::vector<T> levels_;
    std::size_t count_ = 0;
};

SpinTimeFunction gaussian_vector(CounterRng &rng, std::size_t size) {
    SpinTimeFunction v(size);
    for (auto &z : v) {
        const double re = rng.normal();
        const double im = rng.normal();
        z = {re, im};
    }
    return v;
}

double norm_of(const SpinTimeFunction &v) {
    double s = 0;
    for (const auto &z : v) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

void scale(SpinTimeFunction &v, double factor) {
    for (auto &z : v) {
        z *= factor;
    }
}

}  // namespace

void EnsembleSpec::validate() const {
    if (!(std::abs(target_gamma) <= 1 + kGammaTolerance)) {
        std::ostringstream ss;
        ss << "ensemble: |gamma| = " << std::abs(target_gamma) << " exceeds 1";
        throw std::invalid_argument(ss.str());
    }
    if (n_realizations == 0) {
        throw std::invalid_argument("ensemble: need at least one realization");
    }
    if (n_time_samples < 2) {
        throw std::invalid_argument("ensemble: need at least 2 time samples");
    }
}

Realization draw_realization(const EnsembleSpec &spec, std::size_t r) {
    const std::size_t size = 2 * spec.n_time_samples;
    CounterRng rng(spec.seed, r);

    const double magnitude = std::min(1.0, std::abs(spec.target_gamma));
    const double kappa = (1 + magnitude) / 2;
    const double phase_coherence = magnitude / kappa;
    double chi = 0;
    if (phase_coherence <= 0) {
        chi = 2 * std::numbers::pi * rng.uniform();
    } else if (phase_coherence < 1) {
        chi = std::sqrt(-2 * std::log(phase_coherence)) * rng.normal();
    }
    const double mean_phase = magnitude > 0 ? std::arg(spec.target_gamma) : 0.0;

    Realization out;
    out.phi_a = gaussian_vector(rng, size);
    SpinTimeFunction perp = gaussian_vector(rng, size);

    double na = norm_of(out.phi_a);
    while (!(na > 0)) {
        out.phi_a = gaussian_vector(rng, size);
        na = norm_of(out.phi_a);
    }
    scale(out.phi_a, 1 / na);

    // Gram-Schmidt twice for full orthogonality at double precision.
    for (int pass = 0; pass < 2; pass++) {
        const Complex overlap = inner(out.phi_a, perp);
        for (std::size_t k = 0; k < size; k++) {
            perp[k] -= overlap * out.phi_a[k];
        }
    }
    scale(perp, 1 / norm_of(perp));

    const Complex coefficient = std::polar(kappa, mean_phase + chi);
    const double rest = std::sqrt(std::max(0.0, 1 - kappa * kappa));
    out.phi_b.resize(size);
    for (std::size_t k = 0; k < size; k++) {
        out.phi_b[k] = coefficient * out.phi_a[k] + rest * perp[k];
    }
    return out;
}

StochasticField::StochasticField(EnsembleSpec spec, PathRole role) : spec_(spec), role_(role) {
    spec_.validate();
}

SpinTimeFunction StochasticField::realization(std::size_t r) const {
    if (r >= spec_.n_realizations) {
        throw std::out_of_range("StochasticField: realization index out of range");
    }
    Realization pair = draw_realization(spec_, r);
    return role_ == PathRole::kA ? std::move(pair.phi_a) : std::move(pair.phi_b);
}

std::pair<StochasticField, StochasticField> generate_pair(Complex target_gamma, std::size_t n_realizations,
                                                          std::uint64_t seed, std::size_t n_time_samples) {
    EnsembleSpec spec{target_gamma, n_realizations, n_time_samples, seed};
    spec.validate();
    return {StochasticField(spec, PathRole::kA), StochasticField(spec, PathRole::kB)};
}

Complex inner(const SpinTimeFunction &f, const SpinTimeFunction &g) {
    Complex s = 0;
    for (std::size_t k = 0; k < f.size(); k++) {
        s += std::conj(f[k]) * g[k];
    }
    return s;
}

ObservableTriple analytic_observables(Complex amp_a, Complex amp_b, Complex gamma) {
    const double ia = std::norm(amp_a);
    const double ib = std::norm(amp_b);
    const double total = ia + ib;
    if (!(total > 0)) {
        throw std::invalid_argument("analytic_observables: zero total intensity");
    }
    const double g = std::min(1.0, std::abs(gamma));
    return {2 * g * std::sqrt(ia * ib) / total, std::abs(ia - ib) / total,
            2 * std::sqrt((1 - g * g) * ia * ib) / total};
}

EnsembleEstimate empirical_observables(const StochasticField &a, const StochasticField &b, Complex amp_a,
                                       Complex amp_b, std::size_t n_phase_steps) {
    const EnsembleSpec &sa = a.spec();
    const EnsembleSpec &sb = b.spec();
    if (a.role() != PathRole::kA || b.role() != PathRole::kB) {
        throw std::invalid_argument("empirical_observables: expected the (a, b) paths in order");
    }
    if (sa.n_realizations != sb.n_realizations || sa.n_time_samples != sb.n_time_samples ||
        sa.seed != sb.seed || sa.target_gamma != sb.target_gamma) {
        throw std::invalid_argument("empirical_observables: fields do not belong to the same ensemble");
    }
    if (n_phase_steps < 3) {
        throw std::invalid_argument("empirical_observables: need at least 3 phase steps");
    }

    std::vector<Complex> steps(n_phase_steps);
    std::vector<double> phases(n_phase_steps);
    for (std::size_t k = 0; k < n_phase_steps; k++) {
        phases[k] = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_phase_steps);
        steps[k] = std::polar(1.0, phases[k]);
    }

    PairwiseSum<Complex> cross;
    PairwiseSum<double> norm_a, norm_b;
    std::vector<PairwiseSum<double>> screen(n_phase_steps);
    for (std::size_t r = 0; r < sa.n_realizations; r++) {
        const Realization draw = draw_realization(sa, r);
        cross.add(inner(draw.phi_a, draw.phi_b));
        norm_a.add(inner(draw.phi_a, draw.phi_a).real());
        norm_b.add(inner(draw.phi_b, draw.phi_b).real());
        for (std::size_t k = 0; k < n_phase_steps; k++) {
            const Complex bk = amp_b * steps[k];
            double e2 = 0;
            for (std::size_t t = 0; t < draw.phi_a.size(); t++) {
                e2 += std::norm(amp_a * draw.phi_a[t] + bk * draw.phi_b[t]);
            }
            screen[k].add(e2);
        }
    }

    const double n = static_cast<double>(sa.n_realizations);
    EnsembleEstimate est;
    const double mean_a = norm_a.total() / n;
    const double mean_b = norm_b.total() / n;
    // Normalized cross-correlation; identical draws give exactly 1.
    est.gamma_hat = (cross.total() / n) / std::sqrt(mean_a * mean_b);
    est.intensity_a = std::norm(amp_a) * mean_a;
    est.intensity_b = std::norm(amp_b) * mean_b;
    const double total = est.intensity_a + est.intensity_b;
    if (!(total > 0)) {
        throw std::invalid_argument("empirical_observables: zero total intensity");
    }
    const double g = std::min(1.0, std::abs(est.gamma_hat));
    const double geo = std::sqrt(est.intensity_a * est.intensity_b);
    est.triple = {2 * g * geo / total, std::abs(est.intensity_a - est.intensity_b) / total,
                  2 * std::sqrt(1 - g * g) * geo / total};

    Complex first = 0;
    double mean = 0;
    est.fringe.reserve(n_phase_steps);
    for (std::size_t k = 0; k < n_phase_steps; k++) {
        const double value = screen[k].total() / n;
        est.fringe.push_back({phases[k], value});
        first += value * std::conj(steps[k]);
        mean += value;
    }
    first /= static_cast<double>(n_phase_steps);
    mean /= static_cast<double>(n_phase_steps);
    est.fringe_visibility = mean > 0 ? 2 * std::abs(first) / mean : 0.0;
    return est;
}

double log_log_slope(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("log_log_slope: need at least two matching points");
    }
    double sx = 0, sy = 0;
    for (std::size_t k = 0; k < x.size(); k++) {
        if (!(x[k] > 0) || !(y[k] > 0)) {
            return std::numeric_limits<double>::quiet_NaN();
        }
        sx += std::log(x[k]);
        sy += std::log(y[k]);
    }
    const double mx = sx / static_cast<double>(x.size());
    const double my = sy / static_cast<double>(x.size());
    double sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < x.size(); k++) {
        const double dx = std::log(x[k]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(y[k]) - my);
    }
    return sxy / sxx;
}

std::size_t replicates_at(std::size_t base, std::size_t n, std::size_t n_max) {
    if (n == 0) {
        throw std::invalid_argument("convergence_study: ensemble size must be positive");
    }
    const double scale = std::sqrt(static_cast<double>(n_max) / static_cast<double>(n));
    return static_cast<std::size_t>(std::ceil(static_cast<double>(base) * scale));
}

ConvergenceStudy convergence_study(const ConvergenceConfig &config) {
    if (!(std::abs(config.gamma) <= 1 + kGammaTolerance)) {
        throw std::invalid_argument("convergence_study: |gamma| exceeds 1");
    }
    if (config.schedule.empty() || config.replicates == 0) {
        throw std::invalid_argument("convergence_study: empty schedule or zero replicates");
    }
    const ObservableTriple exact = analytic_observables(config.amp_a, config.amp_b, config.gamma);
    // Errors below this are rounding, not sampling.
    constexpr double kExact = 1e-14;
    auto clean = [](double e) { return e < kExact ? 0.0 : e; };

    const std::size_t n_max = *std::max_element(config.schedule.begin(), config.schedule.end());
    ConvergenceStudy study;
    std::vector<double> ns, ve, de, ce, ge;
    for (std::size_t i = 0; i < config.schedule.size(); i++) {
        const std::size_t n = config.schedule[i];
        const std::size_t reps = replicates_at(config.replicates, n, n_max);
        double sv = 0, sd = 0, sc = 0, sg = 0;
        for (std::size_t rep = 0; rep < reps; rep++) {
            const std::uint64_t seed = mix64(config.seed ^ mix64((static_cast<std::uint64_t>(i) << 32) + rep));
            auto [fa, fb] = generate_pair(config.gamma, n, seed, config.n_time_samples);
            const EnsembleEstimate est = empirical_observables(fa, fb, config.amp_a, config.amp_b);
            sv += std::pow(clean(std::abs(est.triple.v - exact.v)), 2);
            sd += std::pow(clean(std::abs(est.triple.d - exact.d)), 2);
            sc += std::pow(clean(std::abs(est.triple.c - exact.c)), 2);
            sg += std::pow(clean(std::abs(est.gamma_hat - config.gamma)), 2);
        }
        const double m = static_cast<double>(reps);
        ConvergenceRow row{n, std::sqrt(sv / m), std::sqrt(sd / m), std::sqrt(sc / m), std::sqrt(sg / m)};
        study.rows.push_back(row);
        ns.push_back(static_cast<double>(n));
        ve.push_back(row.v_err);
        de.push_back(row.d_err);
        ce.push_back(row.c_err);
        ge.push_back(row.gamma_err);
    }
    if (ns.size() >= 2) {
        study.v_slope = log_log_slope(ns, ve);
        study.d_slope = log_log_slope(ns, de);
        study.c_slope = log_log_slope(ns, ce);
        study.gamma_slope = log_log_slope(ns, ge);
    } else {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        study.v_slope = study.d_slope = study.c_slope = study.gamma_slope = nan;
    }
    return study;
}

}  // namespace vdc
