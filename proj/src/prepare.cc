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

#include "vdc/prepare.h"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "vdc/random.h"

namespace vdc {

namespace {

constexpr double kSphereTolerance = 1e-9;

}  // namespace

ObservableTriple predict(const PreparationParams &params) {
    const double r2 = params.r * params.r;
    const double scale = 2 * params.r / (1 + r2);
    return {scale * std::abs(std::cos(params.theta)), std::abs((1 - r2) / (1 + r2)),
            scale * std::abs(std::sin(params.theta))};
}

PreparationParams solve_target(double v, double d, double c) {
    if (v < 0 || d < 0 || c < 0 || !std::isfinite(v) || !std::isfinite(d) || !std::isfinite(c)) {
        std::ostringstream ss;
        ss << "solve_target: components must be finite and nonnegative, got (" << v << ", " << d << ", " << c
           << ")";
        throw std::invalid_argument(ss.str());
    }
    const double defect = v * v + d * d + c * c - 1;
    if (std::abs(defect) > kSphereTolerance) {
        std::ostringstream ss;
        ss << "solve_target: target is off the unit sphere (v^2 + d^2 + c^2 - 1 = " << defect << ")";
        throw std::invalid_argument(ss.str());
    }
    PreparationParams p;
    p.r = std::sqrt(std::max(0.0, (1 - d) / (1 + d)));
    if (p.r > 0) {
        p.theta = std::atan2(c, v);
    } else {
        p.theta = 0;
        p.theta_indeterminate = true;
    }
    return p;
}

PreparationParams solve_target(const ObservableTriple &target) {
    return solve_target(target.v, target.d, target.c);
}

ObservableTriple project_to_sphere(const ObservableTriple &t) {
    const double n = std::sqrt(t.sum());
    if (!(n > 0)) {
        throw std::invalid_argument("project_to_sphere: zero triple");
    }
    return {t.v / n, t.d / n, t.c / n};
}

TwoPathBeam realize(const PreparationParams &params, double total_intensity) {
    if (!(total_intensity > 0)) {
        throw std::invalid_argument("realize: total intensity must be positive");
    }
    const double r2 = params.r * params.r;
    const double a = std::sqrt(total_intensity / (1 + r2));
    const double b = params.r * a;
    return TwoPathBeam(a, b, SpinState::x(), SpinState::canonical(params.theta, params.xi));
}

std::vector<GridState> grid_states() {
    const double s3 = std::sqrt(3.0);
    const double tan_15 = (2 - s3) / (2 + s3);
    const double r2_mid = (4 - s3) / (4 + s3);
    struct Row {
        ObservableTriple target;
        double r_squared;
        double cos_theta;
        ObservableTriple measured;
    };
    // clang-format off
    const Row rows[] = {
        {{1, 0, 0},                 1,       1,                 {0.996, 0.004, 0.046}},
        {{s3 / 2, 0.5, 0},          1.0 / 3, 1,                 {0.863, 0.498, 0.035}},
        {{0.5, s3 / 2, 0},          tan_15,  1,                 {0.488, 0.867, 0.009}},
        {{0, 1, 0},                 0,       1,                 {0.046, 0.996, 0.003}},
        {{s3 / 2, 0, 0.5},          1,       s3 / 2,            {0.885, 0.010, 0.463}},
        {{0.75, s3 / 4, 0.5},       r2_mid,  3 / std::sqrt(13.0), {0.733, 0.431, 0.522}},
        {{s3 / 4, 0.75, 0.5},       1.0 / 7, std::sqrt(3.0 / 7), {0.424, 0.747, 0.505}},
        {{0, s3 / 2, 0.5},          tan_15,  0,                 {0.078, 0.865, 0.494}},
        {{0.5, 0, s3 / 2},          1,       0.5,               {0.528, 0.004, 0.845}},
        {{s3 / 4, 0.25, s3 / 2},    0.6,     std::sqrt(0.2),    {0.426, 0.247, 0.868}},
        {{0.25, s3 / 4, s3 / 2},    r2_mid,  std::sqrt(1.0 / 13), {0.226, 0.430, 0.872}},
        {{0, 0.5, s3 / 2},          1.0 / 3, 0,                 {0.014, 0.484, 0.875}},
        {{0, 0, 1},                 1,       0,                 {0.064, 0.005, 0.991}},
    };
    // clang-format on
    std::vector<GridState> out;
    int index = 1;
    for (const Row &row : rows) {
        GridState g;
        g.index = index++;
        g.target = row.target;
        g.r_squared = row.r_squared;
        g.cos_theta = row.cos_theta;
        g.params = solve_target(row.target);
        g.measured = row.measured;
        out.push_back(g);
    }
    return out;
}

std::vector<ObservableTriple> sample_octant(std::size_t n, std::uint64_t seed) {
    if (n == 0) {
        throw std::invalid_argument("sample_octant: n must be at least 1");
    }
    std::vector<ObservableTriple> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; k++) {
        CounterRng rng(seed, k);
        double x, y, z, norm;
        do {
            x = std::abs(rng.normal());
            y = std::abs(rng.normal());
            z = std::abs(rng.normal());
            norm = std::sqrt(x * x + y * y + z * z);
        } while (!(norm > 1e-300));
        out.push_back({x / norm, y / norm, z / norm});
    }
    return out;
}

}  // namespace vdc
