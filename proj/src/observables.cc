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

#include "vdc/observables.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vdc {

namespace {

constexpr double kPolarizationRouteTolerance = 1e-10;
constexpr double kDefectTolerance = 1e-12;

double checked_total(const TwoPathBeam &beam) {
    const double total = beam.total_intensity();
    if (!(total > 0)) {
        throw std::invalid_argument("beam has zero total intensity");
    }
    return total;
}

}  // namespace

double visibility(const TwoPathBeam &beam) {
    const double total = checked_total(beam);
    const double gamma = std::min(1.0, std::abs(mutual_coherence(beam)));
    return 2 * gamma * std::sqrt(beam.intensity_a() * beam.intensity_b()) / total;
}

double distinguishability(const TwoPathBeam &beam) {
    const double total = checked_total(beam);
    return std::abs(beam.intensity_a() - beam.intensity_b()) / total;
}

double concurrence_pure(const TwoPathBeam &beam) {
    const double total = checked_total(beam);
    const double g2 = std::min(1.0, std::norm(mutual_coherence(beam)));
    return 2 * std::sqrt((1 - g2) * beam.intensity_a() * beam.intensity_b()) / total;
}

double polarization_degree(const CMat2 &rho) {
    const double purity = (rho * rho).trace().real();
    return std::sqrt(std::max(0.0, 2 * purity - 1));
}

double concurrence_from_reduced(const CMat2 &rho) {
    const double det = (rho(0, 0) * rho(1, 1) - rho(0, 1) * rho(1, 0)).real();
    return 2 * std::sqrt(std::max(0.0, det));
}

double degree_of_polarization(const TwoPathBeam &beam) {
    const double v = visibility(beam);
    const double d = distinguishability(beam);
    const double p = polarization_degree(to_coherence_matrix(beam).polarization_matrix());
    // Squared values are compared: sqrt amplifies rounding near P = 0.
    const double mismatch = std::abs(p * p - (v * v + d * d));
    if (mismatch > kPolarizationRouteTolerance) {
        std::ostringstream ss;
        ss << "degree_of_polarization: P^2 routes disagree by " << mismatch;
        throw std::logic_error(ss.str());
    }
    return p;
}

double identity_sum(const ObservableTriple &triple) {
    return triple.sum();
}

double duality_defect(const TwoPathBeam &beam) {
    const double total = checked_total(beam);
    const double v = visibility(beam);
    const double d = distinguishability(beam);
    const double defect = 1 - v * v - d * d;
    const double g2 = std::min(1.0, std::norm(mutual_coherence(beam)));
    const double closed = 4 * beam.intensity_a() * beam.intensity_b() * (1 - g2) / (total * total);
    const double c = concurrence_pure(beam);
    const double worst = std::max(std::abs(defect - closed), std::abs(defect - c * c));
    if (worst > kDefectTolerance) {
        std::ostringstream ss;
        ss << "duality_defect: closed form or C^2 disagrees by " << worst;
        throw std::logic_error(ss.str());
    }
    return defect;
}

ObservableTriple observe(const TwoPathBeam &beam) {
    return {visibility(beam), distinguishability(beam), concurrence_pure(beam)};
}

}  // namespace vdc
