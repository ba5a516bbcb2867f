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

#ifndef VDC_IO_H
#define VDC_IO_H

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vdc/ensemble.h"
#include "vdc/field.h"
#include "vdc/prepare.h"
#include "vdc/tomography.h"

#include "json.hpp"

namespace vdc::io {

/// Malformed input file or document; the message names the offending field.
class FormatError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Numbers are written with 6 significant digits unless full precision is requested,
/// in which case they round-trip exactly.
struct NumberFormat {
    bool full_precision = false;
};

std::string format_number(double x, NumberFormat fmt = {});

// Beams: {"amp_a": [re, im], "amp_b": [re, im], "spin_a": {"cx": [re, im], "cy": [re, im]}, "spin_b": {...}}
nlohmann::json beam_to_json(const TwoPathBeam &beam);
TwoPathBeam beam_from_json(const nlohmann::json &j);

// Observable triples: {"v", "d", "c", "p", "sum"} and CSV "V,D,C,SUM".
nlohmann::json triple_to_json(const ObservableTriple &t, NumberFormat fmt = {});
ObservableTriple triple_from_json(const nlohmann::json &j);
std::string triple_csv_header();
std::string triple_to_csv(const ObservableTriple &t, NumberFormat fmt = {});
ObservableTriple triple_from_csv(const std::string &row);

// 4x4 matrices as nested [re, im] pairs.
nlohmann::json matrix_to_json(const CMat4 &m, NumberFormat fmt = {});
CMat4 matrix_from_json(const nlohmann::json &j);

// Tomography records: "spatial_basis,polarization_basis,intensity", 36 rows in projection_set() order.
void write_record_csv(std::ostream &out, const TomographyRecord &record, NumberFormat fmt = {});
TomographyRecord read_record_csv(std::istream &in);

/// One row of the grid table. Simulated or reference columns are optional.
struct GridRow {
    int index = 0;
    ObservableTriple target;
    double r_squared = 0;
    double cos_theta = 0;
    std::optional<ObservableTriple> measured;
};

void write_grid_csv(std::ostream &out, const std::vector<GridRow> &rows, NumberFormat fmt = {});
std::vector<GridRow> read_grid_csv(std::istream &in);
nlohmann::json grid_to_json(const std::vector<GridRow> &rows, NumberFormat fmt = {});
std::vector<GridRow> grid_from_json(const nlohmann::json &j);

/// Sphere dataset: "V,D,C,grid_index" (grid_index 0 for sampled points).
struct SpherePoint {
    ObservableTriple point;
    int grid_index = 0;
};
void write_sphere_csv(std::ostream &out, const std::vector<SpherePoint> &points, NumberFormat fmt = {});
std::vector<SpherePoint> read_sphere_csv(std::istream &in);

/// Fringe trace: "# visibility=<v>" comment line, then "phase,intensity".
void write_fringe_csv(std::ostream &out, const std::vector<FringeSample> &trace, double visibility,
                      NumberFormat fmt = {});
struct FringeTable {
    double visibility = 0;
    std::vector<FringeSample> trace;
};
FringeTable read_fringe_csv(std::istream &in);

/// Convergence study: "N,V_err,D_err,C_err,gamma_err" followed by a "# slope" comment.
void write_convergence_csv(std::ostream &out, const ConvergenceStudy &study, NumberFormat fmt = {});
ConvergenceStudy read_convergence_csv(std::istream &in);

// JSON counterparts used by `--format json`.
nlohmann::json record_to_json(const TomographyRecord &record, NumberFormat fmt = {});
TomographyRecord record_from_json(const nlohmann::json &j);
nlohmann::json sphere_to_json(const std::vector<SpherePoint> &points, NumberFormat fmt = {});
std::vector<SpherePoint> sphere_from_json(const nlohmann::json &j);
nlohmann::json fringe_to_json(const std::vector<FringeSample> &trace, double visibility, NumberFormat fmt = {});
FringeTable fringe_from_json(const nlohmann::json &j);
nlohmann::json convergence_to_json(const ConvergenceStudy &study, NumberFormat fmt = {});
ConvergenceStudy convergence_from_json(const nlohmann::json &j);

}  // namespace vdc::io

#endif
