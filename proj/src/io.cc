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

#include "vdc/io.h"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace vdc::io {

using nlohmann::json;

namespace {

// Rounds to the printed precision so JSON matches the CSV text.
double shown(double x, NumberFormat fmt) {
    return fmt.full_precision ? x : std::stod(format_number(x, fmt));
}

json complex_to_json(Complex z) {
    return json::array({z.real(), z.imag()});
}

Complex complex_from_json(const json &j, const std::string &field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw FormatError(field + ": expected [re, im] number pair");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

const json &member(const json &j, const std::string &key, const std::string &where) {
    if (!j.is_object()) {
        throw FormatError(where + ": expected an object");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        throw FormatError(where + ": missing field '" + key + "'");
    }
    return *it;
}

double number_member(const json &j, const std::string &key, const std::string &where) {
    const json &v = member(j, key, where);
    if (!v.is_number()) {
        throw FormatError(where + "." + key + ": expected a number");
    }
    return v.get<double>();
}

std::vector<std::string> split_csv(const std::string &line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back();
    }
    return cells;
}

double parse_double(const std::string &text, const std::string &field) {
    try {
        std::size_t used = 0;
        const double x = std::stod(text, &used);
        if (used != text.size()) {
            throw FormatError(field + ": trailing characters in '" + text + "'");
        }
        return x;
    } catch (const std::logic_error &) {
        throw FormatError(field + ": '" + text + "' is not a number");
    }
}

// Data lines only: skips blank lines and '#' comments, strips '\r'.
bool next_row(std::istream &in, std::string &line, std::vector<std::string> *comments = nullptr) {
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            if (comments != nullptr) {
                comments->push_back(line);
            }
            continue;
        }
        return true;
    }
    return false;
}

void expect_header(std::istream &in, const std::string &expected, std::vector<std::string> *comments = nullptr) {
    std::string line;
    if (!next_row(in, line, comments)) {
        throw FormatError("csv: missing header '" + expected + "'");
    }
    if (line != expected) {
        throw FormatError("csv: header '" + line + "' does not match '" + expected + "'");
    }
}

std::vector<std::string> expect_cells(const std::string &line, std::size_t n, const std::string &where) {
    auto cells = split_csv(line);
    if (cells.size() != n) {
        std::ostringstream ss;
        ss << where << ": expected " << n << " columns, got " << cells.size();
        throw FormatError(ss.str());
    }
    return cells;
}

json spin_to_json(const SpinState &s) {
    return {{"cx", complex_to_json(s.cx())}, {"cy", complex_to_json(s.cy())}};
}

SpinState spin_from_json(const json &j, const std::string &field) {
    const Complex cx = complex_from_json(member(j, "cx", field), field + ".cx");
    const Complex cy = complex_from_json(member(j, "cy", field), field + ".cy");
    try {
        return SpinState(cx, cy);
    } catch (const std::invalid_argument &e) {
        throw FormatError(field + ": " + e.what());
    }
}

}  // namespace

std::string format_number(double x, NumberFormat fmt) {
    char buf[40];
    std::snprintf(buf, sizeof buf, fmt.full_precision ? "%.17g" : "%.6g", x);
    std::string s = buf;
    if (s == "-0") {
        s = "0";
    }
    return s;
}

json beam_to_json(const TwoPathBeam &beam) {
    return {{"amp_a", complex_to_json(beam.amp_a())},
            {"amp_b", complex_to_json(beam.amp_b())},
            {"spin_a", spin_to_json(beam.spin_a())},
            {"spin_b", spin_to_json(beam.spin_b())}};
}

TwoPathBeam beam_from_json(const json &j) {
    const Complex a = complex_from_json(member(j, "amp_a", "beam"), "amp_a");
    const Complex b = complex_from_json(member(j, "amp_b", "beam"), "amp_b");
    const SpinState sa = spin_from_json(member(j, "spin_a", "beam"), "spin_a");
    const SpinState sb = spin_from_json(member(j, "spin_b", "beam"), "spin_b");
    try {
        return TwoPathBeam(a, b, sa, sb);
    } catch (const std::invalid_argument &e) {
        throw FormatError(std::string("amp_a/amp_b: ") + e.what());
    }
}

json triple_to_json(const ObservableTriple &t, NumberFormat fmt) {
    return {{"v", shown(t.v, fmt)},
            {"d", shown(t.d, fmt)},
            {"c", shown(t.c, fmt)},
            {"p", shown(t.p(), fmt)},
            {"sum", shown(t.sum(), fmt)}};
}

ObservableTriple triple_from_json(const json &j) {
    return {number_member(j, "v", "triple"), number_member(j, "d", "triple"), number_member(j, "c", "triple")};
}

std::string triple_csv_header() {
    return "V,D,C,SUM";
}

std::string triple_to_csv(const ObservableTriple &t, NumberFormat fmt) {
    return format_number(t.v, fmt) + "," + format_number(t.d, fmt) + "," + format_number(t.c, fmt) + "," +
           format_number(t.sum(), fmt);
}

ObservableTriple triple_from_csv(const std::string &row) {
    const auto cells = expect_cells(row, 4, "triple row");
    return {parse_double(cells[0], "V"), parse_double(cells[1], "D"), parse_double(cells[2], "C")};
}

json matrix_to_json(const CMat4 &m, NumberFormat fmt) {
    json rows = json::array();
    for (std::size_t i = 0; i < 4; i++) {
        json row = json::array();
        for (std::size_t j = 0; j < 4; j++) {
            row.push_back(json::array({shown(m(i, j).real(), fmt), shown(m(i, j).imag(), fmt)}));
        }
        rows.push_back(row);
    }
    return rows;
}

CMat4 matrix_from_json(const json &j) {
    if (!j.is_array() || j.size() != 4) {
        throw FormatError("matrix: expected 4 rows");
    }
    CMat4 m;
    for (std::size_t i = 0; i < 4; i++) {
        if (!j[i].is_array() || j[i].size() != 4) {
            throw FormatError("matrix[" + std::to_string(i) + "]: expected 4 entries");
        }
        for (std::size_t k = 0; k < 4; k++) {
            m(i, k) = complex_from_json(j[i][k], "matrix[" + std::to_string(i) + "][" + std::to_string(k) + "]");
        }
    }
    return m;
}

void write_record_csv(std::ostream &out, const TomographyRecord &record, NumberFormat fmt) {
    out << "spatial_basis,polarization_basis,intensity\n";
    for (const ProjectionBasis &b : projection_set()) {
        out << spatial_label(b.spatial) << ',' << polarization_label(b.polarization) << ','
            << format_number(record.at(b.spatial, b.polarization), fmt) << '\n';
    }
}

TomographyRecord read_record_csv(std::istream &in) {
    expect_header(in, "spatial_basis,polarization_basis,intensity");
    TomographyRecord record;
    std::string line;
    for (const ProjectionBasis &b : projection_set()) {
        if (!next_row(in, line)) {
            throw FormatError("tomography record: expected 36 rows");
        }
        const auto cells = expect_cells(line, 3, "tomography record");
        if (cells[0] != spatial_label(b.spatial) || cells[1] != polarization_label(b.polarization)) {
            throw FormatError("tomography record: row '" + line + "' out of order; expected basis " +
                              std::string(spatial_label(b.spatial)) + "," +
                              std::string(polarization_label(b.polarization)));
        }
        const double value = parse_double(cells[2], "intensity");
        if (!(value >= 0)) {
            throw FormatError("tomography record: negative intensity in row '" + line + "'");
        }
        record.intensities[kBasesPerFactor * b.spatial + b.polarization] = value;
    }
    if (next_row(in, line)) {
        throw FormatError("tomography record: more than 36 rows");
    }
    return record;
}

void write_grid_csv(std::ostream &out, const std::vector<GridRow> &rows, NumberFormat fmt) {
    const bool measured = !rows.empty() && rows.front().measured.has_value();
    out << "index,V,D,C,R2,cos_theta";
    if (measured) {
        out << ",V_meas,D_meas,C_meas,SUM";
    }
    out << '\n';
    for (const GridRow &r : rows) {
        out << r.index << ',' << format_number(r.target.v, fmt) << ',' << format_number(r.target.d, fmt) << ','
            << format_number(r.target.c, fmt) << ',' << format_number(r.r_squared, fmt) << ','
            << format_number(r.cos_theta, fmt);
        if (measured) {
            const ObservableTriple m = r.measured.value_or(ObservableTriple{});
            out << ',' << format_number(m.v, fmt) << ',' << format_number(m.d, fmt) << ','
                << format_number(m.c, fmt) << ',' << format_number(m.sum(), fmt);
        }
        out << '\n';
    }
}

std::vector<GridRow> read_grid_csv(std::istream &in) {
    std::string line;
    if (!next_row(in, line)) {
        throw FormatError("grid: missing header");
    }
    bool measured = false;
    if (line == "index,V,D,C,R2,cos_theta,V_meas,D_meas,C_meas,SUM") {
        measured = true;
    } else if (line != "index,V,D,C,R2,cos_theta") {
        throw FormatError("grid: unexpected header '" + line + "'");
    }
    std::vector<GridRow> rows;
    while (next_row(in, line)) {
        const auto cells = expect_cells(line, measured ? 10 : 6, "grid row");
        GridRow r;
        r.index = static_cast<int>(parse_double(cells[0], "index"));
        r.target = {parse_double(cells[1], "V"), parse_double(cells[2], "D"), parse_double(cells[3], "C")};
        r.r_squared = parse_double(cells[4], "R2");
        r.cos_theta = parse_double(cells[5], "cos_theta");
        if (measured) {
            r.measured = ObservableTriple{parse_double(cells[6], "V_meas"), parse_double(cells[7], "D_meas"),
                                          parse_double(cells[8], "C_meas")};
        }
        rows.push_back(r);
    }
    return rows;
}

json grid_to_json(const std::vector<GridRow> &rows, NumberFormat fmt) {
    json out = json::array();
    for (const GridRow &r : rows) {
        json row = {{"index", r.index},
                    {"target", triple_to_json(r.target, fmt)},
                    {"r_squared", shown(r.r_squared, fmt)},
                    {"cos_theta", shown(r.cos_theta, fmt)}};
        if (r.measured) {
            row["measured"] = triple_to_json(*r.measured, fmt);
        }
        out.push_back(row);
    }
    return out;
}

std::vector<GridRow> grid_from_json(const json &j) {
    if (!j.is_array()) {
        throw FormatError("grid: expected an array of rows");
    }
    std::vector<GridRow> rows;
    for (const json &row : j) {
        GridRow r;
        r.index = static_cast<int>(number_member(row, "index", "grid row"));
        r.target = triple_from_json(member(row, "target", "grid row"));
        r.r_squared = number_member(row, "r_squared", "grid row");
        r.cos_theta = number_member(row, "cos_theta", "grid row");
        if (row.contains("measured")) {
            r.measured = triple_from_json(row["measured"]);
        }
        rows.push_back(r);
    }
    return rows;
}

void write_sphere_csv(std::ostream &out, const std::vector<SpherePoint> &points, NumberFormat fmt) {
    out << "V,D,C,grid_index\n";
    for (const SpherePoint &p : points) {
        out << format_number(p.point.v, fmt) << ',' << format_number(p.point.d, fmt) << ','
            << format_number(p.point.c, fmt) << ',' << p.grid_index << '\n';
    }
}

std::vector<SpherePoint> read_sphere_csv(std::istream &in) {
    expect_header(in, "V,D,C,grid_index");
    std::vector<SpherePoint> points;
    std::string line;
    while (next_row(in, line)) {
        const auto cells = expect_cells(line, 4, "sphere row");
        points.push_back({{parse_double(cells[0], "V"), parse_double(cells[1], "D"), parse_double(cells[2], "C")},
                          static_cast<int>(parse_double(cells[3], "grid_index"))});
    }
    return points;
}

void write_fringe_csv(std::ostream &out, const std::vector<FringeSample> &trace, double visibility,
                      NumberFormat fmt) {
    out << "# visibility=" << format_number(visibility, fmt) << '\n';
    out << "phase,intensity\n";
    for (const FringeSample &s : trace) {
        out << format_number(s.phase, fmt) << ',' << format_number(s.intensity, fmt) << '\n';
    }
}

FringeTable read_fringe_csv(std::istream &in) {
    std::vector<std::string> comments;
    expect_header(in, "phase,intensity", &comments);
    FringeTable table;
    bool found = false;
    const std::string key = "# visibility=";
    for (const std::string &c : comments) {
        if (c.rfind(key, 0) == 0) {
            table.visibility = parse_double(c.substr(key.size()), "visibility");
            found = true;
        }
    }
    if (!found) {
        throw FormatError("fringe: missing '# visibility=' header line");
    }
    std::string line;
    while (next_row(in, line)) {
        const auto cells = expect_cells(line, 2, "fringe row");
        table.trace.push_back({parse_double(cells[0], "phase"), parse_double(cells[1], "intensity")});
    }
    return table;
}

void write_convergence_csv(std::ostream &out, const ConvergenceStudy &study, NumberFormat fmt) {
    out << "N,V_err,D_err,C_err,gamma_err\n";
    for (const ConvergenceRow &r : study.rows) {
        out << r.n << ',' << format_number(r.v_err, fmt) << ',' << format_number(r.d_err, fmt) << ','
            << format_number(r.c_err, fmt) << ',' << format_number(r.gamma_err, fmt) << '\n';
    }
    out << "# slope," << format_number(study.v_slope, fmt) << ',' << format_number(study.d_slope, fmt) << ','
        << format_number(study.c_slope, fmt) << ',' << format_number(study.gamma_slope, fmt) << '\n';
}

ConvergenceStudy read_convergence_csv(std::istream &in) {
    expect_header(in, "N,V_err,D_err,C_err,gamma_err");
    ConvergenceStudy study;
    std::vector<std::string> comments;
    std::string line;
    while (next_row(in, line, &comments)) {
        const auto cells = expect_cells(line, 5, "convergence row");
        study.rows.push_back({static_cast<std::size_t>(parse_double(cells[0], "N")), parse_double(cells[1], "V_err"),
                              parse_double(cells[2], "D_err"), parse_double(cells[3], "C_err"),
                              parse_double(cells[4], "gamma_err")});
    }
    for (const std::string &c : comments) {
        if (c.rfind("# slope,", 0) == 0) {
            const auto cells = expect_cells(c.substr(8), 4, "slope line");
            study.v_slope = parse_double(cells[0], "V_slope");
            study.d_slope = parse_double(cells[1], "D_slope");
            study.c_slope = parse_double(cells[2], "C_slope");
            study.gamma_slope = parse_double(cells[3], "gamma_slope");
        }
    }
    return study;
}

json record_to_json(const TomographyRecord &record, NumberFormat fmt) {
    json rows = json::array();
    for (const ProjectionBasis &b : projection_set()) {
        rows.push_back({{"spatial_basis", spatial_label(b.spatial)},
                        {"polarization_basis", polarization_label(b.polarization)},
                        {"intensity", shown(record.at(b.spatial, b.polarization), fmt)}});
    }
    return rows;
}

TomographyRecord record_from_json(const json &j) {
    if (!j.is_array() || j.size() != kJointBases) {
        throw FormatError("tomography record: expected an array of 36 rows");
    }
    TomographyRecord record;
    std::size_t k = 0;
    for (const ProjectionBasis &b : projection_set()) {
        const json &row = j[k++];
        const json &s = member(row, "spatial_basis", "tomography record");
        const json &p = member(row, "polarization_basis", "tomography record");
        if (!s.is_string() || !p.is_string() || s.get<std::string>() != spatial_label(b.spatial) ||
            p.get<std::string>() != polarization_label(b.polarization)) {
            throw FormatError("tomography record: row " + std::to_string(k) + " out of order");
        }
        const double value = number_member(row, "intensity", "tomography record");
        if (!(value >= 0)) {
            throw FormatError("tomography record: negative intensity in row " + std::to_string(k));
        }
        record.intensities[kBasesPerFactor * b.spatial + b.polarization] = value;
    }
    return record;
}

json sphere_to_json(const std::vector<SpherePoint> &points, NumberFormat fmt) {
    json rows = json::array();
    for (const SpherePoint &p : points) {
        rows.push_back({{"v", shown(p.point.v, fmt)},
                        {"d", shown(p.point.d, fmt)},
                        {"c", shown(p.point.c, fmt)},
                        {"grid_index", p.grid_index}});
    }
    return rows;
}

std::vector<SpherePoint> sphere_from_json(const json &j) {
    if (!j.is_array()) {
        throw FormatError("sphere: expected an array");
    }
    std::vector<SpherePoint> points;
    for (const json &row : j) {
        points.push_back({{number_member(row, "v", "sphere row"), number_member(row, "d", "sphere row"),
                           number_member(row, "c", "sphere row")},
                          static_cast<int>(number_member(row, "grid_index", "sphere row"))});
    }
    return points;
}

json fringe_to_json(const std::vector<FringeSample> &trace, double visibility, NumberFormat fmt) {
    json rows = json::array();
    for (const FringeSample &s : trace) {
        rows.push_back(json::array({shown(s.phase, fmt), shown(s.intensity, fmt)}));
    }
    return {{"visibility", shown(visibility, fmt)}, {"trace", rows}};
}

FringeTable fringe_from_json(const json &j) {
    FringeTable table;
    table.visibility = number_member(j, "visibility", "fringe");
    const json &rows = member(j, "trace", "fringe");
    if (!rows.is_array()) {
        throw FormatError("fringe.trace: expected an array");
    }
    for (const json &row : rows) {
        if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number()) {
            throw FormatError("fringe.trace: expected [phase, intensity] pairs");
        }
        table.trace.push_back({row[0].get<double>(), row[1].get<double>()});
    }
    return table;
}

json convergence_to_json(const ConvergenceStudy &study, NumberFormat fmt) {
    json rows = json::array();
    for (const ConvergenceRow &r : study.rows) {
        rows.push_back({{"n", r.n},
                        {"v_err", shown(r.v_err, fmt)},
                        {"d_err", shown(r.d_err, fmt)},
                        {"c_err", shown(r.c_err, fmt)},
                        {"gamma_err", shown(r.gamma_err, fmt)}});
    }
    // NaN slopes (exact columns) serialize as null.
    auto slope = [&](double x) { return std::isnan(x) ? json(nullptr) : json(shown(x, fmt)); };
    return {{"rows", rows},
            {"slopes",
             {{"v", slope(study.v_slope)},
              {"d", slope(study.d_slope)},
              {"c", slope(study.c_slope)},
              {"gamma", slope(study.gamma_slope)}}}};
}

ConvergenceStudy convergence_from_json(const json &j) {
    ConvergenceStudy study;
    const json &rows = member(j, "rows", "convergence");
    if (!rows.is_array()) {
        throw FormatError("convergence.rows: expected an array");
    }
    for (const json &row : rows) {
        study.rows.push_back({static_cast<std::size_t>(number_member(row, "n", "convergence row")),
                              number_member(row, "v_err", "convergence row"),
                              number_member(row, "d_err", "convergence row"),
                              number_member(row, "c_err", "convergence row"),
                              number_member(row, "gamma_err", "convergence row")});
    }
    const json &slopes = member(j, "slopes", "convergence");
    auto slope = [&](const char *key) {
        const json &v = member(slopes, key, "convergence.slopes");
        if (v.is_null()) {
            return std::numeric_limits<double>::quiet_NaN();
        }
        if (!v.is_number()) {
            throw FormatError(std::string("convergence.slopes.") + key + ": expected a number or null");
        }
        return v.get<double>();
    };
    study.v_slope = slope("v");
    study.d_slope = slope("d");
    study.c_slope = slope("c");
    study.gamma_slope = slope("gamma");
    return study;
}

}  // namespace vdc::io
