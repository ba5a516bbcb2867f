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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "test_util.h"

using namespace vdc;
using nlohmann::json;

namespace {

const io::NumberFormat kFull{true};

void expect_triple_eq(const ObservableTriple &a, const ObservableTriple &b) {
    EXPECT_EQ(a.v, b.v);
    EXPECT_EQ(a.d, b.d);
    EXPECT_EQ(a.c, b.c);
}

}  // namespace

TEST(io, format_number_precision) {
    EXPECT_EQ(io::format_number(0.1234567891), "0.123457");
    EXPECT_EQ(io::format_number(1), "1");
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int i = 0; i < 10000; i++) {
        const double x = u(rng) * std::pow(10.0, static_cast<int>(rng() % 30) - 15);
        EXPECT_EQ(std::stod(io::format_number(x, kFull)), x);
        EXPECT_NEAR(std::stod(io::format_number(x)), x, 5e-6 * std::abs(x));
    }
}

TEST(io, beam_round_trip) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 1000; i++) {
        const TwoPathBeam b = vdc::testing::random_general_beam(rng);
        const TwoPathBeam r = io::beam_from_json(json::parse(io::beam_to_json(b).dump()));
        EXPECT_EQ(r.amp_a(), b.amp_a());
        EXPECT_EQ(r.amp_b(), b.amp_b());
        EXPECT_EQ(r.spin_a().cx(), b.spin_a().cx());
        EXPECT_EQ(r.spin_a().cy(), b.spin_a().cy());
        EXPECT_EQ(r.spin_b().cx(), b.spin_b().cx());
        EXPECT_EQ(r.spin_b().cy(), b.spin_b().cy());
    }
}

TEST(io, beam_diagnostics_name_the_field) {
    json j = io::beam_to_json(TwoPathBeam(1, 1, SpinState::x(), SpinState::y()));
    j.erase("amp_b");
    try {
        io::beam_from_json(j);
        FAIL();
    } catch (const io::FormatError &e) {
        EXPECT_NE(std::string(e.what()).find("amp_b"), std::string::npos);
    }
    j = io::beam_to_json(TwoPathBeam(1, 1, SpinState::x(), SpinState::y()));
    j["spin_a"]["cy"] = "oops";
    try {
        io::beam_from_json(j);
        FAIL();
    } catch (const io::FormatError &e) {
        EXPECT_NE(std::string(e.what()).find("cy"), std::string::npos);
    }
    j = io::beam_to_json(TwoPathBeam(1, 1, SpinState::x(), SpinState::y()));
    j["spin_a"]["cx"] = json::array({2.0, 0.0});
    EXPECT_THROW(io::beam_from_json(j), io::FormatError);
}

TEST(io, triple_round_trips) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; i++) {
        const ObservableTriple t = observe(vdc::testing::random_canonical_beam(rng));
        expect_triple_eq(io::triple_from_json(io::triple_to_json(t, kFull)), t);
        expect_triple_eq(io::triple_from_csv(io::triple_to_csv(t, kFull)), t);
        const ObservableTriple rounded = io::triple_from_csv(io::triple_to_csv(t));
        EXPECT_NEAR(rounded.v, t.v, 1e-6);
        EXPECT_NEAR(rounded.d, t.d, 1e-6);
        EXPECT_NEAR(rounded.c, t.c, 1e-6);
    }
    EXPECT_THROW(io::triple_from_csv("1,2"), io::FormatError);
    EXPECT_THROW(io::triple_from_csv("1,x,0,1"), io::FormatError);
}

TEST(io, matrix_round_trip) {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 200; i++) {
        const CMat4 m = vdc::testing::random_density(rng, 1 + static_cast<int>(i % 4)).matrix();
        EXPECT_EQ(io::matrix_from_json(json::parse(io::matrix_to_json(m, kFull).dump())), m);
    }
    EXPECT_THROW(io::matrix_from_json(json::array({1, 2})), io::FormatError);
}

TEST(io, record_round_trip_csv_and_json) {
    std::mt19937_64 rng(5);
    const TomographyRecord rec = measure(vdc::testing::random_density(rng, 2), {0.02, 0.97, 9});
    std::stringstream ss;
    io::write_record_csv(ss, rec, kFull);
    EXPECT_EQ(io::read_record_csv(ss).intensities, rec.intensities);
    EXPECT_EQ(io::record_from_json(io::record_to_json(rec, kFull)).intensities, rec.intensities);

    std::stringstream out_of_order;
    io::write_record_csv(out_of_order, rec, kFull);
    std::string text = out_of_order.str();
    const std::size_t first = text.find('\n') + 1;
    const std::size_t second = text.find('\n', first) + 1;
    const std::size_t third = text.find('\n', second) + 1;
    text = text.substr(0, first) + text.substr(second, third - second) + text.substr(first, second - first) +
           text.substr(third);
    std::stringstream swapped(text);
    EXPECT_THROW(io::read_record_csv(swapped), io::FormatError);
}

TEST(io, grid_round_trip) {
    std::vector<io::GridRow> rows;
    for (const GridState &g : grid_states()) {
        rows.push_back({g.index, g.target, g.r_squared, g.cos_theta, g.measured});
    }
    for (bool with_measured : {true, false}) {
        std::vector<io::GridRow> in = rows;
        if (!with_measured) {
            for (auto &r : in) {
                r.measured.reset();
            }
        }
        std::stringstream ss;
        io::write_grid_csv(ss, in, kFull);
        const auto csv = io::read_grid_csv(ss);
        const auto js = io::grid_from_json(io::grid_to_json(in, kFull));
        for (const auto *back : {&csv, &js}) {
            ASSERT_EQ(back->size(), in.size());
            for (std::size_t k = 0; k < in.size(); k++) {
                EXPECT_EQ((*back)[k].index, in[k].index);
                expect_triple_eq((*back)[k].target, in[k].target);
                EXPECT_EQ((*back)[k].r_squared, in[k].r_squared);
                EXPECT_EQ((*back)[k].cos_theta, in[k].cos_theta);
                ASSERT_EQ((*back)[k].measured.has_value(), with_measured);
                if (with_measured) {
                    expect_triple_eq(*(*back)[k].measured, *in[k].measured);
                }
            }
        }
    }
}

TEST(io, sphere_round_trip) {
    std::vector<io::SpherePoint> pts;
    for (const ObservableTriple &t : sample_octant(50, 3)) {
        pts.push_back({t, 0});
    }
    pts.push_back({grid_states()[12].target, 13});
    std::stringstream ss;
    io::write_sphere_csv(ss, pts, kFull);
    const auto csv = io::read_sphere_csv(ss);
    const auto js = io::sphere_from_json(io::sphere_to_json(pts, kFull));
    for (const auto *back : {&csv, &js}) {
        ASSERT_EQ(back->size(), pts.size());
        for (std::size_t k = 0; k < pts.size(); k++) {
            expect_triple_eq((*back)[k].point, pts[k].point);
            EXPECT_EQ((*back)[k].grid_index, pts[k].grid_index);
        }
    }
}

TEST(io, fringe_round_trip) {
    const auto trace = fringe_scan(realize(grid_states()[2].params), 17, 0, 6);
    std::stringstream ss;
    io::write_fringe_csv(ss, trace, 0.5, kFull);
    const io::FringeTable csv = io::read_fringe_csv(ss);
    const io::FringeTable js = io::fringe_from_json(io::fringe_to_json(trace, 0.5, kFull));
    for (const auto *back : {&csv, &js}) {
        EXPECT_EQ(back->visibility, 0.5);
        ASSERT_EQ(back->trace.size(), trace.size());
        for (std::size_t k = 0; k < trace.size(); k++) {
            EXPECT_EQ(back->trace[k].phase, trace[k].phase);
            EXPECT_EQ(back->trace[k].intensity, trace[k].intensity);
        }
    }
    std::stringstream missing("phase,intensity\n0,1\n");
    EXPECT_THROW(io::read_fringe_csv(missing), io::FormatError);
}

TEST(io, convergence_round_trip_keeps_nan_slopes) {
    ConvergenceStudy s;
    s.rows = {{1000, 0.01, 0, 0.02, 0.005}, {10000, 0.003, 0, 0.006, 0.0017}};
    s.v_slope = -0.52;
    s.d_slope = std::nan("");
    s.c_slope = -0.49;
    s.gamma_slope = -0.47;
    std::stringstream ss;
    io::write_convergence_csv(ss, s, kFull);
    const ConvergenceStudy csv = io::read_convergence_csv(ss);
    const ConvergenceStudy js = io::convergence_from_json(json::parse(io::convergence_to_json(s, kFull).dump()));
    for (const auto *back : {&csv, &js}) {
        ASSERT_EQ(back->rows.size(), 2u);
        EXPECT_EQ(back->rows[1].n, 10000u);
        EXPECT_EQ(back->rows[1].c_err, 0.006);
        EXPECT_EQ(back->v_slope, -0.52);
        EXPECT_TRUE(std::isnan(back->d_slope));
        EXPECT_EQ(back->gamma_slope, -0.47);
    }
}
