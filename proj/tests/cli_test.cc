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

#include "vdc/cli.h"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "vdc/io.h"

using namespace vdc;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path tmp(const std::string &name) {
    const fs::path dir(VDC_TEST_TMPDIR);
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path &p, const std::string &text) {
    std::ofstream(p, std::ios::binary) << text;
}

ObservableTriple tomo_triple(const Result &r) {
    std::istringstream in(r.out);
    std::string header;
    std::string row;
    std::getline(in, header);
    std::getline(in, row);
    EXPECT_EQ(header, io::triple_csv_header());
    return io::triple_from_csv(row);
}

std::string beam_file(const std::string &name, const TwoPathBeam &b) {
    const fs::path p = tmp(name);
    write_file(p, io::beam_to_json(b).dump());
    return p.string();
}

}  // namespace

TEST(cli, grid_targets_and_noiseless_sum) {
    const Result r = run({"grid", "--simulate", "--noise-sigma", "0", "--sys-visibility", "1", "--full-precision"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    std::istringstream in(r.out);
    const auto rows = io::read_grid_csv(in);
    ASSERT_EQ(rows.size(), 13u);
    EXPECT_EQ(rows[0].target.v, 1);
    EXPECT_EQ(rows[0].target.d, 0);
    EXPECT_EQ(rows[0].target.c, 0);
    for (const auto &row : rows) {
        ASSERT_TRUE(row.measured.has_value());
        EXPECT_NEAR(row.measured->sum(), 1, 1e-12);
    }
}

TEST(cli, grid_noisy_sum_envelope) {
    const Result r = run({"grid", "--simulate", "--noise-sigma", "0.01", "--seed", "17", "--format", "json"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    for (const auto &row : io::grid_from_json(nlohmann::json::parse(r.out))) {
        ASSERT_TRUE(row.measured.has_value());
        EXPECT_GE(row.measured->sum(), 0.95);
        EXPECT_LE(row.measured->sum(), 1.05);
        EXPECT_NEAR(row.measured->v, row.target.v, 0.06);
        EXPECT_NEAR(row.measured->d, row.target.d, 0.06);
        EXPECT_NEAR(row.measured->c, row.target.c, 0.06);
    }
}

TEST(cli, grid_reference_columns) {
    const Result r = run({"grid", "--reference"});
    ASSERT_EQ(r.code, cli::kOk);
    std::istringstream in(r.out);
    const auto rows = io::read_grid_csv(in);
    EXPECT_EQ(rows[4].measured->v, 0.885);
    EXPECT_EQ(rows[4].measured->c, 0.463);
    EXPECT_EQ(run({"grid", "--reference", "--simulate"}).code, cli::kConfigError);
}

TEST(cli, scan_examples) {
    const double s3 = std::sqrt(3.0);
    struct Case {
        TwoPathBeam beam;
        double v;
    };
    const Case cases[] = {
        {TwoPathBeam(1, 1, SpinState::x(), SpinState::x()), 1},
        {TwoPathBeam(1, 1, SpinState::x(), SpinState::y()), 0},
        {TwoPathBeam(1, std::sqrt(2 - s3) / std::sqrt(2 + s3), SpinState::x(), SpinState::x()), 0.5},
    };
    for (const Case &c : cases) {
        const Result r = run({"scan", "--beam", beam_file("scan.json", c.beam), "--full-precision"});
        ASSERT_EQ(r.code, cli::kOk) << r.err;
        std::istringstream in(r.out);
        const io::FringeTable t = io::read_fringe_csv(in);
        EXPECT_NEAR(t.visibility, c.v, 1e-6);
        EXPECT_EQ(t.trace.size(), 101u);
        EXPECT_NEAR(t.trace.back().phase, 2 * std::numbers::pi, 1e-15);
    }
    const Result s3r = run({"scan", "--state", "3", "--format", "json"});
    EXPECT_NEAR(io::fringe_from_json(nlohmann::json::parse(s3r.out)).visibility, 0.5, 1e-6);
}

TEST(cli, scan_bad_beam_names_the_field) {
    const fs::path p = tmp("bad_beam.json");
    write_file(p, R"({"amp_a": [1, 0], "spin_a": {"cx": [1, 0], "cy": [0, 0]}, "spin_b": {"cx": [1, 0], "cy": [0, 0]}})");
    const Result r = run({"scan", "--beam", p.string()});
    EXPECT_EQ(r.code, cli::kConfigError);
    EXPECT_NE(r.err.find("amp_b"), std::string::npos) << r.err;
    write_file(p, "{not json");
    EXPECT_EQ(run({"scan", "--beam", p.string()}).code, cli::kConfigError);
    EXPECT_EQ(run({"scan"}).code, cli::kConfigError);
}

TEST(cli, tomo_examples) {
    const Result s13 = run({"tomo", "--state", "13", "--noise-sigma", "0", "--sys-visibility", "1", "--full-precision"});
    ASSERT_EQ(s13.code, cli::kOk) << s13.err;
    EXPECT_NEAR(tomo_triple(s13).c, 1, 1e-9);
    // The default systematic factor is undone on the matrix, so C survives too.
    const Result s13_default = run({"tomo", "--state", "13", "--full-precision"});
    EXPECT_NEAR(tomo_triple(s13_default).c, 1, 1e-9);
    const Result s13_vis = run({"tomo", "--state", "13", "--correction", "visibility", "--full-precision"});
    EXPECT_NEAR(tomo_triple(s13_vis).c, 0.981, 1e-9);
    EXPECT_EQ(run({"tomo", "--state", "13", "--correction", "all"}).code, cli::kConfigError);

    const Result s5 = run({"tomo", "--state", "5", "--noise-sigma", "0.01", "--seed", "4"});
    ASSERT_EQ(s5.code, cli::kOk) << s5.err;
    const ObservableTriple t5 = tomo_triple(s5);
    EXPECT_NEAR(t5.sum(), 1, 0.05);
    EXPECT_NEAR(t5.v, 0.885, 0.06);
    EXPECT_NEAR(t5.d, 0.010, 0.06);
    EXPECT_NEAR(t5.c, 0.463, 0.06);

    const fs::path m = tmp("diag.json");
    write_file(m, io::matrix_to_json(CMat4::diagonal({1, 0, 0, 0})).dump());
    const Result diag = run({"tomo", "--matrix", m.string(), "--sys-visibility", "1"});
    ASSERT_EQ(diag.code, cli::kOk) << diag.err;
    EXPECT_NEAR(tomo_triple(diag).d, 1, 1e-12);
}

TEST(cli, tomo_writes_reparseable_artifacts) {
    const fs::path prefix = tmp("state6");
    const Result r = run({"tomo", "--state", "6", "--noise-sigma", "0.01", "--out", prefix.string(), "--full-precision"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    std::ifstream rec(prefix.string() + ".record.csv");
    const TomographyRecord record = io::read_record_csv(rec);
    const CMat4 w = io::matrix_from_json(nlohmann::json::parse(slurp(prefix.string() + ".matrix.json")));
    const ObservableTriple t = io::triple_from_json(nlohmann::json::parse(slurp(prefix.string() + ".triple.json")));
    const Reconstruction again = reconstruct(record);
    EXPECT_LT((again.w.matrix() - w).frobenius_norm(), 1e-14);
    const ObservableTriple stdout_t = tomo_triple(r);
    EXPECT_EQ(t.v, stdout_t.v);
    EXPECT_EQ(t.c, stdout_t.c);
}

TEST(cli, tomo_identity_alarm_and_warning) {
    const Result alarm =
        run({"tomo", "--state", "1", "--sys-visibility", "0.5", "--correction", "none", "--noise-sigma", "0"});
    EXPECT_EQ(alarm.code, cli::kIdentityAlarm);
    EXPECT_NE(alarm.err.find("alarm"), std::string::npos);
    EXPECT_EQ(run({"tomo", "--state", "1", "--sys-visibility", "0.5", "--correction", "none", "--alarm", "0.8"}).code,
              cli::kOk);

    // Heavy noise on a pure state drives the linear inversion outside the PSD cone.
    const Result noisy = run({"tomo", "--state", "13", "--noise-sigma", "0.3", "--seed", "2", "--alarm", "10"});
    EXPECT_EQ(noisy.code, cli::kOk);
    EXPECT_NE(noisy.err.find("not positive semidefinite"), std::string::npos);
}

TEST(cli, sphere_examples) {
    const Result r = run({"sphere", "--samples", "13", "--grid", "--full-precision"});
    ASSERT_EQ(r.code, cli::kOk);
    std::istringstream in(r.out);
    const auto pts = io::read_sphere_csv(in);
    ASSERT_EQ(pts.size(), 26u);
    const auto grid = grid_states();
    for (std::size_t k = 0; k < pts.size(); k++) {
        EXPECT_NEAR(pts[k].point.sum(), 1, 1e-12);
        EXPECT_GE(pts[k].point.v, 0);
        EXPECT_GE(pts[k].point.d, 0);
        EXPECT_GE(pts[k].point.c, 0);
        if (k >= 13) {
            EXPECT_EQ(pts[k].grid_index, static_cast<int>(k) - 12);
            EXPECT_EQ(pts[k].point.v, grid[k - 13].target.v);
            EXPECT_EQ(pts[k].point.c, grid[k - 13].target.c);
        } else {
            EXPECT_EQ(pts[k].grid_index, 0);
        }
    }
    EXPECT_EQ(run({"sphere", "--samples", "0"}).code, cli::kPreconditionViolation);
}

TEST(cli, converge_gamma_one_is_exact) {
    const Result r = run({"converge", "--gamma", "1", "--schedule", "1000,10000", "--replicates", "2"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    std::istringstream in(r.out);
    const ConvergenceStudy s = io::read_convergence_csv(in);
    for (const auto &row : s.rows) {
        EXPECT_EQ(row.v_err, 0);
        EXPECT_EQ(row.d_err, 0);
        EXPECT_EQ(row.c_err, 0);
        EXPECT_EQ(row.gamma_err, 0);
    }
    EXPECT_EQ(run({"converge", "--gamma", "0.8", "--gamma-im", "0.8"}).code, cli::kPreconditionViolation);
}

TEST(cli, converge_incoherent_slope) {
    const Result r = run({"converge", "--gamma", "0", "--seed", "1", "--format", "json", "--full-precision"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    const ConvergenceStudy s = io::convergence_from_json(nlohmann::json::parse(r.out));
    ASSERT_EQ(s.rows.size(), 4u);
    EXPECT_NEAR(s.v_slope, -0.5, 0.1);
    EXPECT_NEAR(s.gamma_slope, -0.5, 0.1);
}

TEST(cli, converge_partial_coherence_errors_shrink) {
    const Result r = run({"converge", "--gamma", "0.5", "--schedule", "1000,100000", "--seed", "5"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    std::istringstream in(r.out);
    const ConvergenceStudy s = io::read_convergence_csv(in);
    EXPECT_LT(s.rows[1].v_err, s.rows[0].v_err);
    EXPECT_LT(s.rows[1].c_err, s.rows[0].c_err);
    EXPECT_LT(s.rows[1].gamma_err, s.rows[0].gamma_err);
}

TEST(cli, identical_seeds_give_identical_bytes) {
    const std::vector<std::vector<std::string>> commands = {
        {"grid", "--simulate", "--noise-sigma", "0.01"},
        {"tomo", "--state", "7", "--noise-sigma", "0.02"},
        {"sphere", "--samples", "100"},
        {"converge", "--gamma", "0.3", "--schedule", "1000,2000"},
    };
    for (const auto &cmd : commands) {
        std::vector<std::string> a = {"--seed", "99"};
        a.insert(a.end(), cmd.begin(), cmd.end());
        const fs::path p1 = tmp("det1.out");
        const fs::path p2 = tmp("det2.out");
        std::vector<std::string> a1 = a;
        std::vector<std::string> a2 = a;
        a1.insert(a1.end(), {"--out", p1.string()});
        a2.insert(a2.end(), {"--out", p2.string()});
        const Result r1 = run(a1);
        const Result r2 = run(a2);
        ASSERT_EQ(r1.code, cli::kOk) << r1.err;
        EXPECT_EQ(r1.out, r2.out);
        if (cmd[0] == "tomo") {
            EXPECT_EQ(slurp(p1.string() + ".record.csv"), slurp(p2.string() + ".record.csv"));
        } else {
            EXPECT_FALSE(slurp(p1).empty());
            EXPECT_EQ(slurp(p1), slurp(p2));
        }
    }
    EXPECT_NE(run({"--seed", "1", "sphere", "--samples", "5"}).out, run({"--seed", "2", "sphere", "--samples", "5"}).out);
}

TEST(cli, config_file_with_flag_override) {
    const fs::path cfg = tmp("run.toml");
    write_file(cfg, "seed = 7\nnoise-sigma = 0.02\n[sphere]\nsamples = 4\n");
    const Result from_file = run({"--config", cfg.string(), "sphere"});
    ASSERT_EQ(from_file.code, cli::kOk) << from_file.err;
    EXPECT_EQ(from_file.out, run({"--seed", "7", "sphere", "--samples", "4"}).out);
    const Result overridden = run({"--config", cfg.string(), "--seed", "8", "sphere", "--samples", "3"});
    EXPECT_EQ(overridden.out, run({"--seed", "8", "sphere", "--samples", "3"}).out);
}

TEST(cli, exit_codes) {
    EXPECT_EQ(run({}).code, cli::kConfigError);
    EXPECT_EQ(run({"bogus"}).code, cli::kConfigError);
    EXPECT_EQ(run({"grid", "--format", "xml"}).code, cli::kConfigError);
    EXPECT_EQ(run({"--sys-visibility", "0", "grid"}).code, cli::kConfigError);
    EXPECT_EQ(run({"--sys-visibility", "abc", "grid"}).code, cli::kConfigError);
    EXPECT_EQ(run({"--correction", "all", "grid"}).code, cli::kConfigError);
    EXPECT_EQ(run({"--noise-sigma", "-1", "grid"}).code, cli::kConfigError);
    EXPECT_EQ(run({"tomo", "--state", "14"}).code, cli::kConfigError);
    EXPECT_EQ(run({"--out", "/nonexistent-dir/x.csv", "grid"}).code, cli::kIoError);
    EXPECT_EQ(run({"--help"}).code, cli::kOk);

    const fs::path m = tmp("nonpsd.json");
    write_file(m, io::matrix_to_json(CMat4::diagonal({1.5, -0.5, 0, 0})).dump());
    EXPECT_EQ(run({"tomo", "--matrix", m.string()}).code, cli::kConfigError);
}
