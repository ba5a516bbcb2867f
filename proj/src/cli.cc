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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "vdc/ensemble.h"
#include "vdc/field.h"
#include "vdc/io.h"
#include "vdc/observables.h"
#include "vdc/prepare.h"
#include "vdc/random.h"
#include "vdc/tomography.h"

namespace vdc::cli {

namespace {

using nlohmann::json;

class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Tolerated |SUM - 1| before `tomo` exits with kIdentityAlarm.
constexpr double kDefaultAlarm = 0.05;
constexpr double kDefaultSysVisibility = 0.981;

struct RunConfig {
    NoiseModel noise{0.0, kDefaultSysVisibility, 0};
    std::string out;
    std::string format = "csv";
    bool full_precision = false;
    Correction correction = Correction::kCoherence;

    io::NumberFormat number_format() const {
        return {full_precision};
    }
    bool json() const {
        return format == "json";
    }
};

/// Writes to --out when given, else to the command's data stream.
class Sink {
   public:
    Sink(const std::string &path, std::ostream &fallback) {
        if (path.empty()) {
            stream_ = &fallback;
            return;
        }
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
        if (!*file_) {
            throw IoError("cannot open output file '" + path + "'");
        }
        stream_ = file_.get();
        path_ = path;
    }

    std::ostream &stream() {
        return *stream_;
    }

    void finish() {
        stream_->flush();
        if (!*stream_) {
            throw IoError("failed writing output" + (path_.empty() ? std::string() : " '" + path_ + "'"));
        }
    }

   private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream *stream_ = nullptr;
    std::string path_;
};

void write_json(Sink &sink, const json &doc) {
    sink.stream() << doc.dump(2) << '\n';
    sink.finish();
}

json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw io::FormatError("cannot read '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw io::FormatError(path + ": " + e.what());
    }
}

const GridState &grid_state(int index) {
    static const std::vector<GridState> kGrid = grid_states();
    if (index < 1 || index > static_cast<int>(kGrid.size())) {
        throw std::invalid_argument("state index must be in 1..13");
    }
    return kGrid[static_cast<std::size_t>(index - 1)];
}

/// Per-state noise stream so states in one run draw independent noise.
NoiseModel state_noise(const NoiseModel &base, int index) {
    NoiseModel n = base;
    n.seed = mix64(base.seed ^ mix64(static_cast<std::uint64_t>(index)));
    return n;
}

ObservableTriple simulate_tomography(const CoherenceMatrix &w, const NoiseModel &noise, Correction correction) {
    return corrected_observables(reconstruct(measure(w, noise)).w, noise.sys_visibility, correction);
}

// ---- grid ----

struct GridOptions {
    bool simulate = false;
    bool reference = false;
};

int cmd_grid(const RunConfig &cfg, const GridOptions &opt, std::ostream &out) {
    if (opt.simulate && opt.reference) {
        throw CLI::ValidationError("--simulate and --reference are mutually exclusive");
    }
    std::vector<io::GridRow> rows;
    for (const GridState &g : grid_states()) {
        io::GridRow row{g.index, g.target, g.r_squared, g.cos_theta, std::nullopt};
        if (opt.simulate) {
            row.measured =
                simulate_tomography(to_coherence_matrix(realize(g.params)), state_noise(cfg.noise, g.index), cfg.correction);
        } else if (opt.reference) {
            row.measured = g.measured;
        }
        rows.push_back(row);
    }
    Sink sink(cfg.out, out);
    if (cfg.json()) {
        write_json(sink, io::grid_to_json(rows, cfg.number_format()));
    } else {
        io::write_grid_csv(sink.stream(), rows, cfg.number_format());
        sink.finish();
    }
    return kOk;
}

// ---- scan ----

struct BeamSource {
    std::string beam_path;
    int state = 0;
};

TwoPathBeam load_beam(const BeamSource &src) {
    if (!src.beam_path.empty() && src.state != 0) {
        throw CLI::ValidationError("give either --beam or --state, not both");
    }
    if (!src.beam_path.empty()) {
        return io::beam_from_json(read_json_file(src.beam_path));
    }
    if (src.state != 0) {
        return realize(grid_state(src.state).params);
    }
    throw CLI::ValidationError("a beam is required: --beam FILE or --state N");
}

struct ScanOptions {
    BeamSource source;
    std::size_t points = 101;
    double phase_min = 0;
    double phase_max = 2 * std::numbers::pi;
};

int cmd_scan(const RunConfig &cfg, const ScanOptions &opt, std::ostream &out) {
    const TwoPathBeam beam = load_beam(opt.source);
    const auto trace = fringe_scan(beam, opt.points, opt.phase_min, opt.phase_max);
    const double v = fitted_visibility(trace);
    Sink sink(cfg.out, out);
    if (cfg.json()) {
        write_json(sink, io::fringe_to_json(trace, v, cfg.number_format()));
    } else {
        io::write_fringe_csv(sink.stream(), trace, v, cfg.number_format());
        sink.finish();
    }
    return kOk;
}

// ---- tomo ----

struct TomoOptions {
    BeamSource source;
    std::string matrix_path;
    double alarm = kDefaultAlarm;
};

int cmd_tomo(const RunConfig &cfg, const TomoOptions &opt, std::ostream &out, std::ostream &err) {
    if (!(opt.alarm >= 0)) {
        throw CLI::ValidationError("--alarm must be nonnegative");
    }
    std::optional<CoherenceMatrix> w;
    NoiseModel noise = cfg.noise;
    if (!opt.matrix_path.empty()) {
        if (!opt.source.beam_path.empty() || opt.source.state != 0) {
            throw CLI::ValidationError("give exactly one of --matrix, --beam, --state");
        }
        try {
            w = CoherenceMatrix(io::matrix_from_json(read_json_file(opt.matrix_path)));
        } catch (const std::invalid_argument &e) {
            throw io::FormatError(opt.matrix_path + ": " + e.what());
        }
    } else {
        w = to_coherence_matrix(load_beam(opt.source));
        if (opt.source.state != 0) {
            noise = state_noise(cfg.noise, opt.source.state);
        }
    }

    const TomographyRecord record = measure(*w, noise);
    const Reconstruction r = reconstruct(record);
    const ObservableTriple t = corrected_observables(r.w, noise.sys_visibility, cfg.correction);
    if (r.nonphysical) {
        err << "warning: linear reconstruction is not positive semidefinite (smallest eigenvalue "
            << io::format_number(r.min_raw_eigenvalue, {true}) << "); negative eigenvalues clipped\n";
    }

    const auto fmt = cfg.number_format();
    if (!cfg.out.empty()) {
        Sink rec(cfg.out + ".record.csv", out);
        io::write_record_csv(rec.stream(), record, fmt);
        rec.finish();
        Sink mat(cfg.out + ".matrix.json", out);
        write_json(mat, io::matrix_to_json(r.w.matrix(), fmt));
        Sink tri(cfg.out + ".triple.json", out);
        write_json(tri, io::triple_to_json(t, fmt));
    }
    if (cfg.json()) {
        Sink sink("", out);
        write_json(sink, {{"record", io::record_to_json(record, fmt)},
                          {"matrix", io::matrix_to_json(r.w.matrix(), fmt)},
                          {"triple", io::triple_to_json(t, fmt)},
                          {"min_raw_eigenvalue", r.min_raw_eigenvalue},
                          {"nonphysical", r.nonphysical}});
    } else {
        out << io::triple_csv_header() << '\n' << io::triple_to_csv(t, fmt) << '\n';
    }

    const double deviation = std::abs(t.sum() - 1);
    if (deviation > opt.alarm) {
        err << "alarm: V^2 + D^2 + C^2 = " << io::format_number(t.sum(), {true}) << " deviates from 1 by more than "
            << opt.alarm << '\n';
        return kIdentityAlarm;
    }
    return kOk;
}

// ---- sphere ----

struct SphereOptions {
    long long samples = 1000;
    bool grid = false;
};

int cmd_sphere(const RunConfig &cfg, const SphereOptions &opt, std::ostream &out) {
    if (opt.samples < 1) {
        throw std::invalid_argument("sphere: --samples must be at least 1");
    }
    std::vector<io::SpherePoint> points;
    for (const ObservableTriple &t : sample_octant(static_cast<std::size_t>(opt.samples), cfg.noise.seed)) {
        points.push_back({t, 0});
    }
    if (opt.grid) {
        for (const GridState &g : grid_states()) {
            points.push_back({g.target, g.index});
        }
    }
    for (const io::SpherePoint &p : points) {
        if (std::abs(p.point.sum() - 1) > 1e-12) {
            throw std::logic_error("sphere: emitted point is off the unit sphere");
        }
    }
    Sink sink(cfg.out, out);
    if (cfg.json()) {
        write_json(sink, io::sphere_to_json(points, cfg.number_format()));
    } else {
        io::write_sphere_csv(sink.stream(), points, cfg.number_format());
        sink.finish();
    }
    return kOk;
}

// ---- converge ----

struct ConvergeOptions {
    double gamma_re = 0.5;
    double gamma_im = 0;
    double amp_a = 1;
    double amp_b = 1;
    int state = 0;
    std::vector<std::size_t> schedule = {1000, 10000, 100000, 1000000};
    std::size_t replicates = ConvergenceConfig{}.replicates;
    std::size_t time_samples = 8;
};

int cmd_converge(const RunConfig &cfg, const ConvergeOptions &opt, std::ostream &out) {
    ConvergenceConfig cc;
    cc.gamma = Complex(opt.gamma_re, opt.gamma_im);
    cc.amp_a = opt.amp_a;
    cc.amp_b = opt.amp_b;
    if (opt.state != 0) {
        const TwoPathBeam beam = realize(grid_state(opt.state).params);
        cc.gamma = mutual_coherence(beam);
        cc.amp_a = beam.amp_a();
        cc.amp_b = beam.amp_b();
    }
    if (!(std::abs(cc.gamma) <= 1)) {
        throw std::invalid_argument("converge: |gamma| must not exceed 1");
    }
    cc.schedule = opt.schedule;
    cc.replicates = opt.replicates;
    cc.n_time_samples = opt.time_samples;
    cc.seed = cfg.noise.seed;
    const ConvergenceStudy study = convergence_study(cc);
    Sink sink(cfg.out, out);
    if (cfg.json()) {
        write_json(sink, io::convergence_to_json(study, cfg.number_format()));
    } else {
        io::write_convergence_csv(sink.stream(), study, cfg.number_format());
        sink.finish();
    }
    return kOk;
}

void add_beam_source(CLI::App *cmd, BeamSource &src) {
    cmd->add_option("--beam", src.beam_path, "Beam JSON file")->check(CLI::ExistingFile);
    cmd->add_option("--state", src.state, "Grid state index 1..13")->check(CLI::Range(1, 13));
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Visibility, distinguishability and concurrence of two-path optical fields", "vdclab"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "TOML/INI configuration file; command-line flags take precedence");

    RunConfig cfg;
    app.add_option("--seed", cfg.noise.seed, "Random seed for noise, sampling and ensembles");
    app.add_option("--noise-sigma", cfg.noise.sigma_rel, "Relative Gaussian error per measured intensity")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--sys-visibility", cfg.noise.sys_visibility,
                   "Interferometer's maximum visibility in (0, 1]; scales path coherences in simulated tomography")
        ->check(CLI::Validator(
            [](std::string &text) {
                double f = 0;
                try {
                    f = std::stod(text);
                } catch (const std::exception &) {
                    return std::string("not a number");
                }
                return f > 0 && f <= 1 ? std::string() : std::string("must lie in (0, 1]");
            },
            "(0,1]"));
    app.add_option("--out", cfg.out, "Output path (a file prefix for tomo); default stdout");
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--full-precision", cfg.full_precision, "Write round-trip precision instead of 6 digits");
    std::string correction = "coherence";
    app.add_option("--correction", correction,
                   "Undo --sys-visibility after tomography: on the path coherences of the matrix (coherence), on V "
                   "only (visibility), or not at all (none)")
        ->check(CLI::IsMember({"coherence", "visibility", "none"}));

    GridOptions grid_opt;
    CLI::App *grid = app.add_subcommand("grid", "The 13 sphere grid states with preparation parameters");
    grid->add_flag("--simulate", grid_opt.simulate, "Add noisy tomography results (V, D, C, SUM)");
    grid->add_flag("--reference", grid_opt.reference, "Add the laboratory reference values");

    ScanOptions scan_opt;
    CLI::App *scan = app.add_subcommand("scan", "Fringe trace versus interferometer phase");
    add_beam_source(scan, scan_opt.source);
    scan->add_option("--points", scan_opt.points, "Number of phase samples")->check(CLI::Range(2, 10000000));
    scan->add_option("--phase-min", scan_opt.phase_min, "First phase (radians)");
    scan->add_option("--phase-max", scan_opt.phase_max, "Last phase (radians)");

    TomoOptions tomo_opt;
    CLI::App *tomo = app.add_subcommand("tomo", "Simulated 36-basis tomography and reconstruction");
    add_beam_source(tomo, tomo_opt.source);
    tomo->add_option("--matrix", tomo_opt.matrix_path, "Coherence matrix JSON file")->check(CLI::ExistingFile);
    tomo->add_option("--alarm", tomo_opt.alarm, "Exit with status 4 when |SUM - 1| exceeds this");

    SphereOptions sphere_opt;
    CLI::App *sphere = app.add_subcommand("sphere", "Uniform samples on the positive octant of the sphere");
    sphere->add_option("--samples", sphere_opt.samples, "Number of sampled points");
    sphere->add_flag("--grid", sphere_opt.grid, "Append the 13 grid nodes (grid_index 1..13)");

    ConvergeOptions conv_opt;
    CLI::App *converge = app.add_subcommand("converge", "Monte Carlo convergence of ensemble estimates");
    converge->add_option("--gamma", conv_opt.gamma_re, "Real part of the target mutual coherence");
    converge->add_option("--gamma-im", conv_opt.gamma_im, "Imaginary part of the target mutual coherence");
    converge->add_option("--amp-a", conv_opt.amp_a, "Amplitude of path a");
    converge->add_option("--amp-b", conv_opt.amp_b, "Amplitude of path b");
    converge->add_option("--state", conv_opt.state, "Take amplitudes and gamma from grid state 1..13")
        ->check(CLI::Range(1, 13));
    converge->add_option("--schedule", conv_opt.schedule, "Ensemble sizes N")->delimiter(',');
    converge->add_option("--replicates", conv_opt.replicates, "Independent ensembles at the largest N (more at smaller N)")
        ->check(CLI::PositiveNumber);
    converge->add_option("--time-samples", conv_opt.time_samples, "Time samples per realization")
        ->check(CLI::Range(2, 1 << 20));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    }

    const std::map<std::string, Correction> corrections = {
        {"none", Correction::kNone}, {"visibility", Correction::kVisibility}, {"coherence", Correction::kCoherence}};
    cfg.correction = corrections.at(correction);

    try {
        if (*grid) {
            return cmd_grid(cfg, grid_opt, out);
        }
        if (*scan) {
            return cmd_scan(cfg, scan_opt, out);
        }
        if (*tomo) {
            return cmd_tomo(cfg, tomo_opt, out, err);
        }
        if (*sphere) {
            return cmd_sphere(cfg, sphere_opt, out);
        }
        if (*converge) {
            return cmd_converge(cfg, conv_opt, out);
        }
    } catch (const CLI::Error &e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const io::FormatError &e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const IoError &e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return kPreconditionViolation;
    } catch (const std::domain_error &e) {
        err << "error: " << e.what() << '\n';
        return kPreconditionViolation;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    }
    return kConfigError;
}

}  // namespace vdc::cli
