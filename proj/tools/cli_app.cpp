#include "cli_app.hpp"

#include "magmech/analysis.hpp"
#include "magmech/config.hpp"
#include "magmech/csv.hpp"
#include "magmech/errors.hpp"
#include "magmech/oracle.hpp"
#include "magmech/presets.hpp"
#include "magmech/steady_state.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

namespace magmech::cli {

namespace {

constexpr double kDefaultFdStepOverWb = 1e-5;
constexpr double kDefaultProminence = 0.01;

struct Options {
    std::string config;
    std::string preset;
    std::string out;
    std::optional<int> points;
    std::optional<double> delta_min;
    std::optional<double> delta_max;
    std::optional<std::string> method;
    std::optional<double> delta_b;
    std::optional<double> prominence;
    std::optional<double> fd_step;
};

// Everything a command needs after merging preset, config file and flags.
struct Resolved {
    RawParams params;
    SweepSpec sweep;
    double prominence = kDefaultProminence;
    double fd_step = 0.0;  // rad/s
    double abs_delta_B = 0.0;
    SteadyStateOptions steady;
    const Preset* preset = nullptr;
};

class OutputSink {
public:
    OutputSink(std::ostream& fallback, const std::string& path) : fallback_(fallback), path_(path) {}

    std::ostream& open(const std::string& label = "") {
        if (path_.empty()) {
            if (!label.empty()) fallback_ << "# series: " << label << '\n';
            return fallback_;
        }
        std::filesystem::path target(path_);
        if (!label.empty()) {
            target = target.parent_path() /
                     (target.stem().string() + "_" + label + target.extension().string());
        }
        file_ = std::make_unique<std::ofstream>(target);
        if (!*file_) {
            throw std::ios_base::failure("cannot open output file '" + target.string() + "'");
        }
        written_.push_back(target.string());
        return *file_;
    }

    const std::vector<std::string>& written() const { return written_; }

private:
    std::ostream& fallback_;
    std::string path_;
    std::unique_ptr<std::ofstream> file_;
    std::vector<std::string> written_;
};

void add_common(CLI::App* cmd, Options& o, bool with_preset_flag = true) {
    cmd->add_option("--config", o.config, "Configuration file (key = value)");
    if (with_preset_flag) {
        cmd->add_option("--preset", o.preset, "Start from a named preset");
    }
    cmd->add_option("--out", o.out, "Output CSV path (default: standard output)");
    cmd->add_option("--points", o.points, "Number of grid points")->check(CLI::Range(2, 100000000));
    cmd->add_option("--delta-min", o.delta_min, "Sweep start in units of omega_b");
    cmd->add_option("--delta-max", o.delta_max, "Sweep end in units of omega_b");
    cmd->add_option("--method", o.method, "chain | oracle | both");
    cmd->add_option("--delta-b", o.delta_b, "Barnett shift in units of omega_b (signed)");
    cmd->add_option("--prominence", o.prominence, "Window prominence as a fraction of max eps_R");
    cmd->add_option("--fd-step", o.fd_step, "Group-delay step in units of omega_b");
}

Resolved resolve(const Options& o) {
    Resolved r;
    r.params = table1_params();
    SweepSpec sweep{0.0, 2.0 * r.params.omega_b(), 2001, Method::Chain};
    double fd_step_over_wb = kDefaultFdStepOverWb;

    if (!o.preset.empty()) {
        r.preset = &find_preset(o.preset);
        r.params = r.preset->series.front().params;
        sweep = r.preset->sweep_for(r.params);
        r.abs_delta_B = r.preset->abs_delta_B_over_wb * r.params.omega_b();
    }

    if (!o.config.empty()) {
        const auto doc = ConfigDocument::load(o.config);
        r.params = params_from_document(doc);
        const double wb = r.params.omega_b();
        sweep.delta_min = 0.0;
        sweep.delta_max = 2.0 * wb;
        if (doc.contains("sweep.points")) sweep.n_points = static_cast<int>(doc.get_int("sweep.points"));
        if (doc.contains("sweep.delta_min_over_wb")) sweep.delta_min = doc.get_double("sweep.delta_min_over_wb") * wb;
        if (doc.contains("sweep.delta_max_over_wb")) sweep.delta_max = doc.get_double("sweep.delta_max_over_wb") * wb;
        if (doc.contains("sweep.method")) sweep.method = method_from_string(doc.get_string("sweep.method"));
        if (doc.contains("sweep.prominence")) r.prominence = doc.get_double("sweep.prominence");
        if (doc.contains("sweep.fd_step_over_wb")) fd_step_over_wb = doc.get_double("sweep.fd_step_over_wb");
        if (doc.contains("steady_state.tol")) r.steady.tol = doc.get_double("steady_state.tol");
        if (doc.contains("steady_state.max_iter")) r.steady.max_iter = static_cast<int>(doc.get_int("steady_state.max_iter"));
        r.abs_delta_B = std::abs(r.params.Delta_B);
    }

    const double wb = r.params.omega_b();
    if (o.points) sweep.n_points = *o.points;
    if (o.delta_min) sweep.delta_min = *o.delta_min * wb;
    if (o.delta_max) sweep.delta_max = *o.delta_max * wb;
    if (o.method) sweep.method = method_from_string(*o.method);
    if (o.prominence) r.prominence = *o.prominence;
    if (o.fd_step) fd_step_over_wb = *o.fd_step;
    if (o.delta_b) {
        r.params.Delta_B = *o.delta_b * wb;
        r.abs_delta_B = std::abs(*o.delta_b) * wb;
    }
    if (!(fd_step_over_wb > 0.0)) {
        throw ConfigError("fd-step", "must be positive");
    }
    if (!(r.prominence > 0.0)) {
        throw ConfigError("prominence", "must be positive");
    }
    r.fd_step = fd_step_over_wb * wb;
    validate(r.params);
    validate(sweep);
    r.sweep = sweep;
    return r;
}

void write_header(std::ostream& out, const std::string& command, const RawParams& params,
                  const SweepSpec& sweep) {
    out << "# magmech " << command << '\n';
    write_comment_lines(out, provenance_lines(params));
    out << "# sweep: delta_over_wb in [" << format_number(sweep.delta_min / params.omega_b())
        << ", " << format_number(sweep.delta_max / params.omega_b()) << "], points = "
        << sweep.n_points << ", method = " << to_string(sweep.method) << '\n';
}

std::vector<DelayRow> delay_rows(const LinearizedModel& model, const SweepSpec& sweep,
                                 double fd_step) {
    const Method method = sweep.method == Method::Oracle ? Method::Oracle : Method::Chain;
    const auto table = sweep_spectrum(model, sweep, method);
    std::vector<DelayRow> rows;
    rows.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        DelayRow d;
        d.delta = row.point.delta;
        d.phase = row.point.phase;
        if (!row.pole) {
            try {
                if (method == Method::Oracle) {
                    d.tau = group_delay_with(
                        [&](double x) {
                            return 1.0 - 2.0 * model.kappa_a * oracle_sideband_amplitude(model, x);
                        },
                        d.delta, fd_step);
                } else {
                    d.tau = group_delay(model, d.delta, fd_step);
                }
            } catch (const SolverError&) {
                d.tau.reset();
            }
        }
        rows.push_back(d);
    }
    return rows;
}

void emit_spectrum(std::ostream& out, const RawParams& params, const SweepSpec& sweep,
                   const std::string& command) {
    write_header(out, command, params, sweep);
    write_spectrum_csv(out, sweep_spectrum(build_model(params), sweep));
}

void emit_delay(std::ostream& out, const RawParams& params, const SweepSpec& sweep, double fd_step,
                const std::string& command) {
    write_header(out, command, params, sweep);
    out << "# fd_step_over_wb = " << format_number(fd_step / params.omega_b()) << '\n';
    write_delay_csv(out, delay_rows(build_model(params), sweep, fd_step), params.omega_b());
}

void emit_nonreciprocity(std::ostream& out, const RawParams& params, const SweepSpec& sweep,
                         double abs_delta_B, double fd_step, const std::string& command) {
    write_header(out, command, params, sweep);
    out << "# abs_delta_B_over_wb = " << format_number(abs_delta_B / params.omega_b())
        << ", fd_step_over_wb = " << format_number(fd_step / params.omega_b()) << '\n';
    write_nonreciprocity_csv(out, nonreciprocity(build_model(params), abs_delta_B, sweep, fd_step));
}

int run_preset(const std::string& name, const Options& o, std::ostream& out) {
    Options merged = o;
    merged.preset = name;
    const Resolved base = resolve(merged);
    const Preset& preset = *base.preset;
    OutputSink sink(out, o.out);
    const bool multi = preset.series.size() > 1;

    for (const auto& series : preset.series) {
        Options per_series = merged;
        RawParams params = series.params;
        if (o.delta_b) params.Delta_B = *o.delta_b * params.omega_b();
        validate(params);
        SweepSpec sweep = base.sweep;
        const double wb = params.omega_b();
        sweep.delta_min = base.sweep.delta_min / base.params.omega_b() * wb;
        sweep.delta_max = base.sweep.delta_max / base.params.omega_b() * wb;
        const double fd_step = base.fd_step / base.params.omega_b() * wb;

        std::ostream& stream = sink.open(multi ? series.label : "");
        stream << "# preset " << preset.name << (multi ? " [" + series.label + "]" : "") << ": "
               << preset.description << '\n';
        switch (preset.kind) {
            case PresetKind::Spectrum:
                emit_spectrum(stream, params, sweep, "preset " + preset.name);
                break;
            case PresetKind::Delay:
                emit_delay(stream, params, sweep, fd_step, "preset " + preset.name);
                break;
            case PresetKind::Nonreciprocity:
                emit_nonreciprocity(stream, params, sweep, base.abs_delta_B, fd_step,
                                    "preset " + preset.name);
                break;
        }
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Probe response of a two-sphere cavity magnomechanical system with a membrane"};
    app.require_subcommand(1);
    app.footer(
        "Exit codes: 0 ok, 1 usage or I/O error, 2 config error, 3 solver error, 4 unknown preset.\n"
        "Detunings given on the command line are in units of omega_b (omega_b1 unless overridden).");

    Options o;
    std::string preset_name;

    auto* spectrum = app.add_subcommand("spectrum", "Absorption/dispersion/transmission sweep");
    add_common(spectrum, o);
    auto* delay = app.add_subcommand("delay", "Group delay from the phase of the transmission");
    add_common(delay, o);
    auto* nonrec = app.add_subcommand("nonreciprocity", "Contrast between +|Delta_B| and -|Delta_B|");
    add_common(nonrec, o);
    auto* steady = app.add_subcommand("steady-state", "Mean-field steady state and Kerr check");
    add_common(steady, o);
    auto* windows = app.add_subcommand("windows", "Transparency-window inventory");
    add_common(windows, o);
    auto* validate_cmd = app.add_subcommand("validate", "Closed-form response vs. sideband linear solve");
    add_common(validate_cmd, o);
    auto* preset = app.add_subcommand("preset", "Run a named preset");
    preset->add_option("name", preset_name, "Preset name")->required();
    add_common(preset, o, false);
    auto* list = app.add_subcommand("list-presets", "List preset names");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        if (*list) {
            for (const auto& p : preset_registry()) {
                out << p.name << '\t' << to_string(p.kind) << '\t' << p.description << '\n';
            }
            return kOk;
        }
        if (*preset) {
            return run_preset(preset_name, o, out);
        }

        const Resolved r = resolve(o);
        OutputSink sink(out, o.out);

        if (*spectrum) {
            emit_spectrum(sink.open(), r.params, r.sweep, "spectrum");
        } else if (*delay) {
            emit_delay(sink.open(), r.params, r.sweep, r.fd_step, "delay");
        } else if (*nonrec) {
            emit_nonreciprocity(sink.open(), r.params, r.sweep, r.abs_delta_B, r.fd_step,
                                "nonreciprocity");
        } else if (*windows) {
            SweepSpec sweep = r.sweep;
            sweep.method = sweep.method == Method::Oracle ? Method::Oracle : Method::Chain;
            const auto table = sweep_spectrum(build_model(r.params), sweep, sweep.method);
            std::ostream& stream = sink.open();
            write_header(stream, "windows", r.params, sweep);
            stream << "# prominence = " << format_number(r.prominence) << '\n';
            write_windows_csv(stream, find_windows(table, r.prominence), r.params.omega_b());
        } else if (*validate_cmd) {
            const auto model = build_model(r.params);
            const auto report = cross_validate(model, sweep_grid(r.sweep));
            std::ostream& stream = sink.open();
            write_header(stream, "validate", r.params, r.sweep);
            write_validation_csv(stream, report, r.params.omega_b());
        } else if (*steady) {
            const auto drive = derive_drive(r.params);
            const auto state = solve_steady_state(r.params, drive, r.steady);
            const auto kerr = kerr_diagnostic(r.params.kerr_coefficient, std::abs(state.m_1s),
                                              r.params.kerr_threshold);
            std::ostream& stream = sink.open();
            stream << "# magmech steady-state\n";
            write_comment_lines(stream, provenance_lines(r.params));
            stream << "# N_spins = " << format_number(drive.N_spins)
                   << "\n# Omega_rad_s = " << format_number(drive.Omega)
                   << "\n# epsilon_p = " << format_number(drive.epsilon_p) << '\n';
            write_steady_state_text(stream, state);
            stream << "# fixed_point_residual = "
                   << format_number(fixed_point_residual(r.params, drive, state)) << '\n'
                   << "# kerr_nonlinear_scale = " << format_number(kerr.nonlinear_scale)
                   << ", ratio = " << format_number(kerr.ratio)
                   << ", negligible = " << (kerr.negligible ? "true" : "false") << '\n';
            write_steady_state_csv(stream, state);
        }
        return kOk;
    } catch (const UnknownPresetError& e) {
        err << "error: " << e.what() << '\n';
        return kUnknownPreset;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const SolverError& e) {
        err << "solver error: " << e.what() << '\n';
        return kSolverError;
    } catch (const std::ios_base::failure& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
}

}  // namespace magmech::cli
