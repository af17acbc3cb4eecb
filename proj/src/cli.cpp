#include "ctc/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ctc/analysis.hpp"
#include "ctc/config.hpp"
#include "ctc/errors.hpp"
#include "ctc/integrate.hpp"
#include "ctc/io.hpp"
#include "ctc/model.hpp"
#include "ctc/stability.hpp"
#include "ctc/sweep.hpp"
#include "ctc/version.hpp"

namespace ctc {

namespace {

namespace fs = std::filesystem;

struct CliArgs {
    std::string config_path;
    std::string preset;
    std::string out_dir;
    std::uint64_t seed = 0;
    unsigned workers = 0;
    bool seed_set = false;
    bool workers_set = false;
};

RunConfig resolve_config(const CliArgs& args) {
    if (args.config_path.empty() == args.preset.empty())
        throw ConfigError("pass exactly one of --config FILE or --preset NAME");
    RunConfig cfg = args.preset.empty() ? load_config(args.config_path)
                                        : parse_config(preset_text(args.preset));
    if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
    if (args.seed_set) cfg.integration.seed = args.seed;
    if (args.workers_set) cfg.workers = std::max(1u, args.workers);
    return cfg;
}

fs::path prepare_out_dir(const RunConfig& cfg) {
    fs::path dir(cfg.out_dir);
    fs::create_directories(dir);
    std::string manifest = "# ctc ";
    manifest += kVersion;
    manifest += '\n';
    manifest += serialize_config(cfg);
    write_text_file(dir / "manifest.ini", manifest);
    return dir;
}

double stationary_start(const RunConfig& cfg) {
    if (cfg.t_discard >= 0.0) return cfg.t_discard;
    return default_transient_discard(cfg.params, cfg.integration);
}

Trajectory run_integration(const RunConfig& cfg, const FrequencyGrid& grid) {
    const EnsembleState s0 =
        initial_state(cfg.params, grid, cfg.integration.seed, cfg.integration.init_sigma);
    return cfg.integration.noise_amplitude > 0.0
               ? integrate_sde(s0, cfg.params, grid, cfg.integration)
               : integrate(s0, cfg.params, grid, cfg.integration);
}

std::string row_spectrum_name(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "spectrum_%03zu.csv", index);
    return buf;
}

void write_row_spectra(const fs::path& dir, const std::vector<SweepRow>& rows) {
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (!rows[i].failed && rows[i].spectrum.size() > 0)
            write_spectrum_csv(dir / row_spectrum_name(i), rows[i].spectrum);
}

int cmd_simulate(const RunConfig& cfg) {
    const fs::path dir = prepare_out_dir(cfg);
    const FrequencyGrid grid = cfg.make_grid();
    const Trajectory traj = run_integration(cfg, grid);
    const double discard = stationary_start(cfg);
    const Trajectory window = traj.slice_from(discard);
    if (window.size() < 16) throw ConfigError("stationary window is empty; raise t_end");

    const PhaseLabel label = classify(window, cfg.classify);
    const Spectrum spec =
        power_spectrum(window.mean_px_series, window.sample_rate, WindowKind::Hann);
    const PoincarePoints pts = poincare(traj, discard);

    write_trajectory_binary(dir / "trajectory.bin", traj);
    write_trajectory_csv(dir / "trajectory.csv", traj);
    write_spectrum_csv(dir / "spectrum.csv", spec);
    write_poincare_csv(dir / "poincare.csv", pts);

    std::string report = classification_report(label);
    report += "poincare_points = " + std::to_string(pts.size()) + '\n';
    if (pts.size() >= 30) {
        double amp = 0.0;
        for (double v : window.mean_px_series) amp = std::max(amp, std::abs(v));
        if (amp > 0.0)
            report += std::string("poincare_shape = ") +
                      to_string(poincare_shape(pts, amp)) + '\n';
    }
    write_text_file(dir / "report.txt", report);

    std::cout << "simulate: label=" << to_string(label.label)
              << " k=" << format_double(label.k_value);
    if (!label.base_freqs.empty()) {
        std::cout << " base_hz=";
        for (std::size_t i = 0; i < label.base_freqs.size(); ++i) {
            if (i) std::cout << ';';
            std::cout << format_double(label.base_freqs[i]);
        }
    }
    std::cout << " wrote " << dir.string() << '\n';
    return 0;
}

SweepSpec sweep_spec_from(const RunConfig& cfg) {
    SweepSpec spec;
    spec.axis = cfg.axis;
    spec.values = cfg.sweep_values;
    spec.base_params = cfg.params;
    spec.base_config = cfg.integration;
    spec.grid_kind = cfg.grid_kind;
    spec.n_nodes = cfg.n_nodes;
    if (cfg.axis == SweepAxis::Gradient && cfg.use_gradient)
        spec.gradient_scale = convert_gradient(1.0, cfg.cell_length, cfg.gamma);
    spec.workers = cfg.workers;
    spec.t_discard = cfg.t_discard;
    spec.classify_options = cfg.classify;
    return spec;
}

int cmd_sweep(const RunConfig& cfg) {
    if (cfg.sweep_values.empty())
        throw ConfigError("sweep needs [sweep] values or a value range");
    const fs::path dir = prepare_out_dir(cfg);
    const std::vector<SweepRow> rows = run_sweep(sweep_spec_from(cfg));
    write_sweep_summary_csv(dir / "summary.csv", rows);
    write_row_spectra(dir, rows);
    const std::size_t failed =
        static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(),
                                               [](const SweepRow& r) { return r.failed; }));
    std::cout << "sweep: axis=" << to_string(cfg.axis) << " points=" << rows.size()
              << " failed=" << failed << " wrote " << dir.string() << '\n';
    return 0;
}

int cmd_stability(const RunConfig& cfg) {
    const fs::path dir = prepare_out_dir(cfg);
    const FrequencyGrid grid = cfg.make_grid();
    const StabilityReport report = critical_alpha(cfg.params, grid);
    write_text_file(dir / "stability.txt", stability_report_text(report));
    std::cout << "stability: alpha_c=" << format_double(report.alpha_c)
              << (report.found ? "" : " (not found below cap)") << " wrote "
              << dir.string() << '\n';
    return 0;
}

int cmd_phases(const RunConfig& cfg) {
    const fs::path dir = prepare_out_dir(cfg);
    const FrequencyGrid grid = cfg.make_grid();
    const PhaseExperiment exp =
        run_phase_experiment(cfg.n_realizations, cfg.params, grid, cfg.integration,
                             cfg.identical_seeds, cfg.classify);
    write_phases_csv(dir / "phases.csv", exp);
    write_text_file(dir / "report.txt", phase_experiment_report(exp));
    std::cout << "phases: n=" << exp.phases.size()
              << " resultant=" << format_double(exp.uniformity.resultant_length)
              << " rayleigh_p=" << format_double(exp.uniformity.rayleigh_p) << " wrote "
              << dir.string() << '\n';
    return 0;
}

int cmd_noise_scan(const RunConfig& cfg) {
    if (cfg.sweep_values.empty())
        throw ConfigError("noise-scan needs [sweep] values (noise amplitudes)");
    const fs::path dir = prepare_out_dir(cfg);
    const FrequencyGrid grid = cfg.make_grid();
    const NoiseScanResult result = run_noise_scan(cfg.sweep_values, cfg.params, grid,
                                                  cfg.integration, cfg.workers,
                                                  cfg.classify);
    write_noise_summary_csv(dir / "noise_summary.csv", result);
    std::vector<SweepRow> rows;
    rows.reserve(result.rows.size());
    for (const NoiseScanRow& r : result.rows) rows.push_back(r.row);
    write_row_spectra(dir, rows);
    std::size_t survived = 0;
    for (const NoiseScanRow& r : result.rows)
        if (r.fundamental_survived) ++survived;
    std::cout << "noise-scan: base_hz=" << format_double(result.base_freq) << " survived="
              << survived << "/" << result.rows.size() << " wrote " << dir.string()
              << '\n';
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Feedback-coupled spin ensemble simulator and analysis toolkit"};
    app.set_version_flag("--version", std::string("ctc ") + kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    CliArgs args;
    app.add_option("--config", args.config_path, "Configuration file (INI-style)");
    std::string preset_help = "Embedded preset; one of:";
    for (const std::string& name : preset_names()) preset_help += " " + name;
    app.add_option("--preset", args.preset, preset_help);
    app.add_option("--out", args.out_dir, "Output directory override");
    auto* seed_opt = app.add_option("--seed", args.seed, "Base seed override");
    auto* workers_opt = app.add_option("--workers", args.workers, "Worker thread count");

    CLI::App* sim = app.add_subcommand("simulate", "Integrate one trajectory and classify it");
    CLI::App* swp = app.add_subcommand("sweep", "Scan a parameter axis and classify each point");
    CLI::App* stab = app.add_subcommand("stability", "Locate the critical feedback strength");
    CLI::App* phs =
        app.add_subcommand("phases", "Oscillation phase across repeated realizations");
    CLI::App* nscan =
        app.add_subcommand("noise-scan", "Limit-cycle robustness against drive noise");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    args.seed_set = seed_opt->count() > 0;
    args.workers_set = workers_opt->count() > 0;

    try {
        const RunConfig cfg = resolve_config(args);
        if (sim->parsed()) return cmd_simulate(cfg);
        if (swp->parsed()) return cmd_sweep(cfg);
        if (stab->parsed()) return cmd_stability(cfg);
        if (phs->parsed()) return cmd_phases(cfg);
        if (nscan->parsed()) return cmd_noise_scan(cfg);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const IntegrationError& e) {
        std::cerr << "integration error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "analysis error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}

}  // namespace ctc
