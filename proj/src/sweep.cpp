#include "ctc/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <utility>

namespace ctc {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    // splitmix64 finalizer over a golden-ratio stride; stable across runs
    // and worker counts.
    std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

void SweepSpec::validate() const {
    if (values.empty()) throw std::invalid_argument("sweep: values must be non-empty");
    if (axis != SweepAxis::Seed) {
        for (std::size_t i = 0; i + 1 < values.size(); ++i)
            if (!(values[i] < values[i + 1]))
                throw std::invalid_argument("sweep: values must be strictly increasing");
    }
    if (workers < 1) throw std::invalid_argument("sweep: workers must be >= 1");
    if (n_nodes < 1) throw std::invalid_argument("sweep: n_nodes must be >= 1");
    if (axis == SweepAxis::Gradient && !(gradient_scale > 0.0))
        throw std::invalid_argument("sweep: gradient_scale must be > 0");
    base_config.validate();
}

namespace {

struct PointSetup {
    double value = 0.0;
    PhysicalParams params;
    IntegrationConfig config;
    GridKind grid_kind = GridKind::Uniform;
    std::size_t n_nodes = 1;
    const FrequencyGrid* fixed_grid = nullptr;  // used instead of building when set
    double t_discard = -1.0;
    ClassifyOptions opts;
};

SweepRow run_point(const PointSetup& s) {
    SweepRow row;
    row.value = s.value;
    row.seed = s.config.seed;
    try {
        FrequencyGrid built;
        const FrequencyGrid* grid = s.fixed_grid;
        if (!grid) {
            built = build_grid(s.grid_kind, s.n_nodes, s.params.omega0,
                               s.params.delta_omega);
            grid = &built;
        }
        const EnsembleState state0 =
            initial_state(s.params, *grid, s.config.seed, s.config.init_sigma);
        const Trajectory traj = s.config.noise_amplitude > 0.0
                                    ? integrate_sde(state0, s.params, *grid, s.config)
                                    : integrate(state0, s.params, *grid, s.config);
        const double discard = s.t_discard >= 0.0
                                   ? s.t_discard
                                   : default_transient_discard(s.params, s.config);
        const Trajectory window = traj.slice_from(discard);
        row.label = classify(window, s.opts);
        row.k_value = row.label.k_value;
        row.spectrum =
            power_spectrum(window.mean_px_series, window.sample_rate, WindowKind::Hann);
        row.peak_freqs.reserve(row.label.peaks.size());
        for (const Peak& p : row.label.peaks) row.peak_freqs.push_back(p.freq);
    } catch (const std::exception& e) {
        row = SweepRow{};
        row.value = s.value;
        row.seed = s.config.seed;
        row.failed = true;
        row.error = e.what();
    }
    return row;
}

// Index-claimed worker pool; row i depends only on tasks[i], so the result
// is identical for any worker count.
std::vector<SweepRow> run_points(const std::vector<PointSetup>& tasks, unsigned workers) {
    std::vector<SweepRow> rows(tasks.size());
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            rows[i] = run_point(tasks[i]);
        }
    };
    const auto n = static_cast<unsigned>(
        std::min<std::size_t>(workers, tasks.size()));
    if (n <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n);
        for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    return rows;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    spec.validate();

    FrequencyGrid shared;
    const bool per_point_grid = spec.axis == SweepAxis::Gradient;
    if (!per_point_grid)
        shared = build_grid(spec.grid_kind, spec.n_nodes, spec.base_params.omega0,
                            spec.base_params.delta_omega);

    std::vector<PointSetup> tasks;
    tasks.reserve(spec.values.size());
    for (std::size_t i = 0; i < spec.values.size(); ++i) {
        PointSetup s;
        s.value = spec.values[i];
        s.params = spec.base_params;
        s.config = spec.base_config;
        s.grid_kind = spec.grid_kind;
        s.n_nodes = spec.n_nodes;
        s.t_discard = spec.t_discard;
        s.opts = spec.classify_options;
        if (!per_point_grid) s.fixed_grid = &shared;
        switch (spec.axis) {
            case SweepAxis::Alpha:
                s.params.alpha = spec.values[i];
                break;
            case SweepAxis::Gradient:
                s.params.delta_omega = spec.gradient_scale * spec.values[i];
                break;
            case SweepAxis::Noise:
                s.config.noise_amplitude = spec.values[i];
                break;
            case SweepAxis::Seed:
                break;
        }
        s.config.seed = spec.axis == SweepAxis::Seed
                            ? static_cast<std::uint64_t>(spec.values[i])
                            : derive_seed(spec.base_config.seed, i);
        tasks.push_back(std::move(s));
    }

    std::vector<SweepRow> rows = run_points(tasks, spec.workers);
    bool any_ok = false;
    for (const SweepRow& r : rows) any_ok = any_ok || !r.failed;
    if (!any_ok)
        throw std::runtime_error("sweep: all points failed; first error: " +
                                 rows.front().error);
    return rows;
}

PhaseExperiment run_phase_experiment(std::size_t n_realizations,
                                     const PhysicalParams& params,
                                     const FrequencyGrid& grid,
                                     const IntegrationConfig& config,
                                     bool identical_seeds,
                                     const ClassifyOptions& options) {
    if (n_realizations < 8)
        throw std::invalid_argument("run_phase_experiment: need at least 8 realizations");
    params.validate();
    grid.validate();
    config.validate();

    const double discard = default_transient_discard(params, config);
    auto run_one = [&](std::size_t i) {
        IntegrationConfig c = config;
        c.seed = identical_seeds ? config.seed : derive_seed(config.seed, i);
        const EnsembleState s0 = initial_state(params, grid, c.seed, c.init_sigma);
        const Trajectory traj = c.noise_amplitude > 0.0
                                    ? integrate_sde(s0, params, grid, c)
                                    : integrate(s0, params, grid, c);
        return traj.slice_from(discard);
    };

    PhaseExperiment out;
    const Trajectory first = run_one(0);
    out.first_label = classify(first, options);
    const bool qp = out.first_label.label == PhaseKind::QuasiPeriodic;
    if (out.first_label.label != PhaseKind::LimitCycle && !qp)
        throw std::invalid_argument(
            std::string("run_phase_experiment: operating point is not oscillatory "
                        "(classified ") +
            to_string(out.first_label.label) + ")");

    const auto& peaks = out.first_label.peaks;
    const Peak& dom = *std::max_element(
        peaks.begin(), peaks.end(),
        [](const Peak& a, const Peak& b) { return a.amplitude < b.amplitude; });
    out.locked_freq = dom.freq;

    if (qp) {
        // The second torus angle is read from the strongest line away from
        // the carrier (a sideband mixes both base phases, so its phase is
        // randomized independently of the carrier's).
        const Peak* side = nullptr;
        const double min_sep = std::max(
            first.sample_rate / static_cast<double>(std::max<std::size_t>(first.size(), 1)),
            1e-12);
        for (const Peak& p : peaks) {
            if (std::abs(p.freq - dom.freq) <= min_sep) continue;
            if (!side || p.amplitude > side->amplitude) side = &p;
        }
        if (side) out.locked_freq_second = side->freq;
    }

    out.phases.reserve(n_realizations);
    for (std::size_t i = 0; i < n_realizations; ++i) {
        const Trajectory window = i == 0 ? first : run_one(i);
        out.phases.push_back(
            phase_at(window.mean_px_series, window.sample_rate, out.locked_freq));
        if (qp && out.locked_freq_second > 0.0)
            out.phases_second.push_back(phase_at(
                window.mean_px_series, window.sample_rate, out.locked_freq_second));
    }

    out.uniformity = phase_uniformity(out.phases);
    if (!out.phases_second.empty())
        out.uniformity_second = phase_uniformity(out.phases_second);
    return out;
}

NoiseScanResult run_noise_scan(const std::vector<double>& amplitudes,
                               const PhysicalParams& params,
                               const FrequencyGrid& grid,
                               const IntegrationConfig& config,
                               unsigned workers,
                               const ClassifyOptions& options) {
    if (amplitudes.empty())
        throw std::invalid_argument("run_noise_scan: amplitudes must be non-empty");
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        if (amplitudes[i] < 0.0)
            throw std::invalid_argument("run_noise_scan: amplitudes must be >= 0");
        if (i + 1 < amplitudes.size() && !(amplitudes[i] <= amplitudes[i + 1]))
            throw std::invalid_argument("run_noise_scan: amplitudes must be nondecreasing");
    }
    params.validate();
    grid.validate();
    config.validate();

    // The zero-noise base run pins the fundamental the scan tracks.
    IntegrationConfig base = config;
    base.noise_amplitude = 0.0;
    const double discard = default_transient_discard(params, base);
    const EnsembleState s0 = initial_state(params, grid, base.seed, base.init_sigma);
    const Trajectory window = integrate(s0, params, grid, base).slice_from(discard);
    const PhaseLabel base_label = classify(window, options);
    if (base_label.label != PhaseKind::LimitCycle)
        throw std::invalid_argument(
            std::string("run_noise_scan: base point is not a limit cycle at zero "
                        "noise (classified ") +
            to_string(base_label.label) + ")");

    NoiseScanResult result;
    result.base_freq = base_label.base_freqs.front();
    result.base_resolution =
        power_spectrum(window.mean_px_series, window.sample_rate, WindowKind::Hann)
            .resolution;

    std::vector<PointSetup> tasks;
    tasks.reserve(amplitudes.size());
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        PointSetup s;
        s.value = amplitudes[i];
        s.params = params;
        s.config = config;
        s.config.noise_amplitude = amplitudes[i];
        s.config.seed = derive_seed(config.seed, i);
        s.fixed_grid = &grid;
        s.t_discard = -1.0;
        s.opts = options;
        tasks.push_back(std::move(s));
    }

    std::vector<SweepRow> rows = run_points(tasks, workers);
    result.rows.reserve(rows.size());
    for (SweepRow& row : rows) {
        NoiseScanRow nrow;
        nrow.fundamental_survived = false;
        if (!row.failed) {
            for (const Peak& p : row.label.peaks) {
                if (std::abs(p.freq - result.base_freq) <= result.base_resolution) {
                    nrow.fundamental_survived = true;
                    break;
                }
            }
        }
        nrow.row = std::move(row);
        result.rows.push_back(std::move(nrow));
    }
    return result;
}

const char* to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::Alpha: return "alpha";
        case SweepAxis::Gradient: return "gradient";
        case SweepAxis::Noise: return "noise";
        case SweepAxis::Seed: return "seed";
    }
    return "unknown";
}

}  // namespace ctc
