#include "ctc/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "ctc/errors.hpp"

namespace ctc {

void IntegrationConfig::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
    if (!(t_end >= dt)) throw std::invalid_argument("t_end must be >= dt");
    if (record_stride < 1) throw std::invalid_argument("record_stride must be >= 1");
    if (!(noise_amplitude >= 0.0)) throw std::invalid_argument("noise_amplitude must be >= 0");
    if (!(init_sigma >= 0.0)) throw std::invalid_argument("init_sigma must be >= 0");
}

Trajectory Trajectory::slice_from(double t_from) const {
    Trajectory out;
    out.sample_rate = sample_rate;
    out.seed = seed;
    std::size_t begin = 0;
    while (begin < times.size() && times[begin] < t_from) ++begin;
    out.times.assign(times.begin() + begin, times.end());
    out.mean_px_series.assign(mean_px_series.begin() + begin, mean_px_series.end());
    out.mean_py_series.assign(mean_py_series.begin() + begin, mean_py_series.end());
    out.mean_pz_series.assign(mean_pz_series.begin() + begin, mean_pz_series.end());
    if (!full_states.empty())
        out.full_states.assign(full_states.begin() + begin, full_states.end());
    return out;
}

EnsembleState initial_state(const PhysicalParams& params, const FrequencyGrid& grid,
                            std::uint64_t seed, double sigma) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    EnsembleState s(grid.size());
    const double pz0 = params.pumped_pz();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        s.px[i] = sigma * gauss(rng);
        s.py[i] = sigma * gauss(rng);
        s.pz[i] = pz0;
    }
    return s;
}

double default_transient_discard(const PhysicalParams& params, const IntegrationConfig& config) {
    double by_fraction = 0.2 * config.t_end;
    double by_t2 = std::isfinite(params.t2) ? 10.0 * params.t2 : 0.0;
    return std::max(by_fraction, by_t2);
}

namespace {

struct Recorder {
    Trajectory traj;
    const FrequencyGrid& grid;
    bool full;

    Recorder(const FrequencyGrid& g, const IntegrationConfig& config, std::size_t n_steps)
        : grid(g), full(config.record_full_state) {
        std::size_t n_samples = n_steps / config.record_stride + 1;
        traj.times.reserve(n_samples);
        traj.mean_px_series.reserve(n_samples);
        traj.mean_py_series.reserve(n_samples);
        traj.mean_pz_series.reserve(n_samples);
        traj.sample_rate = config.sample_rate();
        traj.seed = config.seed;
    }

    void sample(double t, const EnsembleState& s, std::size_t step) {
        double mx = 0.0, my = 0.0, mz = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            mx += grid.weights[i] * s.px[i];
            my += grid.weights[i] * s.py[i];
            mz += grid.weights[i] * s.pz[i];
        }
        if (!std::isfinite(mx) || !std::isfinite(my) || !std::isfinite(mz))
            throw IntegrationError("non-finite state encountered", step);
        traj.times.push_back(t);
        traj.mean_px_series.push_back(mx);
        traj.mean_py_series.push_back(my);
        traj.mean_pz_series.push_back(mz);
        if (full) traj.full_states.push_back(s);
    }
};

void check_preconditions(const EnsembleState& state0, const PhysicalParams& params,
                         const FrequencyGrid& grid, const IntegrationConfig& config) {
    params.validate();
    grid.validate();
    config.validate();
    if (!state0.matches(grid)) throw std::invalid_argument("state0 length does not match grid");
    if (!state0.all_finite()) throw std::invalid_argument("state0 has non-finite components");
    double omega_max = std::max(std::abs(grid.nodes.front()), std::abs(grid.nodes.back()));
    if (config.dt * omega_max > 0.1)
        throw std::invalid_argument("resolution guard violated: dt * max|omega| > 0.1");
}

inline void assign_axpy(EnsembleState& out, const EnsembleState& y, double a,
                        const EnsembleState& x) {
    const std::size_t n = y.size();
    for (std::size_t i = 0; i < n; ++i) {
        out.px[i] = y.px[i] + a * x.px[i];
        out.py[i] = y.py[i] + a * x.py[i];
        out.pz[i] = y.pz[i] + a * x.pz[i];
    }
}

}  // namespace

Trajectory integrate(const EnsembleState& state0, const PhysicalParams& params,
                     const FrequencyGrid& grid, const IntegrationConfig& config) {
    check_preconditions(state0, params, grid, config);
    if (config.noise_amplitude != 0.0)
        throw std::invalid_argument("integrate requires noise_amplitude = 0; use integrate_sde");

    const double dt = config.dt;
    const auto n_steps = static_cast<std::size_t>(std::llround(config.t_end / dt));
    Recorder rec(grid, config, n_steps);

    EnsembleState y = state0;
    EnsembleState k1(y.size()), k2(y.size()), k3(y.size()), k4(y.size()), tmp(y.size());

    rec.sample(0.0, y, 0);
    for (std::size_t step = 1; step <= n_steps; ++step) {
        bloch_rhs_into(y, params, grid, k1);
        assign_axpy(tmp, y, 0.5 * dt, k1);
        bloch_rhs_into(tmp, params, grid, k2);
        assign_axpy(tmp, y, 0.5 * dt, k2);
        bloch_rhs_into(tmp, params, grid, k3);
        assign_axpy(tmp, y, dt, k3);
        bloch_rhs_into(tmp, params, grid, k4);
        const double w = dt / 6.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            y.px[i] += w * (k1.px[i] + 2.0 * k2.px[i] + 2.0 * k3.px[i] + k4.px[i]);
            y.py[i] += w * (k1.py[i] + 2.0 * k2.py[i] + 2.0 * k3.py[i] + k4.py[i]);
            y.pz[i] += w * (k1.pz[i] + 2.0 * k2.pz[i] + 2.0 * k3.pz[i] + k4.pz[i]);
        }
        if (step % config.record_stride == 0)
            rec.sample(static_cast<double>(step) * dt, y, step);
    }
    return std::move(rec.traj);
}

Trajectory integrate_sde(const EnsembleState& state0, const PhysicalParams& params,
                         const FrequencyGrid& grid, const IntegrationConfig& config) {
    check_preconditions(state0, params, grid, config);
    if (!(config.noise_amplitude > 0.0))
        throw std::invalid_argument("integrate_sde requires noise_amplitude > 0");

    const double dt = config.dt;
    const auto n_steps = static_cast<std::size_t>(std::llround(config.t_end / dt));
    Recorder rec(grid, config, n_steps);

    // Salted so the noise stream never replays the initial-state draws made
    // from the same seed.
    std::mt19937_64 rng(config.seed ^ 0x9E3779B97F4A7C15ull);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double xi_scale = config.noise_amplitude / std::sqrt(dt);

    EnsembleState y = state0;
    EnsembleState f0(y.size()), f1(y.size()), pred(y.size());

    rec.sample(0.0, y, 0);
    for (std::size_t step = 1; step <= n_steps; ++step) {
        // One noise value per step, held across both Heun stages.
        const double xi = xi_scale * gauss(rng);
        bloch_rhs_into(y, params, grid, f0, xi);
        assign_axpy(pred, y, dt, f0);
        bloch_rhs_into(pred, params, grid, f1, xi);
        for (std::size_t i = 0; i < y.size(); ++i) {
            y.px[i] += 0.5 * dt * (f0.px[i] + f1.px[i]);
            y.py[i] += 0.5 * dt * (f0.py[i] + f1.py[i]);
            y.pz[i] += 0.5 * dt * (f0.pz[i] + f1.pz[i]);
        }
        if (step % config.record_stride == 0)
            rec.sample(static_cast<double>(step) * dt, y, step);
    }
    return std::move(rec.traj);
}

PoincarePoints poincare(const Trajectory& traj, double t_discard) {
    if (traj.size() == 0) throw std::invalid_argument("poincare: empty trajectory");
    PoincarePoints pts;
    const auto& t = traj.times;
    const auto& py = traj.mean_py_series;
    const auto& px = traj.mean_px_series;
    const auto& pz = traj.mean_pz_series;
    for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
        if (py[k] < 0.0 && py[k + 1] >= 0.0) {
            double theta = py[k] / (py[k] - py[k + 1]);
            double tc = t[k] + theta * (t[k + 1] - t[k]);
            if (tc < t_discard) continue;
            pts.t.push_back(tc);
            pts.mean_px.push_back(px[k] + theta * (px[k + 1] - px[k]));
            pts.mean_pz.push_back(pz[k] + theta * (pz[k + 1] - pz[k]));
        }
    }
    return pts;
}

}  // namespace ctc
