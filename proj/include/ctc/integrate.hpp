#pragma once

#include <cstdint>
#include <vector>

#include "ctc/model.hpp"

namespace ctc {

/// Time-stepping controls shared by the deterministic and stochastic paths.
struct IntegrationConfig {
    double dt = 1e-3;              ///< step size, s
    double t_end = 400.0;          ///< total integrated time, s
    std::size_t record_stride = 1; ///< observables sampled every stride steps
    bool record_full_state = false;
    std::uint64_t seed = 1;        ///< seeds initial fluctuations and noise
    double noise_amplitude = 0.0;  ///< feedback-field white-noise amplitude, rad/s*sqrt(s)
    double init_sigma = 1e-6;      ///< std dev of the seeded initial transverse fluctuation

    double sample_rate() const { return 1.0 / (dt * static_cast<double>(record_stride)); }

    /// dt > 0; t_end >= dt; record_stride >= 1; noise_amplitude >= 0.
    void validate() const;
};

/// Sampled observables of one integration run.
struct Trajectory {
    std::vector<double> times;           ///< s, uniform spacing dt * record_stride
    std::vector<double> mean_px_series;  ///< ensemble-average Px
    std::vector<double> mean_py_series;
    std::vector<double> mean_pz_series;
    std::vector<EnsembleState> full_states;  ///< populated when record_full_state
    double sample_rate = 0.0;                ///< Hz
    std::uint64_t seed = 0;                  ///< seed the run was produced from

    std::size_t size() const { return times.size(); }

    /// Copy of the samples with times >= t_from (the stationary window).
    Trajectory slice_from(double t_from) const;
};

/// One-directional plane crossings of the average polarization:
/// interpolated states where mean Py crosses zero from negative to positive.
struct PoincarePoints {
    std::vector<double> t;
    std::vector<double> mean_px;
    std::vector<double> mean_pz;

    std::size_t size() const { return t.size(); }
};

/// Default initial condition: per node (gx*sigma, gy*sigma, R_SE*T1) with
/// independent standard Gaussians gx, gy drawn from the seeded generator.
EnsembleState initial_state(const PhysicalParams& params, const FrequencyGrid& grid,
                            std::uint64_t seed, double sigma);

/// Fixed-step classical RK4 integration of the deterministic model
/// (config.noise_amplitude must be 0). Deterministic given identical inputs.
///
/// Preconditions: dt * max|omega_i| <= 0.1 (resolution guard), state0 finite
/// and matching the grid. Throws IntegrationError when a non-finite state is
/// encountered, reporting the step index.
Trajectory integrate(const EnsembleState& state0, const PhysicalParams& params,
                     const FrequencyGrid& grid, const IntegrationConfig& config);

/// Stochastic Heun integration with white noise on the y-axis feedback drive:
/// the coupling rate alpha*M becomes alpha*M + xi(t), where xi has spectral
/// amplitude config.noise_amplitude. One noise value is drawn per step and
/// held across both Heun stages. Reproducible from config.seed.
/// Precondition: noise_amplitude > 0.
Trajectory integrate_sde(const EnsembleState& state0, const PhysicalParams& params,
                         const FrequencyGrid& grid, const IntegrationConfig& config);

/// Detects negative-to-positive zero crossings of mean Py, linearly
/// interpolating t, mean Px and mean Pz at the crossing. Crossings earlier
/// than t_discard are ignored. Throws on an empty trajectory.
PoincarePoints poincare(const Trajectory& traj, double t_discard = 0.0);

/// Transient length discarded before stationary-window analysis:
/// max(0.2 * t_end, 10 * T2).
double default_transient_discard(const PhysicalParams& params, const IntegrationConfig& config);

}  // namespace ctc
