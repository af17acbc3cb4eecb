#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ctc/analysis.hpp"
#include "ctc/integrate.hpp"
#include "ctc/model.hpp"

namespace ctc {

enum class SweepAxis { Alpha, Gradient, Noise, Seed };

/// Description of one parameter scan. The grid is rebuilt per point on the
/// Gradient axis (delta_omega = gradient_scale * value) and built once from
/// base_params otherwise. base_config.seed is the base seed from which each
/// point derives its own.
struct SweepSpec {
    SweepAxis axis = SweepAxis::Alpha;
    std::vector<double> values;
    PhysicalParams base_params;
    IntegrationConfig base_config;
    GridKind grid_kind = GridKind::Uniform;
    std::size_t n_nodes = 64;
    double gradient_scale = 1.0;  // delta_omega per axis unit (Gradient axis only)
    unsigned workers = 1;
    double t_discard = -1.0;  // stationary-window start; < 0 means the default
    ClassifyOptions classify_options;

    void validate() const;
};

/// Analysis of one sweep point. When the point fails (diverged integration,
/// analysis precondition) `failed` is set and `error` carries the reason;
/// the remaining fields stay empty.
struct SweepRow {
    double value = 0.0;
    std::uint64_t seed = 0;
    Spectrum spectrum;  // stationary window, Hann
    double k_value = 0.0;
    PhaseLabel label;
    std::vector<double> peak_freqs;
    bool failed = false;
    std::string error;
};

struct NoiseScanRow {
    SweepRow row;
    bool fundamental_survived = false;
};

struct NoiseScanResult {
    double base_freq = 0.0;        // zero-noise fundamental, Hz
    double base_resolution = 0.0;  // Hz, survival window is one bin
    std::vector<NoiseScanRow> rows;
};

/// Outcome of repeated seeded realizations at one operating point.
struct PhaseExperiment {
    PhaseLabel first_label;            // classification of realization 0
    double locked_freq = 0.0;          // Hz, dominant base from realization 0
    double locked_freq_second = 0.0;   // Hz, second base when quasi-periodic
    std::vector<double> phases;        // radians at locked_freq, one per realization
    std::vector<double> phases_second; // radians at locked_freq_second (empty unless QP)
    UniformityResult uniformity;
    UniformityResult uniformity_second;
};

/// Stable per-point seed: a splitmix64 mix of the base seed and the point
/// index, so results never depend on scheduling.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// Integrate and classify every requested axis value, concurrently across
/// `workers` threads. Rows come back in axis order regardless of worker
/// count. A failed point is recorded in its row; only all points failing
/// throws.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// n realizations at a fixed operating point differing only in the seeded
/// initial fluctuation (identical_seeds replays one seed instead). The
/// dominant-peak frequency of realization 0 is locked and the Fourier phase
/// at that frequency is collected across realizations. Requires at least 8
/// realizations and an operating point classifying LimitCycle or
/// QuasiPeriodic.
PhaseExperiment run_phase_experiment(std::size_t n_realizations,
                                     const PhysicalParams& params,
                                     const FrequencyGrid& grid,
                                     const IntegrationConfig& config,
                                     bool identical_seeds = false,
                                     const ClassifyOptions& options = {});

/// Noise-axis scan over `amplitudes` (nondecreasing, may start at 0) around
/// a base point that must classify as LimitCycle at zero noise. Each row
/// reports whether the zero-noise fundamental still has a peak within one
/// resolution bin.
NoiseScanResult run_noise_scan(const std::vector<double>& amplitudes,
                               const PhysicalParams& params,
                               const FrequencyGrid& grid,
                               const IntegrationConfig& config,
                               unsigned workers = 1,
                               const ClassifyOptions& options = {});

const char* to_string(SweepAxis axis);

}  // namespace ctc
