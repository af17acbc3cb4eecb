#include <array>
#include <string>
#include <vector>

#include "ctc/config.hpp"
#include "ctc/errors.hpp"

namespace ctc {

namespace {

struct Preset {
    const char* name;
    const char* text;
};

// Operating points were located with the stability and sweep tools at the
// default cell constants (T1 = 30 s, T2 = 20 s, R_SE = 0.01 /s, 10 Hz
// carrier). At gradient 2 nT/cm the 64-node threshold sits at
// alpha_c = 0.802 rad/s; the limit-cycle band is roughly (0.802, 1.0) and
// combs of equally spaced sidebands appear above it. See README.
const std::array<Preset, 8> kPresets = {{
    {"subthreshold",
     "# Single node, no spread, feedback at half the closed-form threshold\n"
     "# 2/(t2 r_se t1) = 1/3. The transverse polarization decays to the pumped\n"
     "# fixed point.\n"
     "[physics]\n"
     "alpha = 0.16666666666666666\n"
     "\n"
     "[grid]\n"
     "kind = uniform\n"
     "n_nodes = 1\n"
     "delta_omega = 0\n"
     "\n"
     "[integration]\n"
     "dt = 0.001\n"
     "t_end = 400\n"
     "seed = 1\n"
     "\n"
     "[output]\n"
     "dir = out/subthreshold\n"},
    {"limit_cycle",
     "# Just above threshold: the ensemble locks to one collective frequency\n"
     "# near 10 Hz and holds a constant-amplitude oscillation.\n"
     "[physics]\n"
     "alpha = 0.9\n"
     "\n"
     "[grid]\n"
     "kind = uniform\n"
     "n_nodes = 64\n"
     "gradient = 2\n"
     "cell_length = 2\n"
     "gamma = 0.0739970\n"
     "\n"
     "[integration]\n"
     "dt = 0.001\n"
     "t_end = 2000\n"
     "seed = 1\n"
     "\n"
     "[analysis]\n"
     "t_discard = 1400\n"
     "\n"
     "[output]\n"
     "dir = out/limit_cycle\n"},
    {"quasi_periodic",
     "# Stronger feedback: the oscillation amplitude itself oscillates and the\n"
     "# spectrum splits into sidebands equally spaced around the carrier at an\n"
     "# incommensurate envelope frequency.\n"
     "[physics]\n"
     "alpha = 5.5\n"
     "\n"
     "[grid]\n"
     "kind = uniform\n"
     "n_nodes = 64\n"
     "gradient = 2\n"
     "cell_length = 2\n"
     "gamma = 0.0739970\n"
     "\n"
     "[integration]\n"
     "dt = 0.001\n"
     "t_end = 2000\n"
     "seed = 1\n"
     "\n"
     "[analysis]\n"
     "t_discard = 1400\n"
     "\n"
     "[output]\n"
     "dir = out/quasi_periodic\n"},
    {"chaotic",
     "# Strong white noise on the feedback drive melts the limit cycle into a\n"
     "# broadband irregular signal; the 0-1 statistic approaches 1. Stochastic\n"
     "# runs use a finer step (the Heun scheme is second order) with the\n"
     "# record stride keeping the 1 kHz analysis rate.\n"
     "[physics]\n"
     "alpha = 0.9\n"
     "\n"
     "[grid]\n"
     "kind = uniform\n"
     "n_nodes = 64\n"
     "gradient = 2\n"
     "cell_length = 2\n"
     "gamma = 0.0739970\n"
     "\n"
     "[integration]\n"
     "dt = 0.00025\n"
     "record_stride = 4\n"
     "t_end = 2000\n"
     "seed = 1\n"
     "noise_amplitude = 2\n"
     "\n"
     "[analysis]\n"
     "t_discard = 1400\n"
     "\n"
     "[output]\n"
     "dir = out/chaotic\n"},
    {"phases",
     "# Repeated limit-cycle runs from independent random initial fluctuations.\n"
     "# The oscillation phase at the locked frequency is uniform on the circle\n"
     "# across realizations: no external clock picks it.\n"
     "[physics]\n"
     "alpha = 0.9\n"
     "\n"
     "[grid]\n"
     "kind = uniform\n"
     "n_nodes = 64\n"
     "gradient = 2\n"
     "cell_length = 2\n"
     "gamma = 0.0739970\n"
     "\n"
     "[integration]\n"
     "dt = 0.001\n"
     "t_end = 2000\n"
     "seed = 1\n"
     "\n"
     "[analysis]\n"
     "t_discard = 1400\n"
     "\n"
     "[sweep]\n"
     "n_realizations = 50\n"
     "\n"
     "[output]\n"
     "dir = out/phases\n"},
    {"alpha_scan",
     "# Phase diagram along the feedback strength at fixed spread: fixed point,\n"
     "# then limit cycle, then quasi-periodic combs. 40 log-spaced points over\n"
     "# [0.25, 100] x the 64-node threshold 0.802 rad/s.\n"
     "[physics]\n"
     "alpha = 0.9\n"
     "\n"
     "[grid]\n"
     "kind = uniform\n"
     "n_nodes = 64\n"
     "gradient = 2\n"
     "cell_length = 2\n"
     "gamma = 0.0739970\n"
     "\n"
     "[integration]\n"
     "dt = 0.001\n"
     "t_end = 2000\n"
     "seed = 1\n"
     "\n"
     "[analysis]\n"
     "t_discard = 1400\n"
     "\n"
     "[sweep]\n"
     "axis = alpha\n"
     "value_min = 0.2005\n"
     "value_max = 80.2\n"
     "n_points = 40\n"
     "spacing = log\n"
     "workers = 1\n"
     "\n"
     "[output]\n"
     "dir = out/alpha_scan\n"},
    {"gradient_scan",
     "# Phase diagram along the gradient at fixed feedback strength: regular\n"
     "# combs, an irregular multi-frequency band, re-emerging combs, then the\n"
     "# fixed point once the threshold passes the feedback strength.\n"
     "[physics]\n"
     "alpha = 5.5\n"
     "\n"
     "[grid]\n"
     "kind = uniform\n"
     "n_nodes = 64\n"
     "gradient = 2\n"
     "cell_length = 2\n"
     "gamma = 0.0739970\n"
     "\n"
     "[integration]\n"
     "dt = 0.001\n"
     "t_end = 2000\n"
     "seed = 1\n"
     "\n"
     "[analysis]\n"
     "t_discard = 1400\n"
     "\n"
     "[sweep]\n"
     "axis = gradient\n"
     "value_min = 1\n"
     "value_max = 20\n"
     "n_points = 30\n"
     "spacing = linear\n"
     "workers = 1\n"
     "\n"
     "[output]\n"
     "dir = out/gradient_scan\n"},
    {"noise_scan",
     "# Limit-cycle robustness against white noise on the feedback drive. The\n"
     "# fundamental survives at its zero-noise frequency while the 0-1\n"
     "# statistic climbs toward 1 as the noise melts the oscillation.\n"
     "[physics]\n"
     "alpha = 0.9\n"
     "\n"
     "[grid]\n"
     "kind = uniform\n"
     "n_nodes = 64\n"
     "gradient = 2\n"
     "cell_length = 2\n"
     "gamma = 0.0739970\n"
     "\n"
     "[integration]\n"
     "dt = 0.00025\n"
     "record_stride = 4\n"
     "t_end = 2000\n"
     "seed = 1\n"
     "\n"
     "[analysis]\n"
     "t_discard = 1400\n"
     "\n"
     "[sweep]\n"
     "axis = noise\n"
     "values = 0, 1e-4, 1e-3, 1e-2, 0.1, 0.5, 1, 2\n"
     "workers = 1\n"
     "\n"
     "[output]\n"
     "dir = out/noise_scan\n"},
}};

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    names.reserve(kPresets.size());
    for (const Preset& p : kPresets) names.emplace_back(p.name);
    return names;
}

const std::string& preset_text(const std::string& name) {
    static const std::array<std::string, kPresets.size()> texts = [] {
        std::array<std::string, kPresets.size()> out;
        for (std::size_t i = 0; i < kPresets.size(); ++i) out[i] = kPresets[i].text;
        return out;
    }();
    for (std::size_t i = 0; i < kPresets.size(); ++i)
        if (name == kPresets[i].name) return texts[i];
    throw ConfigError("unknown preset: " + name);
}

}  // namespace ctc
