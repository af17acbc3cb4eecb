#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ctc/analysis.hpp"
#include "ctc/integrate.hpp"
#include "ctc/model.hpp"
#include "ctc/sweep.hpp"

namespace ctc {

/// Fully resolved run description: physics, grid construction route,
/// integration settings, analysis thresholds, sweep layout, output
/// directory. The text form is flat `key = value` lines under [sections];
/// parse_config(serialize_config(c)) reproduces c exactly, which is what
/// makes manifests replayable.
struct RunConfig {
    PhysicalParams params;  // delta_omega holds the resolved grid width
    GridKind grid_kind = GridKind::Uniform;
    std::size_t n_nodes = 64;

    // Grid-width route: either delta_omega was given directly, or a
    // gradient triple was and delta_omega = convert_gradient(gradient,
    // cell_length, gamma). Exactly one route per config.
    bool use_gradient = false;
    double gradient = 0.0;     // nT/cm
    double cell_length = 0.0;  // cm
    double gamma = 0.0;        // rad s^-1 nT^-1

    IntegrationConfig integration;
    ClassifyOptions classify;
    double t_discard = -1.0;  // < 0 selects default_transient_discard

    SweepAxis axis = SweepAxis::Alpha;
    std::vector<double> sweep_values;
    unsigned workers = 1;
    std::size_t n_realizations = 50;
    bool identical_seeds = false;

    std::string out_dir = "out";

    FrequencyGrid make_grid() const;
};

/// Parse configuration text. Throws ConfigError with the offending line
/// number on malformed lines, unknown sections or keys, bad values,
/// duplicate keys, or a missing/ambiguous grid-width route.
RunConfig parse_config(const std::string& text);

/// Read a file and parse it. Throws ConfigError when unreadable.
RunConfig load_config(const std::string& path);

/// Canonical text form listing every resolved setting.
std::string serialize_config(const RunConfig& cfg);

/// Names of the embedded presets, in a stable order.
std::vector<std::string> preset_names();

/// Text of one embedded preset; throws ConfigError for unknown names.
const std::string& preset_text(const std::string& name);

}  // namespace ctc
