#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ctc/analysis.hpp"
#include "ctc/integrate.hpp"
#include "ctc/stability.hpp"
#include "ctc/sweep.hpp"

namespace ctc {

/// Shortest decimal form that parses back to the identical double.
std::string format_double(double v);

/// Trajectory container format: little-endian, magic "CTCTRAJ1", then
/// u64 node count (0 for mean-only records), f64 sample rate, u64 record
/// count, u64 seed, then per record (t, mean_px, mean_py, mean_pz) plus
/// 3 * node count state doubles when the node count is nonzero.
void write_trajectory_binary(const std::filesystem::path& path, const Trajectory& traj);
Trajectory read_trajectory_binary(const std::filesystem::path& path);

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);
void write_spectrum_csv(const std::filesystem::path& path, const Spectrum& spec);
void write_poincare_csv(const std::filesystem::path& path, const PoincarePoints& points);
void write_sweep_summary_csv(const std::filesystem::path& path,
                             const std::vector<SweepRow>& rows);
void write_noise_summary_csv(const std::filesystem::path& path,
                             const NoiseScanResult& result);
void write_phases_csv(const std::filesystem::path& path, const PhaseExperiment& exp);

std::string classification_report(const PhaseLabel& label);
std::string stability_report_text(const StabilityReport& report);
std::string phase_experiment_report(const PhaseExperiment& exp);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace ctc
