#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "ctc/integrate.hpp"

namespace ctc {

enum class WindowKind { Rect, Hann };

/// One-sided power spectrum of a real series.
///
/// The transform operates on the first 2^k samples (largest power of two
/// that fits), after removing the mean of that window. complex_amplitudes[k]
/// is X_k / L of the windowed series, so a pure sinusoid A*sin at an exact
/// bin center gives |amplitude| = A/2 under the Rect window. power is
/// |amplitude|^2 rescaled so the largest bin equals 1 (all zeros when the
/// input is constant).
struct Spectrum {
    std::vector<double> freqs;    // Hz, bin k at k * resolution
    std::vector<double> power;    // normalized, max = 1
    std::vector<std::complex<double>> complex_amplitudes;
    WindowKind window = WindowKind::Hann;
    double resolution = 0.0;      // Hz, sample_rate / transform length
    double sample_rate = 0.0;     // Hz

    std::size_t size() const { return freqs.size(); }

    /// Sum of unnormalized one-sided bin energies (DC and Nyquist counted
    /// once, interior bins twice). Under the Rect window this equals the
    /// variance of the transformed window (Parseval).
    double total_energy() const;
};

struct Peak {
    double freq = 0.0;       // Hz, parabolically refined on log power
    double amplitude = 0.0;  // normalized power at the peak bin, in (0, 1]
    double fwhm = 0.0;       // Hz, >= resolution
    double phase = 0.0;      // radians in [0, 2*pi), from the peak bin's amplitude
};

enum class PhaseKind { FixedPoint, LimitCycle, QuasiPeriodic, Chaotic };

/// Classification outcome for one trajectory's stationary window.
struct PhaseLabel {
    PhaseKind label = PhaseKind::FixedPoint;
    double k_value = 0.0;            // 0-1 chaos statistic (0 when short-circuited)
    std::vector<Peak> peaks;         // empty for FixedPoint
    std::vector<double> base_freqs;  // 1 entry for LimitCycle, 2 for QuasiPeriodic
    double perm_entropy = 0.0;       // order-5 permutation entropy, diagnostic only
};

struct ClassifyOptions {
    double amplitude_floor = 1e-8;  // RMS below this is a fixed point outright
    double decay_floor = 1e-4;      // RMS below this AND decaying -> fixed point
    double decay_ratio = 0.5;       // last-quarter / first-quarter RMS cutoff
    double chaos_threshold = 0.5;
    double peak_floor = 0.01;       // relative power floor for peak listing
    double comb_tol_factor = 0.25;  // comb tolerance = factor * resolution
    int max_carrier_multiple = 3;   // harmonics of the first base in two-base fits
    int max_sideband = 64;          // sideband index of the second base
    int max_denominator = 10;       // q cap in the commensurability check
};

struct UniformityResult {
    double resultant_length = 0.0;  // R = |sum exp(i*phi)| / n
    double rayleigh_p = 1.0;        // exp(-n R^2), large-n approximation
};

enum class PoincareShape { Cluster, ClosedCurve, Scattered };

/// One-sided spectrum of the first 2^k samples of `series`.
/// Throws std::invalid_argument when the series is shorter than 16 samples
/// or contains non-finite values.
Spectrum power_spectrum(const std::vector<double>& series, double sample_rate,
                        WindowKind window);

/// Local maxima of normalized power strictly above `floor`, merged when two
/// refined frequencies fall within one resolution bin (the taller survives).
/// FWHM comes from linear interpolation at half power, clamped to at least
/// one resolution bin. Requires 0 < floor < 1.
std::vector<Peak> find_peaks(const Spectrum& spec, double floor);

/// 0-1 test for chaos (correlation method) on a stationary series.
///
/// The series is downsampled so the dominant spectral peak sits below a
/// tenth of the working sample rate, capped to the trailing 5000 points,
/// and standardized. 100 translation angles drawn uniformly from
/// (pi/5, 4*pi/5) with the given seed each yield a growth exponent from the
/// correlation of mean-square displacement with time; the result is their
/// median clamped to [0, 1]. Requires at least 2000 points after
/// downsampling and nonzero variance.
double chaos_k(const std::vector<double>& series, double sample_rate,
               std::uint64_t seed);

/// Fourier phase at the bin nearest f0 (Rect window, mean removed), in
/// [0, 2*pi). The phase reference is the first sample of `series`. Throws
/// when f0 rounds to the DC bin or exceeds the Nyquist frequency.
double phase_at(const std::vector<double>& series, double sample_rate, double f0);

/// Resultant length and Rayleigh uniformity p-value of a set of phases.
/// Requires at least 8 phases.
UniformityResult phase_uniformity(const std::vector<double>& phases);

/// Normalized permutation entropy of ordinal patterns (windows of `order`
/// samples spaced `delay` apart), in [0, 1]. Requires 2 <= order <= 7 and
/// at least one complete window.
double permutation_entropy(const std::vector<double>& series, int order,
                           std::size_t delay);

/// Decide which dynamical phase a stationary window belongs to.
///
/// Decision chain: mean-removed RMS of mean_px below amplitude_floor, or
/// below decay_floor while shrinking by decay_ratio across the window, is a
/// FixedPoint. Otherwise chaos_k above chaos_threshold is Chaotic. Otherwise
/// a harmonic comb n*f1 explaining every listed peak within the comb
/// tolerance is a LimitCycle. Otherwise a two-base lattice a*f1 + m*f2
/// (a up to max_carrier_multiple, |m| up to max_sideband) explaining every
/// peak is QuasiPeriodic when no rational p/q with q <= max_denominator
/// matches f2/f1, and a LimitCycle on base f1/q when one does. Anything
/// left is Chaotic. chaos_k is seeded from traj.seed, so the result is a
/// pure function of the trajectory.
PhaseLabel classify(const Trajectory& traj, const ClassifyOptions& options = {});

/// Shape of a Poincare section. Cluster when the point-set diameter is
/// under 2% of trajectory_amplitude; otherwise a two-scale correlation
/// dimension decides (pair counts at two radii above the sampling scale):
/// below 1.5 is a ClosedCurve, everything else Scattered. The point set is
/// subsampled to at most 2048 points. Requires at least 30 points.
PoincareShape poincare_shape(const PoincarePoints& points,
                             double trajectory_amplitude);

const char* to_string(PhaseKind kind);
const char* to_string(PoincareShape shape);
const char* to_string(WindowKind window);

}  // namespace ctc
