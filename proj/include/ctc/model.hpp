#pragma once

#include <cstddef>
#include <vector>

namespace ctc {

/// Sign convention for the longitudinal feedback term.
///
/// A transverse feedback field along y tilts polarization between the x and z
/// axes as a rotation, which requires opposite signs on the two coupling
/// terms (NormConserving). SymmetricCoupling keeps the same sign on both,
/// which does not preserve |P| under the pure feedback rotation; it is
/// retained as a selectable convention.
enum class FeedbackSignMode { SymmetricCoupling, NormConserving };

/// Scalar constants of the feedback-coupled Bloch model.
///
/// All frequencies are angular (rad/s), times in seconds, polarizations
/// dimensionless. T1/T2 may be +infinity to disable relaxation.
struct PhysicalParams {
    double alpha = 0.0;          ///< feedback strength, rad/s
    double t1 = 30.0;            ///< longitudinal relaxation time, s
    double t2 = 20.0;            ///< transverse relaxation time, s
    double r_se = 0.01;          ///< spin-exchange pumping rate, 1/s
    double omega0 = 62.8318530717958648;  ///< center Larmor frequency, rad/s (10 Hz)
    double delta_omega = 0.0;    ///< half-width of the Larmor spread, rad/s
    FeedbackSignMode feedback_sign_mode = FeedbackSignMode::NormConserving;

    /// Pumped fixed-point longitudinal polarization, R_SE * T1.
    double pumped_pz() const { return r_se * t1; }

    /// Throws std::invalid_argument on violated invariants:
    /// t1, t2 > 0; r_se, delta_omega, alpha >= 0; omega0 > delta_omega.
    void validate() const;
};

enum class GridKind { Uniform, Gaussian, Lorentzian };

/// Quadrature discretization of the Larmor frequency density rho(omega):
/// mean values over the ensemble are computed as sum_i w_i * f(omega_i).
struct FrequencyGrid {
    std::vector<double> nodes;    ///< angular frequencies, rad/s, strictly increasing
    std::vector<double> weights;  ///< quadrature weights, sum to 1
    GridKind kind = GridKind::Uniform;

    std::size_t size() const { return nodes.size(); }

    /// Throws std::invalid_argument unless: sizes match and are >= 1,
    /// nodes strictly increasing, weights >= 0 and summing to 1 within 1e-12.
    void validate() const;
};

/// Per-node polarization triples; the dynamical state vector.
struct EnsembleState {
    std::vector<double> px, py, pz;

    EnsembleState() = default;
    explicit EnsembleState(std::size_t n) : px(n, 0.0), py(n, 0.0), pz(n, 0.0) {}

    std::size_t size() const { return px.size(); }
    bool matches(const FrequencyGrid& grid) const {
        return px.size() == grid.size() && py.size() == grid.size() && pz.size() == grid.size();
    }
    bool all_finite() const;
};

/// Discretizes rho(omega) into n_nodes quadrature nodes.
///
/// Uniform: equally spaced nodes on [omega0 - delta_omega, omega0 + delta_omega]
/// including both endpoints, equal weights 1/n (linear gradient across a
/// uniform-density cell). Gaussian: delta_omega is the standard deviation;
/// nodes at the probability midpoints of n equal-mass bins. Lorentzian:
/// delta_omega is the half-width at half-maximum, distribution truncated at
/// 10 half-widths, equal-mass bins likewise. Weights are 1/n in every kind.
///
/// delta_omega = 0 requires n_nodes = 1 (nodes must be strictly increasing).
FrequencyGrid build_grid(GridKind kind, std::size_t n_nodes, double omega0, double delta_omega);

/// Half-spread of Larmor frequencies across a cell of length cell_length (cm)
/// centered on the midpoint of a linear gradient g (nT/cm):
/// delta_omega = gamma * g * cell_length / 2, with gamma in rad s^-1 nT^-1.
double convert_gradient(double g, double cell_length, double gamma);

/// Gyromagnetic ratio of 129Xe in rad s^-1 nT^-1 (2*pi*11.777 Hz/uT).
inline constexpr double kGammaXe129 = 7.39970e-2;

/// Quadrature approximation of the ensemble-average transverse polarization,
/// integral of rho(omega') Px(omega') d omega'. Throws on length mismatch.
double mean_px(const EnsembleState& state, const FrequencyGrid& grid);

/// Right-hand side of the feedback-coupled Bloch equations, evaluated into
/// `out`. With M the ensemble average of Px and s the feedback sign
/// (+1 SymmetricCoupling, -1 NormConserving), per node i:
///
///   d(px_i)/dt =  omega_i * py_i + alpha * pz_i * M - px_i / T2
///   d(py_i)/dt = -omega_i * px_i              - py_i / T2
///   d(pz_i)/dt =  s * alpha * px_i * M - pz_i / T1 + R_SE
///
/// M is computed once per evaluation and shared by all nodes. `extra_drive`
/// is an additional angular rate added to the y-axis feedback drive
/// (alpha * M); zero for the deterministic model, used by the stochastic
/// integrator for field noise.
void bloch_rhs_into(const EnsembleState& state, const PhysicalParams& params,
                    const FrequencyGrid& grid, EnsembleState& out, double extra_drive = 0.0);

/// Value-returning wrapper around bloch_rhs_into. Validates that the state
/// matches the grid and is finite; throws std::invalid_argument otherwise.
EnsembleState bloch_rhs(const EnsembleState& state, const PhysicalParams& params,
                        const FrequencyGrid& grid);

}  // namespace ctc
