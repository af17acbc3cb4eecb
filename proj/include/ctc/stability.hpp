#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ctc/model.hpp"

namespace ctc {

/// Outcome of the masing-threshold search.
struct StabilityReport {
    double alpha_c = 0.0;  // rad/s; equals the search cap when found is false
    bool found = false;
    std::complex<double> leading_eigenvalue;  // 1/s, at alpha_c (or at the cap)
    double fixed_point_pz = 0.0;              // R_SE * T1
    double bracket_lo = 0.0;                  // final bisection bracket
    double bracket_hi = 0.0;
    std::vector<std::pair<double, double>> trail;  // (alpha, max real part) evaluations
};

/// Jacobian of the transverse dynamics about the no-signal fixed point
/// P_i = (0, 0, R_SE*T1). The pz deviations decouple exactly there (the
/// feedback term is second order in the transverse deviations), so the
/// matrix is 2N x 2N with node i occupying rows 2i (px) and 2i+1 (py):
/// per-node blocks [[-1/T2, w_i], [-w_i, -1/T2]] plus the rank-one feedback
/// coupling alpha * Pz0 * weight_j on every (px_i, px_j) entry.
Eigen::MatrixXd linearize(const PhysicalParams& params, const FrequencyGrid& grid);

/// Largest real part over the eigenvalues of a real matrix. When `leading`
/// is non-null it receives the eigenvalue attaining that real part (the
/// member of a conjugate pair with nonnegative imaginary part).
double max_real_eigenvalue(const Eigen::MatrixXd& m,
                           std::complex<double>* leading = nullptr);

/// Critical feedback strength where the fixed point destabilizes: bisection
/// on the leading real part of linearize, bracket grown geometrically from
/// [0, 1] rad/s. When no sign change appears below alpha_cap the report has
/// found = false and alpha_c = alpha_cap. params.alpha is ignored; the scan
/// variable replaces it.
StabilityReport critical_alpha(const PhysicalParams& params, const FrequencyGrid& grid,
                               double tol = 1e-6, double alpha_cap = 1e4);

}  // namespace ctc
