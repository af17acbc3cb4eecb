#include "ctc/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ctc {

void PhysicalParams::validate() const {
    if (!(t1 > 0.0)) throw std::invalid_argument("t1 must be > 0");
    if (!(t2 > 0.0)) throw std::invalid_argument("t2 must be > 0");
    if (!(r_se >= 0.0)) throw std::invalid_argument("r_se must be >= 0");
    if (!(delta_omega >= 0.0)) throw std::invalid_argument("delta_omega must be >= 0");
    if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
    if (!(omega0 > delta_omega))
        throw std::invalid_argument("omega0 must exceed delta_omega (spread must not cross zero)");
}

void FrequencyGrid::validate() const {
    if (nodes.empty() || nodes.size() != weights.size())
        throw std::invalid_argument("grid nodes/weights must be non-empty and equal length");
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        if (!(nodes[i] < nodes[i + 1]))
            throw std::invalid_argument("grid nodes must be strictly increasing");
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw std::invalid_argument("grid weights must be >= 0");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("grid weights must sum to 1 (got " + std::to_string(sum) + ")");
}

bool EnsembleState::all_finite() const {
    auto ok = [](const std::vector<double>& v) {
        return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
    };
    return ok(px) && ok(py) && ok(pz);
}

namespace {

// Inverse standard normal CDF: Acklam's rational approximation polished with
// two Newton steps on erf, giving near machine precision over (0, 1).
double normal_quantile(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double x;
    if (p < plow) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        double q = p - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    for (int it = 0; it < 2; ++it) {
        double err = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
        double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
        x -= err / pdf;
    }
    return x;
}

}  // namespace

FrequencyGrid build_grid(GridKind kind, std::size_t n_nodes, double omega0, double delta_omega) {
    if (n_nodes < 1) throw std::invalid_argument("n_nodes must be >= 1");
    if (delta_omega < 0.0) throw std::invalid_argument("delta_omega must be >= 0");
    if (delta_omega == 0.0 && n_nodes > 1)
        throw std::invalid_argument("delta_omega = 0 requires a single node");

    FrequencyGrid grid;
    grid.kind = kind;
    grid.nodes.resize(n_nodes);
    grid.weights.assign(n_nodes, 1.0 / static_cast<double>(n_nodes));

    const auto n = static_cast<double>(n_nodes);
    switch (kind) {
        case GridKind::Uniform:
            if (n_nodes == 1) {
                grid.nodes[0] = omega0;
            } else {
                for (std::size_t i = 0; i < n_nodes; ++i)
                    grid.nodes[i] =
                        omega0 - delta_omega + 2.0 * delta_omega * static_cast<double>(i) / (n - 1.0);
            }
            break;
        case GridKind::Gaussian:
            // delta_omega = standard deviation; nodes at probability midpoints.
            for (std::size_t i = 0; i < n_nodes; ++i) {
                double p = (static_cast<double>(i) + 0.5) / n;
                grid.nodes[i] = omega0 + delta_omega * normal_quantile(p);
            }
            break;
        case GridKind::Lorentzian: {
            // delta_omega = HWHM; truncated at 10 half-widths, equal-mass bins.
            const double theta_max = std::atan(10.0);
            for (std::size_t i = 0; i < n_nodes; ++i) {
                double p = (static_cast<double>(i) + 0.5) / n;
                grid.nodes[i] = omega0 + delta_omega * std::tan((2.0 * p - 1.0) * theta_max);
            }
            break;
        }
    }
    grid.validate();
    return grid;
}

double convert_gradient(double g, double cell_length, double gamma) {
    if (g < 0.0 || cell_length < 0.0 || gamma < 0.0)
        throw std::invalid_argument("convert_gradient arguments must be >= 0");
    return gamma * g * cell_length / 2.0;
}

double mean_px(const EnsembleState& state, const FrequencyGrid& grid) {
    if (!state.matches(grid)) throw std::invalid_argument("state length does not match grid");
    double acc = 0.0;
    const std::size_t n = grid.size();
    for (std::size_t i = 0; i < n; ++i) acc += grid.weights[i] * state.px[i];
    return acc;
}

void bloch_rhs_into(const EnsembleState& state, const PhysicalParams& params,
                    const FrequencyGrid& grid, EnsembleState& out, double extra_drive) {
    const std::size_t n = grid.size();
    if (out.size() != n) {
        out.px.resize(n);
        out.py.resize(n);
        out.pz.resize(n);
    }
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m += grid.weights[i] * state.px[i];

    // Angular rate of the y-axis feedback drive, shared by all nodes.
    const double drive = params.alpha * m + extra_drive;
    const double s = params.feedback_sign_mode == FeedbackSignMode::SymmetricCoupling ? 1.0 : -1.0;
    const double inv_t1 = 1.0 / params.t1;
    const double inv_t2 = 1.0 / params.t2;

    const double* px = state.px.data();
    const double* py = state.py.data();
    const double* pz = state.pz.data();
    const double* om = grid.nodes.data();
    double* dx = out.px.data();
    double* dy = out.py.data();
    double* dz = out.pz.data();
    for (std::size_t i = 0; i < n; ++i) {
        dx[i] = om[i] * py[i] + drive * pz[i] - px[i] * inv_t2;
        dy[i] = -om[i] * px[i] - py[i] * inv_t2;
        dz[i] = s * drive * px[i] - pz[i] * inv_t1 + params.r_se;
    }
}

EnsembleState bloch_rhs(const EnsembleState& state, const PhysicalParams& params,
                        const FrequencyGrid& grid) {
    params.validate();
    if (!state.matches(grid)) throw std::invalid_argument("state length does not match grid");
    if (!state.all_finite()) throw std::invalid_argument("state has non-finite components");
    EnsembleState out(state.size());
    bloch_rhs_into(state, params, grid, out);
    return out;
}

}  // namespace ctc
