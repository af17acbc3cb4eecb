#include "ctc/stability.hpp"

#include <cmath>
#include <stdexcept>

namespace ctc {

Eigen::MatrixXd linearize(const PhysicalParams& params, const FrequencyGrid& grid) {
    params.validate();
    grid.validate();
    const auto n = static_cast<Eigen::Index>(grid.size());
    const double inv_t2 = 1.0 / params.t2;
    const double pz0 = params.pumped_pz();

    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double w = grid.nodes[static_cast<std::size_t>(i)];
        jac(2 * i, 2 * i) = -inv_t2;
        jac(2 * i, 2 * i + 1) = w;
        jac(2 * i + 1, 2 * i) = -w;
        jac(2 * i + 1, 2 * i + 1) = -inv_t2;
    }
    const double gain = params.alpha * pz0;
    if (gain != 0.0) {
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                jac(2 * i, 2 * j) += gain * grid.weights[static_cast<std::size_t>(j)];
    }
    return jac;
}

double max_real_eigenvalue(const Eigen::MatrixXd& m, std::complex<double>* leading) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("max_real_eigenvalue: eigensolver failed");
    const auto& vals = solver.eigenvalues();
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < vals.size(); ++k) {
        if (vals[k].real() > vals[best].real() ||
            (vals[k].real() == vals[best].real() && vals[k].imag() > vals[best].imag()))
            best = k;
    }
    if (leading) *leading = vals[best];
    return vals[best].real();
}

StabilityReport critical_alpha(const PhysicalParams& params, const FrequencyGrid& grid,
                               double tol, double alpha_cap) {
    if (!(tol > 0.0)) throw std::invalid_argument("critical_alpha: tol must be > 0");
    if (!(alpha_cap > 1.0)) throw std::invalid_argument("critical_alpha: cap must exceed 1");

    StabilityReport report;
    report.fixed_point_pz = params.pumped_pz();

    PhysicalParams p = params;
    auto eval = [&](double alpha, std::complex<double>* lead) {
        p.alpha = alpha;
        const double re = max_real_eigenvalue(linearize(p, grid), lead);
        report.trail.emplace_back(alpha, re);
        return re;
    };

    std::complex<double> lead;
    double lo = 0.0;
    if (eval(lo, &lead) >= 0.0) {
        // Destabilized before any feedback is applied (e.g. T2 infinite).
        report.alpha_c = 0.0;
        report.found = true;
        report.leading_eigenvalue = lead;
        return report;
    }

    double hi = 1.0;
    double f_hi = eval(hi, &lead);
    while (f_hi < 0.0) {
        if (hi >= alpha_cap) {
            report.alpha_c = alpha_cap;
            report.found = false;
            report.leading_eigenvalue = lead;
            report.bracket_lo = lo;
            report.bracket_hi = hi;
            return report;
        }
        lo = hi;
        hi = std::min(hi * 2.0, alpha_cap);
        f_hi = eval(hi, &lead);
    }

    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (eval(mid, nullptr) < 0.0)
            lo = mid;
        else
            hi = mid;
    }

    report.alpha_c = 0.5 * (lo + hi);
    report.found = true;
    report.bracket_lo = lo;
    report.bracket_hi = hi;
    eval(report.alpha_c, &report.leading_eigenvalue);
    report.trail.pop_back();  // the final probe is reported, not part of the search
    return report;
}

}  // namespace ctc
