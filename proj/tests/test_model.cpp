#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "ctc/model.hpp"

using namespace ctc;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Forward standard normal CDF; independent of the quantile routine used by
// build_grid.
double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

EnsembleState random_state(std::size_t n, std::uint64_t seed, double scale) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> dist(0.0, scale);
    EnsembleState s(n);
    for (std::size_t i = 0; i < n; ++i) {
        s.px[i] = dist(gen);
        s.py[i] = dist(gen);
        s.pz[i] = dist(gen);
    }
    return s;
}

}  // namespace

TEST_CASE("params validate accepts defaults and rejects bad values") {
    PhysicalParams p;
    CHECK_NOTHROW(p.validate());
    CHECK(p.pumped_pz() == doctest::Approx(0.3));

    PhysicalParams bad = p;
    bad.t1 = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = p;
    bad.t2 = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = p;
    bad.r_se = -0.01;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = p;
    bad.alpha = -0.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = p;
    bad.delta_omega = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = p;
    bad.delta_omega = bad.omega0;  // spread must stay below the carrier
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    // Infinite relaxation times disable relaxation and are legal.
    PhysicalParams frozen = p;
    frozen.t1 = kInf;
    frozen.t2 = kInf;
    frozen.r_se = 0.0;
    CHECK_NOTHROW(frozen.validate());
}

TEST_CASE("uniform grid hits the documented node layout") {
    const FrequencyGrid g1 = build_grid(GridKind::Uniform, 1, 2.0 * M_PI * 10.0, 0.0);
    CHECK(g1.size() == 1);
    CHECK(g1.nodes[0] == doctest::Approx(2.0 * M_PI * 10.0));
    CHECK(g1.weights[0] == doctest::Approx(1.0));

    const FrequencyGrid g3 = build_grid(GridKind::Uniform, 3, 10.0, 2.0);
    REQUIRE(g3.size() == 3);
    CHECK(g3.nodes[0] == doctest::Approx(8.0));
    CHECK(g3.nodes[1] == doctest::Approx(10.0));
    CHECK(g3.nodes[2] == doctest::Approx(12.0));
    for (double w : g3.weights) CHECK(w == doctest::Approx(1.0 / 3.0));

    // Endpoints are included.
    const FrequencyGrid g64 = build_grid(GridKind::Uniform, 64, 62.83, 3.7);
    CHECK(g64.nodes.front() == doctest::Approx(62.83 - 3.7));
    CHECK(g64.nodes.back() == doctest::Approx(62.83 + 3.7));

    CHECK_THROWS_AS(build_grid(GridKind::Uniform, 0, 10.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(GridKind::Uniform, 2, 10.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(GridKind::Uniform, 4, 10.0, -1.0), std::invalid_argument);
}

TEST_CASE("gaussian grid sits at probability midpoints of equal-mass bins") {
    const double omega0 = 2.0 * M_PI * 10.0;
    const double sigma = 2.0 * M_PI * 0.5;
    const std::size_t n = 32;
    const FrequencyGrid g = build_grid(GridKind::Gaussian, n, omega0, sigma);

    double wsum = 0.0;
    for (double w : g.weights) wsum += w;
    CHECK(std::abs(wsum - 1.0) < 1e-12);

    for (std::size_t j = 0; j < n; ++j) {
        const double mass = normal_cdf((g.nodes[j] - omega0) / sigma);
        const double target = (static_cast<double>(j) + 0.5) / static_cast<double>(n);
        CHECK(std::abs(mass - target) < 1e-9);
    }
    // Symmetric about the center.
    for (std::size_t j = 0; j < n / 2; ++j)
        CHECK(g.nodes[j] + g.nodes[n - 1 - j] == doctest::Approx(2.0 * omega0).epsilon(1e-12));
    for (std::size_t j = 1; j < n; ++j) CHECK(g.nodes[j] > g.nodes[j - 1]);
}

TEST_CASE("lorentzian grid follows the truncated quantile map") {
    const double omega0 = 100.0;
    const double hwhm = 0.5;
    const std::size_t n = 16;
    const FrequencyGrid g = build_grid(GridKind::Lorentzian, n, omega0, hwhm);

    // Truncated Lorentzian CDF: F(x) = (atan(x/hwhm) + atan(10)) / (2 atan(10)).
    const double tmax = std::atan(10.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double mass = (std::atan((g.nodes[j] - omega0) / hwhm) + tmax) / (2.0 * tmax);
        const double target = (static_cast<double>(j) + 0.5) / static_cast<double>(n);
        CHECK(std::abs(mass - target) < 1e-9);
    }
    // Truncation keeps every node within 10 half-widths.
    CHECK(g.nodes.front() > omega0 - 10.0 * hwhm);
    CHECK(g.nodes.back() < omega0 + 10.0 * hwhm);
    for (std::size_t j = 0; j < n / 2; ++j)
        CHECK(g.nodes[j] + g.nodes[n - 1 - j] == doctest::Approx(2.0 * omega0).epsilon(1e-12));
}

TEST_CASE("grid validate rejects malformed grids") {
    FrequencyGrid g = build_grid(GridKind::Uniform, 3, 10.0, 2.0);
    CHECK_NOTHROW(g.validate());

    FrequencyGrid bad = g;
    bad.weights.pop_back();
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = g;
    bad.nodes[1] = bad.nodes[0];  // not strictly increasing
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = g;
    bad.weights = {0.5, 0.4, 0.2};  // sums to 1.1
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = g;
    bad.weights = {0.6, 0.6, -0.2};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = FrequencyGrid{};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("gradient conversion") {
    CHECK(convert_gradient(0.0, 2.0, kGammaXe129) == 0.0);
    // gamma * g * L / 2 with the xenon-129 gyromagnetic ratio.
    CHECK(convert_gradient(50.0, 2.0, 7.39970e-2) == doctest::Approx(3.69985).epsilon(1e-12));
    CHECK(convert_gradient(2.0, 2.0, kGammaXe129) == doctest::Approx(0.1479940).epsilon(1e-12));
    // Linearity in g.
    CHECK(convert_gradient(10.0, 3.0, 0.05) ==
          doctest::Approx(2.0 * convert_gradient(5.0, 3.0, 0.05)).epsilon(1e-15));
    CHECK_THROWS_AS(convert_gradient(-1.0, 2.0, 0.05), std::invalid_argument);
    CHECK_THROWS_AS(convert_gradient(1.0, -2.0, 0.05), std::invalid_argument);
    CHECK_THROWS_AS(convert_gradient(1.0, 2.0, -0.05), std::invalid_argument);
}

TEST_CASE("mean_px is the quadrature dot product") {
    FrequencyGrid g = build_grid(GridKind::Uniform, 5, 50.0, 2.0);
    EnsembleState s(5);
    for (double& v : s.px) v = 0.3;
    CHECK(mean_px(s, g) == doctest::Approx(0.3).epsilon(1e-15));

    FrequencyGrid g2 = build_grid(GridKind::Uniform, 2, 50.0, 1.0);
    EnsembleState s2(2);
    s2.px = {1.0, -1.0};
    CHECK(mean_px(s2, g2) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));

    // Brute-force dot product on a random state.
    EnsembleState r = random_state(5, 77, 0.4);
    double expect = 0.0;
    for (std::size_t i = 0; i < 5; ++i) expect += g.weights[i] * r.px[i];
    CHECK(mean_px(r, g) == doctest::Approx(expect).epsilon(1e-15));

    EnsembleState wrong(4);
    CHECK_THROWS_AS(mean_px(wrong, g), std::invalid_argument);

    // Quadrature linearity: scaling px scales the mean field exactly.
    EnsembleState scaled = r;
    for (double& v : scaled.px) v *= 2.5;
    CHECK(mean_px(scaled, g) == doctest::Approx(2.5 * mean_px(r, g)).epsilon(1e-14));
}

TEST_CASE("rhs matches an independently coded evaluation in both sign modes") {
    const FrequencyGrid grid = build_grid(GridKind::Uniform, 5, 62.8318530717958648, 3.0);
    PhysicalParams p;
    p.alpha = 2.3;
    p.t1 = 30.0;
    p.t2 = 20.0;
    p.r_se = 0.01;

    for (FeedbackSignMode mode : {FeedbackSignMode::SymmetricCoupling, FeedbackSignMode::NormConserving}) {
        p.feedback_sign_mode = mode;
        const double s = mode == FeedbackSignMode::SymmetricCoupling ? 1.0 : -1.0;
        EnsembleState state = random_state(5, 1234, 0.3);
        const EnsembleState d = bloch_rhs(state, p, grid);

        double m = 0.0;
        for (std::size_t i = 0; i < 5; ++i) m += grid.weights[i] * state.px[i];
        for (std::size_t i = 0; i < 5; ++i) {
            const double ex = grid.nodes[i] * state.py[i] + p.alpha * state.pz[i] * m -
                              state.px[i] / p.t2;
            const double ey = -grid.nodes[i] * state.px[i] - state.py[i] / p.t2;
            const double ez = s * p.alpha * state.px[i] * m - state.pz[i] / p.t1 + p.r_se;
            CHECK(d.px[i] == doctest::Approx(ex).epsilon(1e-14));
            CHECK(d.py[i] == doctest::Approx(ey).epsilon(1e-14));
            CHECK(d.pz[i] == doctest::Approx(ez).epsilon(1e-14));
        }
    }
}

TEST_CASE("rhs fixed point and pure-rotation examples") {
    PhysicalParams p;
    p.alpha = 0.0;
    FrequencyGrid g = build_grid(GridKind::Uniform, 3, 70.0, 1.0);
    EnsembleState s(3);
    for (double& v : s.pz) v = p.pumped_pz();
    const EnsembleState d = bloch_rhs(s, p, g);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(d.px[i] == 0.0);
        CHECK(d.py[i] == 0.0);
        CHECK(d.pz[i] == doctest::Approx(0.0).scale(1.0).epsilon(1e-16));
    }

    PhysicalParams rot;
    rot.alpha = 0.0;
    rot.t2 = kInf;
    const FrequencyGrid g1 = build_grid(GridKind::Uniform, 1, rot.omega0, 0.0);
    EnsembleState s1(1);
    s1.px[0] = 1.0;
    const EnsembleState d1 = bloch_rhs(s1, rot, g1);
    CHECK(d1.px[0] == 0.0);
    CHECK(d1.py[0] == doctest::Approx(-rot.omega0).epsilon(1e-15));
    CHECK(d1.pz[0] == doctest::Approx(rot.r_se).epsilon(1e-15));
}

TEST_CASE("feedback rotation norm witness per sign mode") {
    // Relaxation and pumping off: the remaining terms are rotations about z
    // (detuning) and, in NormConserving mode, about y (feedback).
    PhysicalParams p;
    p.alpha = 5.0;
    p.t1 = kInf;
    p.t2 = kInf;
    p.r_se = 0.0;
    const FrequencyGrid grid = build_grid(GridKind::Uniform, 4, 62.83, 2.0);

    p.feedback_sign_mode = FeedbackSignMode::NormConserving;
    EnsembleState state = random_state(4, 99, 0.25);
    EnsembleState d = bloch_rhs(state, p, grid);
    for (std::size_t i = 0; i < 4; ++i) {
        const double dot =
            state.px[i] * d.px[i] + state.py[i] * d.py[i] + state.pz[i] * d.pz[i];
        CHECK(std::abs(dot) < 1e-12);
    }

    // SymmetricCoupling: d|p|^2/dt = 4 alpha px pz M per node, generally nonzero.
    p.feedback_sign_mode = FeedbackSignMode::SymmetricCoupling;
    double m = 0.0;
    for (std::size_t i = 0; i < 4; ++i) m += grid.weights[i] * state.px[i];
    d = bloch_rhs(state, p, grid);
    for (std::size_t i = 0; i < 4; ++i) {
        const double dnorm2 =
            2.0 * (state.px[i] * d.px[i] + state.py[i] * d.py[i] + state.pz[i] * d.pz[i]);
        const double expect = 4.0 * p.alpha * state.px[i] * state.pz[i] * m;
        CHECK(dnorm2 == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("rhs validates its inputs") {
    PhysicalParams p;
    const FrequencyGrid g = build_grid(GridKind::Uniform, 3, 60.0, 1.0);
    EnsembleState wrong(2);
    CHECK_THROWS_AS(bloch_rhs(wrong, p, g), std::invalid_argument);

    EnsembleState nan_state(3);
    nan_state.py[1] = std::numeric_limits<double>::quiet_NaN();
    CHECK(!nan_state.all_finite());
    CHECK_THROWS_AS(bloch_rhs(nan_state, p, g), std::invalid_argument);

    EnsembleState ok(3);
    CHECK(ok.all_finite());
    CHECK(ok.matches(g));
    CHECK_NOTHROW(bloch_rhs(ok, p, g));
}
