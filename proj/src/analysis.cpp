#include "ctc/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace ctc {

namespace {

constexpr double kTwoPi = 6.2831853071795864769;

std::size_t floor_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p * 2 <= n) p *= 2;
    return p;
}

// Iterative radix-2 Cooley-Tukey, in place. Size must be a power of two.
// Twiddles resync from std::polar every 64 butterflies to bound drift.
void fft_radix2(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -kTwoPi / static_cast<double>(len);
        const std::complex<double> wlen = std::polar(1.0, ang);
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                if ((k & 63u) == 0u) w = std::polar(1.0, ang * static_cast<double>(k));
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

double wrap_2pi(double phi) {
    phi = std::fmod(phi, kTwoPi);
    if (phi < 0.0) phi += kTwoPi;
    if (phi >= kTwoPi) phi = 0.0;
    return phi;
}

double rms_about_mean(const double* x, std::size_t n) {
    if (n == 0) return 0.0;
    double mu = 0.0;
    for (std::size_t i = 0; i < n; ++i) mu += x[i];
    mu /= static_cast<double>(n);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = x[i] - mu;
        s += d * d;
    }
    return std::sqrt(s / static_cast<double>(n));
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = a.size();
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= static_cast<double>(n);
    mb /= static_cast<double>(n);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (!(saa > 0.0) || !(sbb > 0.0)) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

// Parabolic vertex on log power across the peak bin and its neighbors.
double refine_freq(const Spectrum& spec, std::size_t k) {
    const auto& p = spec.power;
    const double f = spec.freqs[k];
    if (k == 0 || k + 1 >= p.size()) return f;
    if (!(p[k - 1] > 0.0 && p[k] > 0.0 && p[k + 1] > 0.0)) return f;
    const double lm = std::log(p[k - 1]);
    const double l0 = std::log(p[k]);
    const double lp = std::log(p[k + 1]);
    const double den = lm - 2.0 * l0 + lp;
    if (!(den < 0.0)) return f;
    double delta = 0.5 * (lm - lp) / den;
    delta = std::clamp(delta, -0.5, 0.5);
    return f + delta * spec.resolution;
}

// Frequency where power falls to `half` walking from bin k in direction
// dir, or the valley/edge reached first.
double half_power_crossing(const Spectrum& spec, std::size_t k, double half, int dir) {
    const auto& p = spec.power;
    const auto n = static_cast<std::ptrdiff_t>(p.size());
    auto j = static_cast<std::ptrdiff_t>(k);
    for (;;) {
        const std::ptrdiff_t nj = j + dir;
        if (nj < 0 || nj >= n) return spec.freqs[static_cast<std::size_t>(j)];
        const double pj = p[static_cast<std::size_t>(j)];
        const double pn = p[static_cast<std::size_t>(nj)];
        if (pn > pj) return spec.freqs[static_cast<std::size_t>(j)];
        if (pn <= half) {
            const double t = (pj - half) / (pj - pn);
            return spec.freqs[static_cast<std::size_t>(j)] + t * dir * spec.resolution;
        }
        j = nj;
    }
}

// Least-squares comb fit n*f1 over all peaks. Assignment runs at a loosened
// tolerance, the refined base must then hold strictly. Returns 0 on failure.
double fit_single_base(const std::vector<Peak>& peaks, double f1, double tol) {
    if (!(f1 > 0.0)) return 0.0;
    for (int pass = 0; pass < 2; ++pass) {
        const double allow = pass == 0 ? 2.0 * tol : tol;
        double num = 0.0, den = 0.0;
        for (const Peak& p : peaks) {
            const double nn = std::max(1.0, std::round(p.freq / f1));
            if (std::abs(p.freq - nn * f1) > allow) return 0.0;
            num += nn * p.freq;
            den += nn * nn;
        }
        if (pass == 0) f1 = num / den;
    }
    return f1;
}

// Common spacing of a set of positive differences, seeded by the smallest
// and refined by least squares over integer multiples. 0 when inconsistent.
double approx_gcd(const std::vector<double>& diffs, double tol) {
    double g = 0.0;
    for (double d : diffs)
        if (d > 0.0 && (g == 0.0 || d < g)) g = d;
    if (!(g > 0.0)) return 0.0;
    for (int pass = 0; pass < 2; ++pass) {
        const double allow = pass == 0 ? 2.0 * tol : tol;
        double num = 0.0, den = 0.0;
        for (double d : diffs) {
            const double k = std::max(1.0, std::round(d / g));
            if (std::abs(d - k * g) > allow) return 0.0;
            num += k * d;
            den += k * k;
        }
        if (pass == 0) g = num / den;
    }
    return g;
}

// Whether every peak sits on a*f1 + m*f2 within tol, with a bounded by
// max_carrier_multiple and |m| by max_sideband. Optionally records the
// (a, m) assignment per peak.
bool lattice_explains(const std::vector<Peak>& peaks, double f1, double f2,
                      const ClassifyOptions& opt, double tol,
                      std::vector<std::pair<int, long>>* assign) {
    if (assign) assign->clear();
    for (const Peak& p : peaks) {
        bool matched = false;
        for (int a = 0; a <= opt.max_carrier_multiple && !matched; ++a) {
            const double rem = p.freq - a * f1;
            const long m = std::lround(rem / f2);
            if (std::labs(m) > opt.max_sideband) continue;
            if (std::abs(rem - static_cast<double>(m) * f2) <= tol) {
                matched = true;
                if (assign) assign->emplace_back(a, m);
            }
        }
        if (!matched) return false;
    }
    return true;
}

// Smallest q <= qmax with f2 close to (p/q)*f1 for some integer p >= 1.
bool commensurate(double f1, double f2, double tol, int qmax, int* q_out) {
    for (int q = 1; q <= qmax; ++q) {
        const auto p = std::lround(q * f2 / f1);
        if (p < 1) continue;
        if (std::abs(f2 - static_cast<double>(p) / q * f1) <= tol) {
            *q_out = q;
            return true;
        }
    }
    return false;
}

}  // namespace

double Spectrum::total_energy() const {
    if (freqs.empty()) return 0.0;
    const std::size_t last = freqs.size() - 1;
    double sum = 0.0;
    for (std::size_t k = 0; k <= last; ++k) {
        const double e = std::norm(complex_amplitudes[k]);
        sum += (k == 0 || k == last) ? e : 2.0 * e;
    }
    return sum;
}

Spectrum power_spectrum(const std::vector<double>& series, double sample_rate,
                        WindowKind window) {
    if (series.size() < 16)
        throw std::invalid_argument("power_spectrum: series shorter than 16 samples");
    if (!(sample_rate > 0.0))
        throw std::invalid_argument("power_spectrum: sample_rate must be > 0");
    for (double v : series)
        if (!std::isfinite(v))
            throw std::invalid_argument("power_spectrum: non-finite sample");

    const std::size_t len = floor_pow2(series.size());
    double mean = 0.0;
    for (std::size_t i = 0; i < len; ++i) mean += series[i];
    mean /= static_cast<double>(len);

    std::vector<std::complex<double>> buf(len);
    if (window == WindowKind::Hann) {
        for (std::size_t i = 0; i < len; ++i) {
            const double w =
                0.5 * (1.0 - std::cos(kTwoPi * static_cast<double>(i) / static_cast<double>(len)));
            buf[i] = (series[i] - mean) * w;
        }
    } else {
        for (std::size_t i = 0; i < len; ++i) buf[i] = series[i] - mean;
    }
    fft_radix2(buf);

    Spectrum spec;
    spec.window = window;
    spec.sample_rate = sample_rate;
    spec.resolution = sample_rate / static_cast<double>(len);
    const std::size_t half = len / 2;
    spec.freqs.resize(half + 1);
    spec.power.resize(half + 1);
    spec.complex_amplitudes.resize(half + 1);
    for (std::size_t k = 0; k <= half; ++k) {
        const std::complex<double> amp = buf[k] / static_cast<double>(len);
        spec.freqs[k] = static_cast<double>(k) * spec.resolution;
        spec.complex_amplitudes[k] = amp;
        spec.power[k] = std::norm(amp);
    }
    const double pmax = *std::max_element(spec.power.begin(), spec.power.end());
    if (pmax > 0.0)
        for (double& p : spec.power) p /= pmax;
    return spec;
}

std::vector<Peak> find_peaks(const Spectrum& spec, double floor) {
    if (!(floor > 0.0 && floor < 1.0))
        throw std::invalid_argument("find_peaks: floor must be in (0, 1)");
    std::vector<Peak> peaks;
    const auto& p = spec.power;
    if (p.size() < 3) return peaks;
    if (!(*std::max_element(p.begin(), p.end()) > 0.0)) return peaks;

    for (std::size_t k = 1; k + 1 < p.size(); ++k) {
        if (!(p[k] > floor)) continue;
        if (!(p[k] > p[k - 1] && p[k] >= p[k + 1])) continue;
        Peak pk;
        pk.amplitude = p[k];
        pk.phase = wrap_2pi(std::arg(spec.complex_amplitudes[k]));
        pk.freq = refine_freq(spec, k);
        const double half = 0.5 * p[k];
        const double lo = half_power_crossing(spec, k, half, -1);
        const double hi = half_power_crossing(spec, k, half, +1);
        pk.fwhm = std::max(hi - lo, spec.resolution);
        peaks.push_back(pk);
    }

    // Refinement can pull neighboring maxima inside one bin; keep the taller.
    std::vector<Peak> merged;
    for (const Peak& pk : peaks) {
        if (!merged.empty() && pk.freq - merged.back().freq <= spec.resolution) {
            if (pk.amplitude > merged.back().amplitude) merged.back() = pk;
        } else {
            merged.push_back(pk);
        }
    }
    return merged;
}

double chaos_k(const std::vector<double>& series, double sample_rate,
               std::uint64_t seed) {
    if (series.size() < 2000) throw std::invalid_argument("chaos_k: series too short");
    if (!(sample_rate > 0.0))
        throw std::invalid_argument("chaos_k: sample_rate must be > 0");

    // Oversampling guard: bring the dominant peak below a tenth of the
    // working rate before building translation variables.
    const Spectrum spec = power_spectrum(series, sample_rate, WindowKind::Rect);
    std::size_t kdom = 1;
    for (std::size_t k = 1; k < spec.power.size(); ++k)
        if (spec.power[k] > spec.power[kdom]) kdom = k;
    if (!(spec.power[kdom] > 0.0)) throw std::invalid_argument("chaos_k: zero variance");
    const double fdom = spec.freqs[kdom];

    auto d = static_cast<std::size_t>(sample_rate / (10.0 * fdom));
    d = std::clamp<std::size_t>(d, 1, series.size() / 2000);

    std::vector<double> x;
    x.reserve(series.size() / d + 1);
    for (std::size_t i = 0; i < series.size(); i += d) x.push_back(series[i]);
    if (x.size() > 5000) x.erase(x.begin(), x.end() - 5000);

    const std::size_t n = x.size();
    double mu = 0.0;
    for (double v : x) mu += v;
    mu /= static_cast<double>(n);
    double var = 0.0;
    for (double v : x) var += (v - mu) * (v - mu);
    var /= static_cast<double>(n);
    if (!(var > 0.0)) throw std::invalid_argument("chaos_k: zero variance");
    const double sd = std::sqrt(var);
    std::vector<double> phi(n);
    for (std::size_t i = 0; i < n; ++i) phi[i] = (x[i] - mu) / sd;
    double ephi = 0.0;
    for (double v : phi) ephi += v;
    ephi /= static_cast<double>(n);

    const std::size_t ncut = n / 10;
    std::vector<double> ns(ncut);
    std::iota(ns.begin(), ns.end(), 1.0);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(kTwoPi / 10.0, 4.0 * kTwoPi / 10.0);

    std::vector<double> pc(n + 1), qc(n + 1), msd(ncut), kvals;
    kvals.reserve(100);
    for (int trial = 0; trial < 100; ++trial) {
        const double c = angle(rng);
        pc[0] = 0.0;
        qc[0] = 0.0;
        std::complex<double> z(1.0, 0.0);
        const std::complex<double> rot = std::polar(1.0, c);
        for (std::size_t i = 1; i <= n; ++i) {
            if ((i & 255u) == 0u) z = std::polar(1.0, c * static_cast<double>(i));
            else z *= rot;
            pc[i] = pc[i - 1] + phi[i - 1] * z.real();
            qc[i] = qc[i - 1] + phi[i - 1] * z.imag();
        }
        const double osc_scale = ephi * ephi / (1.0 - std::cos(c));
        for (std::size_t m = 1; m <= ncut; ++m) {
            double s = 0.0;
            for (std::size_t j = 0; j + m <= n; ++j) {
                const double dp = pc[j + m] - pc[j];
                const double dq = qc[j + m] - qc[j];
                s += dp * dp + dq * dq;
            }
            s /= static_cast<double>(n - m + 1);
            msd[m - 1] = s - osc_scale * (1.0 - std::cos(c * static_cast<double>(m)));
        }
        kvals.push_back(pearson(ns, msd));
    }

    std::sort(kvals.begin(), kvals.end());
    const std::size_t half = kvals.size() / 2;
    double k = kvals.size() % 2 == 1 ? kvals[half]
                                     : 0.5 * (kvals[half - 1] + kvals[half]);
    return std::clamp(k, 0.0, 1.0);
}

double phase_at(const std::vector<double>& series, double sample_rate, double f0) {
    const Spectrum spec = power_spectrum(series, sample_rate, WindowKind::Rect);
    if (!(f0 > 0.0) || f0 > spec.freqs.back())
        throw std::invalid_argument("phase_at: f0 outside the spectral range");
    const auto k = static_cast<std::size_t>(std::llround(f0 / spec.resolution));
    if (k == 0) throw std::invalid_argument("phase_at: f0 below spectral resolution");
    const std::size_t bin = std::min(k, spec.size() - 1);
    return wrap_2pi(std::arg(spec.complex_amplitudes[bin]));
}

UniformityResult phase_uniformity(const std::vector<double>& phases) {
    if (phases.size() < 8)
        throw std::invalid_argument("phase_uniformity: need at least 8 phases");
    double sx = 0.0, sy = 0.0;
    for (double phi : phases) {
        sx += std::cos(phi);
        sy += std::sin(phi);
    }
    const auto n = static_cast<double>(phases.size());
    UniformityResult res;
    res.resultant_length = std::sqrt(sx * sx + sy * sy) / n;
    res.rayleigh_p = std::exp(-n * res.resultant_length * res.resultant_length);
    return res;
}

double permutation_entropy(const std::vector<double>& series, int order,
                           std::size_t delay) {
    if (order < 2 || order > 7)
        throw std::invalid_argument("permutation_entropy: order must be in [2, 7]");
    if (delay < 1) throw std::invalid_argument("permutation_entropy: delay must be >= 1");
    const std::size_t span = static_cast<std::size_t>(order - 1) * delay;
    if (series.size() < span + 1)
        throw std::invalid_argument("permutation_entropy: series too short for one window");

    const std::size_t n_windows = series.size() - span;
    std::unordered_map<std::uint32_t, std::size_t> counts;
    std::array<int, 7> idx{};
    for (std::size_t w = 0; w < n_windows; ++w) {
        for (int j = 0; j < order; ++j) idx[static_cast<std::size_t>(j)] = j;
        std::sort(idx.begin(), idx.begin() + order, [&](int a, int b) {
            const double va = series[w + static_cast<std::size_t>(a) * delay];
            const double vb = series[w + static_cast<std::size_t>(b) * delay];
            if (va != vb) return va < vb;
            return a < b;  // stable tie-break by time index
        });
        std::uint32_t code = 0;
        for (int j = 0; j < order; ++j)
            code |= static_cast<std::uint32_t>(idx[static_cast<std::size_t>(j)])
                    << (3 * j);
        ++counts[code];
    }

    double h = 0.0;
    for (const auto& [code, cnt] : counts) {
        (void)code;
        const double p = static_cast<double>(cnt) / static_cast<double>(n_windows);
        h -= p * std::log(p);
    }
    double nfact = 1.0;
    for (int j = 2; j <= order; ++j) nfact *= j;
    return h / std::log(nfact);
}

PhaseLabel classify(const Trajectory& traj, const ClassifyOptions& opt) {
    const auto& x = traj.mean_px_series;
    if (x.size() < 2000)
        throw std::invalid_argument("classify: stationary window needs at least 2000 samples");
    if (!(traj.sample_rate > 0.0))
        throw std::invalid_argument("classify: trajectory has no sample rate");

    PhaseLabel out;
    const double rms = rms_about_mean(x.data(), x.size());
    if (rms < opt.amplitude_floor) return out;

    // A small and still shrinking amplitude is a transient on its way to the
    // fixed point, not a sustained oscillation.
    const std::size_t quarter = x.size() / 4;
    const double rms_first = rms_about_mean(x.data(), quarter);
    const double rms_last = rms_about_mean(x.data() + (x.size() - quarter), quarter);
    if (rms < opt.decay_floor && rms_last < opt.decay_ratio * rms_first) return out;

    out.k_value = chaos_k(x, traj.sample_rate, traj.seed);

    const Spectrum spec = power_spectrum(x, traj.sample_rate, WindowKind::Hann);
    out.peaks = find_peaks(spec, opt.peak_floor);

    if (!out.peaks.empty()) {
        const Peak& dom = *std::max_element(
            out.peaks.begin(), out.peaks.end(),
            [](const Peak& a, const Peak& b) { return a.amplitude < b.amplitude; });
        auto delay = static_cast<std::size_t>(
            std::max(1.0, std::round(traj.sample_rate / dom.freq / 5.0)));
        delay = std::min(delay, (x.size() - 1) / 5);
        out.perm_entropy = permutation_entropy(x, 5, std::max<std::size_t>(1, delay));
    }

    if (out.k_value > opt.chaos_threshold) {
        out.label = PhaseKind::Chaotic;
        return out;
    }
    if (out.peaks.empty()) {
        out.label = PhaseKind::Chaotic;
        return out;
    }

    const double tol = opt.comb_tol_factor * spec.resolution;
    const Peak& dom = *std::max_element(
        out.peaks.begin(), out.peaks.end(),
        [](const Peak& a, const Peak& b) { return a.amplitude < b.amplitude; });

    std::vector<double> diffs;
    for (std::size_t i = 0; i + 1 < out.peaks.size(); ++i)
        diffs.push_back(out.peaks[i + 1].freq - out.peaks[i].freq);
    const double gcd = diffs.empty() ? 0.0 : approx_gcd(diffs, tol);

    std::vector<double> single_cands = {dom.freq, out.peaks.front().freq};
    if (!diffs.empty()) {
        single_cands.push_back(*std::min_element(diffs.begin(), diffs.end()));
        if (gcd > 0.0) single_cands.push_back(gcd);
    }
    for (double cand : single_cands) {
        const double base = fit_single_base(out.peaks, cand, tol);
        // The dominant peak must be a low harmonic of the base, otherwise a
        // fine frequency grid could pass itself off as the fundamental of a
        // far higher carrier.
        if (base > 0.0 &&
            std::round(dom.freq / base) <= static_cast<double>(opt.max_carrier_multiple)) {
            out.label = PhaseKind::LimitCycle;
            out.base_freqs = {base};
            return out;
        }
    }

    // Two-base lattice: first base pinned to the dominant peak, second base
    // candidates generated from every peak's offset against small carrier
    // multiples, largest consistent spacing wins.
    const double f1 = dom.freq;
    std::vector<double> lattice_cands;
    for (const Peak& p : out.peaks) {
        for (int a = 0; a <= opt.max_carrier_multiple; ++a) {
            for (int m = 1; m <= 8; ++m) {
                const double v = std::abs(p.freq - a * f1) / m;
                if (v > 2.0 * tol) lattice_cands.push_back(v);
            }
        }
    }
    if (gcd > 2.0 * tol) lattice_cands.push_back(gcd);
    std::sort(lattice_cands.begin(), lattice_cands.end(), std::greater<>());

    double prev = -1.0;
    std::vector<std::pair<int, long>> assign;
    for (double f2 : lattice_cands) {
        if (prev >= 0.0 && prev - f2 < 0.25 * tol) continue;
        prev = f2;
        if (!lattice_explains(out.peaks, f1, f2, opt, tol, &assign)) continue;

        // One least-squares polish of the spacing over the found assignment.
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < out.peaks.size(); ++i) {
            const auto [a, m] = assign[i];
            if (m == 0) continue;
            num += static_cast<double>(m) * (out.peaks[i].freq - a * f1);
            den += static_cast<double>(m) * static_cast<double>(m);
        }
        if (den > 0.0) {
            const double refined = num / den;
            if (refined > 0.0 && lattice_explains(out.peaks, f1, refined, opt, tol, nullptr))
                f2 = refined;
        }

        int q = 0;
        if (commensurate(f1, f2, tol, opt.max_denominator, &q)) {
            out.label = PhaseKind::LimitCycle;
            out.base_freqs = {f1 / q};
        } else {
            out.label = PhaseKind::QuasiPeriodic;
            out.base_freqs = {f1, f2};
        }
        return out;
    }

    out.label = PhaseKind::Chaotic;
    return out;
}

PoincareShape poincare_shape(const PoincarePoints& points, double trajectory_amplitude) {
    const std::size_t n = points.size();
    if (n < 30) throw std::invalid_argument("poincare_shape: need at least 30 points");
    if (!(trajectory_amplitude > 0.0))
        throw std::invalid_argument("poincare_shape: trajectory_amplitude must be > 0");

    // Subsample to bound the O(m^2) pair scans below.
    const std::size_t cap = 2048;
    const std::size_t stride = (n + cap - 1) / cap;
    std::vector<double> px, pz;
    px.reserve(cap);
    pz.reserve(cap);
    for (std::size_t i = 0; i < n; i += stride) {
        px.push_back(points.mean_px[i]);
        pz.push_back(points.mean_pz[i]);
    }
    const std::size_t m = px.size();

    double diam2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const double dx = px[i] - px[j];
            const double dz = pz[i] - pz[j];
            diam2 = std::max(diam2, dx * dx + dz * dz);
        }
    }
    const double diam = std::sqrt(diam2);
    const double cut = 0.02 * trajectory_amplitude;
    if (diam < cut) return PoincareShape::Cluster;

    // Two-scale correlation dimension. Points on a curve give pair counts
    // growing like r, points filling an area like r^2. The inner radius sits
    // above the sampling scale (twice the median nearest-neighbor distance)
    // so a densely retraced loop with finite thickness still reads as a
    // curve, and the outer radius stays below the diameter so the counts do
    // not saturate.
    std::vector<double> nn(m, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const double dx = px[i] - px[j];
            const double dz = pz[i] - pz[j];
            const double d2 = dx * dx + dz * dz;
            nn[i] = std::min(nn[i], d2);
            nn[j] = std::min(nn[j], d2);
        }
    }
    std::nth_element(nn.begin(), nn.begin() + m / 2, nn.end());
    const double med_nn = std::sqrt(nn[m / 2]);

    const double r1 = std::max(diam / 32.0, 2.0 * med_nn);
    const double r2 = std::min(4.0 * r1, 0.45 * diam);
    if (r2 <= 1.2 * r1) return PoincareShape::Scattered;

    std::size_t c1 = 0;
    std::size_t c2 = 0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const double dx = px[i] - px[j];
            const double dz = pz[i] - pz[j];
            const double d2 = dx * dx + dz * dz;
            if (d2 < r1 * r1) ++c1;
            if (d2 < r2 * r2) ++c2;
        }
    }
    if (c1 == 0) return PoincareShape::Scattered;
    const double dim = std::log(static_cast<double>(c2) / static_cast<double>(c1)) /
                       std::log(r2 / r1);
    return dim < 1.5 ? PoincareShape::ClosedCurve : PoincareShape::Scattered;
}

const char* to_string(PhaseKind kind) {
    switch (kind) {
        case PhaseKind::FixedPoint: return "fixed_point";
        case PhaseKind::LimitCycle: return "limit_cycle";
        case PhaseKind::QuasiPeriodic: return "quasi_periodic";
        case PhaseKind::Chaotic: return "chaotic";
    }
    return "unknown";
}

const char* to_string(PoincareShape shape) {
    switch (shape) {
        case PoincareShape::Cluster: return "cluster";
        case PoincareShape::ClosedCurve: return "closed_curve";
        case PoincareShape::Scattered: return "scattered";
    }
    return "unknown";
}

const char* to_string(WindowKind window) {
    switch (window) {
        case WindowKind::Rect: return "rect";
        case WindowKind::Hann: return "hann";
    }
    return "unknown";
}

}  // namespace ctc
