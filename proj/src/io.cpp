#include "ctc/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include "ctc/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "trajectory container assumes a little-endian host");

namespace ctc {

namespace {

constexpr char kMagic[8] = {'C', 'T', 'C', 'T', 'R', 'A', 'J', '1'};

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode) {
    std::ofstream out(path, mode);
    if (!out) throw ConfigError("cannot open for writing: " + path.string());
    return out;
}

void put_u64(std::ostream& out, std::uint64_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_f64(std::ostream& out, double v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint64_t get_u64(std::istream& in) {
    std::uint64_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

double get_f64(std::istream& in) {
    double v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

std::string csv_safe(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

std::string join_freqs(const std::vector<double>& freqs) {
    std::string s;
    for (std::size_t i = 0; i < freqs.size(); ++i) {
        if (i) s += ';';
        s += format_double(freqs[i]);
    }
    return s;
}

}  // namespace

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

void write_trajectory_binary(const std::filesystem::path& path, const Trajectory& traj) {
    std::ofstream out = open_out(path, std::ios::binary);
    out.write(kMagic, sizeof kMagic);
    const std::uint64_t n_nodes =
        traj.full_states.empty() ? 0 : traj.full_states.front().size();
    put_u64(out, n_nodes);
    put_f64(out, traj.sample_rate);
    put_u64(out, traj.size());
    put_u64(out, traj.seed);
    for (std::size_t i = 0; i < traj.size(); ++i) {
        put_f64(out, traj.times[i]);
        put_f64(out, traj.mean_px_series[i]);
        put_f64(out, traj.mean_py_series[i]);
        put_f64(out, traj.mean_pz_series[i]);
        if (n_nodes) {
            const EnsembleState& s = traj.full_states[i];
            out.write(reinterpret_cast<const char*>(s.px.data()),
                      static_cast<std::streamsize>(n_nodes * sizeof(double)));
            out.write(reinterpret_cast<const char*>(s.py.data()),
                      static_cast<std::streamsize>(n_nodes * sizeof(double)));
            out.write(reinterpret_cast<const char*>(s.pz.data()),
                      static_cast<std::streamsize>(n_nodes * sizeof(double)));
        }
    }
    if (!out) throw ConfigError("write failed: " + path.string());
}

Trajectory read_trajectory_binary(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open for reading: " + path.string());
    char magic[8] = {};
    in.read(magic, sizeof magic);
    if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
        throw ConfigError("not a trajectory container: " + path.string());
    const std::uint64_t n_nodes = get_u64(in);
    Trajectory traj;
    traj.sample_rate = get_f64(in);
    const std::uint64_t count = get_u64(in);
    traj.seed = get_u64(in);
    traj.times.reserve(count);
    traj.mean_px_series.reserve(count);
    traj.mean_py_series.reserve(count);
    traj.mean_pz_series.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        traj.times.push_back(get_f64(in));
        traj.mean_px_series.push_back(get_f64(in));
        traj.mean_py_series.push_back(get_f64(in));
        traj.mean_pz_series.push_back(get_f64(in));
        if (n_nodes) {
            EnsembleState s(n_nodes);
            in.read(reinterpret_cast<char*>(s.px.data()),
                    static_cast<std::streamsize>(n_nodes * sizeof(double)));
            in.read(reinterpret_cast<char*>(s.py.data()),
                    static_cast<std::streamsize>(n_nodes * sizeof(double)));
            in.read(reinterpret_cast<char*>(s.pz.data()),
                    static_cast<std::streamsize>(n_nodes * sizeof(double)));
            traj.full_states.push_back(std::move(s));
        }
        if (!in) throw ConfigError("truncated trajectory container: " + path.string());
    }
    return traj;
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
    std::ofstream out = open_out(path, std::ios::out);
    out << "t,mean_px,mean_py,mean_pz\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        out << format_double(traj.times[i]) << ','
            << format_double(traj.mean_px_series[i]) << ','
            << format_double(traj.mean_py_series[i]) << ','
            << format_double(traj.mean_pz_series[i]) << '\n';
    }
    if (!out) throw ConfigError("write failed: " + path.string());
}

void write_spectrum_csv(const std::filesystem::path& path, const Spectrum& spec) {
    std::ofstream out = open_out(path, std::ios::out);
    out << "freq_hz,power,phase_rad\n";
    for (std::size_t k = 0; k < spec.size(); ++k) {
        double phase = std::arg(spec.complex_amplitudes[k]);
        if (phase < 0.0) phase += 6.2831853071795864769;
        out << format_double(spec.freqs[k]) << ',' << format_double(spec.power[k])
            << ',' << format_double(phase) << '\n';
    }
    if (!out) throw ConfigError("write failed: " + path.string());
}

void write_poincare_csv(const std::filesystem::path& path, const PoincarePoints& points) {
    std::ofstream out = open_out(path, std::ios::out);
    out << "t,mean_px,mean_pz\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        out << format_double(points.t[i]) << ',' << format_double(points.mean_px[i])
            << ',' << format_double(points.mean_pz[i]) << '\n';
    }
    if (!out) throw ConfigError("write failed: " + path.string());
}

void write_sweep_summary_csv(const std::filesystem::path& path,
                             const std::vector<SweepRow>& rows) {
    std::ofstream out = open_out(path, std::ios::out);
    out << "value,k_value,label,base_freqs,peak_count,seed,failed,error\n";
    for (const SweepRow& r : rows) {
        out << format_double(r.value) << ',' << format_double(r.k_value) << ','
            << (r.failed ? "failed" : to_string(r.label.label)) << ','
            << join_freqs(r.label.base_freqs) << ',' << r.label.peaks.size() << ','
            << r.seed << ',' << (r.failed ? 1 : 0) << ',' << csv_safe(r.error)
            << '\n';
    }
    if (!out) throw ConfigError("write failed: " + path.string());
}

void write_noise_summary_csv(const std::filesystem::path& path,
                             const NoiseScanResult& result) {
    std::ofstream out = open_out(path, std::ios::out);
    out << "amplitude,k_value,label,fundamental_survived,peak_count,seed,failed,error\n";
    for (const NoiseScanRow& nr : result.rows) {
        const SweepRow& r = nr.row;
        out << format_double(r.value) << ',' << format_double(r.k_value) << ','
            << (r.failed ? "failed" : to_string(r.label.label)) << ','
            << (nr.fundamental_survived ? 1 : 0) << ',' << r.label.peaks.size()
            << ',' << r.seed << ',' << (r.failed ? 1 : 0) << ',' << csv_safe(r.error)
            << '\n';
    }
    if (!out) throw ConfigError("write failed: " + path.string());
}

void write_phases_csv(const std::filesystem::path& path, const PhaseExperiment& exp) {
    std::ofstream out = open_out(path, std::ios::out);
    const bool two = !exp.phases_second.empty();
    out << (two ? "realization,phase_rad,phase_second_rad\n" : "realization,phase_rad\n");
    for (std::size_t i = 0; i < exp.phases.size(); ++i) {
        out << i << ',' << format_double(exp.phases[i]);
        if (two) out << ',' << format_double(exp.phases_second[i]);
        out << '\n';
    }
    if (!out) throw ConfigError("write failed: " + path.string());
}

std::string classification_report(const PhaseLabel& label) {
    std::ostringstream out;
    out << "label = " << to_string(label.label) << '\n';
    out << "k_value = " << format_double(label.k_value) << '\n';
    out << "perm_entropy = " << format_double(label.perm_entropy) << '\n';
    out << "base_freqs_hz = " << join_freqs(label.base_freqs) << '\n';
    out << "peak_count = " << label.peaks.size() << '\n';
    if (!label.peaks.empty()) {
        out << "peaks (freq_hz, amplitude, fwhm_hz, phase_rad):\n";
        for (const Peak& p : label.peaks) {
            out << "  " << format_double(p.freq) << ", " << format_double(p.amplitude)
                << ", " << format_double(p.fwhm) << ", " << format_double(p.phase)
                << '\n';
        }
    }
    return out.str();
}

std::string stability_report_text(const StabilityReport& report) {
    std::ostringstream out;
    out << "found = " << (report.found ? "true" : "false") << '\n';
    out << "alpha_c_rad_per_s = " << format_double(report.alpha_c) << '\n';
    out << "leading_eigenvalue = " << format_double(report.leading_eigenvalue.real())
        << " + " << format_double(report.leading_eigenvalue.imag()) << "i\n";
    out << "fixed_point_pz = " << format_double(report.fixed_point_pz) << '\n';
    out << "bracket = [" << format_double(report.bracket_lo) << ", "
        << format_double(report.bracket_hi) << "]\n";
    out << "eigenvalue trail (alpha, max_real_part):\n";
    for (const auto& [alpha, re] : report.trail)
        out << "  " << format_double(alpha) << ", " << format_double(re) << '\n';
    return out.str();
}

std::string phase_experiment_report(const PhaseExperiment& exp) {
    std::ostringstream out;
    out << "label = " << to_string(exp.first_label.label) << '\n';
    out << "realizations = " << exp.phases.size() << '\n';
    out << "locked_freq_hz = " << format_double(exp.locked_freq) << '\n';
    out << "resultant_length = " << format_double(exp.uniformity.resultant_length)
        << '\n';
    out << "rayleigh_p = " << format_double(exp.uniformity.rayleigh_p) << '\n';
    if (!exp.phases_second.empty()) {
        out << "locked_freq_second_hz = " << format_double(exp.locked_freq_second)
            << '\n';
        out << "resultant_length_second = "
            << format_double(exp.uniformity_second.resultant_length) << '\n';
        out << "rayleigh_p_second = "
            << format_double(exp.uniformity_second.rayleigh_p) << '\n';
    }
    return out.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out = open_out(path, std::ios::out);
    out << text;
    if (!out) throw ConfigError("write failed: " + path.string());
}

}  // namespace ctc
