#include "ctc/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "ctc/errors.hpp"
#include "ctc/io.hpp"

namespace ctc {

FrequencyGrid RunConfig::make_grid() const {
    return build_grid(grid_kind, n_nodes, params.omega0, params.delta_omega);
}

namespace {

const char* const kSections[] = {"physics", "grid", "integration",
                                 "analysis", "sweep", "output"};

bool known_section(const std::string& s) {
    for (const char* name : kSections)
        if (s == name) return true;
    return false;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Entry {
    std::string value;
    int line = 0;
    mutable bool used = false;
};

class Table {
  public:
    void insert(const std::string& key, std::string value, int line) {
        auto [it, fresh] = map_.try_emplace(key, Entry{std::move(value), line});
        if (!fresh)
            throw ConfigError("duplicate key '" + key + "' (first set on line " +
                                  std::to_string(it->second.line) + ")",
                              line);
    }

    const Entry* find(const std::string& key) const {
        auto it = map_.find(key);
        if (it == map_.end()) return nullptr;
        it->second.used = true;
        return &it->second;
    }

    bool has(const std::string& key) const { return map_.count(key) != 0; }

    int line_of(const std::string& key) const {
        auto it = map_.find(key);
        return it == map_.end() ? 0 : it->second.line;
    }

    void check_all_used() const {
        for (const auto& [key, entry] : map_)
            if (!entry.used) throw ConfigError("unknown key '" + key + "'", entry.line);
    }

  private:
    std::map<std::string, Entry> map_;
};

double parse_double_value(const std::string& raw, const std::string& key, int line) {
    const std::string s = trim(raw);
    if (s.empty()) throw ConfigError("empty value for '" + key + "'", line);
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE || std::isnan(v))
        throw ConfigError("invalid number for '" + key + "': " + s, line);
    return v;
}

std::uint64_t parse_u64_value(const std::string& raw, const std::string& key, int line) {
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '-')
        throw ConfigError("invalid unsigned integer for '" + key + "': " + raw, line);
    errno = 0;
    char* end = nullptr;
    const std::uint64_t v = std::strtoull(s.c_str(), &end, 10);
    if (end != s.c_str() + s.size() || errno == ERANGE)
        throw ConfigError("invalid unsigned integer for '" + key + "': " + s, line);
    return v;
}

bool parse_bool_value(const std::string& raw, const std::string& key, int line) {
    const std::string s = trim(raw);
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw ConfigError("invalid boolean for '" + key + "': " + s, line);
}

class Reader {
  public:
    explicit Reader(const Table& table) : table_(table) {}

    double num(const std::string& key, double fallback) const {
        const Entry* e = table_.find(key);
        return e ? parse_double_value(e->value, key, e->line) : fallback;
    }

    std::uint64_t uint(const std::string& key, std::uint64_t fallback) const {
        const Entry* e = table_.find(key);
        return e ? parse_u64_value(e->value, key, e->line) : fallback;
    }

    bool flag(const std::string& key, bool fallback) const {
        const Entry* e = table_.find(key);
        return e ? parse_bool_value(e->value, key, e->line) : fallback;
    }

    std::string text(const std::string& key, std::string fallback) const {
        const Entry* e = table_.find(key);
        return e ? trim(e->value) : std::move(fallback);
    }

    const Table& table() const { return table_; }

  private:
    const Table& table_;
};

GridKind parse_grid_kind(const std::string& s, int line) {
    if (s == "uniform") return GridKind::Uniform;
    if (s == "gaussian") return GridKind::Gaussian;
    if (s == "lorentzian") return GridKind::Lorentzian;
    throw ConfigError("unknown grid kind '" + s + "'", line);
}

FeedbackSignMode parse_sign_mode(const std::string& s, int line) {
    if (s == "symmetric") return FeedbackSignMode::SymmetricCoupling;
    if (s == "norm_conserving") return FeedbackSignMode::NormConserving;
    throw ConfigError("unknown feedback_sign '" + s + "'", line);
}

SweepAxis parse_axis(const std::string& s, int line) {
    if (s == "alpha") return SweepAxis::Alpha;
    if (s == "gradient") return SweepAxis::Gradient;
    if (s == "noise") return SweepAxis::Noise;
    if (s == "seed") return SweepAxis::Seed;
    throw ConfigError("unknown sweep axis '" + s + "'", line);
}

std::vector<double> parse_value_list(const std::string& raw, const std::string& key,
                                     int line) {
    std::vector<double> out;
    std::string token;
    std::istringstream in(raw);
    while (std::getline(in, token, ',')) {
        std::istringstream parts(token);
        std::string piece;
        while (parts >> piece) out.push_back(parse_double_value(piece, key, line));
    }
    if (out.empty()) throw ConfigError("empty value list for '" + key + "'", line);
    return out;
}

const char* grid_kind_name(GridKind kind) {
    switch (kind) {
        case GridKind::Uniform: return "uniform";
        case GridKind::Gaussian: return "gaussian";
        case GridKind::Lorentzian: return "lorentzian";
    }
    return "unknown";
}

const char* sign_mode_name(FeedbackSignMode mode) {
    return mode == FeedbackSignMode::SymmetricCoupling ? "symmetric" : "norm_conserving";
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    Table table;
    {
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        std::string section;
        while (std::getline(in, line)) {
            ++lineno;
            const std::size_t hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']')
                    throw ConfigError("malformed section header: " + line, lineno);
                section = trim(line.substr(1, line.size() - 2));
                if (!known_section(section))
                    throw ConfigError("unknown section [" + section + "]", lineno);
                continue;
            }
            const std::size_t eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("expected 'key = value': " + line, lineno);
            if (section.empty())
                throw ConfigError("key outside any [section]: " + line, lineno);
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty()) throw ConfigError("empty key", lineno);
            table.insert(section + "." + key, value, lineno);
        }
    }

    const Reader read(table);
    RunConfig cfg;

    cfg.params.alpha = read.num("physics.alpha", cfg.params.alpha);
    cfg.params.t1 = read.num("physics.t1", cfg.params.t1);
    cfg.params.t2 = read.num("physics.t2", cfg.params.t2);
    cfg.params.r_se = read.num("physics.r_se", cfg.params.r_se);
    cfg.params.omega0 = read.num("physics.omega0", cfg.params.omega0);
    {
        const Entry* e = table.find("physics.feedback_sign");
        if (e) cfg.params.feedback_sign_mode = parse_sign_mode(trim(e->value), e->line);
    }

    {
        const Entry* e = table.find("grid.kind");
        if (e) cfg.grid_kind = parse_grid_kind(trim(e->value), e->line);
    }
    cfg.n_nodes = read.uint("grid.n_nodes", cfg.n_nodes);

    const bool has_delta = table.has("grid.delta_omega");
    const bool has_gradient = table.has("grid.gradient") ||
                              table.has("grid.cell_length") || table.has("grid.gamma");
    if (has_delta && has_gradient)
        throw ConfigError("set either delta_omega or the gradient triple, not both",
                          table.line_of("grid.delta_omega"));
    if (!has_delta && !has_gradient)
        throw ConfigError(
            "grid width unspecified: set grid.delta_omega or grid.gradient + "
            "grid.cell_length + grid.gamma");
    if (has_gradient) {
        if (!table.has("grid.gradient") || !table.has("grid.cell_length") ||
            !table.has("grid.gamma"))
            throw ConfigError(
                "the gradient route needs all of grid.gradient, grid.cell_length, "
                "grid.gamma");
        cfg.use_gradient = true;
        cfg.gradient = read.num("grid.gradient", 0.0);
        cfg.cell_length = read.num("grid.cell_length", 0.0);
        cfg.gamma = read.num("grid.gamma", 0.0);
        cfg.params.delta_omega = convert_gradient(cfg.gradient, cfg.cell_length, cfg.gamma);
    } else {
        cfg.params.delta_omega = read.num("grid.delta_omega", 0.0);
    }

    cfg.integration.dt = read.num("integration.dt", cfg.integration.dt);
    cfg.integration.t_end = read.num("integration.t_end", cfg.integration.t_end);
    cfg.integration.record_stride = static_cast<std::size_t>(
        read.uint("integration.record_stride", cfg.integration.record_stride));
    cfg.integration.record_full_state =
        read.flag("integration.record_full_state", cfg.integration.record_full_state);
    cfg.integration.seed = read.uint("integration.seed", cfg.integration.seed);
    cfg.integration.noise_amplitude =
        read.num("integration.noise_amplitude", cfg.integration.noise_amplitude);
    cfg.integration.init_sigma =
        read.num("integration.init_sigma", cfg.integration.init_sigma);

    cfg.classify.amplitude_floor =
        read.num("analysis.amplitude_floor", cfg.classify.amplitude_floor);
    cfg.classify.decay_floor = read.num("analysis.decay_floor", cfg.classify.decay_floor);
    cfg.classify.decay_ratio = read.num("analysis.decay_ratio", cfg.classify.decay_ratio);
    cfg.classify.chaos_threshold =
        read.num("analysis.chaos_threshold", cfg.classify.chaos_threshold);
    cfg.classify.peak_floor = read.num("analysis.peak_floor", cfg.classify.peak_floor);
    cfg.classify.comb_tol_factor =
        read.num("analysis.comb_tol_factor", cfg.classify.comb_tol_factor);
    cfg.classify.max_carrier_multiple = static_cast<int>(
        read.uint("analysis.max_carrier_multiple",
                  static_cast<std::uint64_t>(cfg.classify.max_carrier_multiple)));
    cfg.classify.max_sideband = static_cast<int>(read.uint(
        "analysis.max_sideband", static_cast<std::uint64_t>(cfg.classify.max_sideband)));
    cfg.classify.max_denominator = static_cast<int>(
        read.uint("analysis.max_denominator",
                  static_cast<std::uint64_t>(cfg.classify.max_denominator)));
    cfg.t_discard = read.num("analysis.t_discard", cfg.t_discard);

    {
        const Entry* e = table.find("sweep.axis");
        if (e) cfg.axis = parse_axis(trim(e->value), e->line);
    }
    const Entry* values_entry = table.find("sweep.values");
    const bool has_range = table.has("sweep.value_min") || table.has("sweep.value_max") ||
                           table.has("sweep.n_points") || table.has("sweep.spacing");
    if (values_entry && has_range)
        throw ConfigError("set either sweep.values or the range keys, not both",
                          values_entry->line);
    if (values_entry) {
        cfg.sweep_values =
            parse_value_list(values_entry->value, "sweep.values", values_entry->line);
    } else if (has_range) {
        if (!table.has("sweep.value_min") || !table.has("sweep.value_max") ||
            !table.has("sweep.n_points"))
            throw ConfigError(
                "the range form needs sweep.value_min, sweep.value_max, sweep.n_points");
        const double lo = read.num("sweep.value_min", 0.0);
        const double hi = read.num("sweep.value_max", 0.0);
        const auto n = static_cast<std::size_t>(read.uint("sweep.n_points", 0));
        const std::string spacing = read.text("sweep.spacing", "linear");
        const int range_line = table.line_of("sweep.value_min");
        if (n < 2) throw ConfigError("sweep.n_points must be >= 2", range_line);
        if (!(hi > lo))
            throw ConfigError("sweep.value_max must exceed sweep.value_min", range_line);
        cfg.sweep_values.resize(n);
        if (spacing == "linear") {
            for (std::size_t i = 0; i < n; ++i)
                cfg.sweep_values[i] =
                    lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        } else if (spacing == "log") {
            if (!(lo > 0.0))
                throw ConfigError("log spacing needs sweep.value_min > 0", range_line);
            const double llo = std::log(lo), lhi = std::log(hi);
            for (std::size_t i = 0; i < n; ++i)
                cfg.sweep_values[i] = std::exp(
                    llo + (lhi - llo) * static_cast<double>(i) / static_cast<double>(n - 1));
        } else {
            throw ConfigError("unknown sweep.spacing '" + spacing + "'",
                              table.line_of("sweep.spacing"));
        }
    }
    cfg.workers = static_cast<unsigned>(read.uint("sweep.workers", cfg.workers));
    cfg.n_realizations =
        static_cast<std::size_t>(read.uint("sweep.n_realizations", cfg.n_realizations));
    cfg.identical_seeds = read.flag("sweep.identical_seeds", cfg.identical_seeds);

    cfg.out_dir = read.text("output.dir", cfg.out_dir);

    table.check_all_used();

    if (cfg.n_nodes < 1) throw ConfigError("grid.n_nodes must be >= 1");
    if (cfg.workers < 1) throw ConfigError("sweep.workers must be >= 1");
    cfg.params.validate();
    cfg.integration.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "[physics]\n";
    out << "alpha = " << format_double(cfg.params.alpha) << '\n';
    out << "t1 = " << format_double(cfg.params.t1) << '\n';
    out << "t2 = " << format_double(cfg.params.t2) << '\n';
    out << "r_se = " << format_double(cfg.params.r_se) << '\n';
    out << "omega0 = " << format_double(cfg.params.omega0) << '\n';
    out << "feedback_sign = " << sign_mode_name(cfg.params.feedback_sign_mode) << '\n';
    out << "\n[grid]\n";
    out << "kind = " << grid_kind_name(cfg.grid_kind) << '\n';
    out << "n_nodes = " << cfg.n_nodes << '\n';
    if (cfg.use_gradient) {
        out << "gradient = " << format_double(cfg.gradient) << '\n';
        out << "cell_length = " << format_double(cfg.cell_length) << '\n';
        out << "gamma = " << format_double(cfg.gamma) << '\n';
    } else {
        out << "delta_omega = " << format_double(cfg.params.delta_omega) << '\n';
    }
    out << "\n[integration]\n";
    out << "dt = " << format_double(cfg.integration.dt) << '\n';
    out << "t_end = " << format_double(cfg.integration.t_end) << '\n';
    out << "record_stride = " << cfg.integration.record_stride << '\n';
    out << "record_full_state = " << (cfg.integration.record_full_state ? "true" : "false")
        << '\n';
    out << "seed = " << cfg.integration.seed << '\n';
    out << "noise_amplitude = " << format_double(cfg.integration.noise_amplitude) << '\n';
    out << "init_sigma = " << format_double(cfg.integration.init_sigma) << '\n';
    out << "\n[analysis]\n";
    out << "amplitude_floor = " << format_double(cfg.classify.amplitude_floor) << '\n';
    out << "decay_floor = " << format_double(cfg.classify.decay_floor) << '\n';
    out << "decay_ratio = " << format_double(cfg.classify.decay_ratio) << '\n';
    out << "chaos_threshold = " << format_double(cfg.classify.chaos_threshold) << '\n';
    out << "peak_floor = " << format_double(cfg.classify.peak_floor) << '\n';
    out << "comb_tol_factor = " << format_double(cfg.classify.comb_tol_factor) << '\n';
    out << "max_carrier_multiple = " << cfg.classify.max_carrier_multiple << '\n';
    out << "max_sideband = " << cfg.classify.max_sideband << '\n';
    out << "max_denominator = " << cfg.classify.max_denominator << '\n';
    out << "t_discard = " << format_double(cfg.t_discard) << '\n';
    out << "\n[sweep]\n";
    out << "axis = " << to_string(cfg.axis) << '\n';
    if (!cfg.sweep_values.empty()) {
        out << "values = ";
        for (std::size_t i = 0; i < cfg.sweep_values.size(); ++i) {
            if (i) out << ", ";
            out << format_double(cfg.sweep_values[i]);
        }
        out << '\n';
    }
    out << "workers = " << cfg.workers << '\n';
    out << "n_realizations = " << cfg.n_realizations << '\n';
    out << "identical_seeds = " << (cfg.identical_seeds ? "true" : "false") << '\n';
    out << "\n[output]\n";
    out << "dir = " << cfg.out_dir << '\n';
    return out.str();
}

}  // namespace ctc
