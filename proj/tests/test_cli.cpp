#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ctc/cli.hpp"
#include "ctc/io.hpp"

using namespace ctc;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

CliResult cli(const std::vector<std::string>& args) {
    std::vector<std::string> full = {"ctc"};
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(full.size());
    for (const std::string& s : full) argv.push_back(s.c_str());

    std::ostringstream captured_out, captured_err;
    std::streambuf* old_out = std::cout.rdbuf(captured_out.rdbuf());
    std::streambuf* old_err = std::cerr.rdbuf(captured_err.rdbuf());
    CliResult r;
    r.code = run_cli(static_cast<int>(argv.size()), argv.data());
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
    r.out = captured_out.str();
    r.err = captured_err.str();
    return r;
}

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "ctc_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

fs::path write_config(const std::string& name, const std::string& text) {
    const fs::path path = scratch_dir() / name;
    std::ofstream(path) << text;
    return path;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Small decaying ensemble: cheap to integrate, classifies fixed_point.
const char* kQuietPhysics =
    "[physics]\n"
    "alpha = 0.2\n"
    "t2 = 2\n"
    "[grid]\n"
    "n_nodes = 2\n"
    "delta_omega = 0.5\n";

}  // namespace

TEST_CASE("usage errors exit 2 and help exits 0") {
    CHECK(cli({"--help"}).code == 0);
    CHECK(cli({"--version"}).code == 0);

    CHECK(cli({"simulate"}).code == 2);  // neither --config nor --preset
    CHECK(cli({"--config", "a.ini", "--preset", "limit_cycle", "simulate"}).code == 2);
    CHECK(cli({"--preset", "no_such_preset", "simulate"}).code == 2);
    CHECK(cli({"--config", (scratch_dir() / "missing.ini").string(), "simulate"}).code ==
          2);
    CHECK(cli({"--nonsense-flag", "simulate"}).code == 2);
    CHECK(cli({}).code == 2);  // subcommand required

    const fs::path broken = write_config("broken.ini", "[physics]\nalpha = oops\n");
    const CliResult r = cli({"--config", broken.string(), "simulate"});
    CHECK(r.code == 2);
    CHECK(r.err.find("config error") != std::string::npos);
    CHECK(r.err.find("line 2") != std::string::npos);
}

TEST_CASE("runtime failures map to distinct exit codes") {
    const fs::path diverging = write_config("diverging.ini",
                                            "[physics]\n"
                                            "alpha = 1e9\n"
                                            "[grid]\n"
                                            "n_nodes = 2\n"
                                            "delta_omega = 0.5\n"
                                            "[integration]\n"
                                            "t_end = 50\n");
    const CliResult blown = cli({"--config", diverging.string(), "--out",
                                 (scratch_dir() / "blown").string(), "simulate"});
    CHECK(blown.code == 3);
    CHECK(blown.err.find("integration error") != std::string::npos);

    // Too few realizations violates the experiment precondition.
    const fs::path few = write_config(
        "few.ini", std::string(kQuietPhysics) + "[sweep]\nn_realizations = 4\n");
    const CliResult bad = cli({"--config", few.string(), "--out",
                               (scratch_dir() / "few").string(), "phases"});
    CHECK(bad.code == 4);
    CHECK(bad.err.find("analysis error") != std::string::npos);

    // A noise scan anchored on a non-oscillating base point is rejected.
    const fs::path still = write_config("still.ini",
                                        std::string(kQuietPhysics) +
                                            "[integration]\n"
                                            "t_end = 100\n"
                                            "[sweep]\n"
                                            "axis = noise\n"
                                            "values = 0, 0.5\n");
    const CliResult flat = cli({"--config", still.string(), "--out",
                                (scratch_dir() / "still").string(), "noise-scan"});
    CHECK(flat.code == 4);
}

TEST_CASE("simulate writes the full output set and a replayable manifest") {
    const fs::path config = write_config("sim.ini",
                                         std::string(kQuietPhysics) +
                                             "[integration]\n"
                                             "t_end = 40\n"
                                             "seed = 11\n"
                                             "[analysis]\n"
                                             "t_discard = 5\n");
    const fs::path dir_a = scratch_dir() / "sim_a";
    const CliResult first = cli({"--config", config.string(), "--out", dir_a.string(),
                                 "simulate"});
    REQUIRE(first.code == 0);
    CHECK(first.out.find("label=fixed_point") != std::string::npos);
    for (const char* name : {"manifest.ini", "trajectory.bin", "trajectory.csv",
                             "spectrum.csv", "poincare.csv", "report.txt"})
        CHECK(fs::exists(dir_a / name));

    const std::string report = slurp(dir_a / "report.txt");
    CHECK(report.find("label = fixed_point") != std::string::npos);
    CHECK(report.find("k_value = ") != std::string::npos);

    // Replaying the manifest reproduces the trajectory byte for byte.
    const fs::path dir_b = scratch_dir() / "sim_b";
    const CliResult second = cli({"--config", (dir_a / "manifest.ini").string(), "--out",
                                  dir_b.string(), "simulate"});
    REQUIRE(second.code == 0);
    CHECK(slurp(dir_a / "trajectory.bin") == slurp(dir_b / "trajectory.bin"));
    CHECK(slurp(dir_a / "spectrum.csv") == slurp(dir_b / "spectrum.csv"));

    // Overrides land in the manifest and in the recorded seed.
    const fs::path dir_c = scratch_dir() / "sim_c";
    const CliResult seeded = cli({"--config", config.string(), "--out", dir_c.string(),
                                  "--seed", "123", "simulate"});
    REQUIRE(seeded.code == 0);
    CHECK(slurp(dir_c / "manifest.ini").find("seed = 123") != std::string::npos);
    CHECK(read_trajectory_binary(dir_c / "trajectory.bin").seed == 123);
    CHECK(slurp(dir_c / "trajectory.bin") != slurp(dir_a / "trajectory.bin"));
}

TEST_CASE("sweep writes a summary row per value plus per-point spectra") {
    const fs::path config = write_config("sweep.ini",
                                         std::string(kQuietPhysics) +
                                             "[integration]\n"
                                             "t_end = 30\n"
                                             "[analysis]\n"
                                             "t_discard = 5\n"
                                             "[sweep]\n"
                                             "values = 0.05, 0.1\n");
    const fs::path dir = scratch_dir() / "sweep_out";
    const CliResult r = cli({"--config", config.string(), "--out", dir.string(),
                             "--workers", "2", "sweep"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("points=2 failed=0") != std::string::npos);
    const std::string summary = slurp(dir / "summary.csv");
    CHECK(std::count(summary.begin(), summary.end(), '\n') == 3);
    CHECK(fs::exists(dir / "spectrum_000.csv"));
    CHECK(fs::exists(dir / "spectrum_001.csv"));
    CHECK(slurp(dir / "manifest.ini").find("workers = 2") != std::string::npos);

    // A sweep without values is a configuration error.
    const fs::path no_values = write_config("no_values.ini", kQuietPhysics);
    CHECK(cli({"--config", no_values.string(), "--out",
               (scratch_dir() / "nv").string(), "sweep"})
              .code == 2);
}

TEST_CASE("stability writes the threshold report") {
    const fs::path config = write_config("stab.ini",
                                         "[grid]\n"
                                         "n_nodes = 1\n"
                                         "delta_omega = 0\n");
    const fs::path dir = scratch_dir() / "stab_out";
    const CliResult r = cli({"--config", config.string(), "--out", dir.string(),
                             "stability"});
    REQUIRE(r.code == 0);
    const std::string text = slurp(dir / "stability.txt");
    CHECK(text.find("found = true") != std::string::npos);
    CHECK(text.find("alpha_c_rad_per_s = 0.333") != std::string::npos);
    CHECK(r.out.find("alpha_c=0.333") != std::string::npos);
}
