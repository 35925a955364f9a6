// End-to-end checks of the hst-antenna-lab binary. The path to the binary
// comes in as argv[1] (wired up by CMake).

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
    if (!ok) {
        ++failures;
        std::cerr << "[FAIL] " << what << '\n';
    }
}

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout only
};

RunResult run(const std::string& command) {
    RunResult result;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) {
        return result;
    }
    std::array<char, 4096> buffer;
    size_t n = 0;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        result.output.append(buffer.data(), n);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int count_lines(const std::string& text) {
    int lines = 0;
    for (char c : text) {
        if (c == '\n') ++lines;
    }
    return lines;
}

const char* k_scenario = R"({
  "speed_mps": 100,
  "train_length_m": 200,
  "d0_m": 50,
  "coverage_D_m": 1200,
  "wavelength_m": 0.15,
  "antenna_gain": 1.0,
  "c_th_bits": 0.15,
  "calibration": {"mode": "max_snr", "max_snr_db": 5},
  "deployment": {"strategy": "equidistant", "n": 2}
})";

const char* k_sweep_spec = R"({
  "variable": "antenna_separation",
  "values": [0.1, 1, 10, 50],
  "strategies": ["equidistant"],
  "outputs": ["service", "otr"]
})";

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_tests <path-to-hst-antenna-lab>\n";
        return 2;
    }
    const std::string bin = argv[1];

    const fs::path dir =
        fs::temp_directory_path() /
        ("hstlab-cli-" + std::to_string(static_cast<long>(getpid())));
    fs::create_directories(dir);
    const fs::path scenario = dir / "scenario.json";
    std::ofstream(scenario) << k_scenario;
    const fs::path spec = dir / "sweep.json";
    std::ofstream(spec) << k_sweep_spec;

    const std::string quiet = " 2>/dev/null";

    // service prints the integral
    {
        auto r = run(bin + " service --scenario " + scenario.string());
        check(r.exit_code == 0, "service exit code");
        check(std::abs(std::stod(r.output) - 7.908457862377248) < 1e-5,
              "service value, got " + r.output);
    }

    // otr prints the ratio and writes the interval CSV
    {
        const fs::path out = dir / "outage.csv";
        auto r = run(bin + " otr --scenario " + scenario.string() +
                     " --cth 0.15 --out " + out.string());
        check(r.exit_code == 0, "otr exit code");
        check(std::abs(std::stod(r.output) - 0.3147372) < 1e-5,
              "otr value, got " + r.output);
        const std::string csv = read_file(out);
        check(csv.rfind("t_minus_s,t_plus_s", 0) == 0, "outage csv header");
        check(csv.find("# otr=") != std::string::npos, "outage csv footer");
    }

    // trace writes one row per sample
    {
        const fs::path out = dir / "trace.csv";
        auto r = run(bin + " trace --scenario " + scenario.string() +
                     " --step 0.5 --out " + out.string());
        check(r.exit_code == 0, "trace exit code");
        const std::string csv = read_file(out);
        check(count_lines(csv) == 26, "trace row count (25 samples + header)");

        auto r2 = run(bin + " trace --scenario " + scenario.string() +
                      " --step 0.5 --per-antenna --out " + out.string());
        check(r2.exit_code == 0, "trace --per-antenna exit code");
        check(read_file(out).rfind("t_s,capacity_bps_hz,snr_1,snr_2", 0) == 0,
              "per-antenna header");
    }

    // sweep consumes the spec file
    {
        const fs::path out = dir / "sweep.csv";
        auto r = run(bin + " sweep --scenario " + scenario.string() + " --spec " +
                     spec.string() + " --out " + out.string() + " --reproducible");
        check(r.exit_code == 0, "sweep exit code");
        const std::string csv = read_file(out);
        check(csv.find("x,strategy,service_bits_per_hz_s,otr\n") !=
                  std::string::npos,
              "sweep header");
        check(csv.find("# generated=") == std::string::npos,
              "reproducible sweep has no timestamp");
    }

    // figure output is byte-identical across reproducible runs
    {
        const fs::path dir_a = dir / "fig_a";
        const fs::path dir_b = dir / "fig_b";
        auto ra = run(bin + " figure --id fig9 --out " + dir_a.string() +
                      " --reproducible");
        auto rb = run(bin + " figure --id fig9 --out " + dir_b.string() +
                      " --reproducible");
        check(ra.exit_code == 0 && rb.exit_code == 0, "figure exit codes");
        const fs::path name = "fig9_fixed_interval.csv";
        const std::string a = read_file(dir_a / name);
        const std::string b = read_file(dir_b / name);
        check(!a.empty(), "fig9 csv exists");
        check(a == b, "fig9 csv byte-identical under --reproducible");
    }

    // validate emits the cross-check report
    {
        auto r = run(bin + " validate --scenario " + scenario.string() +
                     " --separation 200 --cth 0.15");
        check(r.exit_code == 0, "validate exit code");
        const auto parsed = nlohmann::json::parse(r.output, nullptr, false);
        check(!parsed.is_discarded(), "validate output parses as JSON");
        if (!parsed.is_discarded()) {
            for (const char* key :
                 {"critical_points", "crossings", "otr", "lemma1", "lemma3"}) {
                check(parsed.contains(key), std::string("validate key ") + key);
            }
            check(std::abs(parsed["otr"]["closed_form"].get<double>() -
                           0.31473720830234864) < 1e-9,
                  "validate closed-form otr");
        }
    }

    // exit codes
    {
        const fs::path bad = dir / "bad.json";
        std::ofstream(bad) << R"({"speeed_mps": 1})";
        auto r = run(bin + " service --scenario " + bad.string() + quiet);
        check(r.exit_code == 2, "unknown key -> exit 2");

        const fs::path tight = dir / "tight.json";
        nlohmann::json j = nlohmann::json::parse(k_scenario);
        j["deployment"] = {{"strategy", "fixed_interval"}, {"n", 4},
                           {"delta_m", 0.01}};
        std::ofstream(tight) << j.dump();
        auto r2 = run(bin + " service --scenario " + tight.string() + quiet);
        check(r2.exit_code == 3, "spacing violation -> exit 3");

        auto r3 = run(bin + " figure --id fig2 --out " + dir.string() + quiet);
        check(r3.exit_code == 2, "unknown figure id -> exit 2");

        auto r4 = run(bin + " nonsense" + quiet);
        check(r4.exit_code == 2, "unknown subcommand -> exit 2");

        auto r5 = run(bin + " --help >/dev/null" + quiet);
        check(r5.exit_code == 0, "--help -> exit 0");

        nlohmann::json no_deploy = nlohmann::json::parse(k_scenario);
        no_deploy.erase("deployment");
        const fs::path bare = dir / "bare.json";
        std::ofstream(bare) << no_deploy.dump();
        auto r6 = run(bin + " service --scenario " + bare.string() + quiet);
        check(r6.exit_code == 2, "missing deployment -> exit 2");
    }

    fs::remove_all(dir);
    if (failures == 0) {
        std::cout << "cli_tests: all checks passed\n";
    } else {
        std::cout << "cli_tests: " << failures << " check(s) failed\n";
    }
    return failures == 0 ? 0 : 1;
}
