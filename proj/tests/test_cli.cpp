#include "doctest.h"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

// End-to-end tests that drive the installed command-line binary as a black
// box: every documented exit code, output file and stdout contract.
namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code = -1;
    std::string output; // stdout and stderr interleaved
};

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    const std::string cmd = env_prefix + " \"" + NMRQC_CLI_PATH + "\" " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    char buf[512];
    while (std::fgets(buf, sizeof(buf), pipe) != nullptr) {
        result.output += buf;
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string fixture(const std::string& name) {
    return std::string(NMRQC_FIXTURE_DIR) + "/" + name;
}

/// Fresh scratch directory per test case; left behind for postmortems.
fs::path scratch_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("nmrqc_cli_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE_MESSAGE(in.good(), "missing output file ", path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

double csv_max_magnitude(const fs::path& csv) {
    std::ifstream in(csv);
    REQUIRE(in.good());
    std::string line;
    std::getline(in, line); // header
    double best = 0.0;
    while (std::getline(in, line)) {
        const auto last_comma = line.rfind(',');
        REQUIRE(last_comma != std::string::npos);
        best = std::max(best, std::stod(line.substr(last_comma + 1)));
    }
    return best;
}

std::size_t line_count(const std::string& text) {
    std::size_t n = 0;
    for (char c : text) {
        n += c == '\n' ? 1 : 0;
    }
    return n;
}

/// Frequencies from the "  +99 Hz  magnitude ..." peak lines, in print order.
std::vector<double> printed_peak_frequencies(const std::string& output) {
    std::vector<double> freqs;
    std::istringstream lines(output);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.find(" Hz  magnitude ") == std::string::npos) {
            continue;
        }
        freqs.push_back(std::stod(line));
    }
    return freqs;
}

} // namespace

TEST_CASE("cli: verify judges the two CNOT constructions") {
    SUBCASE("spin-echo form passes") {
        const auto r = run_cli("verify " + fixture("cnot_v1.pseq"));
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("sequence cnot_v1: 5 events") != std::string::npos);
        CHECK(r.output.find("phase fidelity vs cnot: 1.000000") != std::string::npos);
        CHECK(r.output.find("global-phase equivalent:   yes") != std::string::npos);
        CHECK(r.output.find("diagonal-phase equivalent: yes") != std::string::npos);
    }
    SUBCASE("shortcut form fails global phase but passes diagonal phase") {
        const auto r = run_cli("verify " + fixture("cnot_v2.pseq"));
        CHECK(r.exit_code == 1);
        CHECK(r.output.find("phase fidelity vs cnot: 0.500000") != std::string::npos);
        CHECK(r.output.find("global-phase equivalent:   no") != std::string::npos);
        CHECK(r.output.find("diagonal-phase equivalent: yes") != std::string::npos);
    }
    SUBCASE("identity target") {
        const auto r = run_cli("verify --target identity " + fixture("cnot_v1.pseq"));
        CHECK(r.exit_code == 1);
        CHECK(r.output.find("phase fidelity vs identity: 0.500000") != std::string::npos);
    }
}

TEST_CASE("cli: bad inputs exit with code 2") {
    const auto dir = scratch_dir("bad_inputs");
    SUBCASE("syntax error in the pulse program") {
        spit(dir / "broken.pseq", "system { spin A \"1H\"\nsequence s { pulse A x 90 }\n");
        const auto r = run_cli("verify " + (dir / "broken.pseq").string());
        CHECK(r.exit_code == 2);
        CHECK(r.output.find("parse error: line ") != std::string::npos);
    }
    SUBCASE("missing file") {
        const auto r = run_cli("verify " + (dir / "absent.pseq").string());
        CHECK(r.exit_code == 2);
        CHECK(r.output.find("error") != std::string::npos);
    }
    SUBCASE("no subcommand") {
        CHECK(run_cli("").exit_code == 2);
    }
    SUBCASE("unknown option") {
        CHECK(run_cli("verify --frobnicate x").exit_code == 2);
    }
    SUBCASE("bad json") {
        spit(dir / "broken.json", "{ not json");
        const auto r = run_cli("spectrum " + (dir / "broken.json").string() + " --observe H");
        CHECK(r.exit_code == 2);
    }
}

TEST_CASE("cli: compile writes the matrix file") {
    const auto dir = scratch_dir("compile");
    const auto r = run_cli("--out " + dir.string() + " compile " + fixture("cnot_v1.pseq"));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("matrix.json") != std::string::npos);

    const auto doc = nlohmann::json::parse(slurp(dir / "matrix.json"));
    REQUIRE(doc.is_array());
    REQUIRE(doc.size() == 4);
    REQUIRE(doc[0].size() == 4);
    const double re = doc[0][0][0].get<double>();
    const double im = doc[0][0][1].get<double>();
    CHECK(re == doctest::Approx(0.7071067811865475).epsilon(1e-9));
    CHECK(im == doctest::Approx(-0.7071067811865475).epsilon(1e-9));

    SUBCASE("expansion and optimization flags preserve the unitary") {
        const auto r2 = run_cli("--out " + dir.string() + " compile --expand-z --optimize " +
                                fixture("cnot_v1.pseq"));
        CHECK(r2.exit_code == 0);
        const auto doc2 = nlohmann::json::parse(slurp(dir / "matrix.json"));
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                CHECK(doc2[i][j][0].get<double>() ==
                      doctest::Approx(doc[i][j][0].get<double>()).epsilon(1e-9));
                CHECK(doc2[i][j][1].get<double>() ==
                      doctest::Approx(doc[i][j][1].get<double>()).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("cli: spectrum simulation") {
    SUBCASE("coupled system shows the 100 Hz doublet around the offset") {
        const auto dir = scratch_dir("spectrum_doublet");
        const auto r = run_cli("--out " + dir.string() + " spectrum " +
                               fixture("xe_h_system.json") + " --observe H");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("2 peak(s):") != std::string::npos);
        // Overlapping 20 Hz lines can pull each apparent maximum by one bin.
        const auto freqs = printed_peak_frequencies(r.output);
        REQUIRE(freqs.size() == 2);
        CHECK(std::abs(freqs[0] - 100.0) <= 1.0);
        CHECK(std::abs(freqs[1] - 200.0) <= 1.0);
        CHECK(slurp(dir / "spectrum.csv").rfind("frequency_hz,real,imag,magnitude\n", 0) == 0);
    }
    SUBCASE("uncoupled system shows a single line") {
        const auto dir = scratch_dir("spectrum_single");
        const auto r = run_cli("--out " + dir.string() + " spectrum " +
                               fixture("uncoupled_system.json") + " --observe H");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("1 peak(s):") != std::string::npos);
        CHECK(r.output.find("+100 Hz") != std::string::npos);
    }
    SUBCASE("hyperpolarization rescales the peak by the enhancement") {
        const auto dir_t = scratch_dir("spectrum_thermal");
        const auto dir_h = scratch_dir("spectrum_hyper");
        CHECK(run_cli("--out " + dir_t.string() + " spectrum " + fixture("uncoupled_system.json") +
                      " --observe H")
                  .exit_code == 0);
        CHECK(run_cli("--out " + dir_h.string() + " spectrum " + fixture("uncoupled_system.json") +
                      " --observe H --hyper --enhancement 100000 --sign 1")
                  .exit_code == 0);
        const double ratio =
            csv_max_magnitude(dir_h / "spectrum.csv") / csv_max_magnitude(dir_t / "spectrum.csv");
        CHECK(std::abs(ratio - 1.0e5) / 1.0e5 < 1e-6);
    }
    SUBCASE("negative helicity flips the line upside down, magnitude unchanged") {
        const auto dir_p = scratch_dir("spectrum_plus");
        const auto dir_m = scratch_dir("spectrum_minus");
        CHECK(run_cli("--out " + dir_p.string() + " spectrum " + fixture("uncoupled_system.json") +
                      " --observe H --hyper --enhancement 1000 --sign 1")
                  .exit_code == 0);
        CHECK(run_cli("--out " + dir_m.string() + " spectrum " + fixture("uncoupled_system.json") +
                      " --observe H --hyper --enhancement 1000 --sign -1")
                  .exit_code == 0);
        CHECK(csv_max_magnitude(dir_p / "spectrum.csv") ==
              doctest::Approx(csv_max_magnitude(dir_m / "spectrum.csv")).epsilon(1e-9));
    }
    SUBCASE("runs are deterministic byte for byte") {
        const auto dir_a = scratch_dir("spectrum_det_a");
        const auto dir_b = scratch_dir("spectrum_det_b");
        const std::string args = " spectrum " + fixture("xe_h_system.json") + " --observe Xe";
        CHECK(run_cli("--out " + dir_a.string() + args).exit_code == 0);
        CHECK(run_cli("--out " + dir_b.string() + args).exit_code == 0);
        CHECK(slurp(dir_a / "spectrum.csv") == slurp(dir_b / "spectrum.csv"));
    }
    SUBCASE("output directory can come from the environment") {
        const auto dir = scratch_dir("spectrum_env");
        const auto r = run_cli("spectrum " + fixture("uncoupled_system.json") + " --observe H",
                               "NMRQC_OUT=" + dir.string());
        CHECK(r.exit_code == 0);
        CHECK(fs::exists(dir / "spectrum.csv"));
    }
}

TEST_CASE("cli: lattice scripting") {
    SUBCASE("the shipped transport moves the qubit across five cells") {
        const auto dir = scratch_dir("lattice_transport");
        const auto r = run_cli("--out " + dir.string() + " lattice " +
                               fixture("default_lattice.json") + " " +
                               fixture("transport.script"));
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("transport 1->5: 4 hops (12 conditional flips)") !=
              std::string::npos);
        const auto trace = slurp(dir / "trace.csv");
        CHECK(trace.rfind("step,cell,operation\n", 0) == 0);
        CHECK(line_count(trace) == 13); // header + 12 conditional flips
        CHECK(trace.find("1,2,cnot 1->2\n") != std::string::npos);
    }
    SUBCASE("a dead cell blocks transport with exit code 1") {
        const auto dir = scratch_dir("lattice_blocked");
        auto doc = nlohmann::json::parse(slurp(fixture("default_lattice.json")));
        doc["cells"][2]["power_w"] = 0.0;
        spit(dir / "blocked.json", doc.dump(2));
        const auto r = run_cli("--out " + dir.string() + " lattice " +
                               (dir / "blocked.json").string() + " " +
                               fixture("transport.script"));
        CHECK(r.exit_code == 1);
        CHECK(r.output.find("transport blocked at cell 3") != std::string::npos);
        CHECK(line_count(slurp(dir / "trace.csv")) == 1); // header only, nothing committed
    }
    SUBCASE("pump and flip commands append trace rows") {
        const auto dir = scratch_dir("lattice_pumpflip");
        spit(dir / "ops.script", "pump 1 sigma- 5\nflip 2 0\n");
        const auto r = run_cli("--out " + dir.string() + " lattice " +
                               fixture("default_lattice.json") + " " +
                               (dir / "ops.script").string());
        CHECK(r.exit_code == 0);
        const auto trace = slurp(dir / "trace.csv");
        CHECK(trace.find("1,1,pump sigma- 5\n") != std::string::npos);
        CHECK(trace.find("2,2,flip 0\n") != std::string::npos);
    }
    SUBCASE("an empty script still writes the trace header") {
        const auto dir = scratch_dir("lattice_empty");
        spit(dir / "empty.script", "# nothing to do\n");
        const auto r = run_cli("--out " + dir.string() + " lattice " +
                               fixture("default_lattice.json") + " " +
                               (dir / "empty.script").string());
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("(0 rows)") != std::string::npos);
        CHECK(slurp(dir / "trace.csv") == "step,cell,operation\n");
    }
    SUBCASE("script errors exit with code 2 and name the line") {
        const auto dir = scratch_dir("lattice_badscript");
        spit(dir / "bad.script", "pump 1 sigma- 5\nwarp 9 9\n");
        const auto r = run_cli("--out " + dir.string() + " lattice " +
                               fixture("default_lattice.json") + " " +
                               (dir / "bad.script").string());
        CHECK(r.exit_code == 2);
        CHECK(r.output.find("script line 2") != std::string::npos);
        spit(dir / "range.script", "transport 1 9\n");
        const auto r2 = run_cli("--out " + dir.string() + " lattice " +
                                fixture("default_lattice.json") + " " +
                                (dir / "range.script").string());
        CHECK(r2.exit_code == 2);
        CHECK(r2.output.find("cell number out of range") != std::string::npos);
    }
}
