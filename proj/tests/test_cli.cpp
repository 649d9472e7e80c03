#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifndef DFO_CLI_BINARY
#error "DFO_CLI_BINARY must point at the built CLI"
#endif

namespace {

namespace fs = std::filesystem;

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "dfo_cli_tests";
    fs::create_directories(dir);
    return dir;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(DFO_CLI_BINARY) + " " + args +
                            " > /dev/null 2> /dev/null";
    const int status = std::system(cmd.c_str());
    if (status < 0) return -1;
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream file(path, std::ios::binary);
    std::ostringstream ss;
    ss << file.rdbuf();
    return ss.str();
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string current;
    for (char c : line) {
        if (c == sep) {
            out.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    out.push_back(current);
    return out;
}

}  // namespace

TEST_CASE("bench table3 is byte-deterministic and in tolerance") {
    const fs::path a = scratch_dir() / "table3_a.csv";
    const fs::path b = scratch_dir() / "table3_b.csv";
    CHECK(run_cli("bench --suite table3 --output " + a.string()) == 0);
    CHECK(run_cli("bench --suite table3 --output " + b.string()) == 0);
    const std::string text_a = slurp(a);
    CHECK(!text_a.empty());
    CHECK(text_a == slurp(b));
    CHECK(text_a.rfind("problem,basis,model,h,eta,nf,eps_g,eps_d,fmin,gnorm,"
                       "itns,qmfs\n", 0) == 0);
}

TEST_CASE("bench exit code 2 when the tolerance is deliberately broken") {
    const fs::path out = scratch_dir() / "table3_strict.csv";
    CHECK(run_cli("bench --suite table3 --tolerance 1e-9 --output " +
                  out.string()) == 2);
    // The rows themselves do not depend on the tolerance.
    const fs::path loose = scratch_dir() / "table3_loose.csv";
    CHECK(run_cli("bench --suite table3 --output " + loose.string()) == 0);
    CHECK(slurp(out) == slurp(loose));
}

TEST_CASE("bench table4 passes its default tolerances") {
    const fs::path out = scratch_dir() / "table4.csv";
    CHECK(run_cli("bench --suite table4 --output " + out.string()) == 0);
}

TEST_CASE("estimate reproduces the RMPB row of the reference table") {
    const fs::path out = scratch_dir() / "estimate_rmpb.csv";
    CHECK(run_cli("estimate --problem rosenbrock --x 1.1,1.21001 --basis rmpb "
                  "--h 1e-3 --format csv --output " +
                  out.string()) == 0);
    const std::string text = slurp(out);
    const auto lines = split(text, '\n');
    REQUIRE(lines.size() >= 2);
    const auto fields = split(lines[1], ',');
    REQUIRE(fields.size() == 12);
    const double eps_g = std::stod(fields[6]);
    const double eps_d = std::stod(fields[7]);
    CHECK(std::abs(eps_g - 3.33e-4) < 0.02 * 3.33e-4);
    CHECK(std::abs(eps_d - 1.77e-4) < 0.02 * 1.77e-4);
}

TEST_CASE("estimate usage errors exit with 1") {
    CHECK(run_cli("estimate --problem rosenbrock --basis cb --h 0") == 1);
    CHECK(run_cli("estimate --problem not_a_problem --basis cb") == 1);
    CHECK(run_cli("estimate --problem rosenbrock --basis zb") == 1);
    CHECK(run_cli("estimate --problem rosenbrock --x 1.0") == 1);
    CHECK(run_cli("estimate") == 1);
    CHECK(run_cli("frobnicate") == 1);
}

TEST_CASE("sweep emits slope rows near the expected orders") {
    const fs::path out = scratch_dir() / "sweep.csv";
    CHECK(run_cli("sweep --problem rosenbrock --x 1.1,1.21001 "
                  "--h-max 1e-2 --h-min 1e-5 --points 7 --output " +
                  out.string()) == 0);
    const auto lines = split(slurp(out), '\n');
    std::size_t slope_rows = 0;
    for (const auto& line : lines) {
        const auto fields = split(line, ',');
        if (fields.size() >= 7 && fields[2] == "slope") {
            ++slope_rows;
            const double slope_g = std::stod(fields[6]);
            CHECK(slope_g > 1.85);
            CHECK(slope_g < 2.15);
        }
    }
    CHECK(slope_rows == 4);
    CHECK(run_cli("sweep --problem rosenbrock --points 2") == 1);
}

TEST_CASE("solve emits a table-style row") {
    const fs::path out = scratch_dir() / "solve.csv";
    CHECK(run_cli("solve --problem rosenbrock --basis cb --output " +
                  out.string()) == 0);
    const auto lines = split(slurp(out), '\n');
    REQUIRE(lines.size() >= 2);
    const auto fields = split(lines[1], ',');
    REQUIRE(fields.size() == 12);
    CHECK(fields[0] == "rosenbrock");
    CHECK(fields[1] == "cb");
    const double fmin = std::stod(fields[8]);
    const std::uint64_t nf = std::stoull(fields[5]);
    CHECK(fmin <= 1e-8);
    CHECK(nf <= 1300);
    CHECK(run_cli("solve --problem rosenbrock --basis zb") == 1);
}

TEST_CASE("solve --trace prepends per-iteration rows") {
    const fs::path out = scratch_dir() / "solve_trace.csv";
    CHECK(run_cli("solve --problem beale --basis rmpb --trace --output " +
                  out.string()) == 0);
    const auto lines = split(slurp(out), '\n');
    REQUIRE(lines.size() > 4);  // header, >= 2 trace rows, summary, newline
    std::size_t trace_rows = 0;
    for (const auto& line : lines) {
        const auto fields = split(line, ',');
        if (fields.size() == 12 && fields[2] == "trace") ++trace_rows;
    }
    CHECK(trace_rows >= 2);
    // Summary row is last (before the trailing newline) and not a trace.
    const auto last = split(lines[lines.size() - 2], ',');
    REQUIRE(last.size() == 12);
    CHECK(last[2] == "quadratic");
    // Iteration count on the summary row matches the number of trace rows.
    CHECK(std::stoull(last[10]) == trace_rows);
}

TEST_CASE("json output mirrors the csv fields") {
    const fs::path out = scratch_dir() / "estimate.json";
    CHECK(run_cli("estimate --problem rosenbrock --basis cb --h 1e-3 "
                  "--format json --output " +
                  out.string()) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("\"eps_g\"") != std::string::npos);
    CHECK(text.find("\"basis\": \"cb\"") != std::string::npos);
}

TEST_CASE("DFO_OUTPUT_DIR anchors relative output paths") {
    const fs::path dir = scratch_dir() / "envdir";
    fs::create_directories(dir);
    const std::string cmd = "DFO_OUTPUT_DIR=" + dir.string() + " " +
                            std::string(DFO_CLI_BINARY) +
                            " bench --suite table3 --output env.csv "
                            "> /dev/null 2> /dev/null";
    const int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 0);
    CHECK(fs::exists(dir / "env.csv"));
}
