#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

const fs::path& workdir() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / "ajdn_cli_test";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string at(const std::string& name) { return (workdir() / name).string(); }

int run(const std::string& args) {
    const std::string cmd = std::string(AJDN_CLI_PATH) + " " + args + " >" + at("stdout.txt") + " 2>" + at("stderr.txt");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

} // namespace

TEST_CASE("version and usage") {
    CHECK(run("--version") == 0);
    CHECK(run("") != 0);
    CHECK(run("detect") == 1);
    CHECK(run("detect -i x.csv --bogus") == 1);
}

TEST_CASE("simulate, detect, evaluate") {
    write(at("sim.toml"), "[simulate]\nprocess = \"GS\"\nn = 500\np = 3\nscenario = \"S1\"\ngamma = 0.6\ndelta = 6\nseed = 5\n");
    REQUIRE(run("simulate -s " + at("sim.toml") + " -o " + at("panel.csv") + " -t " + at("truth.json")) == 0);
    CHECK(slurp(at("panel.csv")).rfind("x1,x2,x3", 0) == 0);

    REQUIRE(run("detect -i " + at("panel.csv") + " --k0 100 --seed 2 -o " + at("jumps.json") + " --summary " +
                at("summary.txt")) == 0);
    const auto jumps = slurp(at("jumps.json"));
    CHECK(jumps.find("\"seed\": 2") != std::string::npos);
    CHECK(fs::exists(at("summary.txt")));

    REQUIRE(run("evaluate -d " + at("jumps.json") + " -t " + at("truth.json") + " --margin 0.01 -o " +
                at("eval.json")) == 0);
    CHECK(slurp(at("eval.json")).find("m_hat_p") != std::string::npos);

    // Flag overrides and the same settings from a file give identical output.
    write(at("detect.toml"), "[bootstrap]\nk0 = 100\nseed = 2\n");
    REQUIRE(run("detect -i " + at("panel.csv") + " -c " + at("detect.toml") + " -o " + at("jumps2.json")) == 0);
    CHECK(slurp(at("jumps2.json")) == jumps);
}

TEST_CASE("exit codes by error class") {
    write(at("bad.csv"), "1,2\n3,nan\n");
    CHECK(run("detect -i " + at("bad.csv") + " -o " + at("x.json")) == 2);
    CHECK(slurp(at("stderr.txt")).find("row 2, column 2") != std::string::npos);
    CHECK(run("detect -i /nonexistent/panel.csv -o " + at("x.json")) == 2);

    write(at("ok.csv"), "1,2\n3,4\n");
    write(at("unknown.toml"), "[scales]\nsmin = 0.1\n");
    CHECK(run("detect -i " + at("ok.csv") + " -c " + at("unknown.toml")) == 1);
    CHECK(run("detect -i " + at("panel.csv") + " --s-min 0.2 --s-max 0.1 -o " + at("x.json")) == 1);
    CHECK(run("detect -i " + at("panel.csv") + " --alpha 2 -o " + at("x.json")) == 1);
}

TEST_CASE("filter check") {
    CHECK(run("filter-check") == 0);
    CHECK(slurp(at("stdout.txt")).find("unit_integral") != std::string::npos);
}

TEST_CASE("tune and bench") {
    write(at("grid.toml"), "[tune]\ns_min = [0.05, 0.08]\ns_max = [0.12]\nns_prime = [1, 2]\n");
    REQUIRE(run("tune -i " + at("panel.csv") + " -g " + at("grid.toml") + " --k0 60 -o " + at("best.toml") +
                " --table " + at("gm.csv")) == 0);
    CHECK(slurp(at("best.toml")).find("s_min") != std::string::npos);
    write(at("bench.toml"),
          "[simulate]\nprocess = \"IID\"\nn = 300\np = 2\nscenario = \"S2\"\ngamma = 0.5\ndelta = 6\n[bench]\nruns = 2\n");
    CHECK(run("bench -s " + at("bench.toml") + " --k0 50 -o " + at("bench.csv")) == 0);
    CHECK(slurp(at("stdout.txt")).find("m_bar") != std::string::npos);
}
