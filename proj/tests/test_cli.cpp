#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "schlogl/csv.hpp"
#include "schlogl/errors.hpp"

namespace fs = std::filesystem;
using schlogl::read_file;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("schlogl_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

int run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + SCHLOGL_CLI_PATH + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::vector<double>> csv_rows(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST_CASE("csv helpers") {
    CHECK(schlogl::format_double(0.1) == "0.10000000000000001");
    CHECK(schlogl::config_hash("abc").size() == 16);
    CHECK(schlogl::config_hash("abc") != schlogl::config_hash("abd"));
    CHECK(schlogl::comment_block("a\nb") == "# a\n# b\n");
    TempDir d;
    const auto p = (d.path / "x.txt").string();
    schlogl::write_file_atomic(p, "hello");
    CHECK(read_file(p) == "hello");
    // a regular file where a directory is needed
    CHECK_THROWS_AS(schlogl::write_file_atomic((d.path / "x.txt" / "y").string(), "x"), schlogl::IoError);
    schlogl::write_file_atomic((d.path / "made/on/demand.txt").string(), "x");
    CHECK(read_file((d.path / "made/on/demand.txt").string()) == "x");
}

TEST_CASE("build-q writes the two-state generator") {
    TempDir d;
    const std::string out = " --out " + d.path.string();
    CHECK(run("build-q --preset bistable --V 1 --N-trunc 1" + out) == 0);
    const auto text = read_file((d.path / "Q.csv").string());
    CHECK(text.find("# schlogl build-q") != std::string::npos);
    const auto q = csv_rows(text);
    REQUIRE(q.size() == 2);
    CHECK(q[0][0] == doctest::Approx(-0.25));
    CHECK(q[0][1] == doctest::Approx(2.95));
    CHECK(q[1][0] == doctest::Approx(0.25));
    CHECK(q[1][1] == doctest::Approx(-2.95));
    CHECK(text.find("# config-hash: ") != std::string::npos);
    // refuses to overwrite
    CHECK(run("build-q --preset bistable --V 1 --N-trunc 1" + out) == 3);
    CHECK(run("build-q --preset bistable --V 1 --N-trunc 1 --force" + out) == 0);
}

TEST_CASE("build-q records equilibrium") {
    TempDir d;
    CHECK(run("build-q --preset monostable --V 1 --N-trunc 3 --out " + d.path.string()) == 0);
    const auto j = nlohmann::json::parse(read_file((d.path / "build_q.json").string()));
    CHECK(j.at("is_equilibrium") == true);
}

TEST_CASE("output directory from the environment") {
    TempDir d;
    CHECK(run("build-q --V 1 --N-trunc 1", "SCHLOGL_OUT_DIR=" + d.path.string()) == 0);
    CHECK(fs::exists(d.path / "Q_spd.csv"));
}

TEST_CASE("invalid input exits with a message") {
    TempDir d;
    const std::string cmd = std::string(SCHLOGL_CLI_PATH) + " build-q --V 0 --out " + d.path.string() + " 2>" +
                            (d.path / "err.txt").string();
    const int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 1);
    CHECK(read_file((d.path / "err.txt").string()).find("V") != std::string::npos);
    CHECK(run("frobnicate") == 1);
    CHECK(run("build-q --preset tristable --out " + d.path.string()) == 1);
}

TEST_CASE("empty sweep grid is a usage error") {
    TempDir d;
    CHECK(run("sweep-eigs --v-start 5 --v-stop 1 --v-step 1 --out " + d.path.string()) == 1);
}

TEST_CASE("zeromode needs a qpe block") {
    TempDir d;
    const auto cfg = (d.path / "cfg.json").string();
    std::ofstream(cfg) << R"({"system": {"preset": "bistable", "V": 1.1}, "qubits": 2})";
    CHECK(run("zeromode -c " + cfg + " --out " + d.path.string()) == 1);
    CHECK(!fs::exists(d.path / "zeromode.csv"));
}

TEST_CASE("vqd command output") {
    TempDir d;
    CHECK(run("vqd --preset bistable --V 2 --qubits 2 --out " + d.path.string()) == 0);
    const auto j = nlohmann::json::parse(read_file((d.path / "vqd_report.json").string()));
    CHECK(j.contains("levels"));
}

TEST_CASE("qpe command output") {
    TempDir d;
    CHECK(run("qpe --preset bistable --V 1.1 --qubits 2 --shots 10000 --out " + d.path.string()) == 0);
    CHECK(fs::exists(d.path / "qpe_histogram.csv"));
    CHECK(fs::exists(d.path / "qpe_result.json"));
}
