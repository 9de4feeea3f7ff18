#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

std::string binary() {
    const char* env = std::getenv("TRAJANON_BIN");
    REQUIRE_MESSAGE(env != nullptr, "TRAJANON_BIN must point at the CLI binary");
    return env;
}

int run(const std::string& args) {
    int rc = std::system((binary() + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    return std::string((std::istreambuf_iterator<char>(in)), {});
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("trajanon_cli_" + std::to_string(::getpid()) + "_" +
                std::to_string(rand()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("missing input file exits 1, malformed row exits 2 naming the line") {
    TempDir tmp;
    CHECK(run("ingest --input " + (tmp.path / "nope.csv").string() + " --output " +
              (tmp.path / "out.csv").string()) == 1);

    fs::path bad = tmp.path / "bad.csv";
    {
        std::ofstream out(bad);
        out << "pseudo_id,timestamp,x,y\n";
        for (int i = 0; i < 5; ++i) out << "u1," << i * 10 << ",50,50\n";
        out << "u2,oops,50,50\n";  // line 7
    }
    int rc = std::system((binary() + " ingest --epoch-minutes --input " + bad.string() +
                          " --output " + (tmp.path / "o.csv").string() + " 2>" +
                          (tmp.path / "err.txt").string() + " >/dev/null")
                             .c_str());
    CHECK(WEXITSTATUS(rc) == 2);
    CHECK(slurp(tmp.path / "err.txt").find("line 7") != std::string::npos);
}

TEST_CASE("generate is byte-deterministic and feeds the whole pipeline") {
    TempDir tmp;
    const std::string raw1 = (tmp.path / "raw1.csv").string();
    const std::string raw2 = (tmp.path / "raw2.csv").string();
    const std::string gen_flags = " --users 20 --days 3 --seed 42 --events-per-day 3";
    REQUIRE(run("generate --output " + raw1 + gen_flags) == 0);
    REQUIRE(run("generate --output " + raw2 + gen_flags) == 0);
    CHECK(slurp(raw1) == slurp(raw2));

    const std::string data = (tmp.path / "data.csv").string();
    REQUIRE(run("ingest --epoch-minutes --input " + raw1 + " --output " + data +
                " --filter-days 3") == 0);

    const std::string report = (tmp.path / "report").string();
    REQUIRE(run("analyze --input " + data + " --k 2 --k 3 --output " + report) == 0);
    CHECK(fs::exists(fs::path(report) / "delta_k2.csv"));
    CHECK(fs::exists(fs::path(report) / "delta_cdf_k3.csv"));
    CHECK(fs::exists(fs::path(report) / "summary.json"));

    // Per-user deltas are non-decreasing from k=2 to k=3.
    std::istringstream k2(slurp(fs::path(report) / "delta_k2.csv"));
    std::istringstream k3(slurp(fs::path(report) / "delta_k3.csv"));
    std::string l2, l3;
    std::getline(k2, l2);
    std::getline(k3, l3);
    while (std::getline(k2, l2) && std::getline(k3, l3)) {
        double d2 = std::stod(l2.substr(l2.find(',') + 1));
        double d3 = std::stod(l3.substr(l3.find(',') + 1));
        CHECK(d3 >= d2);
    }

    const std::string sweep = (tmp.path / "sweep").string();
    REQUIRE(run("sweep --input " + data + " --level 100x1 --level 20000x480 --output " +
                sweep) == 0);
    CHECK(fs::exists(fs::path(sweep) / "sweep_summary.csv"));

    const std::string dec = (tmp.path / "dec").string();
    REQUIRE(run("decompose --input " + data + " --k 2 --output " + dec) == 0);
    CHECK(fs::exists(fs::path(dec) / "decompose_k2.csv"));
}

TEST_CASE("argument errors exit 3") {
    TempDir tmp;
    const std::string raw = (tmp.path / "raw.csv").string();
    const std::string data = (tmp.path / "data.csv").string();
    REQUIRE(run("generate --output " + raw + " --users 5 --days 1") == 0);
    REQUIRE(run("ingest --epoch-minutes --input " + raw + " --output " + data) == 0);
    CHECK(run("analyze --input " + data + " --k 50 --output " +
              (tmp.path / "r").string()) == 3);
    CHECK(run("sweep --input " + data + " --output " + (tmp.path / "s").string()) == 3);
    CHECK(run("sweep --input " + data + " --level 123x7 --output " +
              (tmp.path / "s2").string()) == 3);
    CHECK(run("generate --output " + raw + " --tail-fraction 2") == 3);
}

TEST_CASE("analyze output records the default distance parameters") {
    TempDir tmp;
    const std::string raw = (tmp.path / "raw.csv").string();
    const std::string data = (tmp.path / "data.csv").string();
    REQUIRE(run("generate --output " + raw + " --users 6 --days 1") == 0);
    REQUIRE(run("ingest --epoch-minutes --input " + raw + " --output " + data) == 0);
    REQUIRE(run("analyze --input " + data + " --output " + (tmp.path / "r").string()) ==
            0);
    std::string summary = slurp(tmp.path / "r" / "summary.json");
    CHECK(summary.find("\"w_s\": 0.5") != std::string::npos);
    CHECK(summary.find("\"w_t\": 0.5") != std::string::npos);
    CHECK(summary.find("\"delta_max_s_m\": 20000.0") != std::string::npos);
    CHECK(summary.find("\"delta_max_t_min\": 480.0") != std::string::npos);
}
