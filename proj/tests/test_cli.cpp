#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

const char* kCli = LGSIM_CLI_PATH;

int run_cli(const std::string& args, const std::string& stdout_file = "") {
    std::string cmd = std::string(kCli) + " " + args;
    if (!stdout_file.empty()) cmd += " > " + stdout_file + " 2>&1";
    else cmd += " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    fs::path d = fs::temp_directory_path() / ("lgsim_test_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("sweep-theta writes csv, json and manifest") {
    fs::path dir = fresh_dir("st");
    int rc = run_cli("sweep-theta --start 0 --end 90 --step 15 --gamma 12 --noise 0 --seed 7"
                     " --format both --out " + dir.string());
    CHECK(rc == 0);
    CHECK(fs::exists(dir / "theta_sweep.csv"));
    CHECK(fs::exists(dir / "theta_sweep.json"));
    CHECK(fs::exists(dir / "theta_sweep.manifest.json"));

    // 7 data rows plus the header
    std::istringstream csv(slurp(dir / "theta_sweep.csv"));
    int lines = 0;
    std::string line;
    while (std::getline(csv, line)) ++lines;
    CHECK(lines == 8);
}

TEST_CASE("sweep-theta reports the violated inequalities") {
    fs::path dir = fresh_dir("stv");
    fs::path log = dir / "stdout.txt";
    int rc = run_cli("sweep-theta --start 0 --end 90 --step 1 --gamma 12 --noise 0 --seed 7"
                     " --out " + dir.string(), log.string());
    CHECK(rc == 0);
    std::string out = slurp(log);
    CHECK(out.find("violated k33") != std::string::npos);
    CHECK(out.find("-0.4139") != std::string::npos);  // min near 22.5 deg
}

TEST_CASE("identical config and seed produce byte-identical csv") {
    fs::path d1 = fresh_dir("det1"), d2 = fresh_dir("det2");
    std::string flags = "sweep-theta --start 0 --end 45 --step 5 --noise 0.01 --shots 30"
                        " --seed 99 --out ";
    CHECK(run_cli(flags + d1.string()) == 0);
    CHECK(run_cli(flags + d2.string()) == 0);
    CHECK(slurp(d1 / "theta_sweep.csv") == slurp(d2 / "theta_sweep.csv"));
}

TEST_CASE("rerun from manifest reproduces outputs") {
    fs::path dir = fresh_dir("rr");
    CHECK(run_cli("sweep-gamma --theta 15 --noise 0.01 --shots 10 --seed 4 --out " +
                  dir.string()) == 0);
    std::string first = slurp(dir / "gamma_sweep.csv");
    CHECK(run_cli("rerun " + (dir / "gamma_sweep.manifest.json").string()) == 0);
    CHECK(slurp(dir / "gamma_sweep.csv") == first);
}

TEST_CASE("sweep-gamma default grid excludes zero") {
    fs::path dir = fresh_dir("sg");
    CHECK(run_cli("sweep-gamma --theta 15 --seed 1 --out " + dir.string()) == 0);
    std::istringstream csv(slurp(dir / "gamma_sweep.csv"));
    int lines = 0;
    std::string line;
    bool has_zero = false;
    while (std::getline(csv, line)) {
        if (lines > 0 && line.rfind("0,", 0) == 0) has_zero = true;
        ++lines;
    }
    CHECK(lines == 13);  // header + 12 rows
    CHECK_FALSE(has_zero);
}

TEST_CASE("sweep-gamma single value via gamma-list") {
    fs::path dir = fresh_dir("sgl");
    CHECK(run_cli("sweep-gamma --theta 15 --gamma-list 12 --seed 1 --out " + dir.string()) == 0);
    std::istringstream csv(slurp(dir / "gamma_sweep.csv"));
    int lines = 0;
    std::string line;
    while (std::getline(csv, line)) ++lines;
    CHECK(lines == 2);
}

TEST_CASE("bounds table") {
    fs::path dir = fresh_dir("bo");
    fs::path log = dir / "stdout.txt";
    CHECK(run_cli("bounds --n 3 4 6", log.string()) == 0);
    std::string out = slurp(log);
    CHECK(out.find("3,-3,1,yes,1.5,") != std::string::npos);
    CHECK(out.find("4,-2,2,yes,2.82842712475,") != std::string::npos);
    CHECK(out.find("5.19615242271") != std::string::npos);  // 6 cos(30 deg)
}

TEST_CASE("pipeline verdict for a violating configuration") {
    fs::path dir = fresh_dir("pl");
    fs::path log = dir / "stdout.txt";
    CHECK(run_cli("pipeline --theta 15 --gamma 12 --post minus --noise 0 --out " + dir.string(),
                  log.string()) == 0);
    std::string out = slurp(log);
    CHECK(out.find("LGI_VIOLATED k33") != std::string::npos);
    CHECK(out.find("-0.366") != std::string::npos);
    CHECK(fs::exists(dir / "detector_records.csv"));
}

TEST_CASE("pipeline without violation at the theta 45 boundary") {
    fs::path dir = fresh_dir("pl45");
    fs::path log = dir / "stdout.txt";
    CHECK(run_cli("pipeline --theta 45 --gamma 12 --post plus --noise 0 --out " + dir.string(),
                  log.string()) == 0);
    CHECK(slurp(log).find("LGI_VIOLATED") == std::string::npos);
}

TEST_CASE("pipeline accepts a bench file") {
    fs::path dir = fresh_dir("plb");
    fs::path bench = dir / "bench.txt";
    {
        std::ofstream out(bench);
        out << "PBS\nHWP both 7.5\nBD\nHWP lower 45\nHWP upper 6\nHWP lower -6\n"
               "HWP both 22.5\nPBS\nHWP lower 45\nBD\nHWP both 22.5\nPBS\n"
               "DETECTOR D1\nDETECTOR D2\nDETECTOR D3\n";
    }
    fs::path log = dir / "stdout.txt";
    CHECK(run_cli("pipeline --bench " + bench.string() + " --post minus --noise 0 --out " +
                  dir.string(), log.string()) == 0);
    CHECK(slurp(log).find("LGI_VIOLATED k33") != std::string::npos);
}

TEST_CASE("exit codes") {
    fs::path dir = fresh_dir("ec");
    CHECK(run_cli("sweep-theta --no-such-flag 3") == 2);
    CHECK(run_cli("bogus-subcommand") == 2);

    fs::path bad = dir / "bad.txt";
    {
        std::ofstream out(bad);
        out << "PBS\nWOBBLE upper 3\n";
    }
    fs::path log = dir / "stderr.txt";
    CHECK(run_cli("pipeline --bench " + bad.string() + " --out " + dir.string(),
                  log.string()) == 4);
    CHECK(slurp(log).find("line 2: unknown element") != std::string::npos);
}
