#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

const fs::path& work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "fnn_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out_file = work_dir() / ("stdout_" + std::to_string(counter));
    const fs::path err_file = work_dir() / ("stderr_" + std::to_string(counter));
    ++counter;

    const std::string command = std::string(FNN_CLI_PATH) + " " + args + " > " +
                                out_file.string() + " 2> " + err_file.string();
    const int status = std::system(command.c_str());

    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_file);
    r.err = slurp(err_file);
    return r;
}

fs::path write_config(const std::string& name, const std::string& text) {
    const fs::path p = work_dir() / name;
    std::ofstream out(p, std::ios::binary);
    out << text;
    return p;
}

int count_occurrences(const std::string& text, const std::string& needle) {
    int n = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size()))
        ++n;
    return n;
}

int count_lines(const std::string& text) {
    return count_occurrences(text, "\n");
}

}  // namespace

TEST_CASE("theory prints the ideal value twice") {
    const fs::path config = write_config(
        "ideal.json", R"({"scenario": {"v1": 1.0, "v2": 1.0, "vh": 1.0}})");
    const RunResult r = run_cli("theory --config " + config.string());
    CHECK(r.exit_code == 0);
    CHECK(count_occurrences(r.out, "3.535534") == 2);
    CHECK(r.out.find("FNN certified: yes") != std::string::npos);
}

TEST_CASE("theory with defaults reports the noisy prediction") {
    const RunResult r = run_cli("theory");
    CHECK(r.exit_code == 0);
    CHECK(count_occurrences(r.out, "3.3077") == 2);
}

TEST_CASE("theory at a separable angle certifies nothing") {
    const fs::path config = write_config(
        "separable.json",
        R"({"scenario": {"v1": 1.0, "v2": 1.0, "vh": 1.0, "alpha1": 0.0}})");
    const RunResult r = run_cli("theory --config " + config.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("FNN certified: no") != std::string::npos);
}

TEST_CASE("default sweep flags exactly the three middle points") {
    const RunResult r = run_cli("sweep");
    CHECK(r.exit_code == 0);
    CHECK(count_lines(r.out) == 10);  // header + 9 rows
    CHECK(count_occurrences(r.out, ",1,1,1\n") == 3);
}

TEST_CASE("single-point sweep and reversed bounds") {
    const RunResult one = run_cli("sweep --points 1 --from 0.25pi --to 0.25pi");
    CHECK(one.exit_code == 0);
    CHECK(count_lines(one.out) == 2);

    const RunResult bad = run_cli("sweep --from 0.5pi --to 0");
    CHECK(bad.exit_code == 2);
    CHECK(bad.err.find("reversed") != std::string::npos);
}

TEST_CASE("sample outputs are byte-stable for a fixed seed") {
    const fs::path dir_a = work_dir() / "sample_a";
    const fs::path dir_b = work_dir() / "sample_b";
    const RunResult a = run_cli("sample --seed 9 --out " + dir_a.string());
    const RunResult b = run_cli("sample --seed 9 --out " + dir_b.string());
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    CHECK(slurp(dir_a / "counts.csv") == slurp(dir_b / "counts.csv"));
    CHECK(slurp(dir_a / "estimate.json") == slurp(dir_b / "estimate.json"));
    CHECK(!slurp(dir_a / "counts.csv").empty());
    CHECK(slurp(dir_a / "estimate.json").find("sigma_cns") != std::string::npos);

    const RunResult c = run_cli("sample --seed 10 --out " + dir_a.string());
    CHECK(c.exit_code == 0);
    CHECK(slurp(dir_a / "counts.csv") != slurp(dir_b / "counts.csv"));
}

TEST_CASE("tiny samples warn about possible empty contexts") {
    const fs::path config =
        write_config("tiny.json", R"({"statistics": {"total": 10}})");
    const RunResult r = run_cli("sample --config " + config.string());
    CHECK(r.err.find("warning") != std::string::npos);
}

TEST_CASE("run report lists the files it wrote") {
    const fs::path dir = work_dir() / "report";
    const RunResult r = run_cli("theory --out " + dir.string());
    CHECK(r.exit_code == 0);
    const std::string report = slurp(dir / "run_report.json");
    CHECK(report.find("theory.csv") != std::string::npos);
    CHECK(report.find("config_hash") != std::string::npos);
    CHECK(fs::exists(dir / "resolved_config.json"));
    CHECK(fs::exists(dir / "theory.csv"));
}

TEST_CASE("verify-bound respects the analytic bound") {
    const fs::path config = write_config(
        "opt.json", R"({"optimization": {"restarts": 6, "iters": 25}})");
    const RunResult r = run_cli("verify-bound --config " + config.string() + " --seed 5");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("bound 3 respected: yes") != std::string::npos);
}

TEST_CASE("verify-bound validates the restart count") {
    const fs::path config =
        write_config("opt0.json", R"({"optimization": {"restarts": 0}})");
    const RunResult r = run_cli("verify-bound --config " + config.string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("restarts") != std::string::npos);
}

TEST_CASE("inflate-check passes on sampled models") {
    const RunResult r = run_cli("inflate-check --models 25 --seed 3");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("identities hold: yes") != std::string::npos);
}

TEST_CASE("spacetime audit reproduces the twelve pairs") {
    const fs::path dir = work_dir() / "spacetime";
    const RunResult r = run_cli("spacetime --out " + dir.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("all pairs space-like separated: yes") != std::string::npos);
    CHECK(count_lines(slurp(dir / "spacetime.csv")) == 13);  // header + 12 pairs
}

TEST_CASE("a slowed setting generator breaks the audit verdict") {
    const std::string overrides = R"({"spacetime": {"delays": [
      {"name": "dT_S1", "value": 154.4, "sigma": 0.5},
      {"name": "dT_S2", "value": 160.0, "sigma": 0.5},
      {"name": "dT_QRNG_A", "value": 453.0, "sigma": 2.0},
      {"name": "dT_QRNG_C", "value": 53.0, "sigma": 2.0},
      {"name": "dT_QM_A", "value": 446.8, "sigma": 0.5},
      {"name": "dT_QM_C", "value": 408.6, "sigma": 0.5},
      {"name": "dT_M_A", "value": 38.4, "sigma": 0.5},
      {"name": "dT_M_B", "value": 44.9, "sigma": 0.5},
      {"name": "dT_M_C", "value": 44.6, "sigma": 0.5}
    ]}})";
    const fs::path config = write_config("slow_qrng.json", overrides);
    const RunResult r = run_cli("spacetime --config " + config.string());
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("all pairs space-like separated: NO") != std::string::npos);
}

TEST_CASE("missing geometry entries are config errors naming the pair") {
    // Only one distance listed: the S1 -- S2 pair cannot be resolved.
    const std::string overrides = R"({"spacetime": {"distances": [
      {"a": "Alice", "b": "S1", "d": 110.0, "sigma": 1.0}
    ]}})";
    const fs::path config = write_config("missing_geo.json", overrides);
    const RunResult r = run_cli("spacetime --config " + config.string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("S1") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("no-such-command").exit_code == 2);
    CHECK(run_cli("theory --no-such-flag").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);

    const fs::path bad = write_config("bad.json", "{ not json");
    const RunResult r = run_cli("theory --config " + bad.string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("parse error") != std::string::npos);

    const fs::path unknown = write_config("unknown.json", R"({"scenari": {}})");
    CHECK(run_cli("theory --config " + unknown.string()).exit_code == 2);

    CHECK(run_cli("theory --config /nonexistent/path.json").exit_code == 2);
}

TEST_CASE("sweep csv file matches stdout") {
    const fs::path dir = work_dir() / "sweep_out";
    const RunResult r = run_cli("sweep --points 5 --out " + dir.string());
    CHECK(r.exit_code == 0);
    CHECK(slurp(dir / "sweep.csv") == r.out);
}
