#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

const std::string kCli = HBNQM_CLI_PATH;
const std::string kSeed = std::string(HBNQM_DATA_DIR) + "/hbn_defects_seed.csv";
const std::string kTargets = std::string(HBNQM_DATA_DIR) + "/quantum_targets.json";

struct RunResult {
    int exit_code;
};

RunResult run(const std::string& args) {
    const std::string cmd = kCli + " " + args + " >cli_stdout.txt 2>cli_stderr.txt";
    const int status = std::system(cmd.c_str());
    return {WEXITSTATUS(status)};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("hbnqm_cli_" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str() const { return path.string(); }
};

} // namespace

TEST_CASE("version flag") {
    CHECK(run("--version").exit_code == 0);
    CHECK(slurp("cli_stdout.txt").find("hbnqm") != std::string::npos);
}

TEST_CASE("simulate: artifacts, efficiency, exit codes") {
    TempDir dir;
    const RunResult res =
        run("--out-dir " + dir.str() + " simulate --omega0 10 --T 2 --g 1 --samples 50");
    CHECK(res.exit_code == 0);
    CHECK(fs::exists(dir.path / "simulate_trajectory.csv"));
    CHECK(fs::exists(dir.path / "simulate_summary.json"));
    const std::string summary = slurp((dir.path / "simulate_summary.json").string());
    CHECK(summary.find("writing_efficiency") != std::string::npos);

    // defaults reach the target regime
    const auto pos = summary.find("\"writing_efficiency\": ");
    REQUIRE(pos != std::string::npos);
    const double eff = std::stod(summary.substr(pos + 23));
    CHECK(eff >= 0.95);

    CHECK(run("simulate --omega0 -1").exit_code == 2);
    CHECK(run("simulate --omega0 0").exit_code == 2);
    CHECK(run("nonsense").exit_code == 2);
}

TEST_CASE("simulate with g = 0 reports a vanishing efficiency") {
    TempDir dir;
    CHECK(run("--out-dir " + dir.str() + " simulate --g 0 --samples 20").exit_code == 0);
    const std::string summary = slurp((dir.path / "simulate_summary.json").string());
    const auto pos = summary.find("\"writing_efficiency\": ");
    REQUIRE(pos != std::string::npos);
    CHECK(std::stod(summary.substr(pos + 23)) <= 1e-6);
}

TEST_CASE("kappa: report with sensitivity table, threshold validation") {
    TempDir dir;
    CHECK(run("--out-dir " + dir.str() + " kappa").exit_code == 0);
    const std::string report = slurp((dir.path / "kappa_report.json").string());
    CHECK(report.find("window_policy_sensitivity") != std::string::npos);
    CHECK(report.find("kappa_max") != std::string::npos);

    CHECK(run("kappa --threshold 1.5").exit_code == 2);
    // threshold above the initial population cannot be met at any k
    CHECK(run("--out-dir " + dir.str() + " kappa --threshold 0.9999").exit_code == 3);
}

TEST_CASE("bandwidth: grid too coarse to bracket exits 3") {
    TempDir dir;
    const RunResult res =
        run("--out-dir " + dir.str() + " bandwidth --grid-max 2 --grid-step 0.5 --jobs 2");
    CHECK(res.exit_code == 3);
    CHECK(slurp("cli_stderr.txt").find("not bracketed") != std::string::npos);
}

TEST_CASE("fom: batch over the seed database") {
    TempDir dir;
    CHECK(run("--out-dir " + dir.str() + " fom --db " + kSeed).exit_code == 0);
    const std::string csv = slurp((dir.path / "fom_report.csv").string());
    // 25 data rows after the header
    std::size_t rows = 0;
    std::istringstream in(csv);
    std::string line;
    bool seen_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!seen_header) {
            seen_header = true;
            continue;
        }
        ++rows;
    }
    CHECK(rows == 25);
    CHECK(csv.find("sha256:") != std::string::npos);
    CHECK(csv.find("kappa_hat") != std::string::npos);

    CHECK(run("fom --db /no/such/file.csv").exit_code == 4);
}

TEST_CASE("match and screen against the shipped assets") {
    TempDir dir;
    CHECK(run("--out-dir " + dir.str() + " match --db " + kSeed + " --targets " + kTargets)
              .exit_code == 0);
    const std::string matches = slurp((dir.path / "matches.json").string());
    CHECK(matches.find("Se_BV_B") != std::string::npos);

    CHECK(run("--out-dir " + dir.str() + " screen --db " + kSeed).exit_code == 0);
    const std::string screen = slurp((dir.path / "screen_report.json").string());
    CHECK(screen.find("Al_BV_N^{+1}") != std::string::npos);
    CHECK(screen.find("Q_unreachable") != std::string::npos);

    CHECK(run("--out-dir " + dir.str() + " report --db " + kSeed + " --targets " + kTargets)
              .exit_code == 0);
    CHECK(fs::exists(dir.path / "report.csv"));
    CHECK(fs::exists(dir.path / "report.json"));
}

TEST_CASE("config file overrides propagate into reports") {
    TempDir dir;
    const std::string cfg_path = (dir.path / "config.json").string();
    {
        std::ofstream cfg(cfg_path);
        cfg << R"({"sigma_delta": 3.1, "window": {"p_g": 0.99}})";
    }
    CHECK(run("--out-dir " + dir.str() + " --config " + cfg_path + " fom --db " + kSeed)
              .exit_code == 0);
    const std::string report = slurp((dir.path / "fom_report.json").string());
    CHECK(report.find("\"sigma_delta\": 3.1") != std::string::npos);
    CHECK(report.find("\"p_g\": 0.99") != std::string::npos);
    // bandwidth scales linearly with the configured sigma_delta
    CHECK(report.find("\"universal_constants_source\": \"configured\"") != std::string::npos);
}

TEST_CASE("outputs are byte-identical without timestamps") {
    TempDir dir_a;
    TempDir dir_b;
    const std::string args = " --no-timestamp simulate --samples 40";
    CHECK(run("--out-dir " + dir_a.str() + args).exit_code == 0);
    CHECK(run("--out-dir " + dir_b.str() + args).exit_code == 0);
    CHECK(slurp((dir_a.path / "simulate_trajectory.csv").string()) ==
          slurp((dir_b.path / "simulate_trajectory.csv").string()));
    // the config echo embeds the differing out-dir only via meta inputs; the
    // summary body matches apart from that
    const std::string a = slurp((dir_a.path / "simulate_summary.json").string());
    const std::string b = slurp((dir_b.path / "simulate_summary.json").string());
    CHECK(a.substr(a.find("\"model\"")) == b.substr(b.find("\"model\"")));
}

TEST_CASE("HBNQM_CONFIG supplies a default config path") {
    TempDir dir;
    const std::string cfg_path = (dir.path / "env_config.json").string();
    {
        std::ofstream cfg(cfg_path);
        cfg << R"({"sigma_delta": 2.5})";
    }
    const std::string cmd = "HBNQM_CONFIG=" + cfg_path + " " + kCli + " --out-dir " +
                            dir.str() + " fom --db " + kSeed +
                            " >cli_stdout.txt 2>cli_stderr.txt";
    CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    CHECK(slurp((dir.path / "fom_report.json").string()).find("\"sigma_delta\": 2.5") !=
          std::string::npos);
}

TEST_CASE("ingest prints a summary and can normalize to json") {
    TempDir dir;
    const std::string out = (dir.path / "normalized.json").string();
    CHECK(run("ingest --db " + kSeed + " --out " + out).exit_code == 0);
    CHECK(slurp("cli_stdout.txt").find("25 records, 0 diagnostics") != std::string::npos);
    CHECK(fs::exists(out));
}
