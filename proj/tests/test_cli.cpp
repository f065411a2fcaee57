#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ckls/analysis.hpp"
#include "ckls/path_io.hpp"
#include "process.hpp"

using nlohmann::json;
using namespace ckls_test;
namespace fs = std::filesystem;

namespace {

const std::string kCli = CKLS_CLI_PATH;

fs::path work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "ckls_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

json base_config(double gamma, double sigma = 0.5) {
    return {{"a", 1.0}, {"b", 0.2}, {"sigma", sigma}, {"gamma", gamma}, {"r0", 1.0},
            {"grid", {{"t_end", 1.0}, {"n_steps", 64}}}, {"n_paths", 20}, {"seed", 7}};
}

std::string config_file(const std::string& name, const json& j) {
    const std::string path = (work_dir() / (name + ".json")).string();
    write_file(path, j.dump());
    return path;
}

RunResult cli(const std::string& config, const std::string& args) {
    return run(quote(kCli) + " --config " + quote(config) + " " + args);
}

// Parses the x,pdf,cdf rows of a density CSV.
std::vector<std::array<double, 3>> density_rows(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    std::vector<std::array<double, 3>> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
        std::array<double, 3> r{};
        std::istringstream ls(line);
        char comma;
        ls >> r[0] >> comma >> r[1] >> comma >> r[2];
        rows.push_back(r);
    }
    return rows;
}

}  // namespace

TEST_CASE("regime exit codes") {
    const RunResult ok = cli(config_file("high", base_config(1.5)), "regime");
    CHECK(ok.exit_code == 0);
    CHECK(json::parse(ok.out)["girsanov"]["branch"] == "HighGamma");

    const std::string err = (work_dir() / "gamma1.err").string();
    const RunResult one =
        run(quote(kCli) + " --config " + quote(config_file("gamma1", base_config(1.0))) + " regime", err);
    CHECK(one.exit_code == 1);
    CHECK(slurp(err).find("gamma") != std::string::npos);

    CHECK(cli(config_file("lowviol", base_config(0.75, 1.0)), "regime").exit_code == 2);
}

TEST_CASE("usage and config errors exit 1") {
    CHECK(run(quote(kCli) + " regime").exit_code == 1);
    CHECK(cli("/nonexistent.json", "regime").exit_code == 1);
    json bad = base_config(1.5);
    bad["unknown"] = true;
    CHECK(cli(config_file("unknown", bad), "regime").exit_code == 1);
    CHECK(cli(config_file("high", base_config(1.5)), "verify --suite nope").exit_code == 1);
}

TEST_CASE("explicit sample is reproducible") {
    json j = base_config(1.5);
    j["mode"] = "explicit-q";
    j["n_paths"] = 1;
    const std::string cfg = config_file("explicit1", j);
    const RunResult a = cli(cfg, "simulate");
    const RunResult b = cli(cfg, "simulate");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("# config: ") == 0);
    CHECK(cli(cfg, "--seed 8 simulate").out != a.out);
}

TEST_CASE("euler mean with small volatility") {
    json j = base_config(1.5, 0.01);
    j["n_paths"] = 2000;
    j["grid"] = {{"t_end", 1.0}, {"n_steps", 1024}};
    const std::string out = (work_dir() / "euler.csv").string();
    const RunResult r = cli(config_file("euler_small", j), "--out " + quote(out) + " simulate");
    REQUIRE(r.exit_code == 0);
    const json summary = json::parse(r.out);
    const double mean = summary["terminal_mean"], se = summary["terminal_std_error"];
    CHECK(std::abs(mean - ckls::mean_rate(ckls::CklsParams(1.0, 0.2, 0.01, 1.5, 1.0), 1.0)) < 3.0 * se + 1e-3);
}

TEST_CASE("auxiliary summary echoes the variant") {
    json j = base_config(0.75);
    j["mode"] = "auxiliary";
    j["aux_variant"] = "paper";
    const std::string out = (work_dir() / "aux.csv").string();
    const RunResult r = cli(config_file("aux", j), "--out " + quote(out) + " simulate");
    REQUIRE(r.exit_code == 0);
    CHECK(json::parse(r.out)["aux_variant"] == "paper");
}

TEST_CASE("binary output with config sidecar") {
    json j = base_config(0.75);
    j["output"] = {{"format", "binary"}};
    const std::string out = (work_dir() / "paths.bin").string();
    REQUIRE(cli(config_file("bin", j), "--out " + quote(out) + " simulate").exit_code == 0);
    std::ifstream in(out, std::ios::binary);
    const ckls::PathTable t = ckls::read_paths_binary(in);
    CHECK(t.columns.size() == 20);
    CHECK(t.times.size() == 65);
    const json side = json::parse(slurp(out + ".config.json"));
    CHECK(side["seed"] == 7);
}

TEST_CASE("exact modes refuse an invalid regime") {
    json j = base_config(0.75, 1.0);
    j["mode"] = "cir-exact";
    CHECK(cli(config_file("cir_bad", j), "simulate").exit_code == 2);
    j["mode"] = "explicit-q";
    CHECK(cli(config_file("exp_bad", j), "simulate").exit_code == 2);
    CHECK(cli(config_file("dens_bad", j), "density").exit_code == 2);
}

TEST_CASE("json sample output") {
    json j = base_config(0.75);
    j["mode"] = "cir-exact";
    j["output"] = {{"format", "json"}};
    const RunResult r = cli(config_file("cirjson", j), "simulate");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["samples"].size() == 20);
    CHECK(doc["config"]["mode"] == "cir-exact");
}

TEST_CASE("density csv is normalised and reproducible") {
    for (double gamma : {1.5, 0.75}) {
        const std::string cfg = config_file("dens", base_config(gamma));
        const std::string args = "density --x-min 1e-4 --x-max 1e4 --n-points 20000 --log";
        const RunResult a = cli(cfg, args);
        const RunResult b = cli(cfg, args);
        REQUIRE(a.exit_code == 0);
        CHECK(a.out == b.out);
        CHECK(a.out.find("# delta_rule=derived L=") != std::string::npos);
        const auto rows = density_rows(a.out);
        REQUIRE(rows.size() == 20000);
        double mass = 0.0;
        for (std::size_t i = 1; i < rows.size(); ++i)
            mass += 0.5 * (rows[i][1] + rows[i - 1][1]) * (rows[i][0] - rows[i - 1][0]);
        CHECK(std::abs(mass - 1.0) < 1e-3);
        CHECK(std::abs(rows.back()[2] - rows.front()[2] - mass) < 1e-3);
    }
}

TEST_CASE("density delta rules differ at C = 2") {
    json j = base_config(1.5);
    j["C"] = 2.0;
    j["delta_rule"] = "paper";
    const RunResult paper = cli(config_file("dpaper", j), "density --n-points 50");
    j["delta_rule"] = "derived";
    const RunResult derived = cli(config_file("dderived", j), "density --n-points 50");
    REQUIRE(paper.exit_code == 0);
    REQUIRE(derived.exit_code == 0);
    CHECK(paper.out.find("delta=4 ") != std::string::npos);
    CHECK(derived.out.find("delta=1 ") != std::string::npos);
    const auto rp = density_rows(paper.out), rd = density_rows(derived.out);
    REQUIRE(rp.size() == rd.size());
    bool differ = false;
    for (std::size_t i = 0; i < rp.size(); ++i) differ = differ || rp[i][1] != rd[i][1];
    CHECK(differ);
}

TEST_CASE("verify delta arbitration report") {
    json j = base_config(1.5);
    j["C"] = 2.0;
    const RunResult r = cli(config_file("arb", j), "verify --suite delta-arbitration");
    const json rep = json::parse(r.out);
    const json& check = rep["checks"][0];
    CHECK(check["name"] == "delta-arbitration");
    CHECK(check["details"]["rules"].contains("paper"));
    CHECK(check["details"]["rules"].contains("derived"));
    CHECK(check["details"]["better_fit"] == "derived");
    CHECK(r.exit_code == 0);
}

TEST_CASE("verify output is worker-independent") {
    const std::string cfg = config_file("det", base_config(0.75));
    const RunResult a = cli(cfg, "--workers 1 verify --suite transform");
    const RunResult b = cli(cfg, "--workers 4 verify --suite transform");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}
