#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "cjet/config.hpp"
#include "cjet/errors.hpp"
#include "cjet/report.hpp"
#include "cjet/snapshot.hpp"

using namespace cjet;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json base_config() {
    return json{
        {"grid", {{"L", std::numbers::pi}, {"N", 32}}},
        {"physics", {{"R", 1.0}, {"kappa", 1.0}, {"g", 0.0}}},
        {"initial", {{"eta_modes", {{{"amplitude", 1e-3}, {"mode", 2}, {"phase", 0.0}}}}}},
        {"integrator", {{"dt", 0.0078125}, {"horizon", 0.25}, {"save_every", 4}}},
        {"solver", {{"M", 64}, {"tol", 1e-10}}},
        {"diagnostics", {{"sobolev_index", 3.0}, {"tracked_modes", {2}}}},
        {"output", {{"dir", "out"}, {"formats", {"csv"}}}},
    };
}

std::string cli_bin() {
    const char* p = std::getenv("CJET_BIN");
    return p ? p : "";
}

int run_cli(const std::string& args) {
    int status = std::system((cli_bin() + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// data rows of a csv (skipping comments and header)
std::vector<std::string> csv_rows(const fs::path& p) {
    std::ifstream f(p);
    std::vector<std::string> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        rows.push_back(line);
    }
    return rows;
}

} // namespace

TEST_CASE("config parsing and validation") {
    SimConfig c = parse_sim_config(base_config());
    CHECK(c.point_count == 32);
    CHECK(c.eta_modes.size() == 1);
    CHECK(c.eta_modes[0].mode == 2);
    CHECK(c.tracked_modes == std::vector<int>{2});
    CHECK(c.formats == std::vector<std::string>{"csv"});

    json bad = base_config();
    bad["grid"]["N"] = 7;
    CHECK_THROWS_AS(parse_sim_config(bad), ConfigError);

    bad = base_config();
    bad["initial"]["eta_modes"][0]["mode"] = 40; // unresolved on N=32
    CHECK_THROWS_AS(parse_sim_config(bad), ConfigError);

    bad = base_config();
    bad["integrator"]["dt"] = 0.0;
    bad["physics"]["kappa"] = 0.0;
    CHECK_THROWS_AS(parse_sim_config(bad), ConfigError); // auto-CFL needs kappa > 0

    // hash is stable across a round trip
    SimConfig c2 = parse_sim_config(sim_config_json(c));
    CHECK(config_hash(c) == config_hash(c2));

    // random phases draw from the seed
    json rconf = base_config();
    rconf["initial"]["eta_modes"][0]["phase"] = "random";
    SimConfig rc = parse_sim_config(rconf);
    RunSpec s1 = build_run_spec(rc, 42);
    RunSpec s2 = build_run_spec(rc, 42);
    RunSpec s3 = build_run_spec(rc, 43);
    CHECK(l2_norm(s1.initial.eta - s2.initial.eta) == 0.0);
    CHECK(l2_norm(s1.initial.eta - s3.initial.eta) > 0.0);
}

TEST_CASE("snapshot grid must match the config grid") {
    SimConfig c = parse_sim_config(base_config());
    RunSpec spec = build_run_spec(c, 0);
    cjet::write_snapshot("/tmp/cjet_mismatch.cjsnap", spec.initial);
    json conf = base_config();
    conf["grid"]["N"] = 64; // snapshot was written at N = 32
    conf["initial"] = {{"snapshot", "/tmp/cjet_mismatch.cjsnap"}};
    CHECK_THROWS_AS(build_run_spec(parse_sim_config(conf), 0), ConfigError);
}

TEST_CASE("sweep expansion") {
    json sweep = {{"base", base_config()},
                  {"cap", 16},
                  {"axes",
                   {{{"path", "/initial/eta_modes/0/amplitude"}, {"values", {1e-4, 1e-3}}},
                    {{"path", "/grid/N"}, {"values", {16, 32}}}}}};
    SweepSpec spec = parse_sweep_spec(sweep);
    auto cases = spec.expand();
    CHECK(cases.size() == 4);
    CHECK(cases[0].name.find("amplitude=") != std::string::npos);
    CHECK(cases[0].name.find("N=") != std::string::npos);

    // empty axes -> the single base case
    json solo = {{"base", base_config()}};
    CHECK(parse_sweep_spec(solo).expand().size() == 1);

    // cap enforced before running anything
    json capped = sweep;
    capped["cap"] = 3;
    CHECK_THROWS_AS(parse_sweep_spec(capped).expand(), ConfigError);
}

TEST_CASE("csv formatting") {
    CsvTable t({"a", "b"});
    t.add_comment("config=deadbeef");
    t.add_row_numeric({0.1, 3.0});
    t.add_row({"x", "y"});
    std::string s = t.to_string();
    CHECK(s == "# config=deadbeef\na,b\n0.1,3\nx,y\n");
    CHECK_THROWS_AS(t.add_row({"only-one"}), ConfigError);

    // shortest round-trip formatting
    for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0}) {
        std::string txt = format_double(v);
        CHECK(std::strtod(txt.c_str(), nullptr) == v);
    }
}

TEST_CASE("svg writer") {
    SvgSeries s{"demo", {0.0, 1.0, 2.0}, {0.0, 1.0, 0.5}};
    write_svg_plot("/tmp/cjet_plot.svg", "demo plot", {s});
    std::string content = slurp("/tmp/cjet_plot.svg");
    CHECK(content.find("<svg") != std::string::npos);
    CHECK(content.find("polyline") != std::string::npos);
    CHECK(content.find("demo plot") != std::string::npos);
}

TEST_CASE("cli simulate, restart determinism, dispersion, verify") {
    REQUIRE(!cli_bin().empty());
    fs::path work = "/tmp/cjet_cli_test";
    fs::remove_all(work);
    fs::create_directories(work);

    // full run: 32 steps of dt = 2^-7, snapshot every 4 steps
    json conf = base_config();
    conf["integrator"]["dt"] = 0.0078125;
    conf["integrator"]["horizon"] = 32 * 0.0078125;
    conf["integrator"]["save_every"] = 4;
    conf["output"] = {{"dir", (work / "full").string()}, {"formats", {"csv", "cjsnap"}}};
    std::ofstream(work / "full.json") << conf.dump(2);
    CHECK(run_cli("simulate --config " + (work / "full.json").string()) == 0);
    CHECK(fs::exists(work / "full" / "trajectory.csv"));
    auto full_rows = csv_rows(work / "full" / "trajectory.csv");
    CHECK(full_rows.size() == 9); // initial + 8 saves

    // restart from the mid snapshot, same dt: byte-identical tail rows
    json rest = conf;
    rest["initial"] = {{"snapshot", (work / "full" / "snapshots" / "snap_000004.cjsnap").string()}};
    rest["integrator"]["horizon"] = 16 * 0.0078125;
    rest["output"]["dir"] = (work / "restart").string();
    std::ofstream(work / "restart.json") << rest.dump(2);
    CHECK(run_cli("simulate --config " + (work / "restart.json").string()) == 0);
    auto tail_rows = csv_rows(work / "restart" / "trajectory.csv");
    CHECK(tail_rows.size() == 5);
    for (size_t i = 0; i < tail_rows.size(); ++i) CHECK(tail_rows[i] == full_rows[4 + i]);

    // equilibrium run has identically zero energy column
    json eq = base_config();
    eq["initial"]["eta_modes"] = json::array();
    eq["integrator"]["horizon"] = 8 * 0.0078125;
    eq["output"] = {{"dir", (work / "eq").string()}, {"formats", {"csv"}}};
    std::ofstream(work / "eq.json") << eq.dump(2);
    CHECK(run_cli("simulate --config " + (work / "eq.json").string()) == 0);
    for (const auto& row : csv_rows(work / "eq" / "trajectory.csv")) {
        std::stringstream ss(row);
        std::string t, e;
        std::getline(ss, t, ',');
        std::getline(ss, e, ',');
        CHECK(std::abs(std::strtod(e.c_str(), nullptr)) <= 1e-14);
    }

    // validation failure: error json + nonzero exit
    json bad = base_config();
    bad["grid"]["N"] = 9; // odd point count
    std::ofstream(work / "bad.json") << bad.dump(2);
    CHECK(run_cli("simulate --config " + (work / "bad.json").string() + " --out " +
                  (work / "bad_out").string()) == 1);
    CHECK(fs::exists(work / "bad_out" / "error.json"));

    // pinch-off exits with the dedicated code
    json pinch = base_config();
    pinch["grid"] = {{"L", std::numbers::pi / 0.7}, {"N", 16}};
    pinch["initial"]["eta_modes"] = {{{"amplitude", 5e-3}, {"mode", 1}, {"phase", 0.0}}};
    pinch["integrator"] = {{"horizon", 40.0}, {"pinch_floor", 0.99}, {"save_every", 16}};
    pinch["solver"] = {{"M", 32}, {"tol", 1e-9}};
    pinch["diagnostics"] = {{"tracked_modes", {1}}};
    pinch["output"] = {{"dir", (work / "pinch").string()}, {"formats", {"csv"}}};
    std::ofstream(work / "pinch.json") << pinch.dump(2);
    CHECK(run_cli("simulate --config " + (work / "pinch.json").string()) == 3);
    json outcome = json::parse(slurp(work / "pinch" / "outcome.json"));
    CHECK(outcome["outcome"] == "pinch_off");
    CHECK(outcome["stop_time"].get<double>() < 40.0);

    // dispersion table contains the neutral row sigma(1/R) = 0
    CHECK(run_cli("dispersion --radius 1 --kappa 1 --xi-max 1.5 --samples 30 --out " +
                  (work / "disp").string()) == 0);
    bool neutral_found = false;
    for (const auto& row : csv_rows(work / "disp" / "dispersion.csv")) {
        std::stringstream ss(row);
        std::string xi, s2;
        std::getline(ss, xi, ',');
        std::getline(ss, s2, ',');
        if (xi == "1") {
            neutral_found = true;
            CHECK(std::abs(std::strtod(s2.c_str(), nullptr)) < 1e-15);
        }
    }
    CHECK(neutral_found);

    // unknown verify suite fails cleanly
    CHECK(run_cli("verify nonsense") == 1);

    // verify subcommand (cheap suite) passes and writes its table
    CHECK(run_cli("verify bessel --out " + (work / "verify").string()) == 0);
    CHECK(fs::exists(work / "verify" / "verify.csv"));

    // sweep: 2 cases, summary with growth-rate column
    json sweep = {
        {"base", conf},
        {"axes", {{{"path", "/integrator/save_every"}, {"values", {4, 8}}}}},
    };
    std::ofstream(work / "sweep.json") << sweep.dump(2);
    CHECK(run_cli("sweep --config " + (work / "sweep.json").string() + " --out " +
                  (work / "sweep_out").string() + " --threads 2") == 0);
    auto summary = csv_rows(work / "sweep_out" / "summary.csv");
    CHECK(summary.size() == 2);
    CHECK(summary[0].find("completed") != std::string::npos);

    // identical config and thread count give byte-identical summaries
    CHECK(run_cli("sweep --config " + (work / "sweep.json").string() + " --out " +
                  (work / "sweep_out2").string() + " --threads 2") == 0);
    CHECK(slurp(work / "sweep_out" / "summary.csv") ==
          slurp(work / "sweep_out2" / "summary.csv"));
}
