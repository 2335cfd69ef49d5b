// cjet - experiment runner for the axisymmetric capillary jet solver.
// Subcommands: simulate, dispersion, verify, sweep.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "cjet/config.hpp"
#include "cjet/dynamics.hpp"
#include "cjet/errors.hpp"
#include "cjet/linstab.hpp"
#include "cjet/report.hpp"
#include "cjet/snapshot.hpp"
#include "cjet/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitError = 1;
constexpr int kExitPinchOff = 3;

void write_error_json(const fs::path& dir, const std::string& kind, const std::string& what) {
    json err = {{"error", kind}, {"what", what}};
    std::cerr << err.dump() << "\n";
    if (!dir.empty()) {
        std::error_code ec;
        fs::create_directories(dir, ec);
        std::ofstream f(dir / "error.json");
        if (f) f << err.dump(2) << "\n";
    }
}

bool has_format(const cjet::SimConfig& c, const std::string& fmt) {
    return std::find(c.formats.begin(), c.formats.end(), fmt) != c.formats.end();
}

struct SimArtifacts {
    cjet::RunOutcome outcome;
    double stop_time;
    cjet::Trajectory traj;
};

SimArtifacts run_to_dir(const cjet::SimConfig& cfg, uint64_t seed, const fs::path& dir) {
    fs::create_directories(dir);
    cjet::RunSpec spec = cjet::build_run_spec(cfg, seed);
    cjet::Trajectory traj = cjet::run(spec);

    if (has_format(cfg, "csv")) {
        std::vector<std::string> cols = {"t", "E", "min_eta", "hs_eta", "hs_psi"};
        for (int m : traj.tracked_modes) cols.push_back("amp_" + std::to_string(m));
        cjet::CsvTable table(cols);
        table.add_comment("config=" + cjet::config_hash(cfg));
        for (const auto& row : traj.diagnostics) {
            std::vector<double> cells = {row.t, row.energy, row.min_eta, row.hs_eta, row.hs_psi};
            cells.insert(cells.end(), row.mode_amps.begin(), row.mode_amps.end());
            table.add_row_numeric(cells);
        }
        table.write((dir / "trajectory.csv").string());
    }

    if (has_format(cfg, "cjsnap")) {
        fs::create_directories(dir / "snapshots");
        char name[32];
        for (size_t i = 0; i < traj.snapshots.size(); ++i) {
            const auto& s = traj.snapshots[i];
            cjet::JetState st;
            st.t = s.t;
            st.eta = s.eta;
            st.psi = s.psi;
            st.psi_slope = s.slope;
            st.radius = traj.radius;
            st.kappa = traj.kappa;
            st.gravity = traj.gravity;
            std::snprintf(name, sizeof(name), "snap_%06zu.cjsnap", i);
            cjet::write_snapshot((dir / "snapshots" / name).string(), st);
        }
    }

    if (has_format(cfg, "svg") && !traj.snapshots.empty()) {
        const auto& g = *traj.snapshots.front().eta.grid();
        std::vector<cjet::SvgSeries> profiles;
        size_t stride = std::max<size_t>(1, traj.snapshots.size() / 12);
        for (size_t i = 0; i < traj.snapshots.size(); i += stride) {
            cjet::SvgSeries s;
            s.label = "t=" + cjet::format_double(traj.snapshots[i].t);
            for (int j = 0; j < g.size(); ++j) {
                s.x.push_back(g.node(j));
                s.y.push_back(traj.snapshots[i].eta[j]);
            }
            profiles.push_back(std::move(s));
        }
        cjet::write_svg_plot((dir / "eta_profiles.svg").string(), "eta(z) at save times", profiles);

        cjet::SvgSeries se{"E", {}, {}}, sm{"min_eta", {}, {}};
        for (const auto& row : traj.diagnostics) {
            se.x.push_back(row.t);
            se.y.push_back(row.energy);
            sm.x.push_back(row.t);
            sm.y.push_back(row.min_eta);
        }
        cjet::write_svg_plot((dir / "energy.svg").string(), "energy vs t", {se});
        cjet::write_svg_plot((dir / "min_eta.svg").string(), "min eta vs t", {sm});
    }

    json outcome = {
        {"outcome", traj.outcome == cjet::RunOutcome::PinchOff ? "pinch_off" : "completed"},
        {"stop_time", traj.stop_time},
        {"config", cjet::config_hash(cfg)},
    };
    std::ofstream(dir / "outcome.json") << outcome.dump(2) << "\n";

    return SimArtifacts{traj.outcome, traj.stop_time, std::move(traj)};
}

int cmd_simulate(const std::string& config_path, const std::string& out_override, uint64_t seed) {
    cjet::SimConfig cfg = cjet::load_sim_config(config_path);
    if (!out_override.empty()) cfg.out_dir = out_override;
    SimArtifacts art = run_to_dir(cfg, seed, cfg.out_dir);
    if (art.outcome == cjet::RunOutcome::PinchOff) {
        std::cout << "pinch-off at t = " << cjet::format_double(art.stop_time) << "\n";
        return kExitPinchOff;
    }
    std::cout << "completed, t = " << cjet::format_double(art.stop_time) << "\n";
    return 0;
}

int cmd_dispersion(double radius, double kappa, double xi_max, int samples,
                   const std::string& out_dir) {
    fs::create_directories(out_dir);
    cjet::CsvTable table({"xi", "sigma_sq", "sigma_re", "sigma_im"});
    json params = {{"radius", radius}, {"kappa", kappa}, {"xi_max", xi_max}, {"samples", samples}};
    table.add_comment("config=" + cjet::hash_hex(cjet::fnv1a_hash(params.dump())));
    cjet::MostUnstable mu{};
    if (kappa > 0.0) mu = cjet::most_unstable(radius, kappa);
    table.add_comment("xi_star=" + cjet::format_double(mu.xi_star));
    table.add_comment("sigma_star=" + cjet::format_double(mu.sigma_star));

    std::vector<double> xis;
    for (int i = 0; i <= samples; ++i) xis.push_back(xi_max * i / samples);
    double cutoff = 1.0 / radius;
    if (cutoff <= xi_max && std::find(xis.begin(), xis.end(), cutoff) == xis.end())
        xis.push_back(cutoff);
    std::sort(xis.begin(), xis.end());
    for (double xi : xis) {
        auto s = cjet::growth_rate(radius, kappa, xi);
        table.add_row_numeric({s.xi, s.sigma_sq, s.sigma.real(), s.sigma.imag()});
    }
    table.write((fs::path(out_dir) / "dispersion.csv").string());
    std::cout << "xi_star = " << cjet::format_double(mu.xi_star)
              << ", sigma_star = " << cjet::format_double(mu.sigma_star) << "\n";
    return 0;
}

int cmd_verify(const std::string& suite, const std::string& out_dir) {
    auto results = cjet::verify::run_suite(suite);
    bool all_pass = true;
    for (const auto& r : results) {
        std::cout << cjet::verify::format_result_line(r) << "\n";
        all_pass = all_pass && r.pass;
    }
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        cjet::CsvTable table({"id", "criterion", "check", "measured", "threshold",
                              "comparison", "pass", "seconds"});
        table.add_comment("config=" + cjet::hash_hex(cjet::fnv1a_hash("verify:" + suite)));
        for (const auto& r : results)
            for (const auto& c : r.checks)
                table.add_row({std::to_string(r.id), r.name, c.name,
                               cjet::format_double(c.measured), cjet::format_double(c.threshold),
                               c.upper_bound ? "<=" : ">=", c.pass ? "1" : "0",
                               cjet::format_double(r.seconds)});
        table.write((fs::path(out_dir) / "verify.csv").string());
    }
    std::cout << (all_pass ? "ALL PASS" : "FAILURES PRESENT") << "\n";
    return all_pass ? 0 : kExitError;
}

int cmd_sweep(const std::string& config_path, const std::string& out_override, int threads,
              uint64_t seed) {
    cjet::SweepSpec sweep = cjet::load_sweep_spec(config_path);
    std::vector<cjet::SweepCase> cases = sweep.expand();
    fs::path root = out_override.empty() ? fs::path(sweep.base.out_dir) : fs::path(out_override);
    fs::create_directories(root);

    struct RowData {
        std::string name;
        std::string outcome;
        double final_time = 0.0;
        std::string growth;
        std::string error;
    };
    std::vector<RowData> rows(cases.size());

    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= cases.size()) return;
            RowData& row = rows[i];
            row.name = cases[i].name;
            try {
                cjet::SimConfig cfg = cases[i].config;
                cfg.out_dir = (root / cases[i].name).string();
                SimArtifacts art = run_to_dir(cfg, seed, cfg.out_dir);
                row.outcome = art.outcome == cjet::RunOutcome::PinchOff ? "pinch_off" : "completed";
                row.final_time = art.stop_time;
                if (!art.traj.tracked_modes.empty()) {
                    try {
                        double rate = cjet::measure_growth(art.traj, art.traj.tracked_modes[0]);
                        row.growth = cjet::format_double(rate);
                    } catch (const cjet::WindowTooShort&) {
                        row.growth = "";
                    }
                }
            } catch (const std::exception& e) {
                row.outcome = "error";
                row.error = e.what();
            }
        }
    };
    int nthreads = std::max(1, threads);
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    cjet::CsvTable table({"case", "outcome", "final_time", "measured_growth", "error"});
    table.add_comment("config=" + cjet::hash_hex(cjet::fnv1a_hash(sweep.base_json.dump())));
    table.add_comment("cases=" + std::to_string(cases.size()));
    for (const auto& row : rows)
        table.add_row({row.name, row.outcome, cjet::format_double(row.final_time), row.growth,
                       row.error});
    table.write((root / "summary.csv").string());
    std::cout << "sweep complete: " << cases.size() << " runs, summary in "
              << (root / "summary.csv").string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"axisymmetric capillary jet: pseudospectral simulator and verification suite"};
    app.require_subcommand(1);

    std::string config_path, out_dir, suite = "all";
    int threads = 1, samples = 150;
    uint64_t seed = 0;
    double radius = 1.0, kappa = 1.0, xi_max = 1.5;

    auto* sim = app.add_subcommand("simulate", "integrate a configured run");
    sim->add_option("--config", config_path, "JSON config path")->required();
    sim->add_option("--out", out_dir, "output directory (overrides config)");
    sim->add_option("--seed", seed, "seed for random-phase initial data");

    auto* disp = app.add_subcommand("dispersion", "tabulate the linear dispersion relation");
    disp->add_option("--radius", radius, "jet radius R");
    disp->add_option("--kappa", kappa, "surface tension coefficient");
    disp->add_option("--xi-max", xi_max, "largest wavenumber");
    disp->add_option("--samples", samples, "sample count");
    disp->add_option("--out", out_dir, "output directory")->required();

    auto* ver = app.add_subcommand("verify", "run verification suites");
    ver->add_option("suite", suite, "bessel|dno|shape|energy|dispersion|gravity|paradiff|all");
    ver->add_option("--out", out_dir, "write verify.csv here");

    auto* swp = app.add_subcommand("sweep", "run a parameter sweep");
    swp->add_option("--config", config_path, "JSON sweep spec path")->required();
    swp->add_option("--out", out_dir, "output root directory");
    swp->add_option("--threads", threads, "worker pool size");
    swp->add_option("--seed", seed, "seed for random-phase initial data");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(config_path, out_dir, seed);
        if (disp->parsed()) return cmd_dispersion(radius, kappa, xi_max, samples, out_dir);
        if (ver->parsed()) return cmd_verify(suite, out_dir);
        if (swp->parsed()) return cmd_sweep(config_path, out_dir, threads, seed);
    } catch (const cjet::ConfigError& e) {
        write_error_json(out_dir, "config", e.what());
        return kExitError;
    } catch (const cjet::NoConvergence& e) {
        write_error_json(out_dir, "solver", e.what());
        return kExitError;
    } catch (const std::exception& e) {
        write_error_json(out_dir, "runtime", e.what());
        return kExitError;
    }
    return 0;
}
