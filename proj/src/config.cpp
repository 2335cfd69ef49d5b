#include "cjet/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

#include "cjet/errors.hpp"
#include "cjet/report.hpp"
#include "cjet/snapshot.hpp"

namespace cjet {

namespace {

std::vector<ModeSpec> parse_modes(const nlohmann::json& j) {
    std::vector<ModeSpec> out;
    for (const auto& m : j) {
        ModeSpec spec;
        spec.amplitude = m.at("amplitude").get<double>();
        spec.mode = m.at("mode").get<int>();
        if (m.contains("phase")) {
            if (m["phase"].is_string()) {
                if (m["phase"].get<std::string>() != "random")
                    throw ConfigError("phase must be a number or \"random\"");
                spec.random_phase = true;
            } else {
                spec.phase = m["phase"].get<double>();
            }
        }
        out.push_back(spec);
    }
    return out;
}

nlohmann::json modes_json(const std::vector<ModeSpec>& modes) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& m : modes) {
        nlohmann::json e = {{"amplitude", m.amplitude}, {"mode", m.mode}};
        if (m.random_phase)
            e["phase"] = "random";
        else
            e["phase"] = m.phase;
        j.push_back(e);
    }
    return j;
}

} // namespace

SimConfig parse_sim_config(const nlohmann::json& j) {
    SimConfig c;
    const auto& grid = j.at("grid");
    c.half_period = grid.at("L").get<double>();
    c.point_count = grid.at("N").get<int>();

    const auto& phys = j.at("physics");
    c.radius = phys.at("R").get<double>();
    c.kappa = phys.value("kappa", 1.0);
    c.gravity = phys.value("g", 0.0);

    if (j.contains("initial")) {
        const auto& init = j["initial"];
        if (init.contains("snapshot")) c.snapshot_path = init["snapshot"].get<std::string>();
        if (init.contains("eta_modes")) c.eta_modes = parse_modes(init["eta_modes"]);
        if (init.contains("psi_modes")) c.psi_modes = parse_modes(init["psi_modes"]);
    }

    if (j.contains("integrator")) {
        const auto& integ = j["integrator"];
        c.dt = integ.value("dt", 0.0);
        c.cfl = integ.value("cfl", 0.5);
        c.horizon = integ.value("horizon", 0.0);
        c.save_every = integ.value("save_every", 1);
        c.mollifier_eps = integ.value("mollifier_eps", 0.0);
        c.mollifier_rhs_eps = integ.value("mollifier_rhs_eps", 0.0);
        std::string mode = integ.value("mollifier_mode", "flat");
        if (mode == "flat")
            c.mollifier_mode = MollifierMode::flat;
        else if (mode == "full")
            c.mollifier_mode = MollifierMode::full;
        else
            throw ConfigError("mollifier_mode must be flat or full");
        c.dealias = integ.value("dealias", true);
        c.pinch_floor = integ.value("pinch_floor", 1e-6);
    }

    if (j.contains("solver")) {
        c.solver_cells = j["solver"].value("M", 0);
        c.solver_tol = j["solver"].value("tol", 1e-10);
    }

    if (j.contains("diagnostics")) {
        c.sobolev_index = j["diagnostics"].value("sobolev_index", 3.0);
        if (j["diagnostics"].contains("tracked_modes"))
            c.tracked_modes = j["diagnostics"]["tracked_modes"].get<std::vector<int>>();
    }

    if (j.contains("output")) {
        c.out_dir = j["output"].value("dir", "out");
        if (j["output"].contains("formats"))
            c.formats = j["output"]["formats"].get<std::vector<std::string>>();
    }
    if (c.formats.empty()) c.formats = {"csv", "svg", "cjsnap"};

    // validation
    if (!(c.half_period > 0.0)) throw ConfigError("grid.L must be positive");
    if (c.point_count < 8 || c.point_count % 2 != 0)
        throw ConfigError("grid.N must be even and >= 8");
    if (!(c.radius > 0.0)) throw ConfigError("physics.R must be positive");
    if (c.kappa < 0.0) throw ConfigError("physics.kappa must be nonnegative");
    if (c.horizon < 0.0) throw ConfigError("integrator.horizon must be nonnegative");
    if (c.dt < 0.0) throw ConfigError("integrator.dt must be nonnegative");
    if (c.dt == 0.0 && c.horizon > 0.0 && !(c.kappa > 0.0))
        throw ConfigError("auto-CFL needs kappa > 0; set integrator.dt");
    if (c.save_every < 1) throw ConfigError("integrator.save_every must be >= 1");
    if (!(c.pinch_floor > 0.0) || c.pinch_floor >= 1.0)
        throw ConfigError("integrator.pinch_floor must be in (0,1)");
    if (!(c.solver_tol > 0.0)) throw ConfigError("solver.tol must be positive");
    if (c.solver_cells < 0) throw ConfigError("solver.M must be nonnegative");
    for (const auto& m : c.eta_modes)
        if (std::abs(m.mode) > c.point_count / 2 - 1)
            throw ConfigError("eta mode not resolved on this grid");
    for (const auto& m : c.psi_modes)
        if (std::abs(m.mode) > c.point_count / 2 - 1)
            throw ConfigError("psi mode not resolved on this grid");
    for (int m : c.tracked_modes)
        if (std::abs(m) > c.point_count / 2 - 1)
            throw ConfigError("tracked mode not resolved on this grid");
    return c;
}

SimConfig load_sim_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config: " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return parse_sim_config(j);
}

nlohmann::json sim_config_json(const SimConfig& c) {
    nlohmann::json init;
    if (!c.snapshot_path.empty()) init["snapshot"] = c.snapshot_path;
    init["eta_modes"] = modes_json(c.eta_modes);
    init["psi_modes"] = modes_json(c.psi_modes);
    return nlohmann::json{
        {"grid", {{"L", c.half_period}, {"N", c.point_count}}},
        {"physics", {{"R", c.radius}, {"kappa", c.kappa}, {"g", c.gravity}}},
        {"initial", init},
        {"integrator",
         {{"dt", c.dt},
          {"cfl", c.cfl},
          {"horizon", c.horizon},
          {"save_every", c.save_every},
          {"mollifier_eps", c.mollifier_eps},
          {"mollifier_rhs_eps", c.mollifier_rhs_eps},
          {"mollifier_mode", c.mollifier_mode == MollifierMode::flat ? "flat" : "full"},
          {"dealias", c.dealias},
          {"pinch_floor", c.pinch_floor}}},
        {"solver", {{"M", c.solver_cells}, {"tol", c.solver_tol}}},
        {"diagnostics",
         {{"sobolev_index", c.sobolev_index}, {"tracked_modes", c.tracked_modes}}},
        {"output", {{"dir", c.out_dir}, {"formats", c.formats}}},
    };
}

std::string config_hash(const SimConfig& c) {
    return hash_hex(fnv1a_hash(sim_config_json(c).dump()));
}

RunSpec build_run_spec(const SimConfig& c, uint64_t seed) {
    RunSpec spec;
    GridPtr grid = make_grid(c.half_period, c.point_count);

    if (!c.snapshot_path.empty()) {
        spec.initial = read_snapshot(c.snapshot_path);
        if (!(*spec.initial.eta.grid() == *grid))
            throw ConfigError("snapshot grid does not match config grid");
        spec.initial.radius = c.radius;
        spec.initial.kappa = c.kappa;
        spec.initial.gravity = c.gravity;
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);
        auto build = [&](const std::vector<ModeSpec>& modes, double base) {
            RealField f(grid, base);
            for (const auto& m : modes) {
                double phase = m.random_phase ? uniform(rng) : m.phase;
                double xi = std::numbers::pi * m.mode / c.half_period;
                for (int j = 0; j < grid->size(); ++j)
                    f[j] += m.amplitude * std::cos(xi * grid->node(j) + phase);
            }
            return f;
        };
        spec.initial.eta = build(c.eta_modes, c.radius);
        spec.initial.psi = build(c.psi_modes, 0.0);
        spec.initial.t = 0.0;
        spec.initial.psi_slope = 0.0;
        spec.initial.radius = c.radius;
        spec.initial.kappa = c.kappa;
        spec.initial.gravity = c.gravity;
    }

    if (!(min_value(spec.initial.eta) > c.pinch_floor * c.radius))
        throw ConfigError("initial surface at or below the pinch-off floor");

    spec.dt = c.dt;
    spec.cfl = c.cfl;
    spec.horizon = c.horizon;
    spec.save_every = c.save_every;
    spec.step.solver.cells = c.solver_cells;
    spec.step.solver.tol = c.solver_tol;
    spec.step.dealias_rhs = c.dealias;
    spec.step.mollify_step_eps = c.mollifier_eps;
    spec.step.mollify_rhs_eps = c.mollifier_rhs_eps;
    spec.step.mollify_mode = c.mollifier_mode;
    spec.step.pinch_floor = c.pinch_floor;
    spec.sobolev_index = c.sobolev_index;
    spec.tracked_modes = c.tracked_modes;
    if (spec.tracked_modes.empty()) {
        for (const auto& m : c.eta_modes) spec.tracked_modes.push_back(m.mode);
        if (spec.tracked_modes.empty()) spec.tracked_modes.push_back(1);
    }
    return spec;
}

std::vector<SweepCase> SweepSpec::expand() const {
    struct Raw {
        std::string name;
        nlohmann::json config;
    };
    std::vector<Raw> cases{{"", base_json}};
    for (const auto& [path, values] : axes) {
        std::vector<Raw> next;
        for (const auto& c : cases) {
            for (const auto& v : values) {
                nlohmann::json j = c.config;
                j[nlohmann::json::json_pointer(path)] = v;
                std::string label = path.substr(path.find_last_of('/') + 1) + "=" +
                                    (v.is_string() ? v.get<std::string>() : v.dump());
                next.push_back({c.name.empty() ? label : c.name + "_" + label, j});
            }
        }
        cases = std::move(next);
        if (static_cast<int>(cases.size()) > cap)
            throw ConfigError("sweep cartesian product exceeds the cap");
    }
    std::vector<SweepCase> out;
    out.reserve(cases.size());
    for (auto& c : cases)
        out.push_back({c.name.empty() ? "base" : c.name, parse_sim_config(c.config)});
    return out;
}

SweepSpec parse_sweep_spec(const nlohmann::json& j) {
    SweepSpec s;
    s.base_json = j.at("base");
    s.base = parse_sim_config(s.base_json);
    s.cap = j.value("cap", 64);
    if (j.contains("axes")) {
        for (const auto& axis : j["axes"]) {
            std::string path = axis.at("path").get<std::string>();
            if (path.empty() || path[0] != '/')
                throw ConfigError("axis path must be a JSON pointer starting with /");
            s.axes.emplace_back(path, axis.at("values"));
        }
    }
    if (s.cap < 1) throw ConfigError("sweep cap must be positive");
    return s;
}

SweepSpec load_sweep_spec(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open sweep spec: " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("sweep parse error: ") + e.what());
    }
    return parse_sweep_spec(j);
}

} // namespace cjet
