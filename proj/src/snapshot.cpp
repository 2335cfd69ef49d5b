#include "cjet/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "cjet/errors.hpp"

namespace cjet {

namespace {

void put_f64_le(std::ostream& out, double v) {
    uint64_t bits = std::bit_cast<uint64_t>(v);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64_le(std::istream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<uint64_t>(b[i]) << (8 * i);
    return std::bit_cast<double>(bits);
}

} // namespace

void write_snapshot(const std::string& path, const JetState& state) {
    const GridSpec& g = *state.eta.grid();
    nlohmann::json header = {
        {"L", g.half_period()}, {"N", g.size()},   {"time", state.t},
        {"R", state.radius},    {"kappa", state.kappa}, {"g", state.gravity},
        {"slope", state.psi_slope},
    };
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open snapshot file for writing: " + path);
    out << header.dump() << '\n';
    for (int j = 0; j < g.size(); ++j) put_f64_le(out, state.eta[j]);
    for (int j = 0; j < g.size(); ++j) put_f64_le(out, state.psi[j]);
    if (!out) throw ConfigError("snapshot write failed: " + path);
}

JetState read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open snapshot file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("snapshot missing header: " + path);
    nlohmann::json header = nlohmann::json::parse(line);

    GridPtr grid = make_grid(header.at("L").get<double>(), header.at("N").get<int>());
    JetState state;
    state.t = header.at("time").get<double>();
    state.radius = header.at("R").get<double>();
    state.kappa = header.at("kappa").get<double>();
    state.gravity = header.at("g").get<double>();
    state.psi_slope = header.at("slope").get<double>();
    state.eta = RealField(grid);
    state.psi = RealField(grid);
    for (int j = 0; j < grid->size(); ++j) state.eta[j] = get_f64_le(in);
    for (int j = 0; j < grid->size(); ++j) state.psi[j] = get_f64_le(in);
    if (!in) throw ConfigError("snapshot truncated: " + path);
    return state;
}

} // namespace cjet
