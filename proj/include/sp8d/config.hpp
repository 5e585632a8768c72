#pragma once

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sp8d/montecarlo.hpp"

namespace sp8d {

/// Configuration file problems map to CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Sweep grids live beside the per-point simulation parameters.
struct RunConfig {
    SimConfig sim;
    std::vector<double> powers_dbm = {-11, -10, -9, -8, -7, -6, -5, -4, -3};
    std::vector<int> span_counts = {10, 20, 30, 40, 50, 60, 70, 80, 90};
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
    std::istringstream is(value);
    T out;
    is >> out;
    if (is.fail() || !(is >> std::ws).eof())
        throw ConfigError("config key '" + key + "': cannot parse value '" + value + "'");
    return out;
}

template <typename T>
std::vector<T> parse_list(const std::string& key, const std::string& value) {
    std::vector<T> out;
    std::istringstream is(value);
    std::string item;
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_number<T>(key, item));
    }
    if (out.empty()) throw ConfigError("config key '" + key + "': empty list");
    return out;
}

}  // namespace detail

/// Flat key=value format; '#' starts a comment, unknown keys are errors.
inline std::map<std::string, std::string> parse_key_values(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        if (!kv.emplace(key, value).second)
            throw ConfigError("config key '" + key + "': duplicated");
    }
    return kv;
}

inline RunConfig run_config_from_key_values(const std::map<std::string, std::string>& kv) {
    static const std::set<std::string> known = {
        "format",        "baud_hz",       "sps",
        "rolloff",       "channels",      "grid_hz",
        "seq_log2",      "training_symbols", "spans",
        "span_km",       "alpha_db_km",   "d_ps_nm_km",
        "gamma_w_km",    "step_km",       "nf_db",
        "noise_spans",   "power_dbm",     "powers_dbm",
        "span_counts",   "seed",          "realization_cap",
        "min_errors",    "realization_batch"};
    for (const auto& [key, value] : kv)
        if (!known.count(key)) throw ConfigError("config key '" + key + "': unknown key");

    RunConfig rc;
    using detail::parse_list;
    using detail::parse_number;
    const auto get = [&](const char* key) -> const std::string* {
        auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };
    if (auto* v = get("format")) rc.sim.format = format_from_string(*v);
    if (auto* v = get("baud_hz")) rc.sim.baud_hz = parse_number<double>("baud_hz", *v);
    if (auto* v = get("sps")) rc.sim.sps = parse_number<int>("sps", *v);
    if (auto* v = get("rolloff")) rc.sim.rolloff = parse_number<double>("rolloff", *v);
    if (auto* v = get("channels")) rc.sim.channels = parse_number<int>("channels", *v);
    if (auto* v = get("grid_hz")) rc.sim.grid_hz = parse_number<double>("grid_hz", *v);
    if (auto* v = get("seq_log2")) rc.sim.seq_log2 = parse_number<int>("seq_log2", *v);
    if (auto* v = get("training_symbols"))
        rc.sim.training_symbols = parse_number<int>("training_symbols", *v);
    if (auto* v = get("spans")) rc.sim.link.spans = parse_number<int>("spans", *v);
    if (auto* v = get("span_km")) rc.sim.link.span.length_km = parse_number<double>("span_km", *v);
    if (auto* v = get("alpha_db_km"))
        rc.sim.link.span.alpha_db_km = parse_number<double>("alpha_db_km", *v);
    if (auto* v = get("d_ps_nm_km"))
        rc.sim.link.span.d_ps_nm_km = parse_number<double>("d_ps_nm_km", *v);
    if (auto* v = get("gamma_w_km"))
        rc.sim.link.span.gamma_w_km = parse_number<double>("gamma_w_km", *v);
    if (auto* v = get("step_km")) rc.sim.link.span.step_km = parse_number<double>("step_km", *v);
    if (auto* v = get("nf_db")) rc.sim.link.nf_db = parse_number<double>("nf_db", *v);
    if (auto* v = get("noise_spans")) rc.sim.link.noise_spans = parse_number<int>("noise_spans", *v);
    if (auto* v = get("power_dbm")) rc.sim.power_dbm = parse_number<double>("power_dbm", *v);
    if (auto* v = get("powers_dbm")) rc.powers_dbm = parse_list<double>("powers_dbm", *v);
    if (auto* v = get("span_counts")) rc.span_counts = parse_list<int>("span_counts", *v);
    if (auto* v = get("seed")) rc.sim.seed = parse_number<std::uint64_t>("seed", *v);
    if (auto* v = get("realization_cap"))
        rc.sim.realization_cap = parse_number<int>("realization_cap", *v);
    if (auto* v = get("min_errors")) rc.sim.min_errors = parse_number<int>("min_errors", *v);
    if (auto* v = get("realization_batch"))
        rc.sim.realization_batch = parse_number<int>("realization_batch", *v);
    return rc;
}

inline RunConfig run_config_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return run_config_from_key_values(parse_key_values(in));
}

/// Canonical serialization; parse(serialize(x)) == x keys included.
inline std::string serialize(const RunConfig& rc) {
    std::ostringstream os;
    os.precision(17);
    os << "format = " << to_string(rc.sim.format) << "\n";
    os << "baud_hz = " << rc.sim.baud_hz << "\n";
    os << "sps = " << rc.sim.sps << "\n";
    os << "rolloff = " << rc.sim.rolloff << "\n";
    os << "channels = " << rc.sim.channels << "\n";
    os << "grid_hz = " << rc.sim.grid_hz << "\n";
    os << "seq_log2 = " << rc.sim.seq_log2 << "\n";
    os << "training_symbols = " << rc.sim.training_symbols << "\n";
    os << "spans = " << rc.sim.link.spans << "\n";
    os << "span_km = " << rc.sim.link.span.length_km << "\n";
    os << "alpha_db_km = " << rc.sim.link.span.alpha_db_km << "\n";
    os << "d_ps_nm_km = " << rc.sim.link.span.d_ps_nm_km << "\n";
    os << "gamma_w_km = " << rc.sim.link.span.gamma_w_km << "\n";
    os << "step_km = " << rc.sim.link.span.step_km << "\n";
    os << "nf_db = " << rc.sim.link.nf_db << "\n";
    os << "noise_spans = " << rc.sim.link.noise_spans << "\n";
    os << "power_dbm = " << rc.sim.power_dbm << "\n";
    const auto join = [&os](const auto& v) {
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    };
    os << "powers_dbm = ";
    join(rc.powers_dbm);
    os << "\nspan_counts = ";
    join(rc.span_counts);
    os << "\nseed = " << rc.sim.seed << "\n";
    os << "realization_cap = " << rc.sim.realization_cap << "\n";
    os << "min_errors = " << rc.sim.min_errors << "\n";
    os << "realization_batch = " << rc.sim.realization_batch << "\n";
    return os.str();
}

}  // namespace sp8d
