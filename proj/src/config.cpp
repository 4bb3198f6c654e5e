#include "hcasim/config.hpp"

#include <cctype>
#include <climits>
#include <fstream>
#include <iomanip>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace hcasim {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double to_double(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw ConfigError("key " + key + ": expected a number, got '" + value + "'");
    }
    if (pos != value.size())
        throw ConfigError("key " + key + ": expected a number, got '" + value + "'");
    return v;
}

int to_int(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(value, &pos);
    } catch (const std::exception&) {
        throw ConfigError("key " + key + ": expected an integer, got '" + value + "'");
    }
    if (pos != value.size() || v < INT_MIN || v > INT_MAX)
        throw ConfigError("key " + key + ": expected an integer, got '" + value + "'");
    return static_cast<int>(v);
}

std::uint64_t to_seed(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(value, &pos);
    } catch (const std::exception&) {
        throw ConfigError("key " + key + ": expected an unsigned integer, got '" + value + "'");
    }
    if (pos != value.size() || value.find('-') != std::string::npos)
        throw ConfigError("key " + key + ": expected an unsigned integer, got '" + value + "'");
    return v;
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError("key " + key + ": expected true or false, got '" + value + "'");
}

std::vector<double> to_rate_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::string item;
    std::istringstream ss(value);
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            throw ConfigError("key " + key + ": empty entry in rate list");
        out.push_back(to_double(key, item));
    }
    if (out.empty())
        throw ConfigError("key " + key + ": empty rate list");
    return out;
}

} // namespace

std::string policy_name(PolicyKind kind) {
    switch (kind) {
    case PolicyKind::optimal_pc: return "pc";
    case PolicyKind::fixed_power: return "fp";
    case PolicyKind::reuse_distance: return "rd";
    }
    return "?";
}

PolicyKind parse_policy(const std::string& name) {
    if (name == "pc" || name == "optimal_pc") return PolicyKind::optimal_pc;
    if (name == "fp" || name == "fixed_power") return PolicyKind::fixed_power;
    if (name == "rd" || name == "reuse_distance") return PolicyKind::reuse_distance;
    throw ConfigError("key policy: expected pc, fp or rd, got '" + name + "'");
}

SimConfig parse_config(std::istream& is) {
    SimConfig cfg;
    std::optional<double> uniform_rate;
    std::optional<std::vector<double>> rate_list;

    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value, got '" +
                              line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": missing key");

        if (key == "rows") cfg.rows = to_int(key, value);
        else if (key == "cols") cfg.cols = to_int(key, value);
        else if (key == "path_loss_exponent") cfg.gain.path_loss_exponent = to_double(key, value);
        else if (key == "min_distance") cfg.gain.min_distance = to_double(key, value);
        else if (key == "self_gain") cfg.gain.self_gain = to_double(key, value);
        else if (key == "total_channels") cfg.total_channels = to_int(key, value);
        else if (key == "fc_channels") cfg.fc_channels = to_int(key, value);
        else if (key == "cluster_size") cfg.cluster_size = to_int(key, value);
        else if (key == "gamma0") cfg.gamma0 = to_double(key, value);
        else if (key == "noise") cfg.noise = to_double(key, value);
        else if (key == "power_cap") cfg.power_cap = to_double(key, value);
        else if (key == "policy") cfg.policy.kind = parse_policy(value);
        else if (key == "p_fixed") cfg.policy.p_fixed = to_double(key, value);
        else if (key == "d_reuse") cfg.policy.d_reuse = to_double(key, value);
        else if (key == "seed") cfg.seed = to_seed(key, value);
        else if (key == "duration") cfg.duration = to_double(key, value);
        else if (key == "warmup") cfg.warmup = to_double(key, value);
        else if (key == "mean_holding") cfg.traffic.mean_holding = to_double(key, value);
        else if (key == "load_multiplier") cfg.traffic.load_multiplier = to_double(key, value);
        else if (key == "arrival_rate") uniform_rate = to_double(key, value);
        else if (key == "arrival_rates") rate_list = to_rate_list(key, value);
        else if (key == "audit_cir") cfg.audit_cir = to_bool(key, value);
        else throw ConfigError("unknown key: " + key);
    }

    if (uniform_rate && rate_list)
        throw ConfigError("arrival_rate and arrival_rates are mutually exclusive");
    const std::size_t cells = static_cast<std::size_t>(cfg.rows) * cfg.cols;
    if (rate_list) cfg.traffic.arrival_rates = std::move(*rate_list);
    else if (uniform_rate) cfg.traffic.arrival_rates.assign(cells, *uniform_rate);
    else cfg.traffic.arrival_rates = default_traffic(cfg.rows, cfg.cols).arrival_rates;

    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

SimConfig parse_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        throw ConfigError("cannot read config file: " + path);
    return parse_config(is);
}

void echo_config(std::ostream& os, const SimConfig& cfg) {
    os << std::setprecision(17);
    os << "# resolved configuration\n";
    os << "rows = " << cfg.rows << '\n';
    os << "cols = " << cfg.cols << '\n';
    os << "path_loss_exponent = " << cfg.gain.path_loss_exponent << '\n';
    os << "min_distance = " << cfg.gain.min_distance << '\n';
    os << "self_gain = " << cfg.gain.self_gain << '\n';
    os << "total_channels = " << cfg.total_channels << '\n';
    os << "fc_channels = " << cfg.fc_channels << '\n';
    os << "cluster_size = " << cfg.cluster_size << '\n';
    os << "gamma0 = " << cfg.gamma0 << '\n';
    os << "noise = " << cfg.noise << '\n';
    os << "power_cap = " << cfg.power_cap << '\n';
    os << "policy = " << policy_name(cfg.policy.kind) << '\n';
    os << "p_fixed = " << cfg.policy.p_fixed << '\n';
    os << "d_reuse = " << cfg.policy.d_reuse << '\n';
    os << "seed = " << cfg.seed << '\n';
    os << "duration = " << cfg.duration << '\n';
    os << "warmup = " << cfg.warmup_or_default() << '\n';
    os << "mean_holding = " << cfg.traffic.mean_holding << '\n';
    os << "load_multiplier = " << cfg.traffic.load_multiplier << '\n';
    os << "arrival_rates = ";
    for (std::size_t i = 0; i < cfg.traffic.arrival_rates.size(); ++i) {
        if (i) os << ',';
        os << cfg.traffic.arrival_rates[i];
    }
    os << '\n';
    os << "audit_cir = " << (cfg.audit_cir ? "true" : "false") << '\n';
}

} // namespace hcasim
