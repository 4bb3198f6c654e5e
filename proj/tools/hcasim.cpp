#include "hcasim/config.hpp"
#include "hcasim/presets.hpp"
#include "hcasim/sim.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace hcasim;

std::pair<int, int> parse_ratio(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos)
        throw ConfigError("key ratio: expected FIXED:DYNAMIC, e.g. 21:49, got '" + s + "'");
    std::size_t pos_a = 0, pos_b = 0;
    int a = 0, b = 0;
    try {
        a = std::stoi(s.substr(0, colon), &pos_a);
        b = std::stoi(s.substr(colon + 1), &pos_b);
    } catch (const std::exception&) {
        throw ConfigError("key ratio: expected FIXED:DYNAMIC, e.g. 21:49, got '" + s + "'");
    }
    if (pos_a != colon || pos_b != s.size() - colon - 1 || a < 0 || b < 0)
        throw ConfigError("key ratio: expected FIXED:DYNAMIC, e.g. 21:49, got '" + s + "'");
    return {a, b};
}

void write_or_die(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << content;
}

int run_single(SimConfig cfg, const std::string& out_dir, bool dump_state) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory " + out_dir + ": " + ec.message());

    const RunResult res = run_with_state(cfg);
    const Metrics& m = res.metrics;

    {
        std::ostringstream os;
        os << std::setprecision(17);
        os << "# single run\n";
        os << "# policy " << policy_name(cfg.policy.kind) << '\n';
        os << "# seed " << cfg.seed << '\n';
        os << "# gamma0 " << cfg.gamma0 << '\n';
        os << "# ratio " << cfg.fc_channels << ':' << (cfg.total_channels - cfg.fc_channels) << '\n';
        os << "# cluster_size " << cfg.cluster_size << '\n';
        os << "# gain path_loss_exponent=" << cfg.gain.path_loss_exponent
           << " min_distance=" << cfg.gain.min_distance
           << " self_gain=" << cfg.gain.self_gain << '\n';
        os << "# noise " << cfg.noise << " power_cap " << cfg.power_cap << '\n';
        os << "# duration " << cfg.duration << " warmup " << cfg.warmup_or_default()
           << " mean_holding " << cfg.traffic.mean_holding << '\n';
        os << "value,arrivals,blocked,blocking_probability,mean_total_power,peak_total_power\n";
        os << cfg.traffic.load_multiplier << ',' << m.arrivals << ',' << m.blocked << ','
           << m.blocking_probability << ',' << m.mean_total_power << ','
           << m.peak_total_power << '\n';
        write_or_die((fs::path(out_dir) / "run.csv").string(), os.str());
    }
    {
        std::ostringstream os;
        echo_config(os, cfg);
        write_or_die((fs::path(out_dir) / "resolved.config").string(), os.str());
    }
    if (dump_state) {
        std::ostringstream alloc, power, gain;
        res.state.write_alloc_csv(alloc);
        res.state.write_power_csv(power);
        build_gain_matrix(build_grid(cfg.rows, cfg.cols), cfg.gain).write_csv(gain);
        write_or_die((fs::path(out_dir) / "alloc.csv").string(), alloc.str());
        write_or_die((fs::path(out_dir) / "power.csv").string(), power.str());
        write_or_die((fs::path(out_dir) / "gain.csv").string(), gain.str());
    }

    std::cout << std::setprecision(6)
              << "offered load: " << cfg.traffic.offered_erlangs() << " erlangs\n"
              << "arrivals:     " << m.arrivals << (m.no_arrivals ? " (none post-warmup)" : "")
              << '\n'
              << "admitted:     " << m.admitted << " (fc " << m.admitted_fc << ", dc "
              << m.admitted_dc << ")\n"
              << "blocked:      " << m.blocked << '\n'
              << "blocking:     " << m.blocking_probability << '\n'
              << "mean power:   " << m.mean_total_power << '\n'
              << "peak power:   " << m.peak_total_power << '\n'
              << "live at end:  " << m.live_at_end << '\n';
    if (cfg.audit_cir)
        std::cout << "audit violations: " << m.audit_violations << '\n';
    std::cout << "wrote " << out_dir << "/run.csv\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hybrid channel assignment simulator with minimal-power admission"};

    std::string config_path, preset_name, policy_str, ratio_str, out_dir = "out";
    std::uint64_t seed = 0;
    double gamma0 = 0.0, load_multiplier = 0.0, duration = 0.0;
    bool dump_state = false;

    app.add_option("--config", config_path, "config file (flat key = value, '#' comments)")
        ->check(CLI::ExistingFile);
    app.add_option("--preset", preset_name,
                   "experiment preset: fig3_like, fig4_like, fig5_like or fig6_like");
    app.add_option("--seed", seed, "rng seed");
    app.add_option("--gamma0", gamma0, "protection ratio");
    app.add_option("--ratio", ratio_str, "fixed:dynamic channel split, e.g. 21:49");
    app.add_option("--policy", policy_str, "admission policy: pc, fp or rd");
    app.add_option("--load-multiplier", load_multiplier, "uniform scaling of all arrival rates");
    app.add_option("--duration", duration, "simulated seconds");
    app.add_option("--out", out_dir, "output directory");
    app.add_flag("--dump-state", dump_state,
                 "also write final allocation, power and gain matrices as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (!preset_name.empty()) {
            for (const char* flag : {"--config", "--gamma0", "--ratio", "--policy",
                                     "--load-multiplier"}) {
                if (app.count(flag))
                    throw ConfigError(std::string(flag) +
                                      " cannot be combined with --preset; presets fix it");
            }
            Preset preset = make_preset(preset_name, app.count("--seed") ? seed : 1);
            if (app.count("--duration")) {
                for (PresetCurve& curve : preset.curves) {
                    curve.config.duration = duration;
                    curve.config.warmup = -1.0;
                    curve.config.validate();
                }
            }
            const auto files = run_preset(preset, out_dir);
            for (const std::string& f : files) std::cout << "wrote " << f << '\n';
            return 0;
        }

        SimConfig cfg;
        if (!config_path.empty()) {
            cfg = parse_config_file(config_path);
        } else {
            std::istringstream empty;
            cfg = parse_config(empty);
        }
        if (app.count("--seed")) cfg.seed = seed;
        if (app.count("--gamma0")) cfg.gamma0 = gamma0;
        if (app.count("--ratio")) {
            const auto [fc, dc] = parse_ratio(ratio_str);
            cfg.fc_channels = fc;
            cfg.total_channels = fc + dc;
        }
        if (app.count("--policy")) cfg.policy.kind = parse_policy(policy_str);
        if (app.count("--load-multiplier")) cfg.traffic.load_multiplier = load_multiplier;
        if (app.count("--duration")) cfg.duration = duration;
        try {
            cfg.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        return run_single(cfg, out_dir, dump_state);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
