#include "hcasim/presets.hpp"

#include "hcasim/config.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace hcasim {

namespace {

const std::vector<double> kLoadSweep{1.0, 1.25, 1.5, 1.75, 2.0};
const std::vector<double> kGammaSweep{1.0, 2.0, 4.0, 8.0};
const std::vector<double> kRatioFcValues{21.0, 35.0, 49.0};

SimConfig benchmark_base(std::uint64_t seed) {
    SimConfig cfg;
    cfg.seed = seed;
    cfg.traffic = default_traffic(cfg.rows, cfg.cols);
    return cfg;
}

PresetCurve policy_curve(std::string name, std::uint64_t seed, int fc, PolicyKind kind) {
    PresetCurve curve;
    curve.name = std::move(name);
    curve.config = benchmark_base(seed);
    curve.config.fc_channels = fc;
    curve.config.policy.kind = kind;
    curve.axis = SweepAxis::load_multiplier;
    curve.values = kLoadSweep;
    return curve;
}

} // namespace

Preset preset_fig3_like(std::uint64_t seed) {
    Preset p;
    p.name = "fig3_like";
    p.description = "blocking vs offered load, ratio 21:49, policies pc/fp/rd";
    p.curves = {policy_curve("fig3_pc", seed, 21, PolicyKind::optimal_pc),
                policy_curve("fig3_fp", seed, 21, PolicyKind::fixed_power),
                policy_curve("fig3_rd", seed, 21, PolicyKind::reuse_distance)};
    return p;
}

Preset preset_fig4_like(std::uint64_t seed) {
    Preset p;
    p.name = "fig4_like";
    p.description = "blocking vs offered load, ratio 49:21, policies pc/fp/rd";
    p.curves = {policy_curve("fig4_pc", seed, 49, PolicyKind::optimal_pc),
                policy_curve("fig4_fp", seed, 49, PolicyKind::fixed_power),
                policy_curve("fig4_rd", seed, 49, PolicyKind::reuse_distance)};
    return p;
}

Preset preset_fig5_like(std::uint64_t seed) {
    Preset p;
    p.name = "fig5_like";
    p.description = "blocking vs offered load under pc for fixed:dynamic splits 21:49, 35:35, 49:21";
    for (double fc : kRatioFcValues) {
        PresetCurve curve = policy_curve("", seed, static_cast<int>(fc), PolicyKind::optimal_pc);
        curve.name = "fig5_ratio" + std::to_string(static_cast<int>(fc));
        p.curves.push_back(std::move(curve));
    }
    return p;
}

Preset preset_fig6_like(std::uint64_t seed) {
    Preset p;
    p.name = "fig6_like";
    p.description = "blocking vs protection ratio under pc, ratio 21:49, load 1.5";
    PresetCurve curve;
    curve.name = "fig6_pc";
    curve.config = benchmark_base(seed);
    curve.config.fc_channels = 21;
    curve.config.policy.kind = PolicyKind::optimal_pc;
    curve.config.traffic.load_multiplier = 1.5;
    curve.axis = SweepAxis::gamma0;
    curve.values = kGammaSweep;
    p.curves.push_back(std::move(curve));
    return p;
}

std::vector<std::string> preset_names() {
    return {"fig3_like", "fig4_like", "fig5_like", "fig6_like"};
}

Preset make_preset(const std::string& name, std::uint64_t seed) {
    if (name == "fig3_like") return preset_fig3_like(seed);
    if (name == "fig4_like") return preset_fig4_like(seed);
    if (name == "fig5_like") return preset_fig5_like(seed);
    if (name == "fig6_like") return preset_fig6_like(seed);
    throw std::invalid_argument("unknown preset: " + name);
}

namespace {

const char* axis_name(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::load_multiplier: return "load_multiplier";
    case SweepAxis::gamma0: return "gamma0";
    case SweepAxis::ratio: return "ratio";
    }
    return "?";
}

void write_comment_header(std::ostream& os, const PresetCurve& curve) {
    const SimConfig& cfg = curve.config;
    os << std::setprecision(17);
    os << "# curve " << curve.name << '\n';
    os << "# axis " << axis_name(curve.axis) << '\n';
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
}

} // namespace

std::vector<std::string> run_preset(const Preset& preset, const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory " + out_dir + ": " + ec.message());

    std::vector<std::string> written;
    for (const PresetCurve& curve : preset.curves) {
        const auto points = sweep(curve.config, curve.axis, curve.values);

        const std::string csv_path = (fs::path(out_dir) / (curve.name + ".csv")).string();
        {
            std::ofstream os(csv_path);
            if (!os) throw std::runtime_error("cannot write " + csv_path);
            write_comment_header(os, curve);
            write_sweep_csv(os, points);
        }
        written.push_back(csv_path);

        const std::string dat_path = (fs::path(out_dir) / (curve.name + ".dat")).string();
        {
            std::ofstream os(dat_path);
            if (!os) throw std::runtime_error("cannot write " + dat_path);
            os << std::setprecision(17);
            os << "# " << axis_name(curve.axis) << " blocking_probability\n";
            for (const SweepPoint& p : points)
                os << p.value << ' ' << p.metrics.blocking_probability << '\n';
        }
        written.push_back(dat_path);

        const std::string cfg_path = (fs::path(out_dir) / (curve.name + ".config")).string();
        {
            std::ofstream os(cfg_path);
            if (!os) throw std::runtime_error("cannot write " + cfg_path);
            echo_config(os, curve.config);
        }
        written.push_back(cfg_path);
    }
    return written;
}

} // namespace hcasim
