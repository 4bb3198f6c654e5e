#pragma once

#include "hcasim/sim.hpp"

#include <string>
#include <vector>

namespace hcasim {

// A preset bundles one or more sweep curves sharing a base configuration.
// Each curve becomes <out_dir>/<name>.csv plus a two-column <name>.dat.
struct PresetCurve {
    std::string name;
    SimConfig config;
    SweepAxis axis = SweepAxis::load_multiplier;
    std::vector<double> values;
};

struct Preset {
    std::string name;
    std::string description;
    std::vector<PresetCurve> curves;
};

// blocking vs offered load, fc=21 hybrid plan, policies pc / fp / rd
Preset preset_fig3_like(std::uint64_t seed);
// same comparison with the fixed-heavy 49:21 split
Preset preset_fig4_like(std::uint64_t seed);
// blocking vs load for fixed:dynamic splits 21:49, 35:35, 49:21 under pc
Preset preset_fig5_like(std::uint64_t seed);
// blocking vs protection ratio {1,2,4,8} at a fixed load under pc
Preset preset_fig6_like(std::uint64_t seed);

std::vector<std::string> preset_names();
Preset make_preset(const std::string& name, std::uint64_t seed); // throws std::invalid_argument

// Runs every curve and writes CSV/dat files plus a resolved config echo per
// curve into out_dir. Returns the list of files written.
std::vector<std::string> run_preset(const Preset& preset, const std::string& out_dir);

} // namespace hcasim
