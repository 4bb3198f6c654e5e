#pragma once

#include "hcasim/sim.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace hcasim {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat key=value format, '#' comments, one pair per line. Unknown keys are
// an error. Throws ConfigError naming the offending key.
SimConfig parse_config(std::istream& is);
SimConfig parse_config_file(const std::string& path);

// Writes every effective setting explicitly, doubles at full precision, so
// parse(echo(c)) reproduces c.
void echo_config(std::ostream& os, const SimConfig& config);

std::string policy_name(PolicyKind kind);
PolicyKind parse_policy(const std::string& name); // throws ConfigError

} // namespace hcasim
