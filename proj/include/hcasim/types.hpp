#pragma once

#include <cstdint>

namespace hcasim {

using CellId = int;
using ChannelId = int;
using CallId = std::uint64_t;

enum class ChannelClass { fixed, dynamic };

} // namespace hcasim
