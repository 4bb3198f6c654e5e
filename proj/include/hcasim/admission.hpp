#pragma once

#include "hcasim/hexgrid.hpp"
#include "hcasim/netstate.hpp"
#include "hcasim/power.hpp"
#include "hcasim/types.hpp"

#include <optional>
#include <vector>

namespace hcasim {

enum class PolicyKind {
    optimal_pc,     // minimal-power channel assignment
    fixed_power,    // every transmitter at p_fixed, first channel that passes
    reuse_distance, // geometric reuse check only
};

struct Policy {
    PolicyKind kind = PolicyKind::optimal_pc;
    double p_fixed = 10.0;
    double d_reuse = 3.0;

    bool operator==(const Policy&) const = default;
};

struct Admitted {
    ChannelId channel = 0;
    ChannelClass channel_class = ChannelClass::fixed;
    std::vector<CellPower> powers; // occupants of the channel plus the new cell
    double total_power = 0.0;
};

using AdmissionOutcome = std::optional<Admitted>;

// Fixed channels of cell k are tried first in ascending id order; the first
// feasible one wins. Otherwise every free dynamic channel is solved for
// minimal total power and the cheapest is chosen, ties to the lowest id.
AdmissionOutcome admit_optimal(const NetworkState& state, const GainMatrix& gains,
                               const QosParams& qos, CellId k);

// All transmitters on a candidate channel run at p_fixed; the call is placed
// on the first channel (fixed set first, then dynamic, ascending) where every
// co-channel receiver still meets the protection ratio.
AdmissionOutcome admit_fixed_power(const NetworkState& state, const GainMatrix& gains,
                                   const QosParams& qos, CellId k, double p_fixed);

// A candidate channel is acceptable iff every cell already using it is at
// least d_reuse away from k. Power is recorded as p_fixed for bookkeeping.
AdmissionOutcome admit_reuse_distance(const NetworkState& state, const GridGeometry& geom,
                                      CellId k, double d_reuse, double p_fixed);

AdmissionOutcome admit(const NetworkState& state, const GridGeometry& geom,
                       const GainMatrix& gains, const QosParams& qos,
                       const Policy& policy, CellId k);

// Removes the call; under optimal_pc the remaining co-channel calls are
// re-solved to their new minimum (always feasible, powers only drop).
CallRecord release_call(NetworkState& state, const GainMatrix& gains,
                        const QosParams& qos, const Policy& policy, CallId id);

} // namespace hcasim
