#pragma once

#include "hcasim/hexgrid.hpp"
#include "hcasim/types.hpp"

#include <iosfwd>
#include <span>
#include <unordered_map>
#include <vector>

namespace hcasim {

// Split of the channel pool into per-cell fixed sets and a shared dynamic set.
// Fixed channels occupy ids [0, fc_channels); the rest are dynamic. Fixed
// channels are spread round-robin over the slots of a hexagonal reuse cluster,
// so two cells holding the same fixed channel are at least the cluster reuse
// distance apart.
struct ChannelPlan {
    int total_channels = 0;
    int fc_channels = 0;
    int cluster_size = 1;
    std::vector<int> cell_slot;                      // cluster slot per cell
    std::vector<std::vector<ChannelId>> fc_per_cell; // ascending channel ids

    // Minimum center distance between two cells sharing a cluster slot;
    // 0 when no such pair exists.
    double fc_reuse_distance = 0.0;

    int dc_channels() const { return total_channels - fc_channels; }
    bool is_dynamic(ChannelId l) const { return l >= fc_channels; }
    ChannelClass channel_class(ChannelId l) const {
        return is_dynamic(l) ? ChannelClass::dynamic : ChannelClass::fixed;
    }
};

// Throws std::invalid_argument if ratio_fc is not divisible by cluster_size,
// exceeds total, or cluster_size has no hexagonal reuse pattern.
ChannelPlan build_channel_plan(int total, int ratio_fc, int cluster_size,
                               const GridGeometry& geom);

struct CallRecord {
    CallId id = 0;
    CellId cell = 0;
    ChannelId channel = 0;
    ChannelClass channel_class = ChannelClass::fixed;
    double start_time = 0.0;
    double departure_time = 0.0;
};

struct CellPower {
    CellId cell = 0;
    double power = 0.0;
};

// Authoritative network state: allocation matrix, power matrix, and the live
// call registry, kept mutually consistent by construction. Power is nonzero
// exactly where a call is live, and a mutation touches only the channel
// column it names. Single-writer; copies serve as immutable snapshots.
class NetworkState {
public:
    NetworkState(ChannelPlan plan, int cells);

    int cells() const { return cells_; }
    int channels() const { return plan_.total_channels; }
    const ChannelPlan& plan() const { return plan_; }

    bool in_use(CellId i, ChannelId l) const { return alloc_[idx(i, l)] != 0; }
    double power(CellId i, ChannelId l) const { return power_[idx(i, l)]; }

    // Cells with a live call on channel l, ascending.
    const std::vector<CellId>& cochannel_cells(ChannelId l) const;

    // Dynamic channels currently not in use in cell k, ascending.
    std::vector<ChannelId> free_dc_channels(CellId k) const;

    // Number of live calls in cell k.
    int calls_in_cell(CellId k) const { return cell_calls_[static_cast<std::size_t>(k)]; }

    std::size_t live_calls() const { return calls_.size(); }
    const CallRecord& call(CallId id) const;
    const std::unordered_map<CallId, CallRecord>& registry() const { return calls_; }

    // Admits the call and installs the given powers on the call's channel
    // column; channel_powers must cover exactly the prior occupants plus the
    // new cell, all positive. Throws on a double-occupy.
    void occupy(const CallRecord& call, std::span<const CellPower> channel_powers);

    // Removes a live call, zeroing its own power entry only. Remaining
    // co-channel powers are left for the caller to re-solve if desired.
    CallRecord release(CallId id);

    // Rewrites the power column of channel l; powers must cover exactly the
    // current occupants of l.
    void set_channel_powers(ChannelId l, std::span<const CellPower> powers);

    // Sum of all live transmit powers.
    double total_power() const;

    void write_alloc_csv(std::ostream& os) const;
    void write_power_csv(std::ostream& os) const;

private:
    std::size_t idx(CellId i, ChannelId l) const {
        return static_cast<std::size_t>(i) * plan_.total_channels + l;
    }

    ChannelPlan plan_;
    int cells_ = 0;
    std::vector<std::uint8_t> alloc_;          // cells x channels
    std::vector<double> power_;                // cells x channels
    std::vector<std::vector<CellId>> occupants_; // per channel, ascending
    std::vector<int> cell_calls_;
    std::unordered_map<CallId, CallRecord> calls_;
};

} // namespace hcasim
