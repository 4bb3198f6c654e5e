#include "hcasim/netstate.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace hcasim {

namespace {

// Hexagonal reuse cluster sizes are exactly the Loeschian numbers
// n = i^2 + i*j + j^2; the reuse sublattice is generated by (i, j) and
// (-j, i+j), and every vector in it has axial length sqrt(n) or more.
bool loeschian_decomposition(int n, int& i_out, int& j_out) {
    for (int i = 0; i * i <= n; ++i)
        for (int j = i; i * i + i * j + j * j <= n; ++j)
            if (i * i + i * j + j * j == n) {
                i_out = i;
                j_out = j;
                return true;
            }
    return false;
}

// (p, q) lies in the reuse sublattice iff A^-1 (p, q) is integral, with A the
// generator matrix; n * A^-1 has the integer rows below.
bool in_reuse_lattice(int p, int q, int i, int j, int n) {
    const int r1 = ((i + j) * p + j * q) % n;
    const int r2 = (-j * p + i * q) % n;
    return r1 == 0 && r2 == 0;
}

} // namespace

ChannelPlan build_channel_plan(int total, int ratio_fc, int cluster_size,
                               const GridGeometry& geom) {
    if (total < 1)
        throw std::invalid_argument("total_channels must be positive");
    if (ratio_fc < 0 || ratio_fc > total)
        throw std::invalid_argument("fc_channels must lie in [0, total_channels]");
    if (cluster_size < 1)
        throw std::invalid_argument("cluster_size must be positive");
    if (ratio_fc % cluster_size != 0)
        throw std::invalid_argument(
            "fc_channels (" + std::to_string(ratio_fc) +
            ") must be divisible by cluster_size (" + std::to_string(cluster_size) +
            ") so every cluster slot gets an equal share");
    int gi = 0, gj = 0;
    if (!loeschian_decomposition(cluster_size, gi, gj))
        throw std::invalid_argument(
            "cluster_size " + std::to_string(cluster_size) +
            " is not a hexagonal reuse cluster size (needs i*i + i*j + j*j form)");
    if (geom.cell_count() < 1)
        throw std::invalid_argument("grid has no cells");

    ChannelPlan plan;
    plan.total_channels = total;
    plan.fc_channels = ratio_fc;
    plan.cluster_size = cluster_size;

    const int cells = geom.cell_count();
    plan.cell_slot.resize(cells);
    plan.fc_per_cell.resize(cells);

    // Slot = coset of the cell in the grid modulo the reuse sublattice,
    // numbered in order of first appearance. Cells share a slot exactly when
    // their offset lies in the sublattice, i.e. at distance >= sqrt(n).
    std::vector<std::pair<int, int>> reps;
    for (int b = 0; b < geom.rows; ++b) {
        for (int a = 0; a < geom.cols; ++a) {
            const CellId id = geom.cell_at(b, a);
            int slot = -1;
            for (std::size_t r = 0; r < reps.size(); ++r) {
                if (in_reuse_lattice(a - reps[r].first, b - reps[r].second, gi, gj,
                                     cluster_size)) {
                    slot = static_cast<int>(r);
                    break;
                }
            }
            if (slot < 0) {
                slot = static_cast<int>(reps.size());
                reps.emplace_back(a, b);
            }
            plan.cell_slot[id] = slot;
            for (ChannelId c = slot; c < ratio_fc; c += cluster_size)
                plan.fc_per_cell[id].push_back(c);
        }
    }

    double min_d = std::numeric_limits<double>::infinity();
    for (CellId i = 0; i < cells; ++i)
        for (CellId j = i + 1; j < cells; ++j)
            if (plan.cell_slot[i] == plan.cell_slot[j])
                min_d = std::min(min_d, geom.distance(i, j));
    plan.fc_reuse_distance = std::isfinite(min_d) ? min_d : 0.0;
    return plan;
}

NetworkState::NetworkState(ChannelPlan plan, int cells)
    : plan_(std::move(plan)), cells_(cells) {
    if (cells < 1)
        throw std::invalid_argument("cell count must be positive");
    if (plan_.cell_slot.size() != static_cast<std::size_t>(cells))
        throw std::invalid_argument("channel plan built for a different cell count");
    alloc_.assign(static_cast<std::size_t>(cells) * plan_.total_channels, 0);
    power_.assign(alloc_.size(), 0.0);
    occupants_.resize(static_cast<std::size_t>(plan_.total_channels));
    cell_calls_.assign(static_cast<std::size_t>(cells), 0);
}

const std::vector<CellId>& NetworkState::cochannel_cells(ChannelId l) const {
    if (l < 0 || l >= plan_.total_channels)
        throw std::out_of_range("channel id out of range: " + std::to_string(l));
    return occupants_[static_cast<std::size_t>(l)];
}

std::vector<ChannelId> NetworkState::free_dc_channels(CellId k) const {
    if (k < 0 || k >= cells_)
        throw std::out_of_range("cell id out of range: " + std::to_string(k));
    std::vector<ChannelId> out;
    out.reserve(static_cast<std::size_t>(plan_.dc_channels()));
    for (ChannelId l = plan_.fc_channels; l < plan_.total_channels; ++l)
        if (!in_use(k, l)) out.push_back(l);
    return out;
}

const CallRecord& NetworkState::call(CallId id) const {
    auto it = calls_.find(id);
    if (it == calls_.end())
        throw std::out_of_range("unknown call id: " + std::to_string(id));
    return it->second;
}

namespace {

// powers must hit each cell in `expected` exactly once, all positive.
void check_cover(std::span<const CellPower> powers, const std::vector<CellId>& expected,
                 const char* what) {
    if (powers.size() != expected.size())
        throw std::invalid_argument(std::string(what) + ": power list does not cover the channel");
    std::vector<bool> seen(expected.size(), false);
    for (const CellPower& cp : powers) {
        auto it = std::lower_bound(expected.begin(), expected.end(), cp.cell);
        if (it == expected.end() || *it != cp.cell)
            throw std::invalid_argument(std::string(what) + ": power for cell " +
                                        std::to_string(cp.cell) + " not on this channel");
        const auto pos = static_cast<std::size_t>(it - expected.begin());
        if (seen[pos])
            throw std::invalid_argument(std::string(what) + ": duplicate power for cell " +
                                        std::to_string(cp.cell));
        seen[pos] = true;
        if (!(cp.power > 0.0))
            throw std::invalid_argument(std::string(what) + ": nonpositive power for cell " +
                                        std::to_string(cp.cell));
    }
}

} // namespace

void NetworkState::occupy(const CallRecord& call, std::span<const CellPower> channel_powers) {
    if (call.cell < 0 || call.cell >= cells_)
        throw std::out_of_range("cell id out of range: " + std::to_string(call.cell));
    if (call.channel < 0 || call.channel >= plan_.total_channels)
        throw std::out_of_range("channel id out of range: " + std::to_string(call.channel));
    if (in_use(call.cell, call.channel))
        throw std::logic_error("cell " + std::to_string(call.cell) +
                               " already transmits on channel " + std::to_string(call.channel));
    if (calls_.count(call.id))
        throw std::logic_error("call id already live: " + std::to_string(call.id));

    auto& occ = occupants_[static_cast<std::size_t>(call.channel)];
    std::vector<CellId> expected = occ;
    expected.insert(std::lower_bound(expected.begin(), expected.end(), call.cell), call.cell);
    check_cover(channel_powers, expected, "occupy");

    occ.insert(std::lower_bound(occ.begin(), occ.end(), call.cell), call.cell);
    alloc_[idx(call.cell, call.channel)] = 1;
    ++cell_calls_[static_cast<std::size_t>(call.cell)];
    calls_.emplace(call.id, call);
    for (const CellPower& cp : channel_powers)
        power_[idx(cp.cell, call.channel)] = cp.power;
}

CallRecord NetworkState::release(CallId id) {
    auto it = calls_.find(id);
    if (it == calls_.end())
        throw std::out_of_range("unknown call id: " + std::to_string(id));
    const CallRecord rec = it->second;
    calls_.erase(it);

    auto& occ = occupants_[static_cast<std::size_t>(rec.channel)];
    occ.erase(std::lower_bound(occ.begin(), occ.end(), rec.cell));
    alloc_[idx(rec.cell, rec.channel)] = 0;
    power_[idx(rec.cell, rec.channel)] = 0.0;
    --cell_calls_[static_cast<std::size_t>(rec.cell)];
    return rec;
}

void NetworkState::set_channel_powers(ChannelId l, std::span<const CellPower> powers) {
    if (l < 0 || l >= plan_.total_channels)
        throw std::out_of_range("channel id out of range: " + std::to_string(l));
    check_cover(powers, occupants_[static_cast<std::size_t>(l)], "set_channel_powers");
    for (const CellPower& cp : powers)
        power_[idx(cp.cell, l)] = cp.power;
}

double NetworkState::total_power() const {
    double total = 0.0;
    for (std::size_t i = 0; i < alloc_.size(); ++i)
        if (alloc_[i]) total += power_[i];
    return total;
}

void NetworkState::write_alloc_csv(std::ostream& os) const {
    os << "cell";
    for (ChannelId l = 0; l < plan_.total_channels; ++l) os << ',' << l;
    os << '\n';
    for (CellId i = 0; i < cells_; ++i) {
        os << i;
        for (ChannelId l = 0; l < plan_.total_channels; ++l)
            os << ',' << int(alloc_[idx(i, l)]);
        os << '\n';
    }
}

void NetworkState::write_power_csv(std::ostream& os) const {
    os << std::setprecision(17);
    os << "cell";
    for (ChannelId l = 0; l < plan_.total_channels; ++l) os << ',' << l;
    os << '\n';
    for (CellId i = 0; i < cells_; ++i) {
        os << i;
        for (ChannelId l = 0; l < plan_.total_channels; ++l)
            os << ',' << power_[idx(i, l)];
        os << '\n';
    }
}

} // namespace hcasim
