#include "hcasim/admission.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace hcasim {

namespace {

std::vector<CellId> with_candidate(const std::vector<CellId>& occupants, CellId k) {
    std::vector<CellId> active = occupants;
    active.insert(std::lower_bound(active.begin(), active.end(), k), k);
    return active;
}

Admitted make_admitted(const NetworkState& state, ChannelId l,
                       const std::vector<CellId>& active, const std::vector<double>& powers,
                       double total) {
    Admitted adm;
    adm.channel = l;
    adm.channel_class = state.plan().channel_class(l);
    adm.powers.reserve(active.size());
    for (std::size_t i = 0; i < active.size(); ++i)
        adm.powers.push_back({active[i], powers[i]});
    adm.total_power = total;
    return adm;
}

} // namespace

AdmissionOutcome admit_optimal(const NetworkState& state, const GainMatrix& gains,
                               const QosParams& qos, CellId k) {
    for (ChannelId l : state.plan().fc_per_cell.at(static_cast<std::size_t>(k))) {
        if (state.in_use(k, l)) continue;
        const auto active = with_candidate(state.cochannel_cells(l), k);
        const auto sol = solve_min_power(gains, active, qos);
        if (sol.feasible)
            return make_admitted(state, l, active, sol.powers, sol.total_power);
    }

    AdmissionOutcome best;
    for (ChannelId l : state.free_dc_channels(k)) {
        const auto active = with_candidate(state.cochannel_cells(l), k);
        const auto sol = solve_min_power(gains, active, qos);
        if (!sol.feasible) continue;
        if (!best || sol.total_power < best->total_power)
            best = make_admitted(state, l, active, sol.powers, sol.total_power);
    }
    return best;
}

AdmissionOutcome admit_fixed_power(const NetworkState& state, const GainMatrix& gains,
                                   const QosParams& qos, CellId k, double p_fixed) {
    auto try_channel = [&](ChannelId l) -> AdmissionOutcome {
        const auto active = with_candidate(state.cochannel_cells(l), k);
        const std::vector<double> powers(active.size(), p_fixed);
        if (!verify_cir(gains, active, powers, qos)) return std::nullopt;
        return make_admitted(state, l, active, powers, p_fixed * active.size());
    };

    for (ChannelId l : state.plan().fc_per_cell.at(static_cast<std::size_t>(k))) {
        if (state.in_use(k, l)) continue;
        if (auto adm = try_channel(l)) return adm;
    }
    for (ChannelId l : state.free_dc_channels(k))
        if (auto adm = try_channel(l)) return adm;
    return std::nullopt;
}

AdmissionOutcome admit_reuse_distance(const NetworkState& state, const GridGeometry& geom,
                                      CellId k, double d_reuse, double p_fixed) {
    auto try_channel = [&](ChannelId l) -> AdmissionOutcome {
        const auto& occ = state.cochannel_cells(l);
        for (CellId c : occ)
            if (geom.distance(c, k) < d_reuse * (1.0 - kCirRelTol)) return std::nullopt;
        const auto active = with_candidate(occ, k);
        const std::vector<double> powers(active.size(), p_fixed);
        return make_admitted(state, l, active, powers, p_fixed * active.size());
    };

    for (ChannelId l : state.plan().fc_per_cell.at(static_cast<std::size_t>(k))) {
        if (state.in_use(k, l)) continue;
        if (auto adm = try_channel(l)) return adm;
    }
    for (ChannelId l : state.free_dc_channels(k))
        if (auto adm = try_channel(l)) return adm;
    return std::nullopt;
}

AdmissionOutcome admit(const NetworkState& state, const GridGeometry& geom,
                       const GainMatrix& gains, const QosParams& qos,
                       const Policy& policy, CellId k) {
    switch (policy.kind) {
    case PolicyKind::optimal_pc:
        return admit_optimal(state, gains, qos, k);
    case PolicyKind::fixed_power:
        return admit_fixed_power(state, gains, qos, k, policy.p_fixed);
    case PolicyKind::reuse_distance:
        return admit_reuse_distance(state, geom, k, policy.d_reuse, policy.p_fixed);
    }
    throw std::logic_error("unknown policy kind");
}

CallRecord release_call(NetworkState& state, const GainMatrix& gains,
                        const QosParams& qos, const Policy& policy, CallId id) {
    const CallRecord rec = state.release(id);
    if (policy.kind != PolicyKind::optimal_pc) return rec;

    const auto& remaining = state.cochannel_cells(rec.channel);
    if (remaining.empty()) return rec;
    const auto sol = solve_min_power(gains, remaining, qos);
    if (!sol.feasible)
        throw std::logic_error("re-solve after release infeasible on channel " +
                               std::to_string(rec.channel));
    std::vector<CellPower> powers;
    powers.reserve(remaining.size());
    for (std::size_t i = 0; i < remaining.size(); ++i)
        powers.push_back({remaining[i], sol.powers[i]});
    state.set_channel_powers(rec.channel, powers);
    return rec;
}

} // namespace hcasim
