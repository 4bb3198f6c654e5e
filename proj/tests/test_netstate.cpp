#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hcasim/netstate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

using namespace hcasim;

namespace {

NetworkState benchmark_state(int fc = 21) {
    const GridGeometry geom = build_grid(7, 7);
    return NetworkState(build_channel_plan(70, fc, 7, geom), 49);
}

std::vector<CellPower> pw(std::initializer_list<CellPower> list) { return {list}; }

} // namespace

TEST_CASE("hybrid plan splits channels into per-cell fixed sets") {
    const GridGeometry geom = build_grid(7, 7);
    for (int fc : {21, 35, 49}) {
        const ChannelPlan plan = build_channel_plan(70, fc, 7, geom);
        CHECK(plan.dc_channels() == 70 - fc);
        CHECK_FALSE(plan.is_dynamic(fc - 1));
        CHECK(plan.is_dynamic(fc));
        CHECK(plan.channel_class(0) == ChannelClass::fixed);
        CHECK(plan.channel_class(69) == ChannelClass::dynamic);
        for (CellId i = 0; i < 49; ++i) {
            REQUIRE(plan.fc_per_cell[i].size() == static_cast<std::size_t>(fc / 7));
            CHECK(std::is_sorted(plan.fc_per_cell[i].begin(), plan.fc_per_cell[i].end()));
            for (ChannelId c : plan.fc_per_cell[i]) {
                CHECK(c < fc);
                CHECK(c % 7 == plan.cell_slot[i]);
            }
        }
    }
}

TEST_CASE("the 7-cluster coloring balances slots and spaces reuse at sqrt 7") {
    const GridGeometry geom = build_grid(7, 7);
    const ChannelPlan plan = build_channel_plan(70, 21, 7, geom);
    std::vector<int> count(7, 0);
    for (int s : plan.cell_slot) {
        REQUIRE(s >= 0);
        REQUIRE(s < 7);
        ++count[s];
    }
    for (int c : count) CHECK(c == 7);
    CHECK(plan.fc_reuse_distance == doctest::Approx(std::sqrt(7.0)).epsilon(1e-12));
}

TEST_CASE("smaller clusters reuse at their own lattice spacing") {
    const GridGeometry geom = build_grid(7, 7);
    CHECK(build_channel_plan(12, 12, 3, geom).fc_reuse_distance ==
          doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    CHECK(build_channel_plan(12, 12, 4, geom).fc_reuse_distance ==
          doctest::Approx(2.0).epsilon(1e-12));
    // cluster 1 lets adjacent cells share every channel
    CHECK(build_channel_plan(12, 12, 1, geom).fc_reuse_distance ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pure dynamic plan has no fixed sets") {
    const GridGeometry geom = build_grid(7, 7);
    const ChannelPlan plan = build_channel_plan(70, 0, 7, geom);
    CHECK(plan.is_dynamic(0));
    for (CellId i = 0; i < 49; ++i) CHECK(plan.fc_per_cell[i].empty());
    NetworkState state(plan, 49);
    CHECK(state.free_dc_channels(0).size() == 70);
}

TEST_CASE("plan construction rejects bad splits") {
    const GridGeometry geom = build_grid(7, 7);
    CHECK_THROWS_WITH_AS(build_channel_plan(70, 22, 7, geom),
                         doctest::Contains("divisible by cluster_size"), std::invalid_argument);
    CHECK_THROWS_AS(build_channel_plan(70, 71, 7, geom), std::invalid_argument);
    CHECK_THROWS_AS(build_channel_plan(0, 0, 7, geom), std::invalid_argument);
    // 2, 5 and 6 are not of the i*i + i*j + j*j form
    CHECK_THROWS_AS(build_channel_plan(70, 10, 2, geom), std::invalid_argument);
    CHECK_THROWS_AS(build_channel_plan(70, 10, 5, geom), std::invalid_argument);
    CHECK_THROWS_AS(build_channel_plan(70, 12, 6, geom), std::invalid_argument);
    CHECK_NOTHROW(build_channel_plan(70, 12, 3, geom));
    CHECK_NOTHROW(build_channel_plan(70, 12, 4, geom));
}

TEST_CASE("occupy and release keep every view consistent") {
    NetworkState state = benchmark_state();
    const std::vector<CellPower> first{{5, 0.5}};
    state.occupy({1, 5, 30, ChannelClass::dynamic, 10.0, 200.0}, first);
    const std::vector<CellPower> second{{5, 0.6}, {12, 0.4}};
    state.occupy({2, 12, 30, ChannelClass::dynamic, 11.0, 180.0}, second);

    CHECK(state.in_use(5, 30));
    CHECK(state.in_use(12, 30));
    CHECK_FALSE(state.in_use(5, 31));
    CHECK(state.power(5, 30) == 0.6);
    CHECK(state.power(12, 30) == 0.4);
    CHECK(state.cochannel_cells(30) == std::vector<CellId>{5, 12});
    CHECK(state.live_calls() == 2);
    CHECK(state.calls_in_cell(5) == 1);
    CHECK(state.total_power() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(state.call(2).departure_time == 180.0);

    const auto free_dc = state.free_dc_channels(5);
    CHECK(std::find(free_dc.begin(), free_dc.end(), 30) == free_dc.end());
    CHECK(free_dc.size() == 48);

    const CallRecord rec = state.release(1);
    CHECK(rec.cell == 5);
    CHECK(rec.channel == 30);
    CHECK(rec.start_time == 10.0);
    CHECK_FALSE(state.in_use(5, 30));
    CHECK(state.power(5, 30) == 0.0);
    // the released call's own entry is zeroed, the neighbor is untouched
    CHECK(state.power(12, 30) == 0.4);
    CHECK(state.cochannel_cells(30) == std::vector<CellId>{12});
    CHECK(state.calls_in_cell(5) == 0);
}

TEST_CASE("a mutation touches only its own channel column") {
    NetworkState state = benchmark_state();
    state.occupy({1, 3, 25, ChannelClass::dynamic, 0.0, 1.0}, pw({{3, 0.7}}));
    state.occupy({2, 3, 40, ChannelClass::dynamic, 0.0, 1.0}, pw({{3, 0.9}}));

    std::vector<double> before;
    for (CellId i = 0; i < state.cells(); ++i)
        for (ChannelId l = 0; l < state.channels(); ++l)
            if (l != 40) before.push_back(state.power(i, l));

    state.occupy({3, 10, 40, ChannelClass::dynamic, 1.0, 2.0},
                 pw({{3, 1.1}, {10, 0.2}}));
    state.release(3);
    state.set_channel_powers(40, pw({{3, 0.95}}));

    std::vector<double> after;
    for (CellId i = 0; i < state.cells(); ++i)
        for (ChannelId l = 0; l < state.channels(); ++l)
            if (l != 40) after.push_back(state.power(i, l));
    CHECK(before == after);
    CHECK(state.power(3, 40) == 0.95);
    CHECK(state.power(3, 25) == 0.7);
}

TEST_CASE("misuse is rejected loudly") {
    NetworkState state = benchmark_state();
    state.occupy({1, 0, 21, ChannelClass::dynamic, 0.0, 1.0}, pw({{0, 0.5}}));

    // same cell, same channel
    CHECK_THROWS_AS(state.occupy({9, 0, 21, ChannelClass::dynamic, 0.0, 1.0},
                                 pw({{0, 0.5}})),
                    std::logic_error);
    // reused call id
    CHECK_THROWS_AS(state.occupy({1, 1, 22, ChannelClass::dynamic, 0.0, 1.0},
                                 pw({{1, 0.5}})),
                    std::logic_error);
    // power list must cover occupants plus the newcomer
    CHECK_THROWS_AS(state.occupy({5, 1, 21, ChannelClass::dynamic, 0.0, 1.0},
                                 pw({{1, 0.5}})),
                    std::invalid_argument);
    // power for a cell not on the channel
    CHECK_THROWS_AS(state.occupy({6, 1, 22, ChannelClass::dynamic, 0.0, 1.0},
                                 pw({{2, 0.5}})),
                    std::invalid_argument);
    // nonpositive power
    CHECK_THROWS_AS(state.occupy({7, 1, 23, ChannelClass::dynamic, 0.0, 1.0},
                                 pw({{1, 0.0}})),
                    std::invalid_argument);
    CHECK_THROWS_AS(state.release(404), std::out_of_range);
    CHECK_THROWS_AS(state.set_channel_powers(21, pw({{0, 0.5}, {1, 0.5}})),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)state.call(404), std::out_of_range);
    CHECK_THROWS_AS((void)state.cochannel_cells(70), std::out_of_range);

    // the failed operations must not have changed anything
    CHECK(state.live_calls() == 1);
    CHECK(state.power(0, 21) == 0.5);
}

TEST_CASE("random operation stream matches a shadow model") {
    const GridGeometry geom = build_grid(4, 4);
    NetworkState state(build_channel_plan(10, 4, 4, geom), 16);
    std::mt19937_64 rng(2024);

    std::map<std::pair<CellId, ChannelId>, double> shadow_power;
    std::map<CallId, CallRecord> shadow_calls;
    CallId next_id = 1;

    for (int op = 0; op < 1000; ++op) {
        const bool do_occupy = shadow_calls.empty() || (rng() % 100) < 55;
        if (do_occupy) {
            const CellId cell = static_cast<CellId>(rng() % 16);
            const ChannelId channel = static_cast<ChannelId>(rng() % 10);
            if (state.in_use(cell, channel)) continue;
            std::vector<CellPower> powers;
            for (CellId o : state.cochannel_cells(channel))
                powers.push_back({o, shadow_power[{o, channel}]});
            const double p = 0.01 + (rng() % 1000) / 1000.0;
            powers.push_back({cell, p});
            const CallRecord rec{next_id++, cell, channel, state.plan().channel_class(channel),
                                 static_cast<double>(op), op + 100.0};
            state.occupy(rec, powers);
            shadow_power[{cell, channel}] = p;
            shadow_calls[rec.id] = rec;
        } else {
            auto it = shadow_calls.begin();
            std::advance(it, rng() % shadow_calls.size());
            const CallRecord rec = state.release(it->first);
            CHECK(rec.cell == it->second.cell);
            CHECK(rec.channel == it->second.channel);
            shadow_power.erase({rec.cell, rec.channel});
            shadow_calls.erase(it);
        }
    }

    CHECK(state.live_calls() == shadow_calls.size());
    double expected_total = 0.0;
    for (const auto& [key, p] : shadow_power) expected_total += p;
    CHECK(state.total_power() == doctest::Approx(expected_total).epsilon(1e-12));

    for (CellId i = 0; i < 16; ++i) {
        for (ChannelId l = 0; l < 10; ++l) {
            const auto it = shadow_power.find({i, l});
            CHECK(state.in_use(i, l) == (it != shadow_power.end()));
            CHECK(state.power(i, l) == (it == shadow_power.end() ? 0.0 : it->second));
        }
    }
    for (ChannelId l = 0; l < 10; ++l) {
        std::vector<CellId> expected;
        for (const auto& [key, p] : shadow_power)
            if (key.second == l) expected.push_back(key.first);
        std::sort(expected.begin(), expected.end());
        CHECK(state.cochannel_cells(l) == expected);
    }
    std::map<CellId, int> per_cell;
    for (const auto& [id, rec] : shadow_calls) ++per_cell[rec.cell];
    for (CellId i = 0; i < 16; ++i)
        CHECK(state.calls_in_cell(i) == (per_cell.count(i) ? per_cell[i] : 0));
}

TEST_CASE("state csv dumps are exact") {
    const GridGeometry geom = build_grid(1, 2);
    NetworkState state(build_channel_plan(3, 0, 1, geom), 2);
    state.occupy({1, 1, 2, ChannelClass::dynamic, 0.0, 1.0}, pw({{1, 0.5}}));

    std::ostringstream alloc;
    state.write_alloc_csv(alloc);
    CHECK(alloc.str() == "cell,0,1,2\n0,0,0,0\n1,0,0,1\n");

    std::ostringstream power;
    state.write_power_csv(power);
    CHECK(power.str() == "cell,0,1,2\n0,0,0,0\n1,0,0,0.5\n");
}
