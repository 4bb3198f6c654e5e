#include "hcasim/sim.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <queue>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hcasim {

double TrafficProfile::offered_erlangs() const {
    double total = 0.0;
    for (double r : arrival_rates) total += r;
    return total * load_multiplier * mean_holding / 3600.0;
}

std::vector<double> benchmark_arrival_pattern() {
    // calls per hour, 7x7 row-major; hot center, secondary hot corner
    return {
        120,  80, 100, 140, 160, 120,  80,
         80, 140, 200, 240, 180, 120, 100,
        100, 200, 320, 400, 280, 160, 120,
        140, 240, 400, 520, 360, 200, 140,
        120, 180, 280, 360, 260, 180, 120,
        100, 120, 160, 200, 180, 240, 160,
         80, 100, 120, 140, 160, 200, 280,
    };
}

TrafficProfile default_traffic(int rows, int cols) {
    TrafficProfile traffic;
    if (rows == 7 && cols == 7)
        traffic.arrival_rates = benchmark_arrival_pattern();
    else
        traffic.arrival_rates.assign(static_cast<std::size_t>(rows) * cols, 160.0);
    return traffic;
}

void SimConfig::validate() const {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("grid dimensions must be positive");
    if (!(duration > 0.0))
        throw std::invalid_argument("duration must be positive");
    if (warmup >= duration)
        throw std::invalid_argument("warmup must be smaller than duration");
    if (gain.path_loss_exponent <= 0.0)
        throw std::invalid_argument("path_loss_exponent must be positive");
    if (gain.min_distance <= 0.0)
        throw std::invalid_argument("min_distance must be positive");
    if (gain.self_gain <= 0.0)
        throw std::invalid_argument("self_gain must be positive");
    if (total_channels < 1)
        throw std::invalid_argument("total_channels must be positive");
    if (fc_channels < 0 || fc_channels > total_channels)
        throw std::invalid_argument("fc_channels must lie in [0, total_channels]");
    if (cluster_size < 1)
        throw std::invalid_argument("cluster_size must be positive");
    if (!(gamma0 > 0.0))
        throw std::invalid_argument("gamma0 must be positive");
    if (!(noise > 0.0))
        throw std::invalid_argument("noise must be positive");
    if (!(power_cap > 0.0))
        throw std::invalid_argument("power_cap must be positive");
    if (!(policy.p_fixed > 0.0) || policy.p_fixed > power_cap)
        throw std::invalid_argument("p_fixed must lie in (0, power_cap]");
    if (!(policy.d_reuse > 0.0))
        throw std::invalid_argument("d_reuse must be positive");
    if (traffic.arrival_rates.size() != static_cast<std::size_t>(rows) * cols)
        throw std::invalid_argument("arrival_rates must list one rate per cell");
    for (double r : traffic.arrival_rates)
        if (!(r >= 0.0))
            throw std::invalid_argument("arrival rates must be nonnegative");
    if (!(traffic.mean_holding > 0.0))
        throw std::invalid_argument("mean_holding must be positive");
    if (!(traffic.load_multiplier >= 0.0))
        throw std::invalid_argument("load_multiplier must be nonnegative");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent per-cell stream: reseeding one cell's rate leaves every other
// cell's draw sequence untouched.
std::uint64_t stream_seed(std::uint64_t seed, CellId cell) {
    return splitmix64(splitmix64(seed) ^
                      splitmix64(0x632be59bd9b4e019ULL + static_cast<std::uint64_t>(cell)));
}

// Inversion sampling on 53-bit uniforms; keeps draws identical across
// platforms, unlike std::exponential_distribution.
double exp_sample(std::mt19937_64& rng, double rate) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return -std::log1p(-u) / rate;
}

enum class EventKind : std::uint8_t { arrival, departure };

struct Event {
    double time = 0.0;
    std::uint64_t seq = 0;
    EventKind kind = EventKind::arrival;
    CellId cell = 0;  // arrival
    CallId call = 0;  // departure
};

struct EventLater {
    bool operator()(const Event& a, const Event& b) const {
        if (a.time != b.time) return a.time > b.time;
        return a.seq > b.seq;
    }
};

} // namespace

RunResult run_with_state(const SimConfig& cfg) {
    cfg.validate();

    const GridGeometry geom = build_grid(cfg.rows, cfg.cols);
    const GainMatrix gains = build_gain_matrix(geom, cfg.gain);
    ChannelPlan plan = build_channel_plan(cfg.total_channels, cfg.fc_channels,
                                          cfg.cluster_size, geom);
    const int cells = geom.cell_count();
    const QosParams qos = QosParams::uniform(cfg.gamma0, cfg.noise, cfg.power_cap, cells);
    NetworkState state(std::move(plan), cells);

    const double warmup = cfg.warmup_or_default();
    const double holding_rate = 1.0 / cfg.traffic.mean_holding;

    std::vector<std::mt19937_64> rng;
    rng.reserve(static_cast<std::size_t>(cells));
    std::vector<double> rate(static_cast<std::size_t>(cells), 0.0);
    std::priority_queue<Event, std::vector<Event>, EventLater> heap;
    std::uint64_t seq = 0;
    for (CellId c = 0; c < cells; ++c) {
        rng.emplace_back(stream_seed(cfg.seed, c));
        rate[static_cast<std::size_t>(c)] =
            cfg.traffic.arrival_rates[static_cast<std::size_t>(c)] *
            cfg.traffic.load_multiplier / 3600.0;
        if (rate[static_cast<std::size_t>(c)] > 0.0)
            heap.push({exp_sample(rng.back(), rate[static_cast<std::size_t>(c)]),
                       seq++, EventKind::arrival, c, 0});
    }

    Metrics m;
    m.arrivals_per_cell.assign(static_cast<std::size_t>(cells), 0);
    m.blocked_per_cell.assign(static_cast<std::size_t>(cells), 0);

    double last_time = 0.0;
    double power_integral = 0.0;
    double cached_total = 0.0;
    bool state_dirty = true;
    const auto advance = [&](double t) {
        const double seg_start = std::max(last_time, warmup);
        if (t > seg_start) {
            if (state_dirty) {
                cached_total = state.total_power();
                state_dirty = false;
            }
            power_integral += cached_total * (t - seg_start);
            m.peak_total_power = std::max(m.peak_total_power, cached_total);
        }
        last_time = t;
    };

    const bool audit = cfg.audit_cir && cfg.policy.kind == PolicyKind::optimal_pc;
    std::vector<double> audit_powers;
    const auto audit_channels = [&] {
        for (ChannelId l = 0; l < state.channels(); ++l) {
            const auto& occ = state.cochannel_cells(l);
            if (occ.empty()) continue;
            audit_powers.clear();
            for (CellId i : occ) audit_powers.push_back(state.power(i, l));
            if (!verify_cir(gains, occ, audit_powers, qos)) ++m.audit_violations;
        }
    };

    CallId next_call = 1;
    while (!heap.empty() && heap.top().time <= cfg.duration) {
        const Event ev = heap.top();
        heap.pop();
        advance(ev.time);

        if (ev.kind == EventKind::arrival) {
            const CellId c = ev.cell;
            auto& r = rng[static_cast<std::size_t>(c)];
            const double holding = exp_sample(r, holding_rate);
            heap.push({ev.time + exp_sample(r, rate[static_cast<std::size_t>(c)]),
                       seq++, EventKind::arrival, c, 0});

            const bool counted = ev.time > warmup;
            if (counted) {
                ++m.arrivals;
                ++m.arrivals_per_cell[static_cast<std::size_t>(c)];
            }
            const AdmissionOutcome adm = admit(state, geom, gains, qos, cfg.policy, c);
            if (adm) {
                const CallRecord rec{next_call++, c, adm->channel, adm->channel_class,
                                     ev.time, ev.time + holding};
                state.occupy(rec, adm->powers);
                state_dirty = true;
                heap.push({rec.departure_time, seq++, EventKind::departure, c, rec.id});
                if (counted) {
                    ++m.admitted;
                    if (adm->channel_class == ChannelClass::fixed) ++m.admitted_fc;
                    else ++m.admitted_dc;
                }
            } else if (counted) {
                ++m.blocked;
                ++m.blocked_per_cell[static_cast<std::size_t>(c)];
            }
        } else {
            release_call(state, gains, qos, cfg.policy, ev.call);
            state_dirty = true;
        }

        if (audit) audit_channels();
    }
    advance(cfg.duration);

    m.blocking_probability = m.arrivals
        ? static_cast<double>(m.blocked) / static_cast<double>(m.arrivals)
        : 0.0;
    m.no_arrivals = m.arrivals == 0;
    m.mean_total_power = power_integral / (cfg.duration - warmup);
    m.live_at_end = state.live_calls();
    return {std::move(m), std::move(state)};
}

Metrics run(const SimConfig& cfg) { return run_with_state(cfg).metrics; }

std::vector<SweepPoint> sweep(const SimConfig& base, SweepAxis axis,
                              const std::vector<double>& values) {
    if (values.empty())
        throw std::invalid_argument("sweep needs at least one value");
    std::vector<SweepPoint> out;
    out.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = values[i];
        SimConfig cfg = base;
        cfg.seed = base.seed ^ static_cast<std::uint64_t>(i);
        switch (axis) {
        case SweepAxis::load_multiplier:
            cfg.traffic.load_multiplier = v;
            break;
        case SweepAxis::gamma0:
            cfg.gamma0 = v;
            break;
        case SweepAxis::ratio: {
            const double r = std::round(v);
            if (std::abs(v - r) > 1e-9)
                throw std::invalid_argument("ratio sweep values must be whole fixed-channel counts");
            cfg.fc_channels = static_cast<int>(r);
            break;
        }
        }
        out.push_back({v, run(cfg)});
    }
    return out;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& points) {
    os << std::setprecision(17);
    os << "value,arrivals,blocked,blocking_probability,mean_total_power,peak_total_power\n";
    for (const SweepPoint& p : points) {
        os << p.value << ',' << p.metrics.arrivals << ',' << p.metrics.blocked << ','
           << p.metrics.blocking_probability << ',' << p.metrics.mean_total_power << ','
           << p.metrics.peak_total_power << '\n';
    }
}

} // namespace hcasim
