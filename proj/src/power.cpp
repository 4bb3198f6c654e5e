#include "hcasim/power.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hcasim {

QosParams QosParams::uniform(double gamma0, double noise, double cap, int cells) {
    QosParams q;
    q.gamma0 = gamma0;
    q.noise.assign(static_cast<std::size_t>(cells), noise);
    q.power_cap = cap;
    return q;
}

double cir(const GainMatrix& gains, std::span<const CellId> active,
           std::span<const double> powers, const std::vector<double>& noise,
           std::size_t receiver_index) {
    if (active.size() != powers.size())
        throw std::invalid_argument("powers not parallel to active set");
    if (receiver_index >= active.size())
        throw std::out_of_range("receiver index out of range");
    const CellId i = active[receiver_index];
    double interference = noise.at(static_cast<std::size_t>(i));
    for (std::size_t c = 0; c < active.size(); ++c) {
        if (c == receiver_index) continue;
        interference += gains(i, active[c]) * powers[c];
    }
    return gains(i, i) * powers[receiver_index] / interference;
}

PowerSolveResult solve_min_power(const GainMatrix& gains, std::span<const CellId> active,
                                 const QosParams& qos) {
    PowerSolveResult res;
    const std::size_t n = active.size();
    if (n == 0) {
        res.feasible = true;
        return res;
    }

    // A p = b with A[r][r] = g_ii, A[r][c] = -gamma0 * g_ij, b[r] = gamma0 * eta_i
    std::vector<double> a(n * n);
    std::vector<double> b(n);
    std::vector<double> scale(n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        const CellId i = active[r];
        for (std::size_t c = 0; c < n; ++c) {
            const double v = (r == c) ? gains(i, i) : -qos.gamma0 * gains(i, active[c]);
            a[r * n + c] = v;
            scale[r] = std::max(scale[r], std::abs(v));
        }
        b[r] = qos.gamma0 * qos.noise.at(static_cast<std::size_t>(i));
    }

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
        if (std::abs(a[pivot * n + col]) < kSingularRelThreshold * scale[pivot] ||
            scale[pivot] == 0.0) {
            res.reason = InfeasibleReason::singular_system;
            return res;
        }
        if (pivot != col) {
            for (std::size_t c = col; c < n; ++c)
                std::swap(a[col * n + c], a[pivot * n + c]);
            std::swap(b[col], b[pivot]);
            std::swap(scale[col], scale[pivot]);
        }
        const double inv = 1.0 / a[col * n + col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r * n + col] * inv;
            if (f == 0.0) continue;
            a[r * n + col] = 0.0;
            for (std::size_t c = col + 1; c < n; ++c)
                a[r * n + c] -= f * a[col * n + c];
            b[r] -= f * b[col];
        }
    }

    std::vector<double> p(n);
    for (std::size_t r = n; r-- > 0;) {
        double s = b[r];
        for (std::size_t c = r + 1; c < n; ++c)
            s -= a[r * n + c] * p[c];
        p[r] = s / a[r * n + r];
    }

    for (double v : p) {
        if (!(v > 0.0)) {
            res.reason = InfeasibleReason::nonpositive_power;
            return res;
        }
    }
    for (double v : p) {
        if (v > qos.power_cap * (1.0 + kCirRelTol)) {
            res.reason = InfeasibleReason::exceeds_cap;
            return res;
        }
    }

    res.feasible = true;
    res.powers = std::move(p);
    for (double v : res.powers) res.total_power += v;
    return res;
}

bool verify_cir(const GainMatrix& gains, std::span<const CellId> active,
                std::span<const double> powers, const QosParams& qos) {
    for (std::size_t r = 0; r < active.size(); ++r)
        if (cir(gains, active, powers, qos.noise, r) < qos.gamma0 * (1.0 - kCirRelTol))
            return false;
    return true;
}

} // namespace hcasim
