#pragma once

#include "hcasim/hexgrid.hpp"
#include "hcasim/types.hpp"

#include <span>
#include <vector>

namespace hcasim {

// Relative tolerance for all CIR and equality checks.
inline constexpr double kCirRelTol = 1e-9;

// A pivot below kSingularRelThreshold times the row's magnitude is treated
// as a structurally singular system rather than round-off.
inline constexpr double kSingularRelThreshold = 1e-12;

struct QosParams {
    double gamma0 = 2.0;            // minimum protection ratio
    std::vector<double> noise;      // thermal noise power per cell, all > 0
    double power_cap = 10.0;        // maximum transmit power per cell

    static QosParams uniform(double gamma0, double noise, double cap, int cells);
};

enum class InfeasibleReason { singular_system, nonpositive_power, exceeds_cap };

struct PowerSolveResult {
    bool feasible = false;
    InfeasibleReason reason = InfeasibleReason::singular_system;
    std::vector<double> powers;     // parallel to the active set when feasible
    double total_power = 0.0;
};

// Carrier-to-interference ratio at the receiver of active[receiver_index]:
// g_ii * p_i / (sum_{j != i} g_ij * p_j + eta_i). powers is parallel to active.
double cir(const GainMatrix& gains, std::span<const CellId> active,
           std::span<const double> powers, const std::vector<double>& noise,
           std::size_t receiver_index);

// Minimal-total-power solve for the co-channel transmitters in `active`:
// solves g_ii * p_i - gamma0 * sum_{j != i} g_ij * p_j = gamma0 * eta_i by
// Gaussian elimination with partial pivoting. Feasible iff the system is
// nonsingular, every power is positive, and no power exceeds the cap. The
// solution meets every CIR constraint with equality and is componentwise
// minimal over all feasible power vectors.
PowerSolveResult solve_min_power(const GainMatrix& gains, std::span<const CellId> active,
                                 const QosParams& qos);

// True iff every receiver in the active set has CIR >= gamma0 * (1 - kCirRelTol).
bool verify_cir(const GainMatrix& gains, std::span<const CellId> active,
                std::span<const double> powers, const QosParams& qos);

} // namespace hcasim
