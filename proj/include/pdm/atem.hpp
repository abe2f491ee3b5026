#pragma once

#include <vector>

#include "pdm/hamiltonian.hpp"

namespace pdm {

/// Origin values (p_n(0), q_n(0)) of the derivative recurrence
///   p_n = p0 p_{n-1} + p_{n-1}' + q_{n-1}
///   q_n = q0 p_{n-1} + q_{n-1}'
/// at a fixed trial energy. Entries carry a joint per-step rescaling by
/// s_n = max(|p_n(0)|, |q_n(0)|, 1); log_scale holds ln s_n, cum_log its
/// prefix sum, so the true value is stored * exp(cum_log).
struct RecurrenceTrace {
    double energy = 0.0;
    int iterations = 0;
    bool parity_symmetric = false;  // p0 odd and q0 even in x
    std::vector<double> p_at0;
    std::vector<double> q_at0;
    std::vector<double> log_scale;
    std::vector<double> cum_log;
};

enum class Parity { Even, Odd };
enum class ParityTag { Even, Odd, None };

enum class RootMode {
    Determinant,  // q_m(0) p_{m-1}(0) - p_m(0) q_{m-1}(0) = 0
    Even,         // q_{m-2}(0) = 0 on the even-adjusted iteration count
    Odd,          // p_{m-2}(0) = 0 on the odd-adjusted iteration count
    Auto,         // union of Even and Odd when symmetric, Determinant otherwise
};

struct EigenResult {
    double energy = 0.0;
    int iterations = 0;
    int state_index = -1;     // position in the sorted spectrum; set by converge()
    int matched_digits = -1;  // set by converge(); -1 when unknown
    ParityTag parity = ParityTag::None;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
};

/// Eigenvalue estimates per iteration count, positional by sorted order, plus
/// the states accepted by cross-k digit agreement.
struct ConvergenceReport {
    std::vector<int> k_list;
    std::vector<std::vector<double>> estimates;  // estimates[i] for k_list[i]
    std::vector<EigenResult> accepted;           // state index == position at largest k
    int digit_threshold = 10;
};

/// Runs the recurrence for `iterations` steps. Requires the ODE series valid
/// to at least `iterations` orders (capacity is chosen as k_max + 4 upstream).
RecurrenceTrace iterate(const CanonicalODE& ode, double energy, int iterations);

/// delta_m on the rescaled pairs; positive rescaling preserves sign and zeros.
double termination_det(const RecurrenceTrace& trace);

/// q_{m-2}(0) (even) or p_{m-2}(0) (odd); requires a parity-symmetric problem.
double parity_condition(const RecurrenceTrace& trace, Parity parity);

/// Number of leading significant decimal digits shared by a and b.
int matched_digits(double a, double b);

std::vector<EigenResult> find_roots(const CanonicalODE& ode, double e_min, double e_max,
                                    int iterations, RootMode mode, double grid_step = 0.05);

ConvergenceReport converge(const CanonicalODE& ode, double e_min, double e_max,
                           const std::vector<int>& k_list, int digit_threshold = 10,
                           double grid_step = 0.05);

/// Thread cap for converge(): ATEM_THREADS if set, hardware concurrency else.
int max_threads();

}  // namespace pdm
