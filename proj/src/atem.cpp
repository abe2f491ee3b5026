#include "pdm/atem.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <future>
#include <limits>
#include <string>
#include <thread>

namespace pdm {

namespace {

// p0 odd and q0 even, judged coefficientwise relative to the series scale.
bool check_parity_symmetry(const CanonicalODE& ode) {
    const auto wrong_mass = [](const TruncatedSeries& s, int keep_residue) {
        double max_abs = 0.0, wrong = 0.0;
        for (int k = 0; k <= s.valid_order(); ++k) {
            max_abs = std::max(max_abs, std::abs(s[k]));
            if (k % 2 != keep_residue) wrong = std::max(wrong, std::abs(s[k]));
        }
        return wrong <= 1e-12 * std::max(max_abs, 1.0);
    };
    return wrong_mass(ode.p0, 1) && wrong_mass(ode.q0_V, 0) && wrong_mass(ode.q0_E, 0);
}

int adjusted_iterations(int m, Parity parity) {
    // q_{m-2} is nontrivial for even m, p_{m-2} for odd m.
    const bool want_even = parity == Parity::Even;
    if ((m % 2 == 0) == want_even) return m;
    return m - 1;
}

struct Condition {
    std::function<double(double)> value;
    int iterations;
};

Condition make_condition(const CanonicalODE& ode, int m, RootMode mode) {
    switch (mode) {
        case RootMode::Determinant:
            return {[&ode, m](double E) { return termination_det(iterate(ode, E, m)); }, m};
        case RootMode::Even: {
            const int me = adjusted_iterations(m, Parity::Even);
            return {[&ode, me](double E) {
                        return parity_condition(iterate(ode, E, me), Parity::Even);
                    },
                    me};
        }
        case RootMode::Odd: {
            const int mo = adjusted_iterations(m, Parity::Odd);
            return {[&ode, mo](double E) {
                        return parity_condition(iterate(ode, E, mo), Parity::Odd);
                    },
                    mo};
        }
        case RootMode::Auto:
            break;
    }
    throw Error(errc::precondition, "make_condition: Auto is resolved by find_roots");
}

// Bisection to width 1e-13 with secant steps when they stay inside the bracket.
double refine_root(const std::function<double(double)>& f, double a, double b, double fa,
                   double fb) {
    double x_prev = a, f_prev = fa;
    double x_cur = b, f_cur = fb;
    for (int iter = 0; iter < 200 && (b - a) > 1e-13; ++iter) {
        double cand = 0.5 * (a + b);
        if (f_cur != f_prev) {
            const double secant = x_cur - f_cur * (x_cur - x_prev) / (f_cur - f_prev);
            const double margin = 0.01 * (b - a);
            if (secant > a + margin && secant < b - margin) cand = secant;
        }
        const double fc = f(cand);
        x_prev = x_cur;
        f_prev = f_cur;
        x_cur = cand;
        f_cur = fc;
        if (fc == 0.0) return cand;
        if ((fa < 0.0) != (fc < 0.0)) {
            b = cand;
            fb = fc;
        } else {
            a = cand;
            fa = fc;
        }
    }
    return 0.5 * (a + b);
}

ParityTag classify_parity(const CanonicalODE& ode, double energy, int m, RootMode mode) {
    switch (mode) {
        case RootMode::Even: return ParityTag::Even;
        case RootMode::Odd: return ParityTag::Odd;
        case RootMode::Determinant: {
            const auto trace = iterate(ode, energy, m);
            if (!trace.parity_symmetric) return ParityTag::None;
            // delta_m factors into an even-state and an odd-state condition;
            // the smaller factor identifies the branch that vanished.
            const int even_idx = (m % 2 == 0) ? m : m - 1;
            const int odd_idx = (m % 2 == 0) ? m - 1 : m;
            const double even_val = std::abs(trace.q_at0[static_cast<std::size_t>(even_idx)]);
            const double odd_val = std::abs(trace.p_at0[static_cast<std::size_t>(odd_idx)]);
            return even_val < odd_val ? ParityTag::Even : ParityTag::Odd;
        }
        case RootMode::Auto: break;
    }
    return ParityTag::None;
}

std::vector<EigenResult> scan_condition(const CanonicalODE& ode, double e_min, double e_max,
                                        int m, RootMode mode, double grid_step) {
    const Condition cond = make_condition(ode, m, mode);
    const int steps = std::max(1, static_cast<int>(std::llround((e_max - e_min) / grid_step)));
    std::vector<double> energies(static_cast<std::size_t>(steps) + 1);
    for (int i = 0; i <= steps; ++i) {
        energies[static_cast<std::size_t>(i)] = std::min(e_min + i * grid_step, e_max);
    }
    std::vector<double> values(energies.size());
    for (std::size_t i = 0; i < energies.size(); ++i) values[i] = cond.value(energies[i]);

    std::vector<EigenResult> roots;
    for (std::size_t i = 0; i < energies.size(); ++i) {
        if (values[i] == 0.0) {
            EigenResult r;
            r.energy = energies[i];
            r.iterations = cond.iterations;
            r.bracket_lo = r.bracket_hi = energies[i];
            r.parity = classify_parity(ode, r.energy, cond.iterations, mode);
            roots.push_back(r);
            continue;
        }
        if (i + 1 < energies.size() && values[i + 1] != 0.0 && std::isfinite(values[i]) &&
            std::isfinite(values[i + 1]) && (values[i] < 0.0) != (values[i + 1] < 0.0)) {
            EigenResult r;
            r.bracket_lo = energies[i];
            r.bracket_hi = energies[i + 1];
            r.energy = refine_root(cond.value, energies[i], energies[i + 1], values[i],
                                   values[i + 1]);
            r.iterations = cond.iterations;
            r.parity = classify_parity(ode, r.energy, cond.iterations, mode);
            roots.push_back(r);
        }
    }
    return roots;
}

}  // namespace

RecurrenceTrace iterate(const CanonicalODE& ode, double energy, int iterations) {
    if (iterations < 1) {
        throw Error(errc::precondition, "iteration count must be at least 1");
    }
    const int min_valid =
        std::min({ode.p0.valid_order(), ode.q0_V.valid_order(), ode.q0_E.valid_order()});
    if (min_valid < iterations) {
        throw Error(errc::precondition,
                    "ODE series support " + std::to_string(min_valid) +
                        " orders; need capacity >= iterations + 2");
    }
    if (!(eval_at_origin(ode.q0_E) < 0.0)) {
        throw Error(errc::precondition, "q0_E must have a negative constant term");
    }

    RecurrenceTrace trace;
    trace.energy = energy;
    trace.iterations = iterations;
    trace.parity_symmetric = check_parity_symmetry(ode);
    trace.p_at0.reserve(static_cast<std::size_t>(iterations) + 1);
    trace.q_at0.reserve(static_cast<std::size_t>(iterations) + 1);
    trace.log_scale.reserve(static_cast<std::size_t>(iterations) + 1);
    trace.cum_log.reserve(static_cast<std::size_t>(iterations) + 1);

    const auto q0 = add(ode.q0_V, scale(ode.q0_E, energy));
    TruncatedSeries p = ode.p0;
    TruncatedSeries q = q0;
    trace.p_at0.push_back(eval_at_origin(p));
    trace.q_at0.push_back(eval_at_origin(q));
    trace.log_scale.push_back(0.0);
    trace.cum_log.push_back(0.0);

    double cum = 0.0;
    for (int n = 1; n <= iterations; ++n) {
        try {
            auto p_next = add(add(mul(ode.p0, p), derivative(p)), q);
            auto q_next = add(mul(q0, p), derivative(q));
            const double s =
                std::max({std::abs(eval_at_origin(p_next)), std::abs(eval_at_origin(q_next)), 1.0});
            p = scale(p_next, 1.0 / s);
            q = scale(q_next, 1.0 / s);
            cum += std::log(s);
            trace.p_at0.push_back(eval_at_origin(p));
            trace.q_at0.push_back(eval_at_origin(q));
            trace.log_scale.push_back(std::log(s));
            trace.cum_log.push_back(cum);
        } catch (const Error& e) {
            if (e.code() == errc::non_finite) {
                throw Error(errc::iteration_overflow,
                            "recurrence overflowed at step " + std::to_string(n));
            }
            throw;
        }
    }
    return trace;
}

double termination_det(const RecurrenceTrace& trace) {
    if (trace.iterations < 1) {
        throw Error(errc::precondition, "termination determinant needs at least two entries");
    }
    const auto m = static_cast<std::size_t>(trace.iterations);
    return trace.q_at0[m] * trace.p_at0[m - 1] - trace.p_at0[m] * trace.q_at0[m - 1];
}

double parity_condition(const RecurrenceTrace& trace, Parity parity) {
    if (!trace.parity_symmetric) {
        throw Error(errc::parity_not_applicable,
                    "parity conditions require p0 odd and q0 even");
    }
    if (trace.iterations < 2) {
        throw Error(errc::precondition, "parity condition needs iterations >= 2");
    }
    const auto idx = static_cast<std::size_t>(trace.iterations - 2);
    return parity == Parity::Even ? trace.q_at0[idx] : trace.p_at0[idx];
}

int matched_digits(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b)) return 0;
    if (a == b) return 15;
    const double scale = std::max(std::abs(a), std::abs(b));
    const double diff = std::abs(a - b);
    const int d = static_cast<int>(std::floor(std::log10(scale / diff)));
    return std::clamp(d, 0, 15);
}

std::vector<EigenResult> find_roots(const CanonicalODE& ode, double e_min, double e_max,
                                    int iterations, RootMode mode, double grid_step) {
    if (!(e_min < e_max)) {
        throw Error(errc::precondition, "energy range must satisfy e_min < e_max");
    }
    if (!(grid_step > 0.0)) {
        throw Error(errc::precondition, "grid step must be positive");
    }
    if (mode == RootMode::Auto) {
        mode = check_parity_symmetry(ode) ? RootMode::Even : RootMode::Determinant;
        if (mode == RootMode::Determinant) {
            return scan_condition(ode, e_min, e_max, iterations, mode, grid_step);
        }
        auto roots = scan_condition(ode, e_min, e_max, iterations, RootMode::Even, grid_step);
        auto odd = scan_condition(ode, e_min, e_max, iterations, RootMode::Odd, grid_step);
        roots.insert(roots.end(), odd.begin(), odd.end());
        std::sort(roots.begin(), roots.end(),
                  [](const EigenResult& a, const EigenResult& b) { return a.energy < b.energy; });
        return roots;
    }
    return scan_condition(ode, e_min, e_max, iterations, mode, grid_step);
}

int max_threads() {
    if (const char* env = std::getenv("ATEM_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

ConvergenceReport converge(const CanonicalODE& ode, double e_min, double e_max,
                           const std::vector<int>& k_list, int digit_threshold,
                           double grid_step) {
    if (k_list.size() < 2 || !std::is_sorted(k_list.begin(), k_list.end())) {
        throw Error(errc::precondition, "k_list must be ascending with at least two entries");
    }

    ConvergenceReport report;
    report.k_list = k_list;
    report.digit_threshold = digit_threshold;
    report.estimates.resize(k_list.size());

    std::vector<std::vector<EigenResult>> per_k(k_list.size());
    const int threads = std::min<int>(max_threads(), static_cast<int>(k_list.size()));
    if (threads > 1) {
        std::vector<std::future<std::vector<EigenResult>>> futures;
        futures.reserve(k_list.size());
        for (int k : k_list) {
            futures.push_back(std::async(std::launch::async, [&ode, e_min, e_max, k, grid_step] {
                return find_roots(ode, e_min, e_max, k, RootMode::Auto, grid_step);
            }));
        }
        for (std::size_t i = 0; i < futures.size(); ++i) per_k[i] = futures[i].get();
    } else {
        for (std::size_t i = 0; i < k_list.size(); ++i) {
            per_k[i] = find_roots(ode, e_min, e_max, k_list[i], RootMode::Auto, grid_step);
        }
    }
    for (std::size_t i = 0; i < per_k.size(); ++i) {
        for (const auto& r : per_k[i]) report.estimates[i].push_back(r.energy);
    }

    // Accept a state when its estimates at the two largest k, paired by
    // nearest value within 0.2, agree to the digit threshold.
    const auto& last = per_k.back();
    const auto& prev = report.estimates[report.estimates.size() - 2];
    for (std::size_t n = 0; n < last.size(); ++n) {
        const double e_last = last[n].energy;
        double best_gap = std::numeric_limits<double>::infinity();
        double e_prev = 0.0;
        for (double cand : prev) {
            const double gap = std::abs(cand - e_last);
            if (gap < best_gap) {
                best_gap = gap;
                e_prev = cand;
            }
        }
        if (best_gap > 0.2) continue;
        const int digits = matched_digits(e_last, e_prev);
        if (digits >= digit_threshold) {
            EigenResult r = last[n];
            r.state_index = static_cast<int>(n);
            r.matched_digits = digits;
            report.accepted.push_back(r);
        }
    }
    return report;
}

}  // namespace pdm
