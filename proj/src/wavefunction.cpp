#include "pdm/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pdm {

namespace {

// Raw coefficient of degree j: [q_{j-2}(0) f0 + p_{j-2}(0) f0'] / j!,
// with the stored (rescaled) trace values blown back up in log space.
double raw_coeff(const RecurrenceTrace& trace, double f0, double f0p, int degree) {
    if (degree == 0) return f0;
    if (degree == 1) return f0p;
    const auto idx = static_cast<std::size_t>(degree - 2);
    const double combo = trace.q_at0[idx] * f0 + trace.p_at0[idx] * f0p;
    const double log_mag = trace.cum_log[idx] - std::lgamma(static_cast<double>(degree) + 1.0);
    if (log_mag > 700.0) {
        throw Error(errc::rescale_overflow,
                    "un-rescaling overflows doubles at degree " + std::to_string(degree));
    }
    return combo * std::exp(log_mag);
}

}  // namespace

std::pair<double, double> boundary_ratio(const RecurrenceTrace& trace) {
    if (trace.iterations < 1) {
        throw Error(errc::precondition, "boundary ratio needs at least two trace entries");
    }
    const auto m = static_cast<std::size_t>(trace.iterations);
    // rows of the termination system: (q_{m-1}(0), p_{m-1}(0)) and (q_m(0), p_m(0))
    const double r1q = trace.q_at0[m - 1], r1p = trace.p_at0[m - 1];
    const double r2q = trace.q_at0[m], r2p = trace.p_at0[m];
    const double n1 = std::hypot(r1q, r1p);
    const double n2 = std::hypot(r2q, r2p);
    const double scale = std::max(n1, n2);
    if (scale <= 1e-300) {
        throw Error(errc::degenerate_boundary, "both termination rows are null");
    }
    double f0, f0p;
    if (n1 >= 1e-12 * scale) {
        f0 = r1p;
        f0p = -r1q;
    } else {
        f0 = r2p;
        f0p = -r2q;
    }
    // normalize so the larger component is exactly 1
    const double big = std::abs(f0) >= std::abs(f0p) ? f0 : f0p;
    return {f0 / big, f0p / big};
}

PolynomialWavefunction build_f(const RecurrenceTrace& trace, std::pair<double, double> boundary,
                               int degree_cap) {
    if (degree_cap < 1 || degree_cap > trace.iterations + 2) {
        throw Error(errc::precondition, "degree cap must lie in [1, iterations + 2]");
    }
    PolynomialWavefunction w;
    w.energy = trace.energy;
    w.f0 = boundary.first;
    w.f0_prime = boundary.second;
    w.coeffs.resize(static_cast<std::size_t>(degree_cap) + 1, 0.0);
    for (int j = 0; j <= degree_cap; ++j) {
        w.coeffs[static_cast<std::size_t>(j)] = raw_coeff(trace, w.f0, w.f0_prime, j);
    }

    double max_abs = 0.0;
    for (double c : w.coeffs) max_abs = std::max(max_abs, std::abs(c));
    if (max_abs == 0.0) {
        throw Error(errc::degenerate_boundary, "eigenfunction coefficients are all zero");
    }
    for (double c : w.coeffs) {
        if (std::abs(c) > 1e-12 * max_abs) {
            for (double& v : w.coeffs) v /= c;  // lowest nonzero coefficient becomes +1
            break;
        }
    }
    return w;
}

double eval_f(const PolynomialWavefunction& w, double x) {
    double acc = 0.0;
    for (auto it = w.coeffs.rbegin(); it != w.coeffs.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

double eval_gauge(const GaugeSpec& gauge, double x) {
    // integrate lambda termwise, then evaluate by Horner
    double acc = 0.0;
    for (int k = gauge.lambda.valid_order(); k >= 0; --k) {
        acc = acc * x + gauge.lambda[k] / static_cast<double>(k + 1);
    }
    return std::exp(acc * x);
}

int default_degree_cap(const RecurrenceTrace& trace, std::pair<double, double> boundary,
                       const GaugeSpec& gauge, double half_width) {
    const int cap_max = std::max(2, trace.iterations / 2);
    const auto full = build_f(trace, boundary, cap_max);

    const int probe = 257;
    double sup_psi = 0.0;
    std::vector<double> xs(probe), gs(probe);
    for (int i = 0; i < probe; ++i) {
        xs[static_cast<std::size_t>(i)] =
            -half_width + 2.0 * half_width * i / static_cast<double>(probe - 1);
        gs[static_cast<std::size_t>(i)] = eval_gauge(gauge, xs[static_cast<std::size_t>(i)]);
        sup_psi = std::max(sup_psi, std::abs(gs[static_cast<std::size_t>(i)] *
                                             eval_f(full, xs[static_cast<std::size_t>(i)])));
    }
    if (sup_psi == 0.0) return cap_max;

    int cap = 1;
    for (int d = 2; d <= cap_max; ++d) {
        const double c = full.coeffs[static_cast<std::size_t>(d)];
        if (c == 0.0) continue;
        double term_max = 0.0;
        for (int i = 0; i < probe; ++i) {
            term_max = std::max(term_max,
                                std::abs(c * std::pow(xs[static_cast<std::size_t>(i)], d) *
                                         gs[static_cast<std::size_t>(i)]));
        }
        if (term_max >= 1e-4 * sup_psi) cap = d;
    }
    return std::max(cap, 2);
}

PsiSamples psi_samples(const PolynomialWavefunction& w, const GaugeSpec& gauge, double half_width,
                       int count) {
    if (count < 3 || count % 2 == 0) {
        throw Error(errc::precondition, "sample count must be odd and at least 3");
    }
    if (!(half_width > 0.0)) {
        throw Error(errc::precondition, "sampling half-width must be positive");
    }

    PsiSamples out;
    out.x.resize(static_cast<std::size_t>(count));
    out.psi.resize(static_cast<std::size_t>(count));
    const double h = 2.0 * half_width / static_cast<double>(count - 1);
    for (int i = 0; i < count; ++i) {
        const double x = -half_width + h * i;
        out.x[static_cast<std::size_t>(i)] = x;
        out.psi[static_cast<std::size_t>(i)] = eval_gauge(gauge, x) * eval_f(w, x);
    }

    // Simpson rule for the norm integral
    double integral = 0.0;
    for (int i = 0; i < count; ++i) {
        const double v = out.psi[static_cast<std::size_t>(i)];
        const double weight = (i == 0 || i == count - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        integral += weight * v * v;
    }
    integral *= h / 3.0;
    if (!(integral > 0.0) || !std::isfinite(integral)) {
        throw Error(errc::non_finite, "normalization integral is not positive and finite");
    }
    const double norm = 1.0 / std::sqrt(integral);
    double peak = 0.0;
    for (double& v : out.psi) {
        v *= norm;
        peak = std::max(peak, std::abs(v));
    }
    out.norm = norm;

    const double edge = std::max(std::abs(out.psi.front()), std::abs(out.psi.back()));
    if (edge * edge > 1e-4 * peak * peak) {
        throw Error(errc::domain_too_small,
                    "psi has not decayed at the boundary; enlarge the sampling domain");
    }
    return out;
}

int count_nodes(const PsiSamples& samples, double rel_threshold) {
    double peak = 0.0;
    for (double v : samples.psi) peak = std::max(peak, std::abs(v));
    const double cut = rel_threshold * peak;
    int nodes = 0;
    int last_sign = 0;
    for (double v : samples.psi) {
        if (std::abs(v) < cut) continue;
        const int s = v > 0.0 ? 1 : -1;
        if (last_sign != 0 && s != last_sign) ++nodes;
        last_sign = s;
    }
    return nodes;
}

}  // namespace pdm
