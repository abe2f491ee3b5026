#pragma once

#include <utility>
#include <vector>

#include "pdm/atem.hpp"

namespace pdm {

/// Truncated Taylor eigenfunction f(x) of a single state, with the boundary
/// pair it was built from. Coefficients are normalized so the lowest nonzero
/// one equals 1.
struct PolynomialWavefunction {
    int state_index = -1;
    double energy = 0.0;
    std::vector<double> coeffs;  // degree-indexed
    double f0 = 0.0;
    double f0_prime = 0.0;
    double norm = 1.0;        // L2 normalization constant, set by psi_samples
    double half_width = 0.0;  // sampling half-width, set by psi_samples
};

struct PsiSamples {
    std::vector<double> x;
    std::vector<double> psi;
    double norm = 1.0;
};

/// Boundary pair (f(0), f'(0)) as the nullvector of the termination system,
/// taken from row m-1 unless that row is null relative to row m; scaled so
/// the larger component is 1.
std::pair<double, double> boundary_ratio(const RecurrenceTrace& trace);

/// f(x) = f(0) (1 + sum q_{j-2}(0) x^j/j!) + f'(0) (x + sum p_{j-2}(0) x^j/j!),
/// un-rescaled via the logged per-step factors.
PolynomialWavefunction build_f(const RecurrenceTrace& trace, std::pair<double, double> boundary,
                               int degree_cap);

/// Largest degree whose term still moves the sampled psi by at least 1e-4 of
/// its sup-norm on [-L, L], capped at iterations/2.
int default_degree_cap(const RecurrenceTrace& trace, std::pair<double, double> boundary,
                       const GaugeSpec& gauge, double half_width);

/// psi = N g(x) f(x) sampled uniformly on [-L, L] (count odd, >= 3), with N
/// from Simpson-rule normalization of |psi|^2 on the same grid.
PsiSamples psi_samples(const PolynomialWavefunction& w, const GaugeSpec& gauge, double half_width,
                       int count);

double eval_f(const PolynomialWavefunction& w, double x);

/// g(x) = exp(integral of lambda from 0 to x); exact for polynomial lambda.
double eval_gauge(const GaugeSpec& gauge, double x);

/// Sign changes of the sampled psi, ignoring samples below rel_threshold of
/// the peak (tail noise from the truncated polynomial).
int count_nodes(const PsiSamples& samples, double rel_threshold = 1e-2);

}  // namespace pdm
