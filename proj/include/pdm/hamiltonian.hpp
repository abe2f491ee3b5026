#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pdm/series.hpp"

namespace pdm {

/// Kinetic-operator ordering parameters, constrained to eta + eps + rho = -1.
struct OrderingSpec {
    double eta;
    double eps;
    double rho;

    OrderingSpec(double eta_, double eps_, double rho_);
};

/// Named ordering presets, keyed by the written operator forms:
///   BDD    = (0, -1, 0)        kinetic term p (1/m) p
///   MM     = (-1, 0, 0)        (1/m) p^2 + p^2 (1/m)
///   ZK     = (-1/2, 0, -1/2)   (1/sqrt m) p^2 (1/sqrt m)
///   LK-sym = (-1/2, -1/2, 0)   p (1/sqrt m) p (1/sqrt m) + mirror
OrderingSpec ordering_preset(std::string_view name);
const std::vector<std::pair<std::string, OrderingSpec>>& ordering_presets();

/// Gauge factor g with psi = g(x) f(x), stored as lambda = g'/g.
struct GaugeSpec {
    TruncatedSeries lambda;

    /// lambda = -x, i.e. g = exp(-x^2/2).
    static GaugeSpec harmonic(int capacity);
    /// lambda = 0, i.e. g = 1.
    static GaugeSpec identity(int capacity);
};

/// psi'' = P psi' + (Q_V + E Q_E) psi, the normalized form of H psi = E psi.
struct ReducedODE {
    TruncatedSeries P;
    TruncatedSeries Q_V;
    TruncatedSeries Q_E;
};

/// f'' = p0 f' + q0 f after the gauge substitution, with
/// q0(x; E) = q0_V(x) + E * q0_E(x).
struct CanonicalODE {
    TruncatedSeries p0;
    TruncatedSeries q0_V;
    TruncatedSeries q0_E;
};

/// Local potential generated by the operator ordering:
/// U = -(1/4) [ (eta+rho) m''/m^2 + (rho(eps+rho-1) + eta(eps+eta-1)) m'^2/m^3 ].
TruncatedSeries ordering_potential(const TruncatedSeries& m, const OrderingSpec& ord);

/// P = m'/m, Q_V = 2 m (V + U_ord), Q_E = -2 m.
ReducedODE reduce_to_ode(const TruncatedSeries& m, const TruncatedSeries& V,
                         const OrderingSpec& ord);

/// p0 = P - 2 lambda, q0_V = Q_V + P lambda - lambda' - lambda^2, q0_E = Q_E.
CanonicalODE apply_gauge(const ReducedODE& ode, const GaugeSpec& gauge);

}  // namespace pdm
