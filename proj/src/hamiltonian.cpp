#include "pdm/hamiltonian.hpp"

#include <cmath>

namespace pdm {

OrderingSpec::OrderingSpec(double eta_, double eps_, double rho_)
    : eta(eta_), eps(eps_), rho(rho_) {
    if (std::abs(eta + eps + rho + 1.0) > 1e-12) {
        throw Error(errc::ordering_constraint,
                    "ordering parameters must satisfy eta + eps + rho = -1");
    }
}

const std::vector<std::pair<std::string, OrderingSpec>>& ordering_presets() {
    static const std::vector<std::pair<std::string, OrderingSpec>> presets = {
        {"BDD", OrderingSpec(0.0, -1.0, 0.0)},
        {"MM", OrderingSpec(-1.0, 0.0, 0.0)},
        {"ZK", OrderingSpec(-0.5, 0.0, -0.5)},
        {"LK-sym", OrderingSpec(-0.5, -0.5, 0.0)},
    };
    return presets;
}

OrderingSpec ordering_preset(std::string_view name) {
    for (const auto& [key, spec] : ordering_presets()) {
        if (key == name) return spec;
    }
    throw Error(errc::bad_config, "unknown ordering preset '" + std::string(name) + "'");
}

GaugeSpec GaugeSpec::harmonic(int capacity) {
    return GaugeSpec{scale(TruncatedSeries::variable(capacity), -1.0)};
}

GaugeSpec GaugeSpec::identity(int capacity) {
    return GaugeSpec{TruncatedSeries(capacity)};
}

TruncatedSeries ordering_potential(const TruncatedSeries& m, const OrderingSpec& ord) {
    if (!(eval_at_origin(m) > 0.0)) {
        throw Error(errc::unphysical_mass, "mass must be positive at the origin");
    }
    const double c_mpp = ord.eta + ord.rho;
    const double c_mp2 = ord.rho * (ord.eps + ord.rho - 1.0) + ord.eta * (ord.eps + ord.eta - 1.0);

    const auto inv_m = reciprocal(m);
    const auto inv_m2 = mul(inv_m, inv_m);
    const auto mp = derivative(m);
    const auto mpp = derivative(mp);

    auto term1 = scale(mul(mpp, inv_m2), c_mpp);
    auto term2 = scale(mul(mul(mp, mp), mul(inv_m2, inv_m)), c_mp2);
    return scale(add(term1, term2), -0.25);
}

ReducedODE reduce_to_ode(const TruncatedSeries& m, const TruncatedSeries& V,
                         const OrderingSpec& ord) {
    const auto U = ordering_potential(m, ord);
    const auto P = mul(derivative(m), reciprocal(m));
    const auto Q_V = scale(mul(m, add(V, U)), 2.0);
    const auto Q_E = scale(m, -2.0);
    return ReducedODE{P, Q_V, Q_E};
}

CanonicalODE apply_gauge(const ReducedODE& ode, const GaugeSpec& gauge) {
    const auto& lam = gauge.lambda;
    auto p0 = sub(ode.P, scale(lam, 2.0));
    auto q0_V = sub(add(ode.Q_V, mul(ode.P, lam)), add(derivative(lam), mul(lam, lam)));
    return CanonicalODE{p0, q0_V, ode.Q_E};
}

}  // namespace pdm
