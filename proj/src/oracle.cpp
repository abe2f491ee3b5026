#include "pdm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pdm {

GridSpec::GridSpec(double half_width_, int points_) : half_width(half_width_), points(points_) {
    if (!(half_width > 0.0)) {
        throw Error(errc::bad_config, "grid half-width must be positive");
    }
    if (points < 101 || points % 2 == 0) {
        throw Error(errc::bad_config, "grid point count must be odd and at least 101");
    }
}

Tridiagonal discretize(const Expr& mass, const Expr& potential, const OrderingSpec& ord,
                       const GridSpec& grid, const Bindings& bindings) {
    const int n = grid.points;
    const double h = grid.step();
    const double l = grid.half_width;
    const double c_mpp = ord.eta + ord.rho;
    const double c_mp2 = ord.rho * (ord.eps + ord.rho - 1.0) + ord.eta * (ord.eps + ord.eta - 1.0);

    // mass at nodes and half-nodes
    std::vector<double> m_node(static_cast<std::size_t>(n));
    std::vector<double> m_half(static_cast<std::size_t>(n) - 1);
    for (int i = 0; i < n; ++i) {
        const double x = -l + h * i;
        m_node[static_cast<std::size_t>(i)] = mass.eval(x, bindings);
        if (m_node[static_cast<std::size_t>(i)] <= 0.0) {
            throw Error(errc::unphysical_mass, "mass is non-positive on the grid");
        }
        if (i + 1 < n) {
            m_half[static_cast<std::size_t>(i)] = mass.eval(x + 0.5 * h, bindings);
            if (m_half[static_cast<std::size_t>(i)] <= 0.0) {
                throw Error(errc::unphysical_mass, "mass is non-positive on the grid");
            }
        }
    }

    Tridiagonal t;
    const int interior = n - 2;
    t.diag.resize(static_cast<std::size_t>(interior));
    t.off.resize(static_cast<std::size_t>(interior) - 1);
    const double inv_2h2 = 1.0 / (2.0 * h * h);
    for (int i = 1; i <= interior; ++i) {
        const double x = -l + h * i;
        const double m0 = m_node[static_cast<std::size_t>(i)];
        const double mp = (m_node[static_cast<std::size_t>(i + 1)] -
                           m_node[static_cast<std::size_t>(i - 1)]) /
                          (2.0 * h);
        const double mpp = (m_node[static_cast<std::size_t>(i + 1)] - 2.0 * m0 +
                            m_node[static_cast<std::size_t>(i - 1)]) /
                           (h * h);
        const double u = -0.25 * (c_mpp * mpp / (m0 * m0) + c_mp2 * mp * mp / (m0 * m0 * m0));
        t.diag[static_cast<std::size_t>(i - 1)] =
            inv_2h2 * (1.0 / m_half[static_cast<std::size_t>(i)] +
                       1.0 / m_half[static_cast<std::size_t>(i - 1)]) +
            potential.eval(x, bindings) + u;
        if (i < interior) {
            t.off[static_cast<std::size_t>(i - 1)] =
                -inv_2h2 / m_half[static_cast<std::size_t>(i)];
        }
    }
    return t;
}

int sturm_count(const Tridiagonal& t, double x) {
    // count of negative pivots in the LDL^T factorization of T - xI
    int count = 0;
    double d = 1.0;
    const std::size_t n = t.diag.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double off2 = i == 0 ? 0.0 : t.off[i - 1] * t.off[i - 1];
        d = t.diag[i] - x - off2 / d;
        if (d == 0.0) d = 1e-30;
        if (d < 0.0) ++count;
    }
    return count;
}

std::vector<double> lowest_eigenvalues(const Tridiagonal& t, int k) {
    if (k < 1 || k > 10) {
        throw Error(errc::precondition, "eigenvalue count must lie in [1, 10]");
    }
    if (t.diag.size() < static_cast<std::size_t>(k)) {
        throw Error(errc::precondition, "matrix smaller than requested eigenvalue count");
    }

    // Gershgorin bounds
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t.diag.size(); ++i) {
        const double r = (i > 0 ? std::abs(t.off[i - 1]) : 0.0) +
                         (i + 1 < t.diag.size() ? std::abs(t.off[i]) : 0.0);
        lo = std::min(lo, t.diag[i] - r);
        hi = std::max(hi, t.diag[i] + r);
    }

    std::vector<double> eigs;
    eigs.reserve(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        double a = lo, b = hi;
        while (b - a > 1e-10) {
            const double mid = 0.5 * (a + b);
            if (sturm_count(t, mid) > j) {
                b = mid;
            } else {
                a = mid;
            }
        }
        eigs.push_back(0.5 * (a + b));
    }
    return eigs;
}

std::vector<double> oracle_eigenvalues(const Expr& mass, const Expr& potential,
                                       const OrderingSpec& ord, const GridSpec& grid,
                                       const Bindings& bindings, int k, bool refine) {
    const auto coarse = lowest_eigenvalues(discretize(mass, potential, ord, grid, bindings), k);
    if (!refine) return coarse;
    const GridSpec fine_grid(grid.half_width, 2 * grid.points - 1);
    const auto fine = lowest_eigenvalues(discretize(mass, potential, ord, fine_grid, bindings), k);
    std::vector<double> out(coarse.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
    }
    return out;
}

}  // namespace pdm
