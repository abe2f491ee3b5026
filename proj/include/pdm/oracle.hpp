#pragma once

#include <vector>

#include "pdm/expr.hpp"
#include "pdm/hamiltonian.hpp"

namespace pdm {

/// Uniform grid on [-L, L] with Dirichlet ends. Point count must be odd and
/// at least 101.
struct GridSpec {
    double half_width;
    int points;

    GridSpec(double half_width_, int points_);
    double step() const { return 2.0 * half_width / static_cast<double>(points - 1); }
};

/// Symmetric tridiagonal matrix: diag[i] couples to diag[i+1] through off[i].
struct Tridiagonal {
    std::vector<double> diag;
    std::vector<double> off;
};

/// Flux-form discretization of -(1/2)(psi'/m)' + (V + U_ord) psi on the
/// interior nodes. U_ord is evaluated pointwise with central differences of
/// m, keeping this path independent of the series machinery.
Tridiagonal discretize(const Expr& mass, const Expr& potential, const OrderingSpec& ord,
                       const GridSpec& grid, const Bindings& bindings);

/// Eigenvalue count below x via the Sturm sequence.
int sturm_count(const Tridiagonal& t, double x);

/// k smallest eigenvalues by Sturm bisection to absolute 1e-10. k <= 10.
std::vector<double> lowest_eigenvalues(const Tridiagonal& t, int k);

/// Full oracle run; with refine, solves at N and 2N-1 points and Richardson-
/// extrapolates the h^2 error away.
std::vector<double> oracle_eigenvalues(const Expr& mass, const Expr& potential,
                                       const OrderingSpec& ord, const GridSpec& grid,
                                       const Bindings& bindings, int k, bool refine);

}  // namespace pdm
