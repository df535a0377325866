#pragma once
// Fixed-order Gauss-Legendre used by the solvers themselves. The verification
// oracle (numeric/quadrature.hpp) uses different rules on purpose.

#include <functional>
#include <vector>

namespace thinlayer::detail {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1], ascending
    std::vector<double> weights;
};

/// Cached n-point rule; thread-safe.
const GaussRule& gauss_legendre(int order);

/// Composite rule: `panels` equal panels of `order` points each.
double gl_integrate(const std::function<double(double)>& f, double lo, double hi, int order,
                    int panels = 1);

/// Composite rule checked against the same rule on twice as many panels;
/// throws Error(QuadratureFailure) when the two disagree by more than
/// max(rel_tol * |value|, abs_floor). Returns the finer value.
double gl_integrate_checked(const std::function<double(double)>& f, double lo, double hi,
                            int order, int panels, double rel_tol, double abs_floor,
                            const char* what);

}  // namespace thinlayer::detail
