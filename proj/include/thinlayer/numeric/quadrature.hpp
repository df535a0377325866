#pragma once

#include <functional>

namespace thinlayer::numeric {

enum class QuadratureRule {
    /// Globally adaptive 7/15-point Gauss-Kronrod.
    GaussKronrod,
    /// Double-exponential (tanh-sinh); robust for endpoint singularities.
    TanhSinh,
};

struct QuadratureSpec {
    QuadratureRule rule = QuadratureRule::GaussKronrod;
    double abs_tol = 1e-13;
    double rel_tol = 1e-12;
    int max_intervals = 4000;  // GK subdivision budget
    int max_levels = 12;       // tanh-sinh step halvings
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error
};

/// Integrates f over [lo, hi]. f may carry an integrable singularity at an
/// endpoint; neither rule evaluates f exactly at the endpoints.
/// Throws Error(ToleranceNotMet) when the requested accuracy is not reached.
QuadratureResult integrate_1d(const std::function<double(double)>& f, double lo, double hi,
                              const QuadratureSpec& spec = {});

/// Integrates f(x, y) over the star-shaped region {rho < contour(theta)} in
/// polar coordinates (nested adaptive 1-D rules).
QuadratureResult integrate_disk(const std::function<double(double, double)>& f,
                                const std::function<double(double)>& contour,
                                const QuadratureSpec& spec = {});

}  // namespace thinlayer::numeric
