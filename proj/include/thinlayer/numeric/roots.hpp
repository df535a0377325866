#pragma once

#include <functional>

namespace thinlayer::numeric {

struct RootOptions {
    double x_tol = 0.0;     // absolute; 0 selects 1e-15 * bracket width
    double f_tol = 0.0;     // |f| accepted as zero
    int max_iterations = 200;
};

/// Brent's method on a sign-changing bracket (safeguarded bisection/secant/
/// inverse quadratic). Throws Error(NoSignChange) when f(lo) and f(hi) have
/// the same strict sign.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 const RootOptions& opts = {});

struct Minimum {
    double x;
    double value;
};

/// Brent's parabolic/golden-section minimizer on [lo, hi]. The function is
/// first sampled on a coarse grid; if the smallest sample lies on the bracket
/// boundary the bracket does not enclose an interior minimum and
/// Error(NotUnimodal) is thrown.
/// x_tol is relative to the bracket width. Rounding limits argmin resolution
/// to about sqrt(machine epsilon) * scale for flat minima; the minimum value
/// itself is accurate to machine precision.
Minimum minimize_1d(const std::function<double(double)>& f, double lo, double hi,
                    double x_tol = 1e-10, int coarse_samples = 64);

}  // namespace thinlayer::numeric
