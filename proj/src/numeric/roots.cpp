#include "thinlayer/numeric/roots.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>
#include <vector>

#include "thinlayer/error.hpp"

namespace thinlayer::numeric {

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 const RootOptions& opts) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo == hi) {
        fail(ErrorKind::InvalidArgument, "find_root: invalid bracket");
    }
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (!std::isfinite(fa) || !std::isfinite(fb)) {
        fail(ErrorKind::InvalidArgument, "find_root: non-finite function value at bracket");
    }
    if (std::abs(fa) <= opts.f_tol) return a;
    if (std::abs(fb) <= opts.f_tol) return b;
    if ((fa > 0.0) == (fb > 0.0)) {
        std::ostringstream msg;
        msg << "find_root: f(" << lo << ")=" << fa << " and f(" << hi << ")=" << fb
            << " have the same sign";
        fail(ErrorKind::NoSignChange, msg.str());
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double x_tol = opts.x_tol > 0.0 ? opts.x_tol : 1e-15 * std::abs(hi - lo);

    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int it = 0; it < opts.max_iterations; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol = 2.0 * eps * std::abs(b) + 0.5 * x_tol;
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0.0 || std::abs(fb) <= opts.f_tol) return b;
        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q; else p = -p;
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol ? d : (m > 0.0 ? tol : -tol);
        fb = f(b);
    }
    return b;
}

Minimum minimize_1d(const std::function<double(double)>& f, double lo, double hi,
                    double x_tol, int coarse_samples) {
    if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
        fail(ErrorKind::InvalidArgument, "minimize_1d: invalid bracket");
    }
    if (coarse_samples < 3) coarse_samples = 3;

    // Locate the basin on a coarse grid, then refine inside its neighbours.
    std::vector<double> xs(static_cast<std::size_t>(coarse_samples) + 1);
    std::vector<double> fs(xs.size());
    std::size_t best = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xs[i] = lo + (hi - lo) * static_cast<double>(i) / coarse_samples;
        fs[i] = f(xs[i]);
        if (fs[i] < fs[best]) best = i;
    }
    if (best == 0 || best + 1 == xs.size()) {
        std::ostringstream msg;
        msg << "minimize_1d: smallest sample at bracket end x=" << xs[best];
        fail(ErrorKind::NotUnimodal, msg.str());
    }
    double a = xs[best - 1], b = xs[best + 1];

    // Brent's localmin.
    constexpr double golden = 0.3819660112501051;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double scale_tol = x_tol * (hi - lo);
    double x = xs[best], w = x, v = x;
    double fx = fs[best], fw = fx, fv = fx;
    double d = 0.0, e = 0.0;
    for (int it = 0; it < 500; ++it) {
        const double mid = 0.5 * (a + b);
        const double tol1 = std::sqrt(eps) * std::abs(x) * 1e-3 + scale_tol / 3.0;
        const double tol2 = 2.0 * tol1;
        if (std::abs(x - mid) <= tol2 - 0.5 * (b - a)) break;
        bool golden_step = true;
        if (std::abs(e) > tol1) {
            double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) p = -p; else q = -q;
            const double e_prev = e;
            e = d;
            if (std::abs(p) < std::abs(0.5 * q * e_prev) && p > q * (a - x) && p < q * (b - x)) {
                d = p / q;
                const double u = x + d;
                if (u - a < tol2 || b - u < tol2) d = mid > x ? tol1 : -tol1;
                golden_step = false;
            }
        }
        if (golden_step) {
            e = (x >= mid ? a : b) - x;
            d = golden * e;
        }
        const double u = std::abs(d) >= tol1 ? x + d : x + (d > 0.0 ? tol1 : -tol1);
        const double fu = f(u);
        if (fu <= fx) {
            if (u >= x) a = x; else b = x;
            v = w; fv = fw;
            w = x; fw = fx;
            x = u; fx = fu;
        } else {
            if (u < x) a = u; else b = u;
            if (fu <= fw || w == x) {
                v = w; fv = fw;
                w = u; fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u; fv = fu;
            }
        }
    }
    return {x, fx};
}

}  // namespace thinlayer::numeric
