#include "thinlayer/numeric/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <vector>

#include "thinlayer/error.hpp"

namespace thinlayer::numeric {

namespace {

// Kronrod abscissae (positive half, descending) and weights; every other
// abscissa is a 7-point Gauss node.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double lo, hi, value, error;
    double floor;  // rounding limit of this panel
    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod_15(const std::function<double(double)>& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    double abs_k = std::abs(kronrod);
    std::array<double, 7> f1{}, f2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[static_cast<std::size_t>(j)];
        f1[static_cast<std::size_t>(j)] = f(center - dx);
        f2[static_cast<std::size_t>(j)] = f(center + dx);
        const double pair = f1[static_cast<std::size_t>(j)] + f2[static_cast<std::size_t>(j)];
        kronrod += kWgk[static_cast<std::size_t>(j)] * pair;
        abs_k += kWgk[static_cast<std::size_t>(j)] *
                 (std::abs(f1[static_cast<std::size_t>(j)]) + std::abs(f2[static_cast<std::size_t>(j)]));
        if (j % 2 == 1) gauss += kWg[static_cast<std::size_t>(j / 2)] * pair;
    }
    const double mean = 0.5 * kronrod;
    double asc = kWgk[7] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 7; ++j) {
        asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    }
    const double value = kronrod * half;
    asc *= std::abs(half);
    abs_k *= std::abs(half);
    double error = std::abs((kronrod - gauss) * half);
    if (asc != 0.0 && error != 0.0) {
        error = asc * std::min(1.0, std::pow(200.0 * error / asc, 1.5));
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    double floor = 0.0;
    if (abs_k > std::numeric_limits<double>::min() / (50.0 * eps)) {
        floor = 50.0 * eps * abs_k;
        error = std::max(error, floor);
    }
    return {lo, hi, value, error, floor};
}

QuadratureResult adaptive_gk(const std::function<double(double)>& f, double lo, double hi,
                             const QuadratureSpec& spec) {
    std::priority_queue<Panel> queue;
    Panel first = gauss_kronrod_15(f, lo, hi);
    double total = first.value;
    double total_err = first.error;
    double total_floor = first.floor;
    queue.push(first);
    int intervals = 1;
    // Once the estimate is mostly rounding floor, subdividing cannot help.
    while (total_err > std::max({spec.abs_tol, spec.rel_tol * std::abs(total), 2.0 * total_floor})) {
        if (intervals >= spec.max_intervals) {
            std::ostringstream msg;
            msg << "adaptive Gauss-Kronrod: error estimate " << total_err
                << " after " << intervals << " intervals";
            fail(ErrorKind::ToleranceNotMet, msg.str());
        }
        Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            fail(ErrorKind::ToleranceNotMet, "adaptive Gauss-Kronrod: interval underflow");
        }
        Panel left = gauss_kronrod_15(f, worst.lo, mid);
        Panel right = gauss_kronrod_15(f, mid, worst.hi);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        total_floor += left.floor + right.floor - worst.floor;
        queue.push(left);
        queue.push(right);
        ++intervals;
    }
    // Re-sum to shed the drift of the running updates.
    double value = 0.0, error = 0.0;
    while (!queue.empty()) {
        value += queue.top().value;
        error += queue.top().error;
        queue.pop();
    }
    return {value, error};
}

QuadratureResult tanh_sinh(const std::function<double(double)>& f, double lo, double hi,
                           const QuadratureSpec& spec) {
    constexpr double half_pi = 0.5 * std::numbers::pi;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    // Past t = 4.5 the nodes sit within 1e-60 of the ends, so even an x^(-1/2)
    // singularity leaves a negligible tail.
    constexpr double t_max = 4.5;

    // Nodes at +t and -t sit at the same distance from hi and lo respectively;
    // the distance is formed without cancellation so endpoint singularities
    // are sampled accurately.
    double abs_sum = 0.0;
    auto pair_sum = [&](double t) {
        if (t == 0.0) {
            const double v = half * half_pi * f(center);
            abs_sum += std::abs(v);
            return v;
        }
        const double u = half_pi * std::sinh(t);
        const double dist = half * 2.0 / (std::exp(2.0 * u) + 1.0);
        const double cu = std::cosh(u);
        const double w = half * half_pi * std::cosh(t) / (cu * cu);
        if (!(dist > 0.0) || !(w > 0.0) || !std::isfinite(w)) return 0.0;
        const double a = f(hi - dist), b = f(lo + dist);
        abs_sum += w * (std::abs(a) + std::abs(b));
        return w * (a + b);
    };

    double step = 1.0;
    double sum = pair_sum(0.0);
    for (double t = step; t <= t_max; t += step) sum += pair_sum(t);
    double estimate = sum * step;
    double previous = estimate;
    double error = std::numeric_limits<double>::infinity();
    for (int level = 1; level <= spec.max_levels; ++level) {
        step *= 0.5;
        for (double t = step; t <= t_max; t += 2.0 * step) sum += pair_sum(t);
        estimate = sum * step;
        // Level difference plus a rounding allowance on the absolute sum.
        error = std::abs(estimate - previous) + 16.0 * eps * abs_sum * step;
        if (level >= 3 && error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(estimate))) {
            return {estimate, error};
        }
        previous = estimate;
    }
    std::ostringstream msg;
    msg << "tanh-sinh: level difference " << error << " after " << spec.max_levels
        << " levels";
    fail(ErrorKind::ToleranceNotMet, msg.str());
}

}  // namespace

QuadratureResult integrate_1d(const std::function<double(double)>& f, double lo, double hi,
                              const QuadratureSpec& spec) {
    if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0)) {
        fail(ErrorKind::InvalidArgument, "integrate_1d: tolerances must be positive");
    }
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        fail(ErrorKind::InvalidArgument, "integrate_1d: interval must be finite");
    }
    if (lo == hi) return {0.0, 0.0};
    if (hi < lo) {
        QuadratureResult r = integrate_1d(f, hi, lo, spec);
        return {-r.value, r.error};
    }
    return spec.rule == QuadratureRule::TanhSinh ? tanh_sinh(f, lo, hi, spec)
                                                 : adaptive_gk(f, lo, hi, spec);
}

QuadratureResult integrate_disk(const std::function<double(double, double)>& f,
                                const std::function<double(double)>& contour,
                                const QuadratureSpec& spec) {
    QuadratureSpec inner = spec;
    inner.abs_tol = spec.abs_tol * 1e-2;
    inner.rel_tol = spec.rel_tol * 1e-2;
    double inner_error = 0.0;
    auto radial = [&](double theta) {
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const double r_edge = contour(theta);
        if (!(r_edge >= 0.0)) fail(ErrorKind::InvalidArgument, "integrate_disk: negative contour");
        QuadratureResult r = integrate_1d(
            [&](double rho) { return f(rho * c, rho * s) * rho; }, 0.0, r_edge, inner);
        inner_error = std::max(inner_error, r.error);
        return r.value;
    };
    QuadratureResult outer = integrate_1d(radial, 0.0, 2.0 * std::numbers::pi, spec);
    outer.error += 2.0 * std::numbers::pi * inner_error;
    return outer;
}

}  // namespace thinlayer::numeric
