#include "thinlayer/detail/gauss_legendre.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "thinlayer/error.hpp"
#include "thinlayer/kernels.hpp"

namespace thinlayer::detail {

namespace {

GaussRule build_rule(int n) {
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = pk;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        rule.nodes[lo] = -x;
        rule.nodes[hi] = x;
        rule.weights[lo] = w;
        rule.weights[hi] = w;
    }
    if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
    if (order < 1) fail(ErrorKind::InvalidArgument, "gauss_legendre: order must be >= 1");
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<GaussRule>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[order];
    if (!slot) slot = std::make_unique<GaussRule>(build_rule(order));
    return *slot;
}

double gl_integrate(const std::function<double(double)>& f, double lo, double hi, int order,
                    int panels) {
    if (panels < 1) fail(ErrorKind::InvalidArgument, "gl_integrate: panels must be >= 1");
    const GaussRule& rule = gauss_legendre(order);
    std::vector<double> values(rule.nodes.size());
    const double width = (hi - lo) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double a = lo + width * p;
        const double center = a + 0.5 * width;
        for (std::size_t i = 0; i < values.size(); ++i) {
            values[i] = f(center + 0.5 * width * rule.nodes[i]);
        }
        total += 0.5 * width * kernels::weighted_sum(rule.weights, values);
    }
    return total;
}

double gl_integrate_checked(const std::function<double(double)>& f, double lo, double hi,
                            int order, int panels, double rel_tol, double abs_floor,
                            const char* what) {
    const double coarse = gl_integrate(f, lo, hi, order, panels);
    const double fine = gl_integrate(f, lo, hi, order, 2 * panels);
    const double diff = std::abs(fine - coarse);
    if (!std::isfinite(fine) || diff > std::max(rel_tol * std::abs(fine), abs_floor)) {
        std::ostringstream msg;
        msg << what << ": quadrature levels differ by " << diff << " (value " << fine << ")";
        fail(ErrorKind::QuadratureFailure, msg.str());
    }
    return fine;
}

}  // namespace thinlayer::detail
