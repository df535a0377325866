#include "thinlayer/numeric/fd_bvp.hpp"

#include <cmath>
#include <numbers>

#include "thinlayer/error.hpp"

namespace thinlayer::numeric {

std::vector<double> RadialGrid::points() const {
    if (nodes < 3) fail(ErrorKind::InvalidArgument, "RadialGrid: need at least 3 nodes");
    if (!(radius > 0.0)) fail(ErrorKind::InvalidArgument, "RadialGrid: radius must be positive");
    std::vector<double> r(static_cast<std::size_t>(nodes));
    const int last = nodes - 1;
    for (int i = 0; i <= last; ++i) {
        const double s = static_cast<double>(i) / last;
        r[static_cast<std::size_t>(i)] =
            spacing == GridSpacing::Uniform
                ? radius * s
                : 0.5 * radius * (1.0 - std::cos(std::numbers::pi * s));
    }
    r.back() = radius;
    return r;
}

RadialSolution solve_radial_bvp_fd(int n, const std::function<double(double)>& rhs, double a,
                                   double boundary_value, int nodes) {
    if (n < 0) fail(ErrorKind::InvalidArgument, "solve_radial_bvp_fd: negative harmonic");
    RadialGrid grid{nodes, a, GridSpacing::Uniform};
    RadialSolution sol{grid.points(), {}};
    const std::size_t count = sol.r.size();
    const double dr = a / static_cast<double>(count - 1);
    const double n2 = static_cast<double>(n) * n;

    // Tridiagonal system: lower[i] y[i-1] + diag[i] y[i] + upper[i] y[i+1] = b[i].
    std::vector<double> lower(count, 0.0), diag(count, 0.0), upper(count, 0.0), b(count, 0.0);
    if (n == 0) {
        // Axis: y'' + y'/r -> 2 y''(0), with the mirror node y(-dr) = y(dr).
        diag[0] = -4.0 / (dr * dr);
        upper[0] = 4.0 / (dr * dr);
        b[0] = rhs(0.0);
    } else {
        diag[0] = 1.0;
        b[0] = 0.0;
    }
    for (std::size_t i = 1; i + 1 < count; ++i) {
        const double r = sol.r[i];
        lower[i] = 1.0 / (dr * dr) - 1.0 / (2.0 * r * dr);
        diag[i] = -2.0 / (dr * dr) - n2 / (r * r);
        upper[i] = 1.0 / (dr * dr) + 1.0 / (2.0 * r * dr);
        b[i] = rhs(r);
    }
    diag[count - 1] = 1.0;
    b[count - 1] = boundary_value;

    // Thomas algorithm.
    for (std::size_t i = 1; i < count; ++i) {
        if (diag[i - 1] == 0.0) fail(ErrorKind::SingularSystem, "solve_radial_bvp_fd: zero pivot");
        const double w = lower[i] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        b[i] -= w * b[i - 1];
    }
    if (diag[count - 1] == 0.0) fail(ErrorKind::SingularSystem, "solve_radial_bvp_fd: zero pivot");
    sol.y.assign(count, 0.0);
    sol.y[count - 1] = b[count - 1] / diag[count - 1];
    for (std::size_t i = count - 1; i-- > 0;) {
        sol.y[i] = (b[i] - upper[i] * sol.y[i + 1]) / diag[i];
    }
    return sol;
}

}  // namespace thinlayer::numeric
