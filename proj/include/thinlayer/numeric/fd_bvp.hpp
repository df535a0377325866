#pragma once

#include <functional>
#include <vector>

namespace thinlayer::numeric {

enum class GridSpacing { Uniform, Chebyshev };

struct RadialGrid {
    int nodes = 0;  // >= 3
    double radius = 0.0;
    GridSpacing spacing = GridSpacing::Uniform;

    /// Node coordinates on [0, radius], ascending, both ends included.
    std::vector<double> points() const;
};

struct RadialSolution {
    std::vector<double> r;
    std::vector<double> y;
};

/// Second-order finite-difference solution of
///   y'' + y'/r - n^2 y / r^2 = rhs(r),  0 < r < a,
/// with y(a) = boundary_value and regularity at the axis: the limit operator
/// 2 y''(0) = rhs(0) for n = 0, y(0) = 0 for n >= 1. Uniform grid of `nodes`
/// points (>= 3). Throws Error(SingularSystem) on a zero pivot.
RadialSolution solve_radial_bvp_fd(int n, const std::function<double(double)>& rhs, double a,
                                   double boundary_value, int nodes);

}  // namespace thinlayer::numeric
