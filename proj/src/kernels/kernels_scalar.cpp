#include "thinlayer/kernels.hpp"

namespace thinlayer::kernels::scalar {

double weighted_sum(const double* w, const double* f, std::size_t n) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += w[i] * f[i];
        s1 += w[i + 1] * f[i + 1];
        s2 += w[i + 2] * f[i + 2];
        s3 += w[i + 3] * f[i + 3];
    }
    double s = (s0 + s1) + (s2 + s3);
    for (; i < n; ++i) s += w[i] * f[i];
    return s;
}

void paraboloid_pressure(const double* x, const double* y, double* out, std::size_t n,
                         double k, double delta0, double cx, double cy) {
    for (std::size_t i = 0; i < n; ++i) {
        const double gap = delta0 - cx * (x[i] * x[i]) - cy * (y[i] * y[i]);
        out[i] = k * gap;
    }
}

void parabolic_radial_pressure(const double* r, double* out, std::size_t n, double m,
                               double c, double a, double delta0) {
    const double a2 = a * a;
    const double scale = m / 16.0;
    const double shift = 4.0 * delta0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r2 = r[i] * r[i];
        out[i] = scale * ((c * (r2 + a2) - shift) * (r2 - a2));
    }
}

}  // namespace thinlayer::kernels::scalar
