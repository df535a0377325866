#pragma once
// Data-parallel inner loops: a scalar reference and an AVX2 variant of each,
// selected once at runtime.
//
// The scalar reference is written in 4-lane order (four interleaved partial
// sums, combined as (s0+s1)+(s2+s3), then the tail), the same order the AVX2
// code uses, and neither variant fuses multiply-adds. Both variants therefore
// produce bit-identical results, which keeps CLI output byte-identical across
// machines.

#include <cstddef>
#include <span>
#include <string_view>

namespace thinlayer::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa) noexcept;

/// True when the running CPU and the build both support AVX2.
bool avx2_available() noexcept;

/// ISA used by the dispatching entry points. Defaults to the best available;
/// the environment variable THINLAYER_JKR_ISA=scalar forces the reference path.
Isa active_isa() noexcept;

/// Overrides the dispatch target (tests and benchmarking). Requesting Avx2 on
/// a machine without it falls back to Scalar. Returns the ISA now in effect.
Isa set_active_isa(Isa isa) noexcept;

/// sum_i w[i]*f[i]; spans must have equal length.
double weighted_sum(std::span<const double> w, std::span<const double> f);

/// out[i] = k*(delta0 - cx*x[i]^2 - cy*y[i]^2)
/// Compressible pressure under an elliptic paraboloid (cx = 1/(2R1), cy = 1/(2R2)).
void paraboloid_pressure(std::span<const double> x, std::span<const double> y,
                         std::span<double> out, double k, double delta0, double cx,
                         double cy);

/// out[i] = (m/16)*(c*(r^2 + a^2) - 4*delta0)*(r^2 - a^2)
/// Incompressible axisymmetric pressure under a paraboloid.
void parabolic_radial_pressure(std::span<const double> r, std::span<double> out, double m,
                               double c, double a, double delta0);

namespace scalar {
double weighted_sum(const double* w, const double* f, std::size_t n);
void paraboloid_pressure(const double* x, const double* y, double* out, std::size_t n,
                         double k, double delta0, double cx, double cy);
void parabolic_radial_pressure(const double* r, double* out, std::size_t n, double m,
                               double c, double a, double delta0);
}  // namespace scalar

namespace avx2 {
double weighted_sum(const double* w, const double* f, std::size_t n);
void paraboloid_pressure(const double* x, const double* y, double* out, std::size_t n,
                         double k, double delta0, double cx, double cy);
void parabolic_radial_pressure(const double* r, double* out, std::size_t n, double m,
                               double c, double a, double delta0);
}  // namespace avx2

}  // namespace thinlayer::kernels
