#pragma once
// Axisymmetric adhesive contact of a thin incompressible bonded layer. The
// pressure solves (1/r)(r p')' = m (phi0 - delta0) inside the contact disk
// with p(a) = 0 and p'(a) = sqrt(2 m Delta gamma).

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "thinlayer/branch.hpp"
#include "thinlayer/material.hpp"

namespace thinlayer::incompressible {

/// Monotone axisymmetric punch shape phi0(r), phi0(0) = 0.
struct AxisymPunchProfile {
    std::function<double(double)> phi0;
    std::optional<double> C;  // set for the paraboloid phi0 = C r^2
    double length_scale = 1.0;

    double operator()(double r) const { return phi0(r); }

    static AxisymPunchProfile paraboloid(double R);
    /// coefficient * r^exponent, exponent > 0.
    static AxisymPunchProfile power(double coefficient, double exponent, double length_scale);
};

/// p(r) = (m/16) [C (r^2 + a^2) - 4 delta0] (r^2 - a^2), C = 1/(2R).
/// Throws Error(OutOfDomain) for r outside [0, a].
double pressure_parabolic(double r, double a, double delta0, const IncompressibleLayer& layer,
                          double R);

/// Batched pressure_parabolic on radii already known to lie in [0, a]; SIMD-dispatched.
void pressure_parabolic_field(std::span<const double> r, std::span<double> out, double a,
                              double delta0, const IncompressibleLayer& layer, double R);

/// delta0 = C a^2 / 2 - (2/a) sqrt(2 Delta gamma / m).
double delta_from_a_parabolic(double a, const IncompressibleLayer& layer, double R);

/// F = (pi m / 48) a^4 (C a^2 - (12/a) sqrt(2 Delta gamma / m)).
double force_from_a_parabolic(double a, const IncompressibleLayer& layer, double R);

/// Theta0(a, r) = int_0^a phi0 rho ln(a/rho) drho - int_0^r phi0 rho ln(r/rho) drho,
/// so that p0 = m [delta0 (a^2 - r^2)/4 - Theta0] solves the interior problem
/// with p0(a) = 0. Accurate to 1e-12 relative; Error(QuadratureFailure) otherwise.
/// Error(OutOfDomain) for r outside [0, a].
double theta0(double a, double r, const AxisymPunchProfile& profile);

/// m [delta0 (a^2 - r^2)/4 - Theta0(a, r)].
double p0_general(double r, double a, double delta0, const AxisymPunchProfile& profile,
                  const IncompressibleLayer& layer);

/// dp0/dr = m [-delta0 r / 2 + (1/r) int_0^r phi0 rho drho].
double p0_general_slope(double r, double a, double delta0, const AxisymPunchProfile& profile,
                        const IncompressibleLayer& layer);

/// delta0 = (2/a^2) int_0^a phi0 rho drho - (2/a) sqrt(2 Delta gamma / m).
double delta0_general(double a, const AxisymPunchProfile& profile,
                      const IncompressibleLayer& layer);

/// F0 = m [(pi/4) int_0^a phi0 (2 rho^2 - a^2) rho drho - (pi a^3 / 4) sqrt(2 Delta gamma / m)].
double force0_general(double a, const AxisymPunchProfile& profile,
                      const IncompressibleLayer& layer);

struct Pulloff {
    double F_min = 0.0;
    double a_at_min = 0.0;
    double delta_at_min = 0.0;
    double F_min_numeric = 0.0;
    double a_at_min_numeric = 0.0;
};

/// Paraboloid: F_min = -3 pi R Delta gamma at a^3 = 6 sqrt(2 Delta gamma / m) / C,
/// confirmed by numerical minimization. Error(NoAdhesion) when Delta gamma = 0.
Pulloff pulloff_incompressible(const IncompressibleLayer& layer, double R);

/// Base axisymmetric state for a given contact radius.
class AxisymSolution {
public:
    AxisymSolution(double a, const AxisymPunchProfile& profile, const IncompressibleLayer& layer,
                   Branch branch = Branch::Stable);

    double a() const noexcept { return a_; }
    double delta0() const noexcept { return delta0_; }
    double F() const noexcept { return F_; }
    double m() const noexcept { return m_; }
    double S() const noexcept { return S_; }
    Branch branch() const noexcept { return branch_; }
    const AxisymPunchProfile& profile() const noexcept { return profile_; }
    const IncompressibleLayer& layer() const noexcept { return layer_; }

    /// Pressure and its radial derivatives. The formulas extend smoothly
    /// past r = a (used to evaluate the field on a perturbed contour).
    double pressure(double r) const;
    double slope(double r) const;
    double curvature(double r) const;

private:
    double a_, delta0_, F_, m_, S_;
    Branch branch_;
    AxisymPunchProfile profile_;
    IncompressibleLayer layer_;
};

struct ScanOptions {
    double a_min_factor = 1e-6;  // times profile.length_scale
    double a_max_factor = 1e3;
    int samples = 600;           // log-spaced
};

/// All contact radii whose indentation equals the target, smallest a first.
/// Error(Unreachable) when the target is not attained on the scan range,
/// Error(BracketFailure) on an invalid range or a failed refinement.
std::vector<AxisymSolution> solve_for_displacement(double delta0_target,
                                                   const AxisymPunchProfile& profile,
                                                   const IncompressibleLayer& layer,
                                                   const ScanOptions& opts = {});

/// All contact radii carrying the target force, smallest a first; a double
/// root (target at a local extremum of F(a)) is labelled Tangent.
std::vector<AxisymSolution> solve_for_force(double F_target, const AxisymPunchProfile& profile,
                                            const IncompressibleLayer& layer,
                                            const ScanOptions& opts = {});

}  // namespace thinlayer::incompressible
