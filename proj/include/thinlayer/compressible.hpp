#pragma once
// Adhesive contact of a thin compressible bonded layer. The interior pressure
// is proportional to the local gap, p = (A33/h)(delta0 - phi), and the contour
// is the level set on which p equals the adhesive edge pressure.

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "thinlayer/branch.hpp"
#include "thinlayer/material.hpp"

namespace thinlayer::compressible {

using Point = std::array<double, 2>;

/// Elliptic paraboloid y1^2/(2 R1) + y2^2/(2 R2), stored with R1 >= R2.
class ParaboloidPunch {
public:
    ParaboloidPunch(double R1, double R2);
    static ParaboloidPunch sphere(double R) { return {R, R}; }

    double R1() const noexcept { return R1_; }
    double R2() const noexcept { return R2_; }
    double operator()(double y1, double y2) const;

private:
    double R1_;
    double R2_;
};

struct EllipticContact {
    double a = 0.0;       // semi-axis along y1 (major)
    double b = 0.0;       // semi-axis along y2
    double e = 0.0;       // eccentricity
    double delta0 = 0.0;
    double F = 0.0;
};

/// Pressure (A33/h)(delta0 - phi(y)); defined everywhere, physical inside the contour.
double pressure(const Point& y, const ParaboloidPunch& punch, const CompressibleLayer& layer,
                double delta0);

/// Batched pressure on points (xs[i], ys[i]); SIMD-dispatched.
void pressure_field(std::span<const double> xs, std::span<const double> ys,
                    std::span<double> out, const ParaboloidPunch& punch,
                    const CompressibleLayer& layer, double delta0);

/// Contact ellipse for an imposed indentation. Throws Error(NoContact) when
/// delta0 + sqrt(2 h Delta gamma / A33) <= 0.
EllipticContact contact_ellipse(const ParaboloidPunch& punch, const CompressibleLayer& layer,
                                double delta0);

/// Contact force from the ellipse: (pi A33 / (2h)) a b (delta0 - sqrt(2 h Delta gamma / A33)).
double force(const ParaboloidPunch& punch, const CompressibleLayer& layer, double delta0);

/// The same force written through the major semi-axis alone:
/// (pi A33 / (2h)) sqrt(R2/R1) a^2 (a^2/(2 R1) - 2 sqrt(2 h Delta gamma / A33)).
double force_from_a(double a, const ParaboloidPunch& punch, const CompressibleLayer& layer);

/// Indentation for a given major semi-axis: a^2/(2 R1) - sqrt(2 h Delta gamma / A33).
double delta_from_a(double a, const ParaboloidPunch& punch, const CompressibleLayer& layer);

struct Pulloff {
    double F_min = 0.0;
    double a_at_min = 0.0;
    double delta_at_min = 0.0;
    // Independent confirmation by numerical minimization of F(a).
    double F_min_numeric = 0.0;
    double a_at_min_numeric = 0.0;
};

/// Pull-off of an elliptic paraboloid: F_min = -2 pi Delta gamma sqrt(R1 R2).
/// Throws Error(NoAdhesion) when Delta gamma = 0.
Pulloff pulloff(const ParaboloidPunch& punch, const CompressibleLayer& layer);

/// Axisymmetric case: F_min = -2 pi R Delta gamma at a^2 = 2 R sqrt(2 h Delta gamma / A33).
Pulloff pulloff_axisym(const CompressibleLayer& layer, double R);

using thinlayer::Branch;

struct ForceSolution {
    Branch branch = Branch::Stable;
    double delta0 = 0.0;
    EllipticContact contact;
};

/// Contact states carrying a prescribed force. The stable branch (dF/da > 0,
/// larger a) comes first; the unstable branch follows when it exists. At
/// F = F_min the single returned root is labelled Tangent.
/// Throws Error(Unreachable) when F_target < F_min.
std::vector<ForceSolution> solve_for_force(double F_target, const ParaboloidPunch& punch,
                                           const CompressibleLayer& layer);

/// Punch given by an arbitrary shape function with phi(0) = 0 and star-shaped
/// sub-level sets about the origin.
struct GeneralPunch {
    std::function<double(double, double)> phi;
    double length_scale = 1.0;  // initial radial bracket size
};

struct GeneralContactOptions {
    int angles = 256;           // contour samples, uniform in angle
    int radial_order = 32;      // Gauss-Legendre points per ray
    int scan_samples = 64;      // sign-change scan along each ray
    double rel_tol = 1e-12;     // radial root tolerance (times the local radius)
    double quadrature_tol = 1e-8;
};

struct GeneralContact {
    std::vector<double> theta;  // sample angles
    std::vector<double> radius; // contour radius at each angle
    double level = 0.0;         // phi on the contour, delta0 + sqrt(2 h dg / A33)
    double F = 0.0;
    double F_error = 0.0;       // difference between quadrature levels
};

/// Contour by per-angle radial root finding of phi = level; force by
/// quadrature of the pressure inside it (Gauss-Legendre along rays,
/// trapezoidal in angle, checked against half the angular and radial
/// resolution). Throws Error(NoContact) when level <= 0,
/// Error(NonStarShaped) when a ray crosses the level set more than once, and
/// Error(QuadratureFailure) when the two quadrature levels disagree.
GeneralContact general_contact_region(const GeneralPunch& punch, const CompressibleLayer& layer,
                                      double delta0, const GeneralContactOptions& opts = {});

}  // namespace thinlayer::compressible
