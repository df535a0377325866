#pragma once
// Edge-zone (boundary-layer) pressure profiles and the stress-intensity
// relations that turn them into boundary conditions for the interior models.

#include "thinlayer/material.hpp"

namespace thinlayer::boundary_layer {

/// Compressible edge profile parameters: aggregate constant and decay rate.
struct CompressibleEdgeProfile {
    double A_script = 0.0;
    double B = 0.0;

    void validate() const;
};

/// Constants of the rational kernel approximation pi / ((u^2 + A^2) sqrt(u^2 + B^2)),
/// tied to the material by 1 / (A^2 B) = theta * M1.
struct AleksandrovConstants {
    double A = 0.0;
    double B = 0.0;

    void validate() const;

    /// Isotropic incompressible pair A = 0.761310, B = 2.588024.
    static AleksandrovConstants isotropic();

    /// Keeps A (isotropic value by default) and picks B so that
    /// 1 / (A^2 B) = theta * M1 holds exactly.
    static AleksandrovConstants from_identity(double theta, double M1,
                                              double A = isotropic().A);
};

/// (1/A) erf(sqrt(B nu)) + exp(-B nu) / sqrt(pi A nu); nu must be positive.
double phi0_compressible(double nu, const CompressibleEdgeProfile& prof);

/// (A^2 B / pi) erf(sqrt(B t)) + A sqrt(B) exp(-B t) (2 A t - 1) / (2 pi^(3/2) t^(3/2))
double phi0_incompressible(double t, const AleksandrovConstants& c);

/// (A^2 B t / pi) erf(sqrt(B t))
///   + exp(-B t) (4 A^2 B t^2 - 2 A^2 t + A + 2 B) / (4 pi^(3/2) sqrt(B) t^(3/2))
double phi1_incompressible(double t, const AleksandrovConstants& c);

/// C0 that cancels the t^(-3/2) terms of C0 phi0 + C1 phi1:
/// C0 = C1 (A + 2B) / (2 A B).
double regular_C0(double C1eps, const AleksandrovConstants& c);

/// C0 phi0(t) + C1eps phi1(t) with the t^(-3/2) parts cancelled algebraically
/// before evaluation, so the remaining t^(-1/2) edge singularity is resolved
/// to full precision near t = 0. Throws Error(RegularityViolation) unless
/// C0 = regular_C0(C1eps) to 1e-12 relative.
double regularized_edge_profile(double t, double C0, double C1eps,
                                const AleksandrovConstants& c);

/// lim_{t->0+} t^(1/2) (C0 phi0 + C1eps phi1) = C1eps A sqrt(B) / pi^(3/2).
double edge_sif_coefficient(double C1eps, const AleksandrovConstants& c);

inline constexpr double kRegularityTolerance = 1e-12;

/// Stress intensity factor of the compressible edge solution,
/// -sqrt(2 / (h A)) theta (delta0 - phi_edge).
double sif_compressible(double delta0, double phi_at_edge, double h, double A_script,
                        double theta);

/// Interior gap delta0 - phi on the contour at which the compressible SIF
/// reaches the adhesive value 2 sqrt(theta Delta gamma).
double jkr_edge_gap(double h, double A_script, double theta, double work_of_adhesion);

/// Boundary data the edge zone imposes on the interior model.
struct EdgeConditions {
    Regime regime = Regime::Compressible;
    double edge_pressure = 0.0;  // p on the contour
    double edge_gradient = 0.0;  // inward normal derivative (incompressible only)
};

EdgeConditions edge_conditions(const LayerSpec& layer);

}  // namespace thinlayer::boundary_layer
