#pragma once
// First-order correction for a slightly non-axisymmetric punch
// phi = phi0(r) + mu phi1(r, theta) on a thin incompressible layer, with the
// displacement delta0 held fixed. The contour moves to r = a + mu h(theta)
// and the pressure becomes p0 + mu p1.

#include <functional>
#include <vector>

#include "thinlayer/incompressible.hpp"

namespace thinlayer::perturbation {

/// a0/2 + sum_{n=1}^{N} (an[n-1] cos n theta + bn[n-1] sin n theta).
struct FourierSeries {
    double a0 = 0.0;
    std::vector<double> an;
    std::vector<double> bn;

    static FourierSeries zeros(int order);
    int order() const noexcept { return static_cast<int>(an.size()); }
    double operator()(double theta) const;
    /// d/dtheta of the series.
    double derivative(double theta) const;
};

/// Dirichlet-to-Neumann map of the disk of radius a: harmonic n -> (n/a) harmonic n.
FourierSeries steklov_poincare(const FourierSeries& h, double a);

/// Harmonic extension of -S h(theta) into the disk of radius a.
struct BoundaryTerm {
    FourierSeries h;
    double a = 0.0;
    double S = 0.0;

    double value(double r, double theta) const;
    double dr(double r, double theta) const;
    double dtheta(double r, double theta) const;
};

BoundaryTerm poisson_extension_boundary_term(const FourierSeries& h, double a, double S);

/// Radial function sampled at Chebyshev-Lobatto points of [0, extent] and
/// evaluated by barycentric interpolation.
class ChebyshevFunction {
public:
    ChebyshevFunction() = default;
    ChebyshevFunction(double extent, std::vector<double> values);

    static std::vector<double> nodes(double extent, int count);

    double operator()(double r) const;
    double extent() const noexcept { return extent_; }
    const std::vector<double>& values() const noexcept { return values_; }

private:
    double extent_ = 0.0;
    std::vector<double> nodes_;
    std::vector<double> values_;
};

/// Solution of Y'' + Y'/r - n^2 Y / r^2 = m f(r), Y(a) = 0, bounded at 0.
struct RadialMode {
    int n = 0;
    double a = 0.0;
    ChebyshevFunction value;
    ChebyshevFunction derivative;
};

struct RadialModeOptions {
    int nodes = 0;          // 0 picks max(48, 2n + 32)
    double extent = 0.0;    // 0 picks 1.25 a; must be >= a
};

/// Variation of parameters with the homogeneous pair r^n, r^-n (n >= 1) or
/// 1, ln r (n = 0); all integrals by composite Gauss-Legendre to 1e-12.
/// f must be defined on [0, extent]. Error(QuadratureFailure) on loss of accuracy.
RadialMode solve_Y1_mode(int n, const std::function<double(double)>& f, double a, double m,
                         const RadialModeOptions& opts = {});

/// Y1_n at a single radius, computed directly (no interpolation).
double Y1_mode_value(int n, const std::function<double(double)>& f, double a, double m,
                     double r);
double Y1_mode_slope(int n, const std::function<double(double)>& f, double a, double m,
                     double r);

/// m (phi0(a) - delta0) - sqrt(2 m Delta gamma) / a.
double p0_second_derivative_at_a(double a, double delta0, const incompressible::AxisymPunchProfile& profile,
                                 const IncompressibleLayer& layer);

enum class Trig { Cos, Sin };

struct Phi1Mode {
    int n = 0;
    Trig trig = Trig::Cos;
    std::function<double(double)> radial;
};

struct PerturbedPunch {
    incompressible::AxisymPunchProfile base;
    std::vector<Phi1Mode> modes;
    double mu = 0.0;
    int truncation = 32;

    void validate() const;
    double phi1(double r, double theta) const;
    double phi(double r, double theta) const { return base(r) + mu * phi1(r, theta); }
};

/// Per-harmonic Y1 solutions for every (n, trig) present in the punch.
struct Y1Field {
    struct Entry {
        int n;
        Trig trig;
        RadialMode mode;
    };
    std::vector<Entry> entries;
};

Y1Field solve_Y1(const PerturbedPunch& punch, const incompressible::AxisymSolution& base);

/// Contour variation. With d_n the Fourier coefficients of dY1/dr at r = a,
/// S = sqrt(2 m Delta gamma) and P = p0''(a):
///   h_n = d_n / (S n / a - P) for n >= 1,   a0 = -2 d_0 / P.
/// Error(ResonantMode) when |S n / a - P| < 1e-12 max(|P|, S n / a);
/// Error(DegenerateBase) when P = 0 while d_0 != 0.
FourierSeries contour_variation(const PerturbedPunch& punch,
                                const incompressible::AxisymSolution& base);
FourierSeries contour_variation(const PerturbedPunch& punch,
                                const incompressible::AxisymSolution& base, const Y1Field& y1);

/// p1 = Y1 + Y0 with Y0 the harmonic extension of -S h.
struct PressureCorrection {
    Y1Field y1;
    BoundaryTerm y0;

    double value(double r, double theta) const;
    double dr(double r, double theta) const;
    double dtheta(double r, double theta) const;
};

PressureCorrection pressure_correction(const PerturbedPunch& punch,
                                       const incompressible::AxisymSolution& base,
                                       const FourierSeries& h);

struct ForceExpansion {
    double F0 = 0.0;
    double F1 = 0.0;
    double Fmu = 0.0;
};

/// F1 = int p1 dA over the base disk; only the axisymmetric harmonic contributes.
ForceExpansion force_expansion(const incompressible::AxisymSolution& base,
                               const PerturbedPunch& punch, const PressureCorrection& p1,
                               double mu);

struct PerturbationSolution {
    FourierSeries h;
    PressureCorrection p1;
    ForceExpansion force;
    double P = 0.0;
    double S = 0.0;

    /// p0 + mu p1 and its polar derivatives (p0 extended past a).
    double p_mu(const incompressible::AxisymSolution& base, double mu, double r,
                double theta) const;
    double p_mu_dr(const incompressible::AxisymSolution& base, double mu, double r,
                   double theta) const;
    double p_mu_dtheta(double mu, double r, double theta) const;
};

PerturbationSolution solve(const PerturbedPunch& punch,
                           const incompressible::AxisymSolution& base);

struct BoundaryResidual {
    double value = 0.0;     // max |p_mu| on r = a + mu h
    double gradient = 0.0;  // max |dp_mu/dn_out - S| on r = a + mu h
    double max() const { return value > gradient ? value : gradient; }
};

/// Residuals of both edge conditions on the perturbed contour, sampled at
/// `samples` equally spaced angles.
BoundaryResidual boundary_residual(const PerturbationSolution& sol,
                                   const incompressible::AxisymSolution& base, double mu,
                                   int samples = 256);

}  // namespace thinlayer::perturbation
