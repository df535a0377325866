#include "thinlayer/boundary_layer.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "thinlayer/error.hpp"

namespace thinlayer::boundary_layer {

namespace {

constexpr double kPi = std::numbers::pi;
const double kPi32 = std::pow(std::numbers::pi, 1.5);

// Below this the t^(-3/2) terms overflow; report a domain error instead of inf.
constexpr double kSmallestCoordinate = 1e-300;

void require_fast_coordinate(double t, const char* what) {
    if (!(t >= kSmallestCoordinate) || !std::isfinite(t)) {
        std::ostringstream msg;
        msg << what << ": fast coordinate must be positive (got " << t << ")";
        fail(ErrorKind::DomainError, msg.str());
    }
}

}  // namespace

void CompressibleEdgeProfile::validate() const {
    if (!(A_script > 0.0) || !(B > 0.0)) {
        fail(ErrorKind::InvalidArgument, "compressible edge profile needs A > 0 and B > 0");
    }
}

void AleksandrovConstants::validate() const {
    if (!(A > 0.0) || !(B > 0.0) || !std::isfinite(A) || !std::isfinite(B)) {
        fail(ErrorKind::InvalidArgument, "Aleksandrov constants need A > 0 and B > 0");
    }
}

AleksandrovConstants AleksandrovConstants::isotropic() { return {0.761310, 2.588024}; }

AleksandrovConstants AleksandrovConstants::from_identity(double theta, double M1, double A) {
    if (!(theta > 0.0) || !(M1 > 0.0) || !(A > 0.0)) {
        fail(ErrorKind::InvalidArgument, "from_identity needs theta, M1, A > 0");
    }
    return {A, 1.0 / (A * A * theta * M1)};
}

double phi0_compressible(double nu, const CompressibleEdgeProfile& prof) {
    prof.validate();
    require_fast_coordinate(nu, "phi0_compressible");
    const double A = prof.A_script;
    const double B = prof.B;
    return std::erf(std::sqrt(B * nu)) / A + std::exp(-B * nu) / std::sqrt(kPi * A * nu);
}

double phi0_incompressible(double t, const AleksandrovConstants& c) {
    c.validate();
    require_fast_coordinate(t, "phi0_incompressible");
    const double A = c.A, B = c.B;
    const double sqrtB = std::sqrt(B);
    return A * A * B / kPi * std::erf(std::sqrt(B * t)) +
           A * sqrtB * std::exp(-B * t) / (2.0 * kPi32 * t * std::sqrt(t)) * (2.0 * A * t - 1.0);
}

double phi1_incompressible(double t, const AleksandrovConstants& c) {
    c.validate();
    require_fast_coordinate(t, "phi1_incompressible");
    const double A = c.A, B = c.B;
    const double poly = 4.0 * A * A * B * t * t - 2.0 * A * A * t + A + 2.0 * B;
    return A * A * B * t / kPi * std::erf(std::sqrt(B * t)) +
           std::exp(-B * t) / (4.0 * kPi32 * std::sqrt(B) * t * std::sqrt(t)) * poly;
}

double regular_C0(double C1eps, const AleksandrovConstants& c) {
    c.validate();
    return C1eps * (c.A + 2.0 * c.B) / (2.0 * c.A * c.B);
}

double regularized_edge_profile(double t, double C0, double C1eps,
                                const AleksandrovConstants& c) {
    c.validate();
    const double expected = regular_C0(C1eps, c);
    const double scale = std::max(std::abs(expected), std::abs(C0));
    if (std::abs(C0 - expected) > kRegularityTolerance * scale || (scale == 0.0 && C0 != 0.0)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "C0 = " << C0 << " violates the regularity condition (expected " << expected
            << " for C1 = " << C1eps << ")";
        fail(ErrorKind::RegularityViolation, msg.str());
    }
    require_fast_coordinate(t, "regularized_edge_profile");
    const double A = c.A, B = c.B;
    const double sqrtB = std::sqrt(B);
    // With the constant part of the exp-bracket removed, what is left of the
    // exponential terms carries one power of t less.
    const double bracket = C0 * A * A * sqrtB - C1eps * A * A / (2.0 * sqrtB) +
                           C1eps * A * A * sqrtB * t;
    return A * A * B / kPi * (C0 + C1eps * t) * std::erf(std::sqrt(B * t)) +
           std::exp(-B * t) / (kPi32 * std::sqrt(t)) * bracket;
}

double edge_sif_coefficient(double C1eps, const AleksandrovConstants& c) {
    c.validate();
    return C1eps * c.A * std::sqrt(c.B) / kPi32;
}

double sif_compressible(double delta0, double phi_at_edge, double h, double A_script,
                        double theta) {
    if (!(h > 0.0) || !(A_script > 0.0) || !(theta > 0.0)) {
        fail(ErrorKind::InvalidArgument, "sif_compressible needs h, A, theta > 0");
    }
    return -std::sqrt(2.0 / (h * A_script)) * theta * (delta0 - phi_at_edge);
}

double jkr_edge_gap(double h, double A_script, double theta, double work_of_adhesion) {
    if (!(h > 0.0) || !(A_script > 0.0) || !(theta > 0.0) || !(work_of_adhesion >= 0.0)) {
        fail(ErrorKind::InvalidArgument, "jkr_edge_gap: invalid parameters");
    }
    return -std::sqrt(2.0 * h * A_script * work_of_adhesion / theta);
}

EdgeConditions edge_conditions(const LayerSpec& layer) {
    EdgeConditions out;
    out.regime = layer.regime();
    if (out.regime == Regime::Compressible) {
        out.edge_pressure = compressible_layer(layer).edge_pressure();
    } else {
        out.edge_pressure = 0.0;
        out.edge_gradient = incompressible_layer(layer).edge_gradient();
    }
    return out;
}

}  // namespace thinlayer::boundary_layer
