#include "thinlayer/material.hpp"

#include <cmath>
#include <sstream>

#include "thinlayer/error.hpp"

namespace thinlayer {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        std::ostringstream msg;
        msg << name << " must be positive and finite (got " << value << ")";
        fail(ErrorKind::InvalidArgument, msg.str());
    }
}

void require_compressible(Regime regime, const char* what) {
    if (regime != Regime::Compressible) {
        fail(ErrorKind::RegimeMismatch,
             std::string(what) + " is defined only for a compressible layer");
    }
}

void require_incompressible(Regime regime, const char* what) {
    if (regime != Regime::Incompressible) {
        fail(ErrorKind::RegimeMismatch,
             std::string(what) + " is defined only for an incompressible layer");
    }
}

}  // namespace

void TransverseIsotropicStiffness::validate() const {
    require_positive(A11, "A11");
    require_positive(A33, "A33");
    require_positive(A44, "A44");
    if (!std::isfinite(A13)) fail(ErrorKind::InvalidArgument, "A13 must be finite");
    if (!(A11 * A33 - A13 * A13 > 0.0)) {
        fail(ErrorKind::InvalidArgument, "stiffness not positive definite: A11*A33 - A13^2 <= 0");
    }
}

TransverseIsotropicStiffness stiffness_from_isotropic(const IsotropicElastic& iso) {
    require_positive(iso.E, "E");
    if (!(iso.nu > -1.0 && iso.nu <= 0.5)) {
        fail(ErrorKind::InvalidArgument, "Poisson's ratio must lie in (-1, 0.5]");
    }
    if (iso.nu == 0.5) {
        fail(ErrorKind::IncompressibleInput,
             "nu = 0.5 makes A33 unbounded; describe the layer by its shear modulus");
    }
    const double lambda = iso.E * iso.nu / ((1.0 + iso.nu) * (1.0 - 2.0 * iso.nu));
    const double mu = iso.E / (2.0 * (1.0 + iso.nu));
    TransverseIsotropicStiffness s;
    // A33 written in the closed form E(1-nu)/((1+nu)(1-2nu)) rather than lambda + 2 mu.
    s.A33 = iso.E * (1.0 - iso.nu) / ((1.0 + iso.nu) * (1.0 - 2.0 * iso.nu));
    s.A11 = s.A33;
    s.A13 = lambda;
    s.A44 = mu;
    return s;
}

double isotropic_theta(const IsotropicElastic& iso) {
    require_positive(iso.E, "E");
    if (!(iso.nu > -1.0 && iso.nu <= 0.5)) {
        fail(ErrorKind::InvalidArgument, "Poisson's ratio must lie in (-1, 0.5]");
    }
    return iso.E / (2.0 * (1.0 - iso.nu * iso.nu));
}

double m0(const TransverseIsotropicStiffness& stiff) {
    require_positive(stiff.A33, "A33");
    return 1.0 / stiff.A33;
}

double m1(const TransverseIsotropicStiffness& stiff) {
    require_positive(stiff.A33, "A33");
    require_positive(stiff.A44, "A44");
    return stiff.A13 * (stiff.A13 - stiff.A44) / (3.0 * stiff.A33 * stiff.A33 * stiff.A44);
}

double m1_incompressible(double G_prime) {
    require_positive(G_prime, "G'");
    return 1.0 / (3.0 * G_prime);
}

double aggregate_A(double theta, const TransverseIsotropicStiffness& stiff, double gamma_sum) {
    stiff.validate();
    require_positive(theta, "theta");
    require_positive(gamma_sum, "gamma1 + gamma2");
    const double det = stiff.A11 * stiff.A33 - stiff.A13 * stiff.A13;
    const double value = det / (gamma_sum * stiff.A11 * stiff.A33);
    const double identity = theta / stiff.A33;
    const double rel = std::abs(value - identity) / identity;
    if (rel > kConsistencyTolerance) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "aggregate constant " << value << " from gamma1+gamma2 disagrees with theta/A33 = "
            << identity << " (relative difference " << rel << ")";
        fail(ErrorKind::InconsistentInputs, msg.str());
    }
    return value;
}

double consistent_gamma_sum(double theta, const TransverseIsotropicStiffness& stiff) {
    stiff.validate();
    require_positive(theta, "theta");
    const double det = stiff.A11 * stiff.A33 - stiff.A13 * stiff.A13;
    return det / (theta * stiff.A11);
}

Regime LayerSpec::regime() const noexcept {
    return std::holds_alternative<IncompressibleShear>(material) ? Regime::Incompressible
                                                                 : Regime::Compressible;
}

void LayerSpec::validate() const {
    require_positive(h, "layer thickness h");
    if (!(work_of_adhesion >= 0.0) || !std::isfinite(work_of_adhesion)) {
        fail(ErrorKind::InvalidArgument, "work of adhesion must be finite and >= 0");
    }
    if (theta) require_positive(*theta, "theta");
    if (gamma_sum) require_positive(*gamma_sum, "gamma1 + gamma2");
    if (const auto* stiff = std::get_if<TransverseIsotropicStiffness>(&material)) {
        stiff->validate();
        if (theta && gamma_sum) (void)aggregate_A(*theta, *stiff, *gamma_sum);
    } else {
        require_positive(std::get<IncompressibleShear>(material).G_prime, "G'");
    }
}

LayerSpec LayerSpec::isotropic(const IsotropicElastic& iso, double h, double work_of_adhesion) {
    LayerSpec spec;
    spec.material = stiffness_from_isotropic(iso);
    spec.h = h;
    spec.work_of_adhesion = work_of_adhesion;
    spec.theta = isotropic_theta(iso);
    return spec;
}

LayerSpec LayerSpec::transverse(const TransverseIsotropicStiffness& stiff, double h,
                                double work_of_adhesion) {
    LayerSpec spec;
    spec.material = stiff;
    spec.h = h;
    spec.work_of_adhesion = work_of_adhesion;
    return spec;
}

LayerSpec LayerSpec::incompressible(double G_prime, double h, double work_of_adhesion) {
    LayerSpec spec;
    spec.material = IncompressibleShear{G_prime};
    spec.h = h;
    spec.work_of_adhesion = work_of_adhesion;
    return spec;
}

double CompressibleLayer::adhesive_gap() const {
    return std::sqrt(2.0 * h * work_of_adhesion / A33);
}

double CompressibleLayer::edge_pressure() const {
    return -std::sqrt(2.0 * A33 * work_of_adhesion / h);
}

double IncompressibleLayer::edge_slope() const {
    return std::sqrt(2.0 * m() * work_of_adhesion);
}

double IncompressibleLayer::edge_gradient() const {
    return -std::sqrt(6.0 * G_prime * work_of_adhesion) / std::pow(h, 1.5);
}

double IncompressibleLayer::adhesive_length() const {
    return std::sqrt(2.0 * work_of_adhesion / m());
}

double DerivedConstants::theta() const {
    if (!theta_) fail(ErrorKind::InvalidArgument, "theta was not supplied for this layer");
    return *theta_;
}

double DerivedConstants::k() const {
    require_compressible(regime_, "k = A33/h");
    return k_;
}

double DerivedConstants::edge_pressure() const {
    require_compressible(regime_, "edge pressure");
    return edge_pressure_;
}

double DerivedConstants::m() const {
    require_incompressible(regime_, "m = 3G'/h^3");
    return m_;
}

double DerivedConstants::edge_gradient() const {
    require_incompressible(regime_, "edge pressure gradient");
    return edge_gradient_;
}

double DerivedConstants::edge_slope() const {
    require_incompressible(regime_, "edge pressure slope");
    return edge_slope_;
}

DerivedConstants derive_constants(const LayerSpec& layer) {
    layer.validate();
    DerivedConstants out;
    out.regime_ = layer.regime();
    out.theta_ = layer.theta;
    if (out.regime_ == Regime::Compressible) {
        const auto& stiff = std::get<TransverseIsotropicStiffness>(layer.material);
        out.M0_ = m0(stiff);
        out.M1_ = m1(stiff);
        if (layer.theta) {
            out.A_script_ = layer.gamma_sum ? aggregate_A(*layer.theta, stiff, *layer.gamma_sum)
                                            : *layer.theta * out.M0_;
        }
        const CompressibleLayer view = compressible_layer(layer);
        out.k_ = view.k();
        out.edge_pressure_ = view.edge_pressure();
    } else {
        const double G = std::get<IncompressibleShear>(layer.material).G_prime;
        out.M0_ = 0.0;
        out.M1_ = m1_incompressible(G);
        const IncompressibleLayer view = incompressible_layer(layer);
        out.m_ = view.m();
        out.edge_gradient_ = view.edge_gradient();
        out.edge_slope_ = view.edge_slope();
    }
    return out;
}

CompressibleLayer compressible_layer(const LayerSpec& layer) {
    require_compressible(layer.regime(), "compressible layer view");
    layer.validate();
    return {std::get<TransverseIsotropicStiffness>(layer.material).A33, layer.h,
            layer.work_of_adhesion};
}

IncompressibleLayer incompressible_layer(const LayerSpec& layer) {
    require_incompressible(layer.regime(), "incompressible layer view");
    layer.validate();
    return {std::get<IncompressibleShear>(layer.material).G_prime, layer.h,
            layer.work_of_adhesion};
}

}  // namespace thinlayer
