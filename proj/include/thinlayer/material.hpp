#pragma once
// Elastic constants of the bonded layer and the scalar constants derived from
// them. SI units throughout.

#include <optional>
#include <variant>

namespace thinlayer {

/// Transversely isotropic stiffness, symmetry axis along the layer normal.
struct TransverseIsotropicStiffness {
    double A11 = 0.0;
    double A13 = 0.0;
    double A33 = 0.0;
    double A44 = 0.0;

    /// Throws Error(InvalidArgument) unless A11, A33, A44 > 0 and
    /// A11*A33 - A13^2 > 0.
    void validate() const;
};

struct IsotropicElastic {
    double E = 0.0;   // Young's modulus
    double nu = 0.0;  // Poisson's ratio, -1 < nu <= 0.5
};

/// Out-of-plane shear modulus G' of an incompressible layer.
struct IncompressibleShear {
    double G_prime = 0.0;
};

enum class Regime { Compressible, Incompressible };

/// Lame reduction: A11 = A33 = lambda + 2 mu, A13 = lambda, A44 = mu.
/// nu = 0.5 throws Error(IncompressibleInput): use IncompressibleShear.
TransverseIsotropicStiffness stiffness_from_isotropic(const IsotropicElastic& iso);

/// Half the effective modulus, E / (2 (1 - nu^2)).
double isotropic_theta(const IsotropicElastic& iso);

/// Leading kernel-expansion coefficient, 1 / A33.
double m0(const TransverseIsotropicStiffness& stiff);

/// Second coefficient, A13 (A13 - A44) / (3 A33^2 A44).
double m1(const TransverseIsotropicStiffness& stiff);

/// Incompressible limit of m1: 1 / (3 G').
double m1_incompressible(double G_prime);

/// (A11 A33 - A13^2) / ((gamma1 + gamma2) A11 A33). The result must also equal
/// theta / A33; throws Error(InconsistentInputs) when the two routes differ by
/// more than 1e-10 relative.
double aggregate_A(double theta, const TransverseIsotropicStiffness& stiff, double gamma_sum);

/// The gamma1 + gamma2 that makes aggregate_A consistent with theta / A33.
double consistent_gamma_sum(double theta, const TransverseIsotropicStiffness& stiff);

inline constexpr double kConsistencyTolerance = 1e-10;

struct LayerSpec {
    std::variant<TransverseIsotropicStiffness, IncompressibleShear> material;
    double h = 0.0;                 // thickness
    double work_of_adhesion = 0.0;  // Delta gamma
    std::optional<double> theta;      // half effective modulus
    std::optional<double> gamma_sum;  // gamma1 + gamma2

    Regime regime() const noexcept;

    /// Throws Error(InvalidArgument) on h <= 0, Delta gamma < 0 or invalid
    /// constants; Error(InconsistentInputs) when theta and gamma_sum contradict.
    void validate() const;

    /// Isotropic compressible layer with theta defaulted to E / (2 (1 - nu^2)).
    static LayerSpec isotropic(const IsotropicElastic& iso, double h, double work_of_adhesion);
    static LayerSpec transverse(const TransverseIsotropicStiffness& stiff, double h,
                                double work_of_adhesion);
    static LayerSpec incompressible(double G_prime, double h, double work_of_adhesion);
};

/// Parameters of the compressible leading-order model.
struct CompressibleLayer {
    double A33 = 0.0;
    double h = 0.0;
    double work_of_adhesion = 0.0;

    double k() const { return A33 / h; }
    /// sqrt(2 h Delta gamma / A33): gap depth at which the contour sits.
    double adhesive_gap() const;
    /// Contact pressure prescribed on the contour, -sqrt(2 A33 Delta gamma / h).
    double edge_pressure() const;
};

/// Parameters of the incompressible leading-order model.
struct IncompressibleLayer {
    double G_prime = 0.0;
    double h = 0.0;
    double work_of_adhesion = 0.0;

    double m() const { return 3.0 * G_prime / (h * h * h); }
    /// Radial slope of the pressure at the contour, sqrt(2 m Delta gamma).
    double edge_slope() const;
    /// Inward normal derivative at the contour, -sqrt(6 G' Delta gamma) / h^(3/2).
    double edge_gradient() const;
    /// sqrt(2 Delta gamma / m).
    double adhesive_length() const;
};

/// Every scalar derived from a LayerSpec. Accessors for constants that do not
/// exist in the active regime throw Error(RegimeMismatch).
class DerivedConstants {
public:
    Regime regime() const noexcept { return regime_; }
    double M0() const { return M0_; }  // zero for an incompressible layer
    double M1() const { return M1_; }
    std::optional<double> A_script() const { return A_script_; }
    double theta() const;  // Error(InvalidArgument) when theta was not supplied

    // compressible
    double k() const;
    double edge_pressure() const;
    // incompressible
    double m() const;
    double edge_gradient() const;
    double edge_slope() const;

private:
    friend DerivedConstants derive_constants(const LayerSpec& layer);
    Regime regime_ = Regime::Compressible;
    double M0_ = 0.0;
    double M1_ = 0.0;
    std::optional<double> A_script_;
    std::optional<double> theta_;
    double k_ = 0.0, edge_pressure_ = 0.0;
    double m_ = 0.0, edge_gradient_ = 0.0, edge_slope_ = 0.0;
};

DerivedConstants derive_constants(const LayerSpec& layer);

/// Regime-specific views; Error(RegimeMismatch) on the wrong regime.
CompressibleLayer compressible_layer(const LayerSpec& layer);
IncompressibleLayer incompressible_layer(const LayerSpec& layer);

}  // namespace thinlayer
