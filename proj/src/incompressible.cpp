#include "thinlayer/incompressible.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "thinlayer/detail/gauss_legendre.hpp"
#include "thinlayer/error.hpp"
#include "thinlayer/kernels.hpp"
#include "thinlayer/numeric/roots.hpp"

namespace thinlayer::incompressible {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRelTol = 1e-13;

void require_layer(const IncompressibleLayer& layer) {
    if (!(layer.G_prime > 0.0) || !(layer.h > 0.0) || !(layer.work_of_adhesion >= 0.0)) {
        fail(ErrorKind::InvalidArgument, "incompressible layer needs G' > 0, h > 0, dgamma >= 0");
    }
}

void require_radius(double R) {
    if (!(R > 0.0) || !std::isfinite(R)) fail(ErrorKind::InvalidArgument, "punch radius must be positive");
}

void require_contact(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) fail(ErrorKind::InvalidArgument, "contact radius must be positive");
}

void require_profile(const AxisymPunchProfile& profile) {
    if (!profile.phi0) fail(ErrorKind::InvalidArgument, "punch profile has no shape function");
}

void require_in_disk(double r, double a, const char* what) {
    if (!(r >= 0.0) || r > a) {
        std::ostringstream msg;
        msg << what << ": r = " << r << " lies outside the contact disk [0, " << a << "]";
        fail(ErrorKind::OutOfDomain, msg.str());
    }
}

// x^2 int_0^1 phi0(x u) w(u) u du
double moment(double x, const AxisymPunchProfile& profile, double (*w)(double), const char* what) {
    if (x == 0.0) return 0.0;
    const double floor = 1e-14 * x * x * std::abs(profile(x));
    return x * x *
           detail::gl_integrate_checked(
               [&](double u) { return profile(x * u) * w(u) * u; }, 0.0, 1.0, 16, 4, kRelTol,
               floor, what);
}

// J(x) = int_0^x phi0 rho ln(x/rho) drho, written with u = exp(-s) so the
// logarithm becomes a smooth, exponentially damped factor.
double log_moment(double x, const AxisymPunchProfile& profile) {
    if (x == 0.0) return 0.0;
    const double floor = 1e-14 * x * x * std::abs(profile(x));
    return x * x *
           detail::gl_integrate_checked(
               [&](double s) { return profile(x * std::exp(-s)) * std::exp(-2.0 * s) * s; }, 0.0,
               40.0, 16, 20, kRelTol, floor, "theta0");
}

double unit_weight(double) { return 1.0; }
double force_weight(double u) { return 2.0 * u * u - 1.0; }

double parabolic_delta(double a, double C, const IncompressibleLayer& layer) {
    return C * a * a / 2.0 - 2.0 / a * layer.adhesive_length();
}

double parabolic_force(double a, double C, const IncompressibleLayer& layer) {
    const double a2 = a * a;
    return kPi * layer.m() / 48.0 * a2 * a2 * (C * a2 - 12.0 / a * layer.adhesive_length());
}

}  // namespace

AxisymPunchProfile AxisymPunchProfile::paraboloid(double R) {
    require_radius(R);
    const double C = 1.0 / (2.0 * R);
    return {[C](double r) { return C * r * r; }, C, R};
}

AxisymPunchProfile AxisymPunchProfile::power(double coefficient, double exponent,
                                             double length_scale) {
    if (!(coefficient > 0.0) || !(exponent > 0.0) || !(length_scale > 0.0)) {
        fail(ErrorKind::InvalidArgument, "power punch needs positive coefficient, exponent, scale");
    }
    return {[coefficient, exponent](double r) { return coefficient * std::pow(r, exponent); },
            std::nullopt, length_scale};
}

double pressure_parabolic(double r, double a, double delta0, const IncompressibleLayer& layer,
                          double R) {
    require_layer(layer);
    require_radius(R);
    require_contact(a);
    require_in_disk(r, a, "pressure_parabolic");
    const double C = 1.0 / (2.0 * R);
    return layer.m() / 16.0 * (C * (r * r + a * a) - 4.0 * delta0) * (r * r - a * a);
}

void pressure_parabolic_field(std::span<const double> r, std::span<double> out, double a,
                              double delta0, const IncompressibleLayer& layer, double R) {
    require_layer(layer);
    require_radius(R);
    require_contact(a);
    kernels::parabolic_radial_pressure(r, out, layer.m(), 1.0 / (2.0 * R), a, delta0);
}

double delta_from_a_parabolic(double a, const IncompressibleLayer& layer, double R) {
    require_layer(layer);
    require_radius(R);
    require_contact(a);
    return parabolic_delta(a, 1.0 / (2.0 * R), layer);
}

double force_from_a_parabolic(double a, const IncompressibleLayer& layer, double R) {
    require_layer(layer);
    require_radius(R);
    require_contact(a);
    return parabolic_force(a, 1.0 / (2.0 * R), layer);
}

double theta0(double a, double r, const AxisymPunchProfile& profile) {
    require_profile(profile);
    require_contact(a);
    require_in_disk(r, a, "theta0");
    return log_moment(a, profile) - log_moment(r, profile);
}

double p0_general(double r, double a, double delta0, const AxisymPunchProfile& profile,
                  const IncompressibleLayer& layer) {
    require_layer(layer);
    const double th = theta0(a, r, profile);
    return layer.m() * (delta0 * (a * a - r * r) / 4.0 - th);
}

double p0_general_slope(double r, double a, double delta0, const AxisymPunchProfile& profile,
                        const IncompressibleLayer& layer) {
    require_layer(layer);
    require_profile(profile);
    require_contact(a);
    require_in_disk(r, a, "p0_general_slope");
    if (r == 0.0) return 0.0;
    return layer.m() * (-delta0 * r / 2.0 + moment(r, profile, unit_weight, "p0 slope") / r);
}

double delta0_general(double a, const AxisymPunchProfile& profile,
                      const IncompressibleLayer& layer) {
    require_layer(layer);
    require_profile(profile);
    require_contact(a);
    return 2.0 / (a * a) * moment(a, profile, unit_weight, "delta0_general") -
           2.0 / a * layer.adhesive_length();
}

double force0_general(double a, const AxisymPunchProfile& profile,
                      const IncompressibleLayer& layer) {
    require_layer(layer);
    require_profile(profile);
    require_contact(a);
    const double shape = a * a * moment(a, profile, force_weight, "force0_general");
    return layer.m() * (kPi / 4.0 * shape - kPi * a * a * a / 4.0 * layer.adhesive_length());
}

Pulloff pulloff_incompressible(const IncompressibleLayer& layer, double R) {
    require_layer(layer);
    require_radius(R);
    if (layer.work_of_adhesion == 0.0) {
        fail(ErrorKind::NoAdhesion, "no pull-off force without adhesion (dgamma = 0)");
    }
    const double C = 1.0 / (2.0 * R);
    const double s = layer.adhesive_length();
    Pulloff out;
    out.a_at_min = std::cbrt(6.0 * s / C);
    out.F_min = -3.0 * kPi * R * layer.work_of_adhesion;
    out.delta_at_min = parabolic_delta(out.a_at_min, C, layer);

    auto F = [&](double a) { return a == 0.0 ? 0.0 : parabolic_force(a, C, layer); };
    double hi = 1e-6 * R;
    for (int i = 0; i < 400 && !(F(hi) > 0.0); ++i) hi *= 2.0;
    const numeric::Minimum m = numeric::minimize_1d(F, 0.0, hi, 1e-12, 256);
    out.F_min_numeric = m.value;
    out.a_at_min_numeric = m.x;
    return out;
}

AxisymSolution::AxisymSolution(double a, const AxisymPunchProfile& profile,
                               const IncompressibleLayer& layer, Branch branch)
    : a_(a), branch_(branch), profile_(profile), layer_(layer) {
    require_layer(layer);
    require_profile(profile);
    require_contact(a);
    m_ = layer.m();
    S_ = layer.edge_slope();
    if (profile.C) {
        delta0_ = parabolic_delta(a, *profile.C, layer);
        F_ = parabolic_force(a, *profile.C, layer);
    } else {
        delta0_ = delta0_general(a, profile, layer);
        F_ = force0_general(a, profile, layer);
    }
}

double AxisymSolution::pressure(double r) const {
    if (!(r >= 0.0)) fail(ErrorKind::OutOfDomain, "pressure: negative radius");
    if (profile_.C) {
        return m_ / 16.0 * (*profile_.C * (r * r + a_ * a_) - 4.0 * delta0_) * (r * r - a_ * a_);
    }
    return m_ * (delta0_ * (a_ * a_ - r * r) / 4.0 - (log_moment(a_, profile_) -
                                                        log_moment(r, profile_)));
}

double AxisymSolution::slope(double r) const {
    if (!(r >= 0.0)) fail(ErrorKind::OutOfDomain, "slope: negative radius");
    if (profile_.C) return m_ / 4.0 * r * (*profile_.C * r * r - 2.0 * delta0_);
    if (r == 0.0) return 0.0;
    return m_ * (-delta0_ * r / 2.0 + moment(r, profile_, unit_weight, "p0 slope") / r);
}

double AxisymSolution::curvature(double r) const {
    if (!(r >= 0.0)) fail(ErrorKind::OutOfDomain, "curvature: negative radius");
    if (profile_.C) return m_ / 4.0 * (3.0 * *profile_.C * r * r - 2.0 * delta0_);
    if (r == 0.0) return m_ * (profile_(0.0) - delta0_) / 2.0;
    return m_ * (profile_(r) - delta0_) - slope(r) / r;
}

namespace {

std::vector<AxisymSolution> invert_curve(double target, const AxisymPunchProfile& profile,
                                         const IncompressibleLayer& layer,
                                         const ScanOptions& opts, bool force_curve) {
    require_layer(layer);
    require_profile(profile);
    if (!std::isfinite(target)) fail(ErrorKind::InvalidArgument, "target must be finite");
    const double lo = opts.a_min_factor * profile.length_scale;
    const double hi = opts.a_max_factor * profile.length_scale;
    if (!(lo > 0.0) || !(hi > lo) || opts.samples < 3) {
        fail(ErrorKind::BracketFailure, "invalid contact-radius scan range");
    }
    auto curve = [&](double a) {
        if (profile.C) {
            return force_curve ? parabolic_force(a, *profile.C, layer)
                               : parabolic_delta(a, *profile.C, layer);
        }
        return force_curve ? force0_general(a, profile, layer) : delta0_general(a, profile, layer);
    };
    auto g = [&](double a) { return curve(a) - target; };

    const int n = opts.samples;
    std::vector<double> as(n), gs(n);
    const double ratio = std::log(hi / lo) / (n - 1);
    for (int i = 0; i < n; ++i) {
        as[i] = i == n - 1 ? hi : lo * std::exp(ratio * i);
        gs[i] = g(as[i]);
    }

    std::vector<AxisymSolution> out;
    auto label = [&](double a) {
        const double d = curve(a * (1.0 + 1e-6)) - curve(a * (1.0 - 1e-6));
        return d > 0.0 ? Branch::Stable : Branch::Unstable;
    };
    for (int i = 0; i + 1 < n; ++i) {
        if (gs[i] == 0.0) {
            out.emplace_back(as[i], profile, layer, label(as[i]));
            continue;
        }
        if (gs[i] * gs[i + 1] < 0.0) {
            double root = 0.0;
            try {
                numeric::RootOptions ro;
                ro.x_tol = 1e-15 * as[i + 1];
                root = numeric::find_root(g, as[i], as[i + 1], ro);
            } catch (const Error& e) {
                fail(ErrorKind::BracketFailure, std::string("root refinement failed: ") + e.what());
            }
            out.emplace_back(root, profile, layer, label(root));
            continue;
        }
        // A local extremum of g that touches zero without a sign change.
        if (i > 0 && gs[i - 1] * gs[i] > 0.0 && gs[i] * gs[i + 1] > 0.0 &&
            std::abs(gs[i]) <= std::abs(gs[i - 1]) && std::abs(gs[i]) <= std::abs(gs[i + 1])) {
            const double sign = gs[i] > 0.0 ? 1.0 : -1.0;
            numeric::Minimum mn{};
            try {
                mn = numeric::minimize_1d([&](double a) { return sign * g(a); }, as[i - 1],
                                          as[i + 1], 1e-12, 16);
            } catch (const Error&) {
                continue;
            }
            const double scale = std::max({std::abs(target), std::abs(curve(mn.x)), 1e-300});
            if (mn.value <= 1e-9 * scale) out.emplace_back(mn.x, profile, layer, Branch::Tangent);
        }
    }
    if (gs[n - 1] == 0.0) out.emplace_back(as[n - 1], profile, layer, label(as[n - 1]));
    if (out.empty()) {
        std::ostringstream msg;
        msg << (force_curve ? "force " : "indentation ") << target
            << " is not attained for contact radii in [" << lo << ", " << hi << "]";
        fail(ErrorKind::Unreachable, msg.str());
    }
    return out;
}

}  // namespace

std::vector<AxisymSolution> solve_for_displacement(double delta0_target,
                                                   const AxisymPunchProfile& profile,
                                                   const IncompressibleLayer& layer,
                                                   const ScanOptions& opts) {
    return invert_curve(delta0_target, profile, layer, opts, false);
}

std::vector<AxisymSolution> solve_for_force(double F_target, const AxisymPunchProfile& profile,
                                            const IncompressibleLayer& layer,
                                            const ScanOptions& opts) {
    return invert_curve(F_target, profile, layer, opts, true);
}

}  // namespace thinlayer::incompressible
