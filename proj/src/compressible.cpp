#include "thinlayer/compressible.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "thinlayer/detail/gauss_legendre.hpp"
#include "thinlayer/error.hpp"
#include "thinlayer/kernels.hpp"
#include "thinlayer/numeric/roots.hpp"

namespace thinlayer::compressible {

namespace {

constexpr double kPi = std::numbers::pi;

void require_layer(const CompressibleLayer& layer) {
    if (!(layer.A33 > 0.0) || !(layer.h > 0.0) || !(layer.work_of_adhesion >= 0.0)) {
        fail(ErrorKind::InvalidArgument, "compressible layer needs A33 > 0, h > 0, dgamma >= 0");
    }
}

// Prefactor of F(a): (pi A33 / (2h)) sqrt(R2/R1).
double force_prefactor(const ParaboloidPunch& punch, const CompressibleLayer& layer) {
    return kPi * layer.A33 / (2.0 * layer.h) * std::sqrt(punch.R2() / punch.R1());
}

}  // namespace

ParaboloidPunch::ParaboloidPunch(double R1, double R2) {
    if (!(R1 > 0.0) || !(R2 > 0.0) || !std::isfinite(R1) || !std::isfinite(R2)) {
        fail(ErrorKind::InvalidArgument, "paraboloid radii must be positive and finite");
    }
    R1_ = std::max(R1, R2);
    R2_ = std::min(R1, R2);
}

double ParaboloidPunch::operator()(double y1, double y2) const {
    return y1 * y1 / (2.0 * R1_) + y2 * y2 / (2.0 * R2_);
}

double pressure(const Point& y, const ParaboloidPunch& punch, const CompressibleLayer& layer,
                double delta0) {
    require_layer(layer);
    return layer.k() * (delta0 - punch(y[0], y[1]));
}

void pressure_field(std::span<const double> xs, std::span<const double> ys,
                    std::span<double> out, const ParaboloidPunch& punch,
                    const CompressibleLayer& layer, double delta0) {
    require_layer(layer);
    kernels::paraboloid_pressure(xs, ys, out, layer.k(), delta0, 1.0 / (2.0 * punch.R1()),
                                 1.0 / (2.0 * punch.R2()));
}

EllipticContact contact_ellipse(const ParaboloidPunch& punch, const CompressibleLayer& layer,
                                double delta0) {
    require_layer(layer);
    const double level = delta0 + layer.adhesive_gap();
    if (!(level > 0.0)) {
        std::ostringstream msg;
        msg << "indentation " << delta0 << " leaves no contact (needs delta0 > "
            << -layer.adhesive_gap() << ")";
        fail(ErrorKind::NoContact, msg.str());
    }
    EllipticContact c;
    c.e = std::sqrt(1.0 - punch.R2() / punch.R1());
    c.a = std::sqrt(2.0 * punch.R1() * level);
    c.b = std::sqrt(1.0 - c.e * c.e) * c.a;
    c.delta0 = delta0;
    c.F = kPi * layer.A33 / (2.0 * layer.h) * c.a * c.b * (delta0 - layer.adhesive_gap());
    return c;
}

double force(const ParaboloidPunch& punch, const CompressibleLayer& layer, double delta0) {
    return contact_ellipse(punch, layer, delta0).F;
}

double force_from_a(double a, const ParaboloidPunch& punch, const CompressibleLayer& layer) {
    require_layer(layer);
    if (!(a >= 0.0)) fail(ErrorKind::InvalidArgument, "contact semi-axis must be >= 0");
    return force_prefactor(punch, layer) * a * a *
           (a * a / (2.0 * punch.R1()) - 2.0 * layer.adhesive_gap());
}

double delta_from_a(double a, const ParaboloidPunch& punch, const CompressibleLayer& layer) {
    require_layer(layer);
    if (!(a > 0.0)) fail(ErrorKind::InvalidArgument, "contact semi-axis must be positive");
    return a * a / (2.0 * punch.R1()) - layer.adhesive_gap();
}

Pulloff pulloff(const ParaboloidPunch& punch, const CompressibleLayer& layer) {
    require_layer(layer);
    if (layer.work_of_adhesion == 0.0) {
        fail(ErrorKind::NoAdhesion, "no pull-off force without adhesion (dgamma = 0)");
    }
    // F = alpha u^2 - beta u with u = a^2.
    const double c = force_prefactor(punch, layer);
    const double alpha = c / (2.0 * punch.R1());
    const double beta = 2.0 * c * layer.adhesive_gap();
    Pulloff out;
    const double u = beta / (2.0 * alpha);
    out.a_at_min = std::sqrt(u);
    out.F_min = -beta * beta / (4.0 * alpha);
    out.delta_at_min = delta_from_a(out.a_at_min, punch, layer);

    // Numerical route: grow the bracket from the punch/layer scale until F > 0,
    // then minimize.
    auto F = [&](double a) { return force_from_a(a, punch, layer); };
    double hi = std::sqrt(punch.R1() * layer.h);
    for (int i = 0; i < 200 && !(F(hi) > 0.0); ++i) hi *= 2.0;
    const numeric::Minimum m = numeric::minimize_1d(F, 0.0, hi, 1e-12, 256);
    out.F_min_numeric = m.value;
    out.a_at_min_numeric = m.x;
    return out;
}

Pulloff pulloff_axisym(const CompressibleLayer& layer, double R) {
    return pulloff(ParaboloidPunch::sphere(R), layer);
}

std::vector<ForceSolution> solve_for_force(double F_target, const ParaboloidPunch& punch,
                                           const CompressibleLayer& layer) {
    require_layer(layer);
    if (!std::isfinite(F_target)) fail(ErrorKind::InvalidArgument, "target force must be finite");
    const double c = force_prefactor(punch, layer);
    const double alpha = c / (2.0 * punch.R1());
    const double beta = 2.0 * c * layer.adhesive_gap();
    const double disc = beta * beta + 4.0 * alpha * F_target;
    const double disc_tol = 1e-12 * std::max(beta * beta, 4.0 * alpha * std::abs(F_target));

    auto make = [&](Branch branch, double u) {
        if (!(u > 0.0)) {
            fail(ErrorKind::NoContact, "target force is carried by a vanishing contact");
        }
        ForceSolution s;
        s.branch = branch;
        s.delta0 = delta_from_a(std::sqrt(u), punch, layer);
        s.contact = contact_ellipse(punch, layer, s.delta0);
        return s;
    };

    if (disc < -disc_tol) {
        std::ostringstream msg;
        msg << "force " << F_target << " is below the pull-off force " << -beta * beta / (4.0 * alpha);
        fail(ErrorKind::Unreachable, msg.str());
    }
    if (std::abs(disc) <= disc_tol) return {make(Branch::Tangent, beta / (2.0 * alpha))};

    const double root = std::sqrt(disc);
    std::vector<ForceSolution> out;
    out.push_back(make(Branch::Stable, (beta + root) / (2.0 * alpha)));
    const double u_unstable = (beta - root) / (2.0 * alpha);
    if (u_unstable > 0.0) out.push_back(make(Branch::Unstable, u_unstable));
    return out;
}

GeneralContact general_contact_region(const GeneralPunch& punch, const CompressibleLayer& layer,
                                      double delta0, const GeneralContactOptions& opts) {
    require_layer(layer);
    if (!punch.phi) fail(ErrorKind::InvalidArgument, "general punch has no shape function");
    if (opts.angles < 8 || opts.angles % 2 != 0) {
        fail(ErrorKind::InvalidArgument, "general_contact_region: angles must be even and >= 8");
    }
    if (opts.radial_order < 4 || opts.scan_samples < 2 || !(punch.length_scale > 0.0)) {
        fail(ErrorKind::InvalidArgument, "general_contact_region: invalid options");
    }
    GeneralContact out;
    out.level = delta0 + layer.adhesive_gap();
    if (!(out.level > 0.0)) {
        std::ostringstream msg;
        msg << "contour level " << out.level << " lies at or below the punch minimum";
        fail(ErrorKind::NoContact, msg.str());
    }
    const double level = out.level;
    const auto n = static_cast<std::size_t>(opts.angles);
    out.theta.resize(n);
    out.radius.resize(n);

    for (std::size_t k = 0; k < n; ++k) {
        const double th = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
        const double cs = std::cos(th), sn = std::sin(th);
        auto gap = [&](double r) { return punch.phi(r * cs, r * sn) - level; };

        double hi = punch.length_scale;
        int doublings = 0;
        while (!(gap(hi) > 0.0)) {
            if (++doublings > 200) {
                fail(ErrorKind::NoContact, "contact region is unbounded along some direction");
            }
            hi *= 2.0;
        }
        // Count crossings of the level along the ray.
        int crossings = 0;
        double bracket_lo = 0.0, bracket_hi = hi;
        double prev_r = 0.0;
        bool prev_inside = true;  // gap(0) = -level < 0
        for (int i = 1; i <= opts.scan_samples; ++i) {
            const double r = hi * i / opts.scan_samples;
            const bool inside = gap(r) <= 0.0;
            if (inside != prev_inside) {
                ++crossings;
                bracket_lo = prev_r;
                bracket_hi = r;
            }
            prev_inside = inside;
            prev_r = r;
        }
        if (crossings != 1) {
            std::ostringstream msg;
            msg << "ray at angle " << th << " crosses the contour " << crossings << " times";
            fail(ErrorKind::NonStarShaped, msg.str());
        }
        numeric::RootOptions ropts;
        ropts.x_tol = std::min(opts.rel_tol, 1e-15) * bracket_hi;
        out.theta[k] = th;
        out.radius[k] = numeric::find_root(gap, bracket_lo, bracket_hi, ropts);
    }

    // Force: Gauss-Legendre along each ray, trapezoid over the periodic angle.
    const double k_layer = layer.k();
    auto ray_integral = [&](std::size_t k, int order, bool absolute) {
        const double cs = std::cos(out.theta[k]), sn = std::sin(out.theta[k]);
        const double re = out.radius[k];
        return detail::gl_integrate(
            [&](double r) {
                const double p = k_layer * (delta0 - punch.phi(r * cs, r * sn));
                return (absolute ? std::abs(p) : p) * r;
            },
            0.0, re, order);
    };
    const int coarse_order = std::max(4, opts.radial_order / 2);
    double fine = 0.0, coarse = 0.0, magnitude = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        fine += ray_integral(k, opts.radial_order, false);
        magnitude += ray_integral(k, opts.radial_order, true);
        if (k % 2 == 0) coarse += ray_integral(k, coarse_order, false);
    }
    const double dtheta = 2.0 * kPi / static_cast<double>(n);
    fine *= dtheta;
    coarse *= 2.0 * dtheta;
    magnitude *= dtheta;
    out.F = fine;
    out.F_error = std::abs(fine - coarse);
    if (out.F_error > opts.quadrature_tol * std::max(std::abs(fine), 1e-3 * magnitude)) {
        std::ostringstream msg;
        msg << "contact force quadrature levels differ by " << out.F_error;
        fail(ErrorKind::QuadratureFailure, msg.str());
    }
    return out;
}

}  // namespace thinlayer::compressible
