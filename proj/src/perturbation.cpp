#include "thinlayer/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "thinlayer/detail/gauss_legendre.hpp"
#include "thinlayer/error.hpp"

namespace thinlayer::perturbation {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRelTol = 1e-12;
constexpr int kOrder = 16;

double trig_value(Trig t, int n, double theta) {
    return t == Trig::Cos ? std::cos(n * theta) : std::sin(n * theta);
}

double trig_derivative(Trig t, int n, double theta) {
    return t == Trig::Cos ? -n * std::sin(n * theta) : n * std::cos(n * theta);
}

struct ValueSlope {
    double value;
    double slope;
};

// Scale below which quadrature differences count as rounding noise.
double source_scale(const std::function<double(double)>& g, double a) {
    double s = 0.0;
    for (double t : {0.125, 0.25, 0.5, 0.75, 1.0}) s = std::max(s, std::abs(g(t * a)));
    return s;
}

ValueSlope mode_at(int n, const std::function<double(double)>& f, double a, double m, double r) {
    if (n < 0) fail(ErrorKind::InvalidArgument, "harmonic index must be >= 0");
    if (!(a > 0.0) || !(r >= 0.0)) fail(ErrorKind::InvalidArgument, "mode radius out of range");
    auto g = [&](double rho) { return m * f(rho); };
    const double floor = 1e-14 * source_scale(g, a) * a * a;

    if (r == 0.0) {
        if (n == 0) {
            // int_0^a ln(rho/a) rho g drho with rho = a exp(-s)
            const double v = -a * a * detail::gl_integrate_checked(
                                          [&](double s) { return s * std::exp(-2.0 * s) * g(a * std::exp(-s)); },
                                          0.0, 40.0, kOrder, 20, kRelTol, floor, "Y1 mode 0");
            return {v, 0.0};
        }
        if (n == 1) {
            const double v = 0.5 * detail::gl_integrate_checked(
                                       [&](double rho) { return (rho * rho / (a * a) - 1.0) * g(rho); },
                                       0.0, a, kOrder, 4, kRelTol, floor / a, "Y1 mode 1");
            return {0.0, v};
        }
        return {0.0, 0.0};
    }

    const double L = std::log(a / r);
    const int panels = std::clamp(static_cast<int>(std::ceil(std::abs(L) * std::max(n, 2) / 2.0)),
                                  1, 4000);
    if (n == 0) {
        const double I0 = r * r * detail::gl_integrate_checked(
                                      [&](double v) { return v * g(r * v); }, 0.0, 1.0, kOrder, 4,
                                      kRelTol, floor / (r * r), "Y1 mode 0");
        // int_r^a ln(rho/a) rho g drho with rho = r exp(s)
        const double tail = r * r * detail::gl_integrate_checked(
                                        [&](double s) { return (s - L) * std::exp(2.0 * s) * g(r * std::exp(s)); },
                                        0.0, L, kOrder, panels, kRelTol, floor / (r * r),
                                        "Y1 mode 0");
        return {-L * I0 + tail, I0 / r};
    }

    const int kpanels = 2 + n / 8;
    const double K = detail::gl_integrate_checked(
        [&](double v) { return std::pow(v, n + 1) * g(r * v); }, 0.0, 1.0, kOrder, kpanels, kRelTol,
        floor / (a * a), "Y1 mode");
    // T = int_r^a [(r rho/a^2)^n - (r/rho)^n] rho g drho with rho = r exp(s)
    const double T = r * r * detail::gl_integrate_checked(
                                 [&](double s) {
                                     const double w = std::exp(n * (s - 2.0 * L)) - std::exp(-n * s);
                                     return w * std::exp(2.0 * s) * g(r * std::exp(s));
                                 },
                                 0.0, L, kOrder, panels, kRelTol, floor / (r * r), "Y1 mode");
    const double q = std::exp(-2.0 * n * L);  // (r/a)^(2n)
    return {(r * r * (q - 1.0) * K + T) / (2.0 * n), 0.5 * r * (q + 1.0) * K + T / (2.0 * r)};
}

}  // namespace

FourierSeries FourierSeries::zeros(int order) {
    if (order < 0) fail(ErrorKind::InvalidArgument, "Fourier order must be >= 0");
    FourierSeries s;
    s.an.assign(order, 0.0);
    s.bn.assign(order, 0.0);
    return s;
}

double FourierSeries::operator()(double theta) const {
    double v = 0.5 * a0;
    for (int n = 1; n <= order(); ++n) v += an[n - 1] * std::cos(n * theta) + bn[n - 1] * std::sin(n * theta);
    return v;
}

double FourierSeries::derivative(double theta) const {
    double v = 0.0;
    for (int n = 1; n <= order(); ++n) {
        v += n * (-an[n - 1] * std::sin(n * theta) + bn[n - 1] * std::cos(n * theta));
    }
    return v;
}

FourierSeries steklov_poincare(const FourierSeries& h, double a) {
    if (!(a > 0.0)) fail(ErrorKind::InvalidArgument, "steklov_poincare: radius must be positive");
    if (h.an.size() != h.bn.size()) fail(ErrorKind::InvalidArgument, "Fourier series length mismatch");
    FourierSeries out = FourierSeries::zeros(h.order());
    for (int n = 1; n <= h.order(); ++n) {
        const double k = n / a;
        out.an[n - 1] = k * h.an[n - 1];
        out.bn[n - 1] = k * h.bn[n - 1];
    }
    return out;
}

double BoundaryTerm::value(double r, double theta) const {
    double v = 0.5 * h.a0;
    double rn = 1.0;
    for (int n = 1; n <= h.order(); ++n) {
        rn *= r / a;
        v += rn * (h.an[n - 1] * std::cos(n * theta) + h.bn[n - 1] * std::sin(n * theta));
    }
    return -S * v;
}

double BoundaryTerm::dr(double r, double theta) const {
    double v = 0.0;
    double rn1 = 1.0 / a;  // r^(n-1) / a^n
    for (int n = 1; n <= h.order(); ++n) {
        v += n * rn1 * (h.an[n - 1] * std::cos(n * theta) + h.bn[n - 1] * std::sin(n * theta));
        rn1 *= r / a;
    }
    return -S * v;
}

double BoundaryTerm::dtheta(double r, double theta) const {
    double v = 0.0;
    double rn = 1.0;
    for (int n = 1; n <= h.order(); ++n) {
        rn *= r / a;
        v += rn * n * (-h.an[n - 1] * std::sin(n * theta) + h.bn[n - 1] * std::cos(n * theta));
    }
    return -S * v;
}

BoundaryTerm poisson_extension_boundary_term(const FourierSeries& h, double a, double S) {
    if (!(a > 0.0)) fail(ErrorKind::InvalidArgument, "boundary term: radius must be positive");
    if (h.an.size() != h.bn.size()) fail(ErrorKind::InvalidArgument, "Fourier series length mismatch");
    return {h, a, S};
}

std::vector<double> ChebyshevFunction::nodes(double extent, int count) {
    if (count < 2) fail(ErrorKind::InvalidArgument, "Chebyshev grid needs >= 2 nodes");
    std::vector<double> x(count);
    const int N = count - 1;
    for (int j = 0; j <= N; ++j) x[j] = 0.5 * extent * (1.0 - std::cos(kPi * j / N));
    x[0] = 0.0;
    x[N] = extent;
    return x;
}

ChebyshevFunction::ChebyshevFunction(double extent, std::vector<double> values)
    : extent_(extent), nodes_(nodes(extent, static_cast<int>(values.size()))),
      values_(std::move(values)) {}

double ChebyshevFunction::operator()(double r) const {
    if (values_.empty()) fail(ErrorKind::InvalidArgument, "empty Chebyshev function");
    if (r < 0.0 || r > extent_ * (1.0 + 1e-14)) {
        std::ostringstream msg;
        msg << "radius " << r << " outside the sampled range [0, " << extent_ << "]";
        fail(ErrorKind::OutOfDomain, msg.str());
    }
    const std::size_t N = values_.size() - 1;
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j <= N; ++j) {
        const double diff = r - nodes_[j];
        if (diff == 0.0) return values_[j];
        double w = (j % 2 == 0) ? 1.0 : -1.0;
        if (j == 0 || j == N) w *= 0.5;
        const double t = w / diff;
        num += t * values_[j];
        den += t;
    }
    return num / den;
}

double Y1_mode_value(int n, const std::function<double(double)>& f, double a, double m, double r) {
    return mode_at(n, f, a, m, r).value;
}

double Y1_mode_slope(int n, const std::function<double(double)>& f, double a, double m, double r) {
    return mode_at(n, f, a, m, r).slope;
}

RadialMode solve_Y1_mode(int n, const std::function<double(double)>& f, double a, double m,
                         const RadialModeOptions& opts) {
    if (!f) fail(ErrorKind::InvalidArgument, "solve_Y1_mode: no source function");
    if (!(a > 0.0)) fail(ErrorKind::InvalidArgument, "solve_Y1_mode: radius must be positive");
    const double extent = opts.extent > 0.0 ? opts.extent : 1.25 * a;
    if (extent < a) fail(ErrorKind::InvalidArgument, "solve_Y1_mode: extent must cover [0, a]");
    const int count = (opts.nodes > 0 ? opts.nodes : std::max(48, 2 * n + 32)) + 1;
    const std::vector<double> r = ChebyshevFunction::nodes(extent, count);
    std::vector<double> value(count), slope(count);
    for (int j = 0; j < count; ++j) {
        const ValueSlope vs = mode_at(n, f, a, m, r[j]);
        value[j] = vs.value;
        slope[j] = vs.slope;
    }
    RadialMode out;
    out.n = n;
    out.a = a;
    out.value = ChebyshevFunction(extent, std::move(value));
    out.derivative = ChebyshevFunction(extent, std::move(slope));
    return out;
}

double p0_second_derivative_at_a(double a, double delta0,
                                 const incompressible::AxisymPunchProfile& profile,
                                 const IncompressibleLayer& layer) {
    if (!(a > 0.0)) fail(ErrorKind::InvalidArgument, "contact radius must be positive");
    if (!profile.phi0) fail(ErrorKind::InvalidArgument, "punch profile has no shape function");
    return layer.m() * (profile(a) - delta0) - layer.edge_slope() / a;
}

void PerturbedPunch::validate() const {
    if (!base.phi0) fail(ErrorKind::InvalidArgument, "perturbed punch has no base profile");
    if (!(mu >= 0.0) || !std::isfinite(mu)) fail(ErrorKind::InvalidArgument, "mu must be finite and >= 0");
    if (truncation < 0) fail(ErrorKind::InvalidArgument, "truncation must be >= 0");
    for (const auto& md : modes) {
        if (!md.radial) fail(ErrorKind::InvalidArgument, "perturbation mode has no radial function");
        if (md.n < 0 || md.n > truncation) {
            std::ostringstream msg;
            msg << "harmonic " << md.n << " outside 0.." << truncation;
            fail(ErrorKind::InvalidArgument, msg.str());
        }
        if (md.n == 0 && md.trig == Trig::Sin) {
            fail(ErrorKind::InvalidArgument, "harmonic 0 has no sine part");
        }
    }
}

double PerturbedPunch::phi1(double r, double theta) const {
    double v = 0.0;
    for (const auto& md : modes) v += md.radial(r) * trig_value(md.trig, md.n, theta);
    return v;
}

Y1Field solve_Y1(const PerturbedPunch& punch, const incompressible::AxisymSolution& base) {
    punch.validate();
    std::map<std::pair<int, int>, std::vector<std::function<double(double)>>> grouped;
    for (const auto& md : punch.modes) {
        grouped[{md.n, md.trig == Trig::Cos ? 0 : 1}].push_back(md.radial);
    }
    Y1Field out;
    for (const auto& [key, fs] : grouped) {
        auto f = [fs = fs](double r) {
            double v = 0.0;
            for (const auto& fi : fs) v += fi(r);
            return v;
        };
        out.entries.push_back({key.first, key.second == 0 ? Trig::Cos : Trig::Sin,
                               solve_Y1_mode(key.first, f, base.a(), base.m())});
    }
    return out;
}

FourierSeries contour_variation(const PerturbedPunch& punch,
                                const incompressible::AxisymSolution& base) {
    return contour_variation(punch, base, solve_Y1(punch, base));
}

FourierSeries contour_variation(const PerturbedPunch& punch,
                                const incompressible::AxisymSolution& base, const Y1Field& y1) {
    punch.validate();
    const double a = base.a();
    const double S = base.S();
    const double P = p0_second_derivative_at_a(a, base.delta0(), base.profile(), base.layer());
    const double P_scale = std::abs(base.m() * (base.profile()(a) - base.delta0())) + S / a;
    FourierSeries h = FourierSeries::zeros(punch.truncation);
    for (const auto& e : y1.entries) {
        const double d = e.mode.derivative(a);
        if (e.n == 0) {
            if (std::abs(P) <= 1e-12 * P_scale) {
                if (d != 0.0) {
                    fail(ErrorKind::DegenerateBase,
                         "p0''(a) vanishes; the axisymmetric contour shift is undetermined");
                }
                continue;
            }
            h.a0 += -2.0 * d / P;
            continue;
        }
        // Gradient condition per harmonic: d_n - (S n / a) h_n + P h_n = 0.
        const double den = S * e.n / a - P;
        if (std::abs(den) <= 1e-12 * std::max(std::abs(P), S * e.n / a)) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "harmonic " << e.n << " is resonant: S n / a = " << S * e.n / a
                << " equals p0''(a) = " << P;
            fail(ErrorKind::ResonantMode, msg.str());
        }
        (e.trig == Trig::Cos ? h.an : h.bn)[e.n - 1] += d / den;
    }
    return h;
}

double PressureCorrection::value(double r, double theta) const {
    double v = y0.value(r, theta);
    for (const auto& e : y1.entries) v += e.mode.value(r) * trig_value(e.trig, e.n, theta);
    return v;
}

double PressureCorrection::dr(double r, double theta) const {
    double v = y0.dr(r, theta);
    for (const auto& e : y1.entries) v += e.mode.derivative(r) * trig_value(e.trig, e.n, theta);
    return v;
}

double PressureCorrection::dtheta(double r, double theta) const {
    double v = y0.dtheta(r, theta);
    for (const auto& e : y1.entries) v += e.mode.value(r) * trig_derivative(e.trig, e.n, theta);
    return v;
}

PressureCorrection pressure_correction(const PerturbedPunch& punch,
                                       const incompressible::AxisymSolution& base,
                                       const FourierSeries& h) {
    return {solve_Y1(punch, base), poisson_extension_boundary_term(h, base.a(), base.S())};
}

ForceExpansion force_expansion(const incompressible::AxisymSolution& base,
                               const PerturbedPunch& punch, const PressureCorrection& p1,
                               double mu) {
    const double a = base.a();
    const double m = base.m();
    // int_0^a Y1_0 r dr = int_0^a (rho^2 - a^2)/4 m f0(rho) rho drho
    double y1_part = 0.0;
    for (const auto& md : punch.modes) {
        if (md.n != 0) continue;
        auto w = [&](double rho) { return (rho * rho - a * a) / 4.0 * m * md.radial(rho) * rho; };
        const double floor = 1e-14 * source_scale(w, a) * a;
        y1_part += detail::gl_integrate_checked(w, 0.0, a, kOrder, 4, kRelTol, floor, "force correction");
    }
    ForceExpansion out;
    out.F0 = base.F();
    out.F1 = 2.0 * kPi * (y1_part - p1.y0.S * 0.5 * p1.y0.h.a0 * a * a / 2.0);
    out.Fmu = out.F0 + mu * out.F1;
    return out;
}

double PerturbationSolution::p_mu(const incompressible::AxisymSolution& base, double mu, double r,
                                  double theta) const {
    return base.pressure(r) + mu * p1.value(r, theta);
}

double PerturbationSolution::p_mu_dr(const incompressible::AxisymSolution& base, double mu,
                                     double r, double theta) const {
    return base.slope(r) + mu * p1.dr(r, theta);
}

double PerturbationSolution::p_mu_dtheta(double mu, double r, double theta) const {
    return mu * p1.dtheta(r, theta);
}

PerturbationSolution solve(const PerturbedPunch& punch,
                           const incompressible::AxisymSolution& base) {
    punch.validate();
    PerturbationSolution sol;
    sol.S = base.S();
    sol.P = p0_second_derivative_at_a(base.a(), base.delta0(), base.profile(), base.layer());
    Y1Field y1 = solve_Y1(punch, base);
    sol.h = contour_variation(punch, base, y1);
    sol.p1 = {std::move(y1), poisson_extension_boundary_term(sol.h, base.a(), sol.S)};
    sol.force = force_expansion(base, punch, sol.p1, punch.mu);
    return sol;
}

BoundaryResidual boundary_residual(const PerturbationSolution& sol,
                                   const incompressible::AxisymSolution& base, double mu,
                                   int samples) {
    if (samples < 1) fail(ErrorKind::InvalidArgument, "boundary_residual: samples must be >= 1");
    BoundaryResidual out;
    for (int k = 0; k < samples; ++k) {
        const double th = 2.0 * kPi * k / samples;
        const double r = base.a() + mu * sol.h(th);
        const double rp = mu * sol.h.derivative(th);
        const double p = sol.p_mu(base, mu, r, th);
        // Outward normal of r = a + mu h(theta) is proportional to e_r - (r'/r) e_theta.
        const double dn = (sol.p_mu_dr(base, mu, r, th) - rp / (r * r) * sol.p_mu_dtheta(mu, r, th)) /
                          std::sqrt(1.0 + (rp / r) * (rp / r));
        out.value = std::max(out.value, std::abs(p));
        out.gradient = std::max(out.gradient, std::abs(dn - sol.S));
    }
    return out;
}

}  // namespace thinlayer::perturbation
