#include <cmath>
#include <limits>
#include <numbers>

#include <doctest.h>

#include "thinlayer/error.hpp"
#include "thinlayer/numeric/fd_bvp.hpp"
#include "thinlayer/numeric/quadrature.hpp"
#include "thinlayer/perturbation.hpp"

using namespace thinlayer;
using namespace thinlayer::perturbation;
using incompressible::AxisymPunchProfile;
using incompressible::AxisymSolution;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an Error");
    return ErrorKind::InvalidArgument;
}

const IncompressibleLayer kLayer{1e6, 1e-3, 0.05};
constexpr double kR = 0.01;
constexpr double kA = 2e-3;

PerturbedPunch elliptic(double mu) {
    return {AxisymPunchProfile::paraboloid(kR), {{2, Trig::Cos, [](double r) { return r * r; }}}, mu, 32};
}

}  // namespace

TEST_CASE("Steklov-Poincare examples") {
    FourierSeries c = FourierSeries::zeros(4);
    c.a0 = 3.0;
    const auto zero = steklov_poincare(c, 2.0);
    CHECK(zero.a0 == 0.0);
    for (double v : zero.an) CHECK(v == 0.0);

    FourierSeries h = FourierSeries::zeros(4);
    h.an[2] = 1.0;
    const auto out = steklov_poincare(h, 2.0);
    CHECK(out.an[2] == 1.5);
    CHECK(out(0.3) == Approx(1.5 * std::cos(0.9)).epsilon(1e-15));

    FourierSeries g = FourierSeries::zeros(4);
    g.bn[0] = 2.0;
    g.an[3] = -1.0;
    FourierSeries sum = h;
    for (int i = 0; i < 4; ++i) {
        sum.an[i] += g.an[i];
        sum.bn[i] += g.bn[i];
    }
    const auto lhs = steklov_poincare(sum, 2.0);
    const auto rg = steklov_poincare(g, 2.0);
    for (int i = 0; i < 4; ++i) {
        CHECK(lhs.an[i] == Approx(out.an[i] + rg.an[i]));
        CHECK(lhs.bn[i] == Approx(out.bn[i] + rg.bn[i]));
    }
}

TEST_CASE("Steklov-Poincare eigenrelation up to n = 32") {
    const double a = 1.7;
    for (int n = 1; n <= 32; ++n) {
        for (Trig trig : {Trig::Cos, Trig::Sin}) {
            FourierSeries h = FourierSeries::zeros(32);
            (trig == Trig::Cos ? h.an : h.bn)[n - 1] = 1.0;
            const auto out = steklov_poincare(h, a);
            const double lambda = n / a;
            for (int k = 1; k <= 32; ++k) {
                const double expect_c = (trig == Trig::Cos && k == n) ? lambda : 0.0;
                const double expect_s = (trig == Trig::Sin && k == n) ? lambda : 0.0;
                CHECK(std::abs(out.an[k - 1] - expect_c) <= kEps * lambda);
                CHECK(std::abs(out.bn[k - 1] - expect_s) <= kEps * lambda);
            }
            CHECK(out.a0 == 0.0);
        }
    }
}

TEST_CASE("harmonic extension of the boundary term") {
    FourierSeries h = FourierSeries::zeros(3);
    h.a0 = 0.4;
    h.an[1] = 0.7;
    h.bn[2] = -0.2;
    const auto y0 = poisson_extension_boundary_term(h, 1.3, 2.5);
    for (double t : {0.0, 0.8, 2.0, 4.4}) CHECK(y0.value(1.3, t) == Approx(-2.5 * h(t)).epsilon(1e-14));

    FourierSeries c1 = FourierSeries::zeros(1);
    c1.an[0] = 1.0;
    const auto lin = poisson_extension_boundary_term(c1, 1.0, 1.0);
    CHECK(lin.value(0.6, 0.4) == Approx(-0.6 * std::cos(0.4)).epsilon(1e-15));

    // Poisson integral of -S cos 2t at (r = 0.5, theta = 0) on the unit disk.
    FourierSeries c2 = FourierSeries::zeros(2);
    c2.an[1] = 1.0;
    const auto ext = poisson_extension_boundary_term(c2, 1.0, 1.0);
    const double r = 0.5;
    const auto q = numeric::integrate_1d(
        [&](double t) {
            const double kern = (1 - r * r) / (1 - 2 * r * std::cos(t) + r * r);
            return -std::cos(2 * t) * kern / (2 * kPi);
        },
        0.0, 2 * kPi, {numeric::QuadratureRule::GaussKronrod, 1e-14, 1e-13});
    CHECK(ext.value(r, 0.0) == Approx(q.value).epsilon(1e-10));
}

TEST_CASE("radial mode solver") {
    SUBCASE("zero forcing") {
        const auto md = solve_Y1_mode(3, [](double) { return 0.0; }, 1.0, 1.0);
        for (double r : {0.0, 0.3, 1.0}) CHECK(md.value(r) == 0.0);
    }
    SUBCASE("constant axisymmetric forcing matches the base machinery") {
        const double c = 0.7, m = 2.5, a = 1.2;
        const auto md = solve_Y1_mode(0, [&](double) { return c; }, a, m);
        const IncompressibleLayer layer{m / 3.0, 1.0, 0.0};
        AxisymPunchProfile flat{[](double) { return 0.0; }, std::nullopt, 1.0};
        for (double r : {0.0, 0.4, 0.9, 1.2}) {
            const double p0 = incompressible::p0_general(r, a, -c, flat, layer);
            CHECK(std::abs(md.value(r) - p0) <= 1e-12 * m * c * a * a / 4);
        }
    }
    SUBCASE("n = 2 against the closed form and the FD oracle") {
        auto f = [](double r) { return r * r; };
        const auto md = solve_Y1_mode(2, f, 1.0, 1.0);
        // Richardson-extrapolated FD: the 1001-node grid contains the 501 nodes.
        const auto fd = numeric::solve_radial_bvp_fd(2, f, 1.0, 0.0, 501);
        const auto fine = numeric::solve_radial_bvp_fd(2, f, 1.0, 0.0, 1001);
        const double peak = 1.0 / 48.0;  // max |(r^4 - r^2)/12|
        double diff = 0.0;
        for (std::size_t i = 0; i < fd.r.size(); ++i) {
            const double r = fd.r[i];
            const double exact = (std::pow(r, 4) - r * r) / 12.0;
            CHECK(std::abs(md.value(r) - exact) <= 1e-12 * peak);
            const double extrap = (4.0 * fine.y[2 * i] - fd.y[i]) / 3.0;
            diff = std::max(diff, std::abs(extrap - md.value(r)));
        }
        CHECK(diff < 1e-6 * peak);
        CHECK(md.derivative(1.0) == Approx(1.0 / 6.0).epsilon(1e-12));
        CHECK(Y1_mode_value(2, f, 1.0, 1.0, 0.5) == Approx(md.value(0.5)).epsilon(1e-12));
        CHECK(Y1_mode_slope(2, f, 1.0, 1.0, 1.0) == Approx(1.0 / 6.0).epsilon(1e-12));
    }
    SUBCASE("interpolant refuses points past its extent") {
        const auto md = solve_Y1_mode(1, [](double r) { return r; }, 1.0, 1.0);
        CHECK(kind_of([&] { md.value(1.3); }) == ErrorKind::OutOfDomain);
    }
}

TEST_CASE("second derivative of the base pressure at the edge") {
    const auto par = AxisymPunchProfile::paraboloid(0.5);  // phi0 = r^2
    const IncompressibleLayer nonadh{1.0, 1.0, 0.0};
    CHECK(p0_second_derivative_at_a(2.0, 4.0, par, nonadh) == 0.0);
    CHECK(p0_second_derivative_at_a(2.0, 3.0, par, {2.0 / 3.0, 1.0, 1.0}) ==
          Approx(1.0).epsilon(1e-15));
    const AxisymSolution base(kA, AxisymPunchProfile::paraboloid(kR), kLayer);
    CHECK(p0_second_derivative_at_a(kA, base.delta0(), base.profile(), kLayer) ==
          Approx(base.curvature(kA)).epsilon(1e-10));
}

TEST_CASE("mode decoupling") {
    const AxisymSolution base(kA, AxisymPunchProfile::paraboloid(kR), kLayer);
    for (Trig trig : {Trig::Cos, Trig::Sin}) {
        PerturbedPunch p = elliptic(1e-3);
        p.modes[0].trig = trig;
        const auto h = contour_variation(p, base);
        const double driven = trig == Trig::Cos ? h.an[1] : h.bn[1];
        CHECK(driven != 0.0);
        CHECK(std::abs(h.a0) <= 1e-12 * std::abs(driven));
        for (int k = 0; k < h.order(); ++k) {
            if (k != 1 || trig == Trig::Sin) CHECK(std::abs(h.an[k]) <= 1e-12 * std::abs(driven));
            if (k != 1 || trig == Trig::Cos) CHECK(std::abs(h.bn[k]) <= 1e-12 * std::abs(driven));
        }
    }
}

TEST_CASE("first-order correction satisfies its boundary conditions") {
    const AxisymSolution base(kA, AxisymPunchProfile::paraboloid(kR), kLayer);
    PerturbedPunch p = elliptic(1e-3);
    p.modes.push_back({0, Trig::Cos, [](double r) { return 0.3 * r * r; }});
    p.modes.push_back({3, Trig::Sin, [](double r) { return r * r * r / kA; }});
    const auto sol = solve(p, base);
    const double S = sol.S, P = sol.P;
    double hmax = 0.0;
    for (int i = 0; i < 256; ++i) hmax = std::max(hmax, std::abs(sol.h(2 * kPi * i / 256)));
    for (int i = 0; i < 256; ++i) {
        const double t = 2 * kPi * i / 256;
        CHECK(std::abs(sol.p1.value(kA, t) + sol.h(t) * S) <= 1e-8 * S * hmax);
        CHECK(std::abs(sol.p1.dr(kA, t) + sol.h(t) * P) <= 1e-6 * std::abs(P) * hmax);
        // Richardson-extrapolated central difference.
        const double dr = 1e-3 * kA;
        auto cd = [&](double e) { return (sol.p1.value(kA + e, t) - sol.p1.value(kA - e, t)) / (2 * e); };
        const double fd = (4.0 * cd(dr / 2) - cd(dr)) / 3.0;
        CHECK(std::abs(fd + sol.h(t) * P) <= 1e-6 * std::abs(P) * hmax);
    }
    // Interior Poisson residual with a 5-point polar Laplacian.
    const double r = 0.6 * kA, t = 0.7, dr = 1e-3 * kA, dt = 1e-3;
    const auto v = [&](double rr, double tt) { return sol.p1.value(rr, tt); };
    const double lap = (v(r + dr, t) - 2 * v(r, t) + v(r - dr, t)) / (dr * dr) +
                       (v(r + dr, t) - v(r - dr, t)) / (2 * dr * r) +
                       (v(r, t + dt) - 2 * v(r, t) + v(r, t - dt)) / (dt * dt * r * r);
    const double rhs = kLayer.m() * p.phi1(r, t);
    CHECK(lap == Approx(rhs).epsilon(1e-5));
}

TEST_CASE("residual on the perturbed contour is second order in mu") {
    const AxisymSolution base(kA, AxisymPunchProfile::paraboloid(kR), kLayer);
    double prev = 0.0;
    for (double mu : {1e-2, 5e-3, 2.5e-3}) {
        const auto p = elliptic(mu);
        const auto res = boundary_residual(solve(p, base), base, mu);
        if (prev > 0.0) CHECK(prev / res.max() == Approx(4.0).epsilon(0.125));
        prev = res.max();
    }
}

TEST_CASE("zero perturbation gives zero corrections") {
    const AxisymSolution base(kA, AxisymPunchProfile::paraboloid(kR), kLayer);
    PerturbedPunch p{AxisymPunchProfile::paraboloid(kR), {}, 1e-2, 32};
    const auto sol = solve(p, base);
    CHECK(sol.h.a0 == 0.0);
    for (int k = 0; k < sol.h.order(); ++k) {
        CHECK(sol.h.an[k] == 0.0);
        CHECK(sol.h.bn[k] == 0.0);
    }
    CHECK(sol.force.F1 == 0.0);
    CHECK(sol.force.Fmu == base.F());
    for (double r : {0.0, 0.5 * kA, kA}) CHECK(sol.p1.value(r, 0.4) == 0.0);
}

TEST_CASE("mu = 0 reduces to the base solution") {
    const AxisymSolution base(kA, AxisymPunchProfile::paraboloid(kR), kLayer);
    const auto p = elliptic(0.0);
    const auto sol = solve(p, base);
    CHECK(sol.force.Fmu == base.F());
    for (double r : {0.0, 0.3 * kA, kA}) {
        CHECK(sol.p_mu(base, 0.0, r, 1.1) == base.pressure(r));
        CHECK(sol.p_mu_dr(base, 0.0, r, 1.1) == base.slope(r));
    }
}

TEST_CASE("non-axisymmetric modes carry no force") {
    const AxisymSolution base(kA, AxisymPunchProfile::paraboloid(kR), kLayer);
    const auto sol = solve(elliptic(1e-3), base);
    CHECK(sol.force.F1 == 0.0);
}

TEST_CASE("force correction against 2-D quadrature") {
    const AxisymSolution base(kA, AxisymPunchProfile::paraboloid(kR), kLayer);
    PerturbedPunch p = elliptic(1e-3);
    p.modes.push_back({0, Trig::Cos, [](double r) { return 2.0 * r * r + 1e-6; }});
    const auto sol = solve(p, base);
    const auto q = numeric::integrate_disk(
        [&](double x, double y) { return sol.p1.value(std::hypot(x, y), std::atan2(y, x)); },
        [&](double) { return kA; });
    CHECK(sol.force.F1 == Approx(q.value).epsilon(1e-8));
}

TEST_CASE("constant shift matches re-solving the base problem") {
    const auto prof = AxisymPunchProfile::paraboloid(kR);
    const AxisymSolution base(kA, prof, kLayer);
    const double c = 1e-5;
    auto gap = [&](double mu) {
        PerturbedPunch p{prof, {{0, Trig::Cos, [&](double) { return c; }}}, mu, 32};
        const auto sol = solve(p, base);
        const auto roots = incompressible::solve_for_displacement(base.delta0() - mu * c, prof, kLayer);
        return std::abs(sol.force.Fmu - roots.back().F());
    };
    const double g1 = gap(0.2), g2 = gap(0.1), g3 = gap(0.05);
    CHECK(g1 / g2 == Approx(4.0).epsilon(0.125));
    CHECK(g2 / g3 == Approx(4.0).epsilon(0.125));
}

TEST_CASE("resonant and degenerate denominators") {
    const auto prof = AxisymPunchProfile::paraboloid(kR);
    const double C = 1.0 / (2 * kR);
    const double a_res = std::cbrt(2.0 * kLayer.adhesive_length() / C);
    const AxisymSolution base(a_res, prof, kLayer);
    CHECK(kind_of([&] { contour_variation(elliptic(1e-3), base); }) == ErrorKind::ResonantMode);

    // Concave cap -c r^2: P vanishes at a^3 = 2 s / c.
    const double cc = 10.0;
    AxisymPunchProfile cap{[=](double r) { return -cc * r * r; }, std::nullopt, 1e-3};
    const double a_deg = std::cbrt(2.0 * kLayer.adhesive_length() / cc);
    const AxisymSolution flat(a_deg, cap, kLayer);
    PerturbedPunch p{cap, {{0, Trig::Cos, [](double) { return 1.0; }}}, 1e-3, 32};
    CHECK(kind_of([&] { contour_variation(p, flat); }) == ErrorKind::DegenerateBase);
}

TEST_CASE("punch validation") {
    PerturbedPunch p = elliptic(-1.0);
    CHECK(kind_of([&] { p.validate(); }) == ErrorKind::InvalidArgument);
    p = elliptic(1e-3);
    p.modes[0].n = 40;
    CHECK(kind_of([&] { p.validate(); }) == ErrorKind::InvalidArgument);
}
