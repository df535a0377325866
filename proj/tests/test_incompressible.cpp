#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "thinlayer/error.hpp"
#include "thinlayer/incompressible.hpp"
#include "thinlayer/numeric/fd_bvp.hpp"
#include "thinlayer/numeric/quadrature.hpp"
#include "thinlayer/numeric/roots.hpp"

using namespace thinlayer;
using namespace thinlayer::incompressible;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an Error");
    return ErrorKind::InvalidArgument;
}

// Layer with a prescribed m = 3 G'/h^3 (h = 1).
IncompressibleLayer with_m(double m, double dg) { return {m / 3.0, 1.0, dg}; }

AxisymPunchProfile generic(AxisymPunchProfile p) {
    p.C.reset();
    return p;
}

const IncompressibleLayer kLayer{1e6, 1e-3, 0.05};
constexpr double kR = 0.01;

}  // namespace

TEST_CASE("closed-form examples") {
    // C -> 0 through a huge radius.
    CHECK(pressure_parabolic(0.0, 1.0, 1.0, with_m(16.0, 0.0), 1e300) == Approx(4.0).epsilon(1e-15));
    CHECK(delta_from_a_parabolic(2.0, with_m(2.0, 1.0), 0.5) == Approx(1.0).epsilon(1e-15));
    CHECK(force_from_a_parabolic(1.0, with_m(48.0 / kPi, 0.0), 0.5) == Approx(1.0).epsilon(1e-15));
    CHECK(kind_of([] { pressure_parabolic(1.1, 1.0, 1.0, with_m(1.0, 0.0), 1.0); }) ==
          ErrorKind::OutOfDomain);
}

TEST_CASE("pressure field kernel matches pointwise pressure") {
    const double a = 1e-3, d0 = delta_from_a_parabolic(a, kLayer, kR);
    std::vector<double> r(41), out(41);
    for (int i = 0; i < 41; ++i) r[i] = a * i / 40.0;
    pressure_parabolic_field(r, out, a, d0, kLayer, kR);
    for (int i = 0; i < 41; ++i) {
        CHECK(out[i] == Approx(pressure_parabolic(r[i], a, d0, kLayer, kR)).epsilon(1e-13).scale(1.0));
    }
}

TEST_CASE("boundary pair and axis regularity") {
    const auto prof = AxisymPunchProfile::paraboloid(kR);
    for (double a : {2e-4, 1e-3, 4e-3}) {
        const AxisymSolution s(a, prof, kLayer);
        const double S = kLayer.edge_slope();
        CHECK(std::abs(s.pressure(a)) < 1e-9 * S * a);
        CHECK(s.slope(a) == Approx(S).epsilon(1e-9));
        CHECK(s.slope(0.0) == 0.0);

        const AxisymSolution g(a, generic(prof), kLayer);
        CHECK(std::abs(g.pressure(a)) < 1e-9 * S * a);
        CHECK(g.slope(a) == Approx(S).epsilon(1e-9));
    }
    const auto quart = AxisymPunchProfile::power(1e6, 4.0, 1e-3);
    const AxisymSolution q(1e-3, quart, kLayer);
    CHECK(std::abs(q.pressure(1e-3)) < 1e-9 * kLayer.edge_slope() * 1e-3);
    CHECK(q.slope(1e-3) == Approx(kLayer.edge_slope()).epsilon(1e-9));
    CHECK(std::abs(p0_general_slope(0.0, 1e-3, q.delta0(), quart, kLayer)) < 1e-15);
}

TEST_CASE("non-adhesive limit has zero edge slope") {
    const IncompressibleLayer layer{1e6, 1e-3, 0.0};
    const AxisymSolution s(1e-3, AxisymPunchProfile::paraboloid(kR), layer);
    CHECK(std::abs(s.slope(1e-3)) < 1e-12 * layer.m() * 1e-9);
}

TEST_CASE("pressure satisfies the radial ODE at second order") {
    const double a = 1e-3, d0 = delta_from_a_parabolic(a, kLayer, kR);
    const double C = 1.0 / (2 * kR), m = kLayer.m();
    auto residual = [&](int n) {
        const double dr = a / n;
        double worst = 0.0;
        for (int i = 1; i < n; ++i) {
            const double r = a * i / n;
            const double pm = pressure_parabolic(a * (i - 1) / n, a, d0, kLayer, kR);
            const double p = pressure_parabolic(r, a, d0, kLayer, kR);
            const double pp = pressure_parabolic(a * (i + 1) / n, a, d0, kLayer, kR);
            const double lap = (pp - 2 * p + pm) / (dr * dr) + (pp - pm) / (2 * dr * r);
            const double rhs = m * (C * r * r - d0);
            worst = std::max(worst, std::abs(lap - rhs) / std::abs(m * d0));
        }
        return worst;
    };
    const double e1 = residual(40), e2 = residual(80), e3 = residual(160);
    CHECK(std::log2(e1 / e2) == Approx(2.0).epsilon(0.05));
    CHECK(std::log2(e2 / e3) == Approx(2.0).epsilon(0.05));
}

TEST_CASE("theta0 against the analytic integral") {
    const double C = 3.0;
    AxisymPunchProfile p{[&](double r) { return C * r * r; }, std::nullopt, 1.0};
    for (double r : {0.0, 0.1, 0.5, 0.9, 1.0}) {
        const double expect = C * (1.0 - std::pow(r, 4)) / 16.0;
        CHECK(theta0(1.0, r, p) == Approx(expect).epsilon(1e-12).scale(1e-16));
    }
    CHECK(theta0(1.0, 1.0, p) == 0.0);
    CHECK(kind_of([&] { theta0(1.0, 1.5, p); }) == ErrorKind::OutOfDomain);
}

TEST_CASE("general profile reduces to the paraboloid") {
    const auto prof = AxisymPunchProfile::paraboloid(kR);
    const auto gen = generic(prof);
    for (int i = 0; i < 20; ++i) {
        const double a = 1e-4 * std::pow(1.25, i);
        CHECK(delta0_general(a, gen, kLayer) ==
              Approx(delta_from_a_parabolic(a, kLayer, kR)).epsilon(1e-12));
        CHECK(force0_general(a, gen, kLayer) ==
              Approx(force_from_a_parabolic(a, kLayer, kR)).epsilon(1e-12));
    }
    const double a = 1e-3, d0 = delta_from_a_parabolic(a, kLayer, kR);
    const double scale = std::abs(pressure_parabolic(0.0, a, d0, kLayer, kR));
    for (int i = 0; i < 100; ++i) {
        const double r = a * i / 99.0;
        const double exact = pressure_parabolic(r, a, d0, kLayer, kR);
        CHECK(std::abs(p0_general(r, a, d0, gen, kLayer) - exact) <=
              1e-12 * std::max(std::abs(exact), 1e-3 * scale));
    }
}

TEST_CASE("power punch indentation") {
    const auto p = AxisymPunchProfile::power(1.0, 4.0, 1.0);
    CHECK(delta0_general(1.0, p, with_m(1.0, 0.0)) == Approx(1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("force equals disk quadrature of the pressure") {
    const double a = 1.5e-3, d0 = delta_from_a_parabolic(a, kLayer, kR);
    const auto q = numeric::integrate_1d(
        [&](double r) { return 2 * kPi * r * pressure_parabolic(r, a, d0, kLayer, kR); }, 0.0, a,
        {numeric::QuadratureRule::GaussKronrod, 1e-300, 1e-13});
    CHECK(force_from_a_parabolic(a, kLayer, kR) == Approx(q.value).epsilon(1e-10));

    const auto quart = AxisymPunchProfile::power(1e6, 4.0, 1e-3);
    const double d1 = delta0_general(a, quart, kLayer);
    const auto q2 = numeric::integrate_1d(
        [&](double r) { return 2 * kPi * r * p0_general(r, a, d1, quart, kLayer); }, 0.0, a,
        {numeric::QuadratureRule::GaussKronrod, 1e-300, 1e-12});
    CHECK(force0_general(a, quart, kLayer) == Approx(q2.value).epsilon(1e-10));
}

TEST_CASE("pull-off") {
    const auto po = pulloff_incompressible(with_m(3.0, 1.0), 1.0);
    CHECK(po.F_min == Approx(-3 * kPi).epsilon(1e-14));
    CHECK(po.F_min_numeric == Approx(-3 * kPi).epsilon(1e-10));
    for (double G : {1e4, 1e6, 1e8}) {
        for (double h : {1e-4, 1e-3, 1e-2}) {
            const auto q = pulloff_incompressible({G, h, 0.05}, kR);
            CHECK(q.F_min_numeric == Approx(-3 * kPi * kR * 0.05).epsilon(1e-9));
        }
    }
    CHECK(kind_of([] { pulloff_incompressible({1.0, 1.0, 0.0}, 1.0); }) == ErrorKind::NoAdhesion);
}

TEST_CASE("zero-force contact radius") {
    const double s = kLayer.adhesive_length(), C = 1.0 / (2 * kR);
    const double a_exact = std::cbrt(12.0 * s / C);
    const double a_bis = numeric::find_root(
        [&](double a) { return force_from_a_parabolic(a, kLayer, kR); }, 0.5 * a_exact,
        2.0 * a_exact);
    CHECK(a_bis == Approx(a_exact).epsilon(1e-12));
    const auto roots = solve_for_force(0.0, AxisymPunchProfile::paraboloid(kR), kLayer);
    REQUIRE(!roots.empty());
    CHECK(roots.back().a() == Approx(a_exact).epsilon(1e-10));
    CHECK(roots.back().branch() == Branch::Stable);
}

TEST_CASE("force control branches") {
    const auto prof = AxisymPunchProfile::paraboloid(kR);
    const auto po = pulloff_incompressible(kLayer, kR);
    const auto two = solve_for_force(0.5 * po.F_min, prof, kLayer);
    REQUIRE(two.size() == 2);
    CHECK(two[0].a() < two[1].a());
    CHECK(two[0].branch() == Branch::Unstable);
    CHECK(two[1].branch() == Branch::Stable);
    for (const auto& s : two) CHECK(s.F() == Approx(0.5 * po.F_min).epsilon(1e-10));

    const auto tan = solve_for_force(po.F_min, prof, kLayer);
    REQUIRE(tan.size() == 1);
    CHECK(tan[0].branch() == Branch::Tangent);
    CHECK(tan[0].a() == Approx(po.a_at_min).epsilon(1e-6));

    CHECK(kind_of([&] { solve_for_force(1.01 * po.F_min, prof, kLayer); }) ==
          ErrorKind::Unreachable);
}

TEST_CASE("displacement control") {
    const auto prof = AxisymPunchProfile::paraboloid(kR);
    const double a = 2e-3, d0 = delta_from_a_parabolic(a, kLayer, kR);
    const auto roots = solve_for_displacement(d0, prof, kLayer);
    REQUIRE(!roots.empty());
    CHECK(roots.back().a() == Approx(a).epsilon(1e-10));
    for (const auto& s : roots) CHECK(s.delta0() == Approx(d0).epsilon(1e-10));
}

TEST_CASE("FD oracle reproduces the closed-form pressure") {
    const double a = 1e-3, d0 = delta_from_a_parabolic(a, kLayer, kR);
    const double C = 1.0 / (2 * kR), m = kLayer.m();
    const double scale = std::abs(pressure_parabolic(0.0, a, d0, kLayer, kR));
    auto worst = [&](int nodes) {
        const auto fd = numeric::solve_radial_bvp_fd(
            0, [&](double r) { return m * (C * r * r - d0); }, a, 0.0, nodes);
        double w = 0.0;
        for (std::size_t i = 0; i < fd.r.size(); ++i) {
            w = std::max(w, std::abs(fd.y[i] - pressure_parabolic(fd.r[i], a, d0, kLayer, kR)));
        }
        return w;
    };
    const double e1 = worst(201), e2 = worst(401);
    CHECK(e1 < 1e-3 * scale);
    CHECK(std::log2(e1 / e2) == Approx(2.0).epsilon(0.05));
}
