#include "thinlayer/cli/runner.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

#include "thinlayer/boundary_layer.hpp"
#include "thinlayer/compressible.hpp"
#include "thinlayer/error.hpp"
#include "thinlayer/incompressible.hpp"
#include "thinlayer/numeric/roots.hpp"
#include "thinlayer/perturbation.hpp"

namespace thinlayer::cli {

namespace {

constexpr double kPi = std::numbers::pi;

using Row = std::vector<Cell>;

[[noreturn]] void unsupported(const std::string& what) { fail(ErrorKind::ConfigError, what); }

struct Problem {
    Regime regime = Regime::Compressible;
    std::optional<CompressibleLayer> cl;
    std::optional<IncompressibleLayer> il;
    std::optional<compressible::ParaboloidPunch> paraboloid;
    std::optional<compressible::GeneralPunch> general;
    std::optional<incompressible::AxisymPunchProfile> profile;
    std::optional<double> sphere_R;
    std::optional<perturbation::PerturbedPunch> perturbed;
};

std::function<double(double)> power_law(double c, double p) {
    if (p == 0.0) return [c](double) { return c; };
    return [c, p](double r) { return c * std::pow(r, p); };
}

Problem build_problem(const JobConfig& cfg) {
    Problem pb;
    pb.regime = cfg.layer.regime();
    const ShapeSpec& s = cfg.punch.base;
    if (pb.regime == Regime::Compressible) {
        if (cfg.punch.perturbed) {
            fail(ErrorKind::RegimeMismatch, "perturbed punches are solved on incompressible layers only");
        }
        pb.cl = compressible_layer(cfg.layer);
        switch (s.kind) {
            case ShapeSpec::Kind::Sphere: pb.paraboloid.emplace(s.R, s.R); break;
            case ShapeSpec::Kind::Paraboloid: pb.paraboloid.emplace(s.R1, s.R2); break;
            case ShapeSpec::Kind::Power: {
                const double c = s.coefficient, p = s.exponent;
                pb.general = compressible::GeneralPunch{
                    [c, p](double x, double y) { return c * std::pow(x * x + y * y, 0.5 * p); },
                    s.length_scale};
                break;
            }
        }
        return pb;
    }
    pb.il = incompressible_layer(cfg.layer);
    switch (s.kind) {
        case ShapeSpec::Kind::Sphere:
            pb.sphere_R = s.R;
            break;
        case ShapeSpec::Kind::Paraboloid:
            if (s.R1 != s.R2) {
                fail(ErrorKind::RegimeMismatch,
                     "an elliptic paraboloid (R1 != R2) needs a compressible layer");
            }
            pb.sphere_R = s.R1;
            break;
        case ShapeSpec::Kind::Power:
            pb.profile = incompressible::AxisymPunchProfile::power(s.coefficient, s.exponent,
                                                                   s.length_scale);
            break;
    }
    if (pb.sphere_R) pb.profile = incompressible::AxisymPunchProfile::paraboloid(*pb.sphere_R);
    if (cfg.punch.perturbed) {
        perturbation::PerturbedPunch pp;
        pp.base = *pb.profile;
        pp.mu = cfg.punch.mu;
        pp.truncation = cfg.punch.truncation;
        for (const auto& m : cfg.punch.modes) {
            pp.modes.push_back({m.n, m.trig, power_law(m.coefficient, m.exponent)});
        }
        pp.validate();
        pb.perturbed = std::move(pp);
    }
    return pb;
}

// ---------------------------------------------------------------- checks

double compressible_edge_check(const compressible::EllipticContact& c,
                               const compressible::ParaboloidPunch& punch,
                               const CompressibleLayer& layer) {
    const double pe = layer.edge_pressure();
    const double scale = pe != 0.0 ? std::abs(pe) : layer.k() * std::abs(c.delta0);
    const double p1 = compressible::pressure({c.a, 0.0}, punch, layer, c.delta0);
    const double p2 = compressible::pressure({0.0, c.b}, punch, layer, c.delta0);
    return std::max(std::abs(p1 - pe), std::abs(p2 - pe)) / (scale > 0.0 ? scale : 1.0);
}

double general_edge_check(const compressible::GeneralContact& gc,
                          const compressible::GeneralPunch& punch, const CompressibleLayer& layer,
                          double delta0) {
    const double pe = layer.edge_pressure();
    const double scale = pe != 0.0 ? std::abs(pe) : layer.k() * std::abs(delta0);
    double worst = 0.0;
    for (std::size_t k = 0; k < gc.theta.size(); ++k) {
        const double x = gc.radius[k] * std::cos(gc.theta[k]);
        const double y = gc.radius[k] * std::sin(gc.theta[k]);
        const double p = layer.k() * (delta0 - punch.phi(x, y));
        worst = std::max(worst, std::abs(p - pe));
    }
    return worst / (scale > 0.0 ? scale : 1.0);
}

double incompressible_edge_check(const incompressible::AxisymSolution& s) {
    const double a = s.a();
    double scale = s.S() * a + std::abs(s.m() * s.delta0()) * a * a;
    if (!(scale > 0.0)) scale = 1.0;
    const double e1 = std::abs(s.pressure(a));
    const double e2 = std::abs(s.slope(a) - s.S()) * a;
    return std::max(e1, e2) / scale;
}

void check(ResultRecord& rec, const std::string& name, double value) {
    if (std::isnan(rec.worst_check)) return;
    if (!(value <= rec.worst_check)) {
        rec.worst_check = value;
        rec.worst_check_name = name;
    }
}

// ---------------------------------------------------------------- parallel rows

template <typename Fn>
std::vector<std::vector<Row>> parallel_rows(std::size_t count, int workers, Fn fn) {
    std::vector<std::vector<Row>> out(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                out[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int n = std::max(1, std::min<int>(workers, static_cast<int>(count)));
    std::vector<std::thread> pool;
    for (int t = 1; t < n; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    // Report the failure of the lowest row so the outcome does not depend on scheduling.
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

std::vector<double> sample_range(const TaskSpec& t) {
    std::vector<double> v(t.steps);
    for (int i = 0; i < t.steps; ++i) {
        const double f = t.steps == 1 ? 0.0 : static_cast<double>(i) / (t.steps - 1);
        if (t.log_scale) {
            v[i] = t.from * std::pow(t.to / t.from, f);
        } else {
            v[i] = t.from + (t.to - t.from) * f;
        }
    }
    if (t.steps > 1) v.back() = t.to;
    return v;
}

// ---------------------------------------------------------------- perturbed extras

struct HarmonicKey {
    int n;
    perturbation::Trig trig;
};

std::vector<HarmonicKey> harmonics(const perturbation::PerturbedPunch& pp) {
    std::vector<HarmonicKey> keys;
    for (const auto& m : pp.modes) {
        if (m.n == 0) continue;
        const bool seen = std::any_of(keys.begin(), keys.end(), [&](const HarmonicKey& k) {
            return k.n == m.n && k.trig == m.trig;
        });
        if (!seen) keys.push_back({m.n, m.trig});
    }
    std::sort(keys.begin(), keys.end(), [](const HarmonicKey& x, const HarmonicKey& y) {
        return x.n != y.n ? x.n < y.n : x.trig == perturbation::Trig::Cos && y.trig == perturbation::Trig::Sin;
    });
    return keys;
}

std::string harmonic_name(const HarmonicKey& k) {
    return (k.trig == perturbation::Trig::Cos ? "h_a" : "h_b") + std::to_string(k.n);
}

double harmonic_value(const perturbation::FourierSeries& h, const HarmonicKey& k) {
    return (k.trig == perturbation::Trig::Cos ? h.an : h.bn)[k.n - 1];
}

std::vector<std::string> perturbed_columns(const perturbation::PerturbedPunch& pp) {
    std::vector<std::string> cols{"F1", "F_mu", "h_a0"};
    for (const auto& k : harmonics(pp)) cols.push_back(harmonic_name(k));
    return cols;
}

std::vector<std::string> perturbed_units(const perturbation::PerturbedPunch& pp) {
    std::vector<std::string> units{"N", "N", "m"};
    for (std::size_t i = 0; i < harmonics(pp).size(); ++i) units.push_back("m");
    return units;
}

void append_perturbed(Row& row, const perturbation::PerturbedPunch& pp,
                      const incompressible::AxisymSolution& base) {
    const auto sol = perturbation::solve(pp, base);
    row.emplace_back(sol.force.F1);
    row.emplace_back(sol.force.Fmu);
    row.emplace_back(sol.h.a0);
    for (const auto& k : harmonics(pp)) row.emplace_back(harmonic_value(sol.h, k));
}

// ---------------------------------------------------------------- tasks

void add_scalar(ResultRecord& rec, const std::string& name, double v, const std::string& unit) {
    rec.scalars.push_back({name, v, unit});
}

nlohmann::ordered_json solution_json(const incompressible::AxisymSolution& s) {
    nlohmann::ordered_json j;
    j["branch"] = to_string(s.branch());
    j["a"] = s.a();
    j["delta0"] = s.delta0();
    j["F"] = s.F();
    return j;
}

nlohmann::ordered_json ellipse_json(const compressible::EllipticContact& c, Branch b) {
    nlohmann::ordered_json j;
    j["branch"] = to_string(b);
    j["a"] = c.a;
    j["b"] = c.b;
    j["delta0"] = c.delta0;
    j["F"] = c.F;
    return j;
}

void add_ellipse(ResultRecord& rec, const compressible::EllipticContact& c) {
    add_scalar(rec, "a", c.a, "m");
    add_scalar(rec, "b", c.b, "m");
    add_scalar(rec, "e", c.e, "1");
    add_scalar(rec, "delta0", c.delta0, "m");
    add_scalar(rec, "F", c.F, "N");
    add_scalar(rec, "contact_area", kPi * c.a * c.b, "m^2");
}

void add_perturbation(ResultRecord& rec, const perturbation::PerturbedPunch& pp,
                      const incompressible::AxisymSolution& base) {
    const auto sol = perturbation::solve(pp, base);
    add_scalar(rec, "mu", pp.mu, "1");
    add_scalar(rec, "F0", sol.force.F0, "N");
    add_scalar(rec, "F1", sol.force.F1, "N");
    add_scalar(rec, "F_mu", sol.force.Fmu, "N");
    add_scalar(rec, "p0_curvature_at_a", sol.P, "Pa/m^2");
    add_scalar(rec, "h_a0", sol.h.a0, "m");
    for (const auto& k : harmonics(pp)) add_scalar(rec, harmonic_name(k), harmonic_value(sol.h, k), "m");
    nlohmann::ordered_json h;
    h["a0"] = sol.h.a0;
    h["an"] = sol.h.an;
    h["bn"] = sol.h.bn;
    h["unit"] = "m";
    rec.extra["contour_variation"] = h;
    const auto res = perturbation::boundary_residual(sol, base, pp.mu);
    rec.diagnostics.push_back({"perturbed_edge_value_residual", res.value, "Pa"});
    rec.diagnostics.push_back({"perturbed_edge_gradient_residual", res.gradient, "Pa/m"});
}

void run_solve_displacement(const JobConfig& cfg, const Problem& pb, ResultRecord& rec) {
    const double d0 = cfg.task.delta0;
    if (pb.paraboloid) {
        const auto c = compressible::contact_ellipse(*pb.paraboloid, *pb.cl, d0);
        add_ellipse(rec, c);
        add_scalar(rec, "edge_pressure", pb.cl->edge_pressure(), "Pa");
        const double e = compressible_edge_check(c, *pb.paraboloid, *pb.cl);
        rec.diagnostics.push_back({"edge_check", e, "1"});
        check(rec, "edge_check", e);
        return;
    }
    if (pb.general) {
        const auto gc = compressible::general_contact_region(*pb.general, *pb.cl, d0);
        add_scalar(rec, "delta0", d0, "m");
        add_scalar(rec, "F", gc.F, "N");
        add_scalar(rec, "F_quadrature_error", gc.F_error, "N");
        add_scalar(rec, "contour_level", gc.level, "m");
        add_scalar(rec, "radius_min", *std::min_element(gc.radius.begin(), gc.radius.end()), "m");
        add_scalar(rec, "radius_max", *std::max_element(gc.radius.begin(), gc.radius.end()), "m");
        add_scalar(rec, "edge_pressure", pb.cl->edge_pressure(), "Pa");
        nlohmann::ordered_json contour;
        contour["theta"] = gc.theta;
        contour["radius"] = gc.radius;
        contour["units"] = {{"theta", "rad"}, {"radius", "m"}};
        rec.extra["contour"] = contour;
        const double e = general_edge_check(gc, *pb.general, *pb.cl, d0);
        rec.diagnostics.push_back({"edge_check", e, "1"});
        check(rec, "edge_check", e);
        return;
    }
    const auto sols = incompressible::solve_for_displacement(d0, *pb.profile, *pb.il);
    const auto& s = sols.front();
    add_scalar(rec, "a", s.a(), "m");
    add_scalar(rec, "delta0", s.delta0(), "m");
    add_scalar(rec, "F", s.F(), "N");
    add_scalar(rec, "edge_slope", s.S(), "Pa/m");
    add_scalar(rec, "m", s.m(), "Pa/m^3");
    rec.extra["solutions"] = nlohmann::ordered_json::array();
    double worst = 0.0;
    for (const auto& x : sols) {
        rec.extra["solutions"].push_back(solution_json(x));
        worst = std::max(worst, incompressible_edge_check(x));
    }
    rec.diagnostics.push_back({"edge_check", worst, "1"});
    check(rec, "edge_check", worst);
    if (pb.perturbed) add_perturbation(rec, *pb.perturbed, s);
}

void run_solve_force(const JobConfig& cfg, const Problem& pb, ResultRecord& rec) {
    const double F = cfg.task.F;
    if (pb.general) unsupported("solve_force needs a sphere or paraboloid punch on a compressible layer");
    if (pb.perturbed) unsupported("perturbed punches are displacement-controlled; use solve_displacement");
    rec.extra["solutions"] = nlohmann::ordered_json::array();
    double worst = 0.0;
    if (pb.paraboloid) {
        const auto sols = compressible::solve_for_force(F, *pb.paraboloid, *pb.cl);
        rec.labels.emplace_back("branch", to_string(sols.front().branch));
        add_ellipse(rec, sols.front().contact);
        for (const auto& s : sols) {
            rec.extra["solutions"].push_back(ellipse_json(s.contact, s.branch));
            worst = std::max(worst, compressible_edge_check(s.contact, *pb.paraboloid, *pb.cl));
        }
    } else {
        const auto sols = incompressible::solve_for_force(F, *pb.profile, *pb.il);
        // Report the largest contact (the stable state under force control) first.
        const auto& s = sols.back();
        rec.labels.emplace_back("branch", to_string(s.branch()));
        add_scalar(rec, "a", s.a(), "m");
        add_scalar(rec, "delta0", s.delta0(), "m");
        add_scalar(rec, "F", s.F(), "N");
        for (const auto& x : sols) {
            rec.extra["solutions"].push_back(solution_json(x));
            worst = std::max(worst, incompressible_edge_check(x));
        }
    }
    rec.diagnostics.push_back({"edge_check", worst, "1"});
    check(rec, "edge_check", worst);
}

void run_sweep(const JobConfig& cfg, const Problem& pb, ResultRecord& rec, const RunOptions& opts) {
    const TaskSpec& t = cfg.task;
    const std::vector<double> xs = sample_range(t);
    const bool diag = opts.diagnostics;
    std::function<std::vector<Row>(std::size_t)> row_fn;

    switch (t.variable) {
        case SweepVariable::Delta0:
            rec.columns = {"delta0", "a", "F"};
            rec.units = {"m", "m", "N"};
            if (pb.paraboloid) {
                row_fn = [&](std::size_t i) {
                    const auto c = compressible::contact_ellipse(*pb.paraboloid, *pb.cl, xs[i]);
                    Row r{xs[i], c.a, c.F};
                    if (diag) r.emplace_back(compressible_edge_check(c, *pb.paraboloid, *pb.cl));
                    return std::vector<Row>{r};
                };
            } else if (pb.general) {
                // For a general punch the column a is the largest contour radius.
                row_fn = [&](std::size_t i) {
                    const auto gc = compressible::general_contact_region(*pb.general, *pb.cl, xs[i]);
                    Row r{xs[i], *std::max_element(gc.radius.begin(), gc.radius.end()), gc.F};
                    if (diag) r.emplace_back(general_edge_check(gc, *pb.general, *pb.cl, xs[i]));
                    return std::vector<Row>{r};
                };
            } else {
                row_fn = [&](std::size_t i) {
                    std::vector<Row> rows;
                    for (const auto& s : incompressible::solve_for_displacement(xs[i], *pb.profile, *pb.il)) {
                        Row r{xs[i], s.a(), s.F()};
                        if (diag) r.emplace_back(incompressible_edge_check(s));
                        if (pb.perturbed) append_perturbed(r, *pb.perturbed, s);
                        rows.push_back(std::move(r));
                    }
                    return rows;
                };
            }
            break;
        case SweepVariable::Force:
            if (pb.general) unsupported("force sweeps need a sphere or paraboloid punch on a compressible layer");
            if (pb.perturbed) unsupported("perturbed punches are displacement-controlled; sweep delta0 or a");
            rec.columns = {"F", "branch", "a", "delta0"};
            rec.units = {"N", "", "m", "m"};
            if (pb.paraboloid) {
                row_fn = [&](std::size_t i) {
                    std::vector<Row> rows;
                    for (const auto& s : compressible::solve_for_force(xs[i], *pb.paraboloid, *pb.cl)) {
                        Row r{xs[i], to_string(s.branch), s.contact.a, s.delta0};
                        if (diag) r.emplace_back(compressible_edge_check(s.contact, *pb.paraboloid, *pb.cl));
                        rows.push_back(std::move(r));
                    }
                    return rows;
                };
            } else {
                row_fn = [&](std::size_t i) {
                    std::vector<Row> rows;
                    for (const auto& s : incompressible::solve_for_force(xs[i], *pb.profile, *pb.il)) {
                        Row r{xs[i], to_string(s.branch()), s.a(), s.delta0()};
                        if (diag) r.emplace_back(incompressible_edge_check(s));
                        rows.push_back(std::move(r));
                    }
                    return rows;
                };
            }
            break;
        case SweepVariable::Radius:
            if (pb.general) unsupported("radius sweeps need a sphere or paraboloid punch on a compressible layer");
            if (!(t.from > 0.0) || !(t.to > 0.0)) unsupported("task: radius sweeps need a positive range");
            rec.columns = {"a", "delta0", "F"};
            rec.units = {"m", "m", "N"};
            if (pb.paraboloid) {
                row_fn = [&](std::size_t i) {
                    const double d0 = compressible::delta_from_a(xs[i], *pb.paraboloid, *pb.cl);
                    const auto c = compressible::contact_ellipse(*pb.paraboloid, *pb.cl, d0);
                    Row r{xs[i], d0, compressible::force_from_a(xs[i], *pb.paraboloid, *pb.cl)};
                    if (diag) r.emplace_back(compressible_edge_check(c, *pb.paraboloid, *pb.cl));
                    return std::vector<Row>{r};
                };
            } else {
                row_fn = [&](std::size_t i) {
                    const incompressible::AxisymSolution s(xs[i], *pb.profile, *pb.il);
                    Row r{xs[i], s.delta0(), s.F()};
                    if (diag) r.emplace_back(incompressible_edge_check(s));
                    if (pb.perturbed) append_perturbed(r, *pb.perturbed, s);
                    return std::vector<Row>{r};
                };
            }
            break;
    }
    if (diag) {
        rec.columns.push_back("edge_check");
        rec.units.push_back("1");
    }
    if (pb.perturbed) {
        for (auto& c : perturbed_columns(*pb.perturbed)) rec.columns.push_back(c);
        for (auto& u : perturbed_units(*pb.perturbed)) rec.units.push_back(u);
    }
    const auto blocks = parallel_rows(xs.size(), worker_count(opts.threads), row_fn);
    const auto edge_col = std::find(rec.columns.begin(), rec.columns.end(), "edge_check");
    for (const auto& b : blocks) {
        for (const auto& r : b) {
            if (diag) {
                const double e = std::get<double>(r[edge_col - rec.columns.begin()]);
                check(rec, "edge_check", e);
            }
            rec.rows.push_back(r);
        }
    }
    add_scalar(rec, "rows", static_cast<double>(rec.rows.size()), "1");
    if (diag) rec.diagnostics.push_back({"edge_check_max", rec.worst_check, "1"});
}

void run_pulloff(const Problem& pb, ResultRecord& rec) {
    if (pb.general) unsupported("pulloff needs a sphere or paraboloid punch on a compressible layer");
    if (pb.perturbed) unsupported("pulloff is defined for axisymmetric or paraboloid punches only");
    if (pb.paraboloid) {
        const auto po = compressible::pulloff(*pb.paraboloid, *pb.cl);
        add_scalar(rec, "F_min", po.F_min, "N");
        add_scalar(rec, "a_at_min", po.a_at_min, "m");
        add_scalar(rec, "delta_at_min", po.delta_at_min, "m");
        add_scalar(rec, "F_min_numeric", po.F_min_numeric, "N");
        add_scalar(rec, "a_at_min_numeric", po.a_at_min_numeric, "m");
        const double d = std::abs(po.F_min_numeric - po.F_min) / std::abs(po.F_min);
        rec.diagnostics.push_back({"pulloff_agreement", d, "1"});
        check(rec, "pulloff_agreement", d);
        return;
    }
    if (pb.sphere_R) {
        const auto po = incompressible::pulloff_incompressible(*pb.il, *pb.sphere_R);
        add_scalar(rec, "F_min", po.F_min, "N");
        add_scalar(rec, "a_at_min", po.a_at_min, "m");
        add_scalar(rec, "delta_at_min", po.delta_at_min, "m");
        add_scalar(rec, "F_min_numeric", po.F_min_numeric, "N");
        add_scalar(rec, "a_at_min_numeric", po.a_at_min_numeric, "m");
        const double d = std::abs(po.F_min_numeric - po.F_min) / std::abs(po.F_min);
        rec.diagnostics.push_back({"pulloff_agreement", d, "1"});
        check(rec, "pulloff_agreement", d);
        return;
    }
    // General axisymmetric profile: numerical minimum only.
    if (pb.il->work_of_adhesion == 0.0) {
        fail(ErrorKind::NoAdhesion, "no pull-off force without adhesion (dgamma = 0)");
    }
    auto F = [&](double a) { return a == 0.0 ? 0.0 : incompressible::force0_general(a, *pb.profile, *pb.il); };
    double hi = 1e-6 * pb.profile->length_scale;
    for (int i = 0; i < 400 && !(F(hi) > 0.0); ++i) hi *= 2.0;
    const auto mn = numeric::minimize_1d(F, 0.0, hi, 1e-12, 256);
    add_scalar(rec, "F_min", mn.value, "N");
    add_scalar(rec, "a_at_min", mn.x, "m");
    add_scalar(rec, "delta_at_min", incompressible::delta0_general(mn.x, *pb.profile, *pb.il), "m");
}

void run_blprofile(const JobConfig& cfg, const Problem& pb, ResultRecord& rec, const RunOptions& opts) {
    const std::vector<double> ts = sample_range(cfg.task);
    if (pb.regime == Regime::Compressible) {
        const auto dc = derive_constants(cfg.layer);
        if (!dc.A_script()) unsupported("layer.theta: blprofile on a compressible layer needs theta");
        const double A = *dc.A_script();
        // Default decay rate puts the product A B at 1/2.
        const double B = cfg.edge_B ? *cfg.edge_B : 0.5 / A;
        const boundary_layer::CompressibleEdgeProfile prof{A, B};
        prof.validate();
        add_scalar(rec, "A_script", A, "1");
        add_scalar(rec, "B", B, "1");
        rec.columns = {"nu", "phi0"};
        rec.units = {"1", "1"};
        const auto blocks = parallel_rows(ts.size(), worker_count(opts.threads), [&](std::size_t i) {
            return std::vector<Row>{{ts[i], boundary_layer::phi0_compressible(ts[i], prof)}};
        });
        for (const auto& b : blocks) rec.rows.insert(rec.rows.end(), b.begin(), b.end());
        return;
    }
    boundary_layer::AleksandrovConstants c = cfg.aleksandrov;
    if (cfg.aleksandrov_choice == AleksandrovChoice::Identity) {
        const double G = pb.il->G_prime;
        // Without an explicit theta, use the incompressible isotropic value 2 G'.
        const double theta = cfg.layer.theta ? *cfg.layer.theta : 2.0 * G;
        c = boundary_layer::AleksandrovConstants::from_identity(theta, m1_incompressible(G));
    }
    const double C1 = cfg.task.C1;
    const double C0 = boundary_layer::regular_C0(C1, c);
    const double sif = boundary_layer::edge_sif_coefficient(C1, c);
    add_scalar(rec, "A", c.A, "1");
    add_scalar(rec, "B", c.B, "1");
    add_scalar(rec, "C0", C0, "1");
    add_scalar(rec, "C1", C1, "1");
    add_scalar(rec, "sif_coefficient", sif, "1");
    rec.columns = {"t", "phi0", "phi1", "regularized"};
    rec.units = {"1", "1", "1", "1"};
    const auto blocks = parallel_rows(ts.size(), worker_count(opts.threads), [&](std::size_t i) {
        const double t = ts[i];
        return std::vector<Row>{{t, boundary_layer::phi0_incompressible(t, c),
                                 boundary_layer::phi1_incompressible(t, c),
                                 boundary_layer::regularized_edge_profile(t, C0, C1, c)}};
    });
    for (const auto& b : blocks) rec.rows.insert(rec.rows.end(), b.begin(), b.end());
    if (sif != 0.0) {
        const double t = ts.front();
        const double lim = std::sqrt(t) * boundary_layer::regularized_edge_profile(t, C0, C1, c);
        rec.diagnostics.push_back({"sif_limit_gap_at_first_t", std::abs(lim - sif) / std::abs(sif), "1"});
    }
}

}  // namespace

int worker_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("THINLAYER_JKR_THREADS")) {
        int v = 0;
        const char* end = env + std::char_traits<char>::length(env);
        auto [ptr, ec] = std::from_chars(env, end, v);
        if (ec == std::errc() && ptr == end && v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    (void)ec;
    return std::string(buf, ptr);
}

ResultRecord execute(const JobConfig& cfg, const RunOptions& opts) {
    const Problem pb = build_problem(cfg);
    ResultRecord rec;
    rec.regime = pb.regime == Regime::Compressible ? "compressible" : "incompressible";
    switch (cfg.task.kind) {
        case TaskKind::SolveDisplacement: run_solve_displacement(cfg, pb, rec); break;
        case TaskKind::SolveForce: run_solve_force(cfg, pb, rec); break;
        case TaskKind::Sweep: run_sweep(cfg, pb, rec, opts); break;
        case TaskKind::Pulloff: run_pulloff(pb, rec); break;
        case TaskKind::BlProfile: run_blprofile(cfg, pb, rec, opts); break;
    }
    if (!opts.diagnostics) {
        rec.diagnostics.clear();
        rec.worst_check = 0.0;
        rec.worst_check_name.clear();
    }
    return rec;
}

std::string to_json(const JobConfig& cfg, const ResultRecord& rec, bool diagnostics) {
    nlohmann::ordered_json j;
    j["metadata"] = {{"tool", "thinlayer-jkr"}, {"version", kToolVersion},
                     {"schema_version", kSchemaVersion}};
    j["task"] = cfg.task_echo;
    j["regime"] = rec.regime;
    nlohmann::ordered_json results = nlohmann::ordered_json::object();
    for (const auto& s : rec.scalars) results[s.name] = {{"value", s.value}, {"unit", s.unit}};
    for (const auto& [k, v] : rec.labels) results[k] = {{"value", v}, {"unit", ""}};
    j["results"] = results;
    for (const auto& [k, v] : rec.extra.items()) j[k] = v;
    if (!rec.columns.empty()) {
        nlohmann::ordered_json table;
        table["columns"] = rec.columns;
        table["units"] = rec.units;
        table["rows"] = nlohmann::ordered_json::array();
        for (const auto& r : rec.rows) {
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (const auto& c : r) {
                if (const double* d = std::get_if<double>(&c)) {
                    row.push_back(*d);
                } else {
                    row.push_back(std::get<std::string>(c));
                }
            }
            table["rows"].push_back(row);
        }
        j["table"] = table;
    }
    nlohmann::ordered_json diag = nlohmann::ordered_json::object();
    if (diagnostics) {
        for (const auto& d : rec.diagnostics) diag[d.name] = {{"value", d.value}, {"unit", d.unit}};
    }
    j["diagnostics"] = diag;
    return j.dump(2) + "\n";
}

std::string to_csv(const ResultRecord& rec, bool diagnostics) {
    std::ostringstream out;
    auto cell = [](const Cell& c) {
        if (const double* d = std::get_if<double>(&c)) return format_number(*d);
        return std::get<std::string>(c);
    };
    if (!rec.columns.empty()) {
        for (std::size_t i = 0; i < rec.columns.size(); ++i) out << (i ? "," : "") << rec.columns[i];
        out << "\n";
        for (const auto& r : rec.rows) {
            for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << cell(r[i]);
            out << "\n";
        }
        return out.str();
    }
    out << "quantity,value,unit\n";
    for (const auto& s : rec.scalars) out << s.name << "," << format_number(s.value) << "," << s.unit << "\n";
    for (const auto& [k, v] : rec.labels) out << k << "," << v << ",\n";
    if (diagnostics) {
        for (const auto& d : rec.diagnostics) out << "diag." << d.name << "," << format_number(d.value) << "," << d.unit << "\n";
    }
    return out.str();
}

}  // namespace thinlayer::cli
