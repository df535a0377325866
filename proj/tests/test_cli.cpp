#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "thinlayer/cli/config.hpp"
#include "thinlayer/cli/runner.hpp"
#include "thinlayer/error.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

struct Run {
    int code;
    std::string out;
    std::string err;
};

fs::path tmp_dir() {
    fs::path d = THINLAYER_TEST_TMP;
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path write_config(const std::string& name, const std::string& text) {
    const fs::path p = tmp_dir() / (name + ".json");
    std::ofstream(p, std::ios::binary) << text;
    return p;
}

fs::path write_config(const std::string& name, const json& doc) { return write_config(name, doc.dump()); }

Run run(const std::string& args, const std::string& env = "") {
    static int counter = 0;
    const fs::path base = tmp_dir() / ("run" + std::to_string(counter++));
    const std::string cmd = env + " '" THINLAYER_JKR_EXE "' " + args + " > '" + base.string() +
                            ".out' 2> '" + base.string() + ".err'";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(base.string() + ".out"),
            slurp(base.string() + ".err")};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

json sphere_compressible(double R, double dg) {
    return {{"schema_version", 1},
            {"material", {{"type", "isotropic"}, {"E", 1e6}, {"nu", 0.3}}},
            {"layer", {{"h", 1e-3}, {"work_of_adhesion", dg}}},
            {"punch", {{"type", "sphere"}, {"R", R}}},
            {"task", {{"type", "pulloff"}}}};
}

json sphere_incompressible() {
    return {{"schema_version", 1},
            {"material", {{"type", "incompressible"}, {"G_prime", 1e6}}},
            {"layer", {{"h", 1e-3}, {"work_of_adhesion", 0.05}}},
            {"punch", {{"type", "sphere"}, {"R", 0.01}}},
            {"task", {{"type", "pulloff"}}}};
}

json perturbed(double mu) {
    json doc = sphere_incompressible();
    doc["punch"] = {{"type", "perturbed"},
                    {"base", {{"type", "sphere"}, {"R", 0.01}}},
                    {"mu", mu},
                    {"modes", {{{"n", 2}, {"trig", "cos"}, {"coefficient", 1.0}, {"exponent", 2.0}}}}};
    doc["task"] = {{"type", "solve_displacement"}, {"delta0", 1e-4}};
    return doc;
}

bool error_line(const std::string& err, int code, const std::string& name) {
    const std::string prefix = "ERROR " + std::to_string(code) + " " + name + ": ";
    return err.rfind(prefix, 0) == 0 && err.find('\n') == err.size() - 1;
}

}  // namespace

TEST_CASE("pulloff JSON") {
    const auto cfg = write_config("pulloff", sphere_compressible(1.0, 1.0));
    const auto r = run("pulloff --config '" + cfg.string() + "'");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["results"]["F_min"]["value"].get<double>() == Approx(-2 * kPi).epsilon(1e-12));
    CHECK(j["results"]["F_min"]["unit"] == "N");
    CHECK(j["metadata"]["version"] == thinlayer::cli::kToolVersion);
    CHECK(j["metadata"]["schema_version"] == 1);
    CHECK(j["regime"] == "compressible");
    CHECK(j["task"]["type"] == "pulloff");
    CHECK(j.contains("diagnostics"));
    // Every scalar carries a unit.
    for (const auto& [k, v] : j["results"].items()) CHECK(v.contains("unit"));
    for (const auto& [k, v] : j["diagnostics"].items()) CHECK(v.contains("unit"));
    // Round trip.
    CHECK(json::parse(j.dump()) == j);
}

TEST_CASE("output is byte-identical across runs, thread counts and ISAs") {
    json doc = sphere_incompressible();
    doc["task"] = {{"type", "sweep"}, {"variable", "a"}, {"from", 1e-4}, {"to", 5e-3}, {"steps", 57}, {"scale", "log"}};
    const auto cfg = write_config("determinism", doc);
    for (const char* fmt : {"json", "csv"}) {
        const std::string args = std::string("run --format ") + fmt + " --config '" + cfg.string() + "'";
        const auto a = run(args);
        const auto b = run(args);
        const auto c = run(args, "THINLAYER_JKR_THREADS=1");
        const auto d = run(args, "THINLAYER_JKR_THREADS=7 THINLAYER_JKR_ISA=scalar");
        REQUIRE(a.code == 0);
        CHECK(a.out == b.out);
        CHECK(a.out == c.out);
        CHECK(a.out == d.out);
    }
}

TEST_CASE("output file and stdin config") {
    const auto cfg = write_config("stdin", sphere_compressible(1.0, 1.0));
    const fs::path out = tmp_dir() / "written.json";
    const auto a = run("pulloff --config '" + cfg.string() + "' --out '" + out.string() + "'");
    REQUIRE(a.code == 0);
    CHECK(a.out.empty());
    const auto b = run("pulloff --config - < '" + cfg.string() + "'");
    REQUIRE(b.code == 0);
    CHECK(slurp(out) == b.out);
}

TEST_CASE("displacement sweep columns") {
    const auto cfg = write_config("dsweep", sphere_compressible(0.01, 0.05));
    const std::string args = "sweep --variable delta0 --from -5e-6 --to 1e-4 --steps 20 --format csv --config '" +
                             cfg.string() + "'";
    const auto r = run(args);
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 21);
    CHECK(rows[0] == std::vector<std::string>{"delta0", "a", "F", "edge_check"});
    for (std::size_t i = 2; i < rows.size(); ++i) CHECK(std::stod(rows[i][1]) > std::stod(rows[i - 1][1]));

    const auto nd = run(args + " --no-diagnostics");
    REQUIRE(nd.code == 0);
    CHECK(parse_csv(nd.out)[0] == std::vector<std::string>{"delta0", "a", "F"});
}

TEST_CASE("force sweep lists both branches") {
    const auto cfg = write_config("fsweep", sphere_compressible(0.01, 0.05));
    const auto r = run("sweep --variable F --from -0.003 --to 0.003 --steps 7 --format csv --config '" +
                       cfg.string() + "'");
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    CHECK(rows[0] == std::vector<std::string>{"F", "branch", "a", "delta0", "edge_check"});
    int unstable = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) unstable += rows[i][1] == "unstable";
    CHECK(unstable > 0);
}

TEST_CASE("non-adhesive compressible sweep is quartic in a") {
    const auto cfg = write_config("quartic", sphere_compressible(0.01, 0.0));
    const auto r = run("sweep --variable a --from 1e-4 --to 1e-3 --steps 10 --format csv --config '" +
                       cfg.string() + "'");
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    CHECK(rows[0] == std::vector<std::string>{"a", "delta0", "F", "edge_check"});
    const double k = std::stod(rows[1][2]) / std::pow(std::stod(rows[1][0]), 4);
    for (std::size_t i = 2; i < rows.size(); ++i) {
        CHECK(std::stod(rows[i][2]) / std::pow(std::stod(rows[i][0]), 4) == Approx(k).epsilon(1e-12));
    }
}

TEST_CASE("incompressible sweep minimum matches pull-off") {
    const auto cfg = write_config("incsweep", sphere_incompressible());
    const auto po = json::parse(run("pulloff --config '" + cfg.string() + "'").out);
    const double Fmin = po["results"]["F_min"]["value"];
    const auto r = run("sweep --variable a --from 1e-4 --to 4e-3 --steps 400 --format csv --config '" +
                       cfg.string() + "'");
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    double lo = 1e300;
    for (std::size_t i = 1; i < rows.size(); ++i) lo = std::min(lo, std::stod(rows[i][2]));
    CHECK(lo >= Fmin);
    CHECK(lo == Approx(Fmin).epsilon(1e-3));
}

TEST_CASE("perturbed task emits contour coefficients and force correction") {
    const auto cfg = write_config("perturbed", perturbed(0.01));
    const auto r = run("run --config '" + cfg.string() + "'");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    for (const char* key : {"F0", "F1", "F_mu", "h_a0", "h_a2"}) CHECK(j["results"].contains(key));
    CHECK(j["contour_variation"]["an"].size() == 32);
    CHECK(j["contour_variation"]["bn"].size() == 32);
    CHECK(j["diagnostics"].contains("perturbed_edge_value_residual"));
    CHECK(j["diagnostics"]["perturbed_edge_gradient_residual"]["unit"] == "Pa/m");

    const auto s = run("sweep --variable delta0 --from 5e-5 --to 1e-4 --steps 3 --format csv --config '" +
                       cfg.string() + "'");
    REQUIRE(s.code == 0);
    const auto head = parse_csv(s.out)[0];
    CHECK(head == std::vector<std::string>{"delta0", "a", "F", "edge_check", "F1", "F_mu", "h_a0", "h_a2"});
}

TEST_CASE("boundary-layer profile columns") {
    const auto cfg = write_config("bl", sphere_incompressible());
    const auto r = run("blprofile --from 0.01 --to 10 --steps 5 --scale log --format csv --config '" +
                       cfg.string() + "'");
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    CHECK(rows[0] == std::vector<std::string>{"t", "phi0", "phi1", "regularized"});
    CHECK(rows.size() == 6);
}

TEST_CASE("exit codes and error lines") {
    SUBCASE("malformed JSON") {
        const auto cfg = write_config("malformed", std::string("{\"schema_version\": 1, "));
        const auto r = run("run --config '" + cfg.string() + "'");
        CHECK(r.code == 2);
        CHECK(error_line(r.err, 2, "ConfigError"));
    }
    SUBCASE("unknown key") {
        json doc = sphere_compressible(1.0, 1.0);
        doc["layer"]["thickness"] = 1.0;
        const auto r = run("run --config '" + write_config("unknown", doc).string() + "'");
        CHECK(r.code == 2);
        CHECK(error_line(r.err, 2, "ConfigError"));
    }
    SUBCASE("missing file") {
        CHECK(run("run --config /nonexistent/config.json").code == 2);
    }
    SUBCASE("usage error") {
        const auto r = run("frobnicate");
        CHECK(r.code == 2);
        CHECK(error_line(r.err, 2, "UsageError"));
    }
    SUBCASE("regime mismatch") {
        json doc = sphere_incompressible();
        doc["punch"] = {{"type", "paraboloid"}, {"R1", 0.02}, {"R2", 0.01}};
        const auto r = run("run --config '" + write_config("mismatch", doc).string() + "'");
        CHECK(r.code == 2);
        CHECK(error_line(r.err, 2, "RegimeMismatch"));
    }
    SUBCASE("no contact") {
        json doc = sphere_compressible(0.01, 0.05);
        doc["task"] = {{"type", "solve_displacement"}, {"delta0", -1.0}};
        const auto r = run("run --config '" + write_config("nocontact", doc).string() + "'");
        CHECK(r.code == 3);
        CHECK(error_line(r.err, 3, "NoContact"));
    }
    SUBCASE("unreachable force") {
        json doc = sphere_compressible(0.01, 0.05);
        doc["task"] = {{"type", "solve_force"}, {"F", -1.0}};
        const auto r = run("run --config '" + write_config("unreachable", doc).string() + "'");
        CHECK(r.code == 3);
        CHECK(error_line(r.err, 3, "Unreachable"));
    }
    SUBCASE("resonant mode") {
        // n = 2 resonates when a^3 = 2 s / C, s = sqrt(2 dg / m).
        const double m = 3.0 * 1e6 / 1e-9, s = std::sqrt(2.0 * 0.05 / m), C = 1.0 / (2 * 0.01);
        const double a = std::cbrt(2.0 * s / C);
        const double d0 = C * a * a / 2.0 - 2.0 * s / a;
        json doc = perturbed(0.01);
        doc["task"] = {{"type", "solve_displacement"}, {"delta0", d0}};
        const auto r = run("run --config '" + write_config("resonant", doc).string() + "'");
        CHECK(r.code == 3);
        CHECK(error_line(r.err, 3, "ResonantMode"));
    }
    SUBCASE("version") {
        const auto r = run("--version");
        CHECK(r.code == 0);
        CHECK(r.out.find(thinlayer::cli::kToolVersion) != std::string::npos);
    }
}

TEST_CASE("config parsing in-process") {
    using thinlayer::Error;
    using thinlayer::ErrorKind;
    auto kind = [](const json& doc) {
        try {
            thinlayer::cli::parse_config(doc);
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::ToleranceNotMet;  // sentinel: no error
    };
    CHECK(kind(sphere_compressible(1.0, 1.0)) == ErrorKind::ToleranceNotMet);
    json bad = sphere_compressible(1.0, 1.0);
    bad["schema_version"] = 2;
    CHECK(kind(bad) == ErrorKind::ConfigError);
    bad = sphere_compressible(1.0, 1.0);
    bad["layer"]["h"] = "thin";
    CHECK(kind(bad) == ErrorKind::ConfigError);
    bad = sphere_compressible(1.0, 1.0);
    bad["layer"]["h"] = -1.0;
    CHECK(kind(bad) == ErrorKind::InvalidArgument);
    bad = sphere_compressible(1.0, 1.0);
    bad["material"]["nu"] = 0.5;
    CHECK(kind(bad) == ErrorKind::IncompressibleInput);

    const auto cfg = thinlayer::cli::parse_config(sphere_compressible(1.0, 1.0));
    const auto rec = thinlayer::cli::execute(cfg, {});
    CHECK(rec.regime == "compressible");
    CHECK(thinlayer::cli::to_json(cfg, rec, true) == thinlayer::cli::to_json(cfg, rec, true));
}

TEST_CASE("number formatting round-trips") {
    for (double x : {0.1, -6.283185307179585, 1e-300, 3e15, 0.0, 123456789.125}) {
        CHECK(std::stod(thinlayer::cli::format_number(x)) == x);
    }
    CHECK(thinlayer::cli::format_number(0.1) == "0.1");
}
