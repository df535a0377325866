#include "thinlayer/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "thinlayer/error.hpp"

namespace thinlayer::cli {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& path, const std::string& what) {
    fail(ErrorKind::ConfigError, path + ": " + what);
}

void require_object(const json& j, const std::string& path) {
    if (!j.is_object()) config_error(path, "expected an object");
}

void allow_keys(const json& j, const std::string& path, std::set<std::string> keys) {
    for (const auto& [k, v] : j.items()) {
        (void)v;
        if (!keys.count(k)) config_error(path + "." + k, "unknown key");
    }
}

double number(const json& j, const std::string& key, const std::string& path) {
    if (!j.contains(key)) config_error(path + "." + key, "missing");
    const json& v = j.at(key);
    if (!v.is_number()) config_error(path + "." + key, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) config_error(path + "." + key, "must be finite");
    return x;
}

std::optional<double> optional_number(const json& j, const std::string& key,
                                      const std::string& path) {
    if (!j.contains(key)) return std::nullopt;
    return number(j, key, path);
}

int integer(const json& j, const std::string& key, const std::string& path) {
    if (!j.contains(key)) config_error(path + "." + key, "missing");
    const json& v = j.at(key);
    if (!v.is_number_integer()) config_error(path + "." + key, "expected an integer");
    return v.get<int>();
}

std::string string(const json& j, const std::string& key, const std::string& path) {
    if (!j.contains(key)) config_error(path + "." + key, "missing");
    const json& v = j.at(key);
    if (!v.is_string()) config_error(path + "." + key, "expected a string");
    return v.get<std::string>();
}

double positive(double x, const std::string& path) {
    if (!(x > 0.0)) config_error(path, "must be positive");
    return x;
}

ShapeSpec parse_shape(const json& j, const std::string& path) {
    require_object(j, path);
    const std::string type = string(j, "type", path);
    ShapeSpec s;
    if (type == "sphere") {
        allow_keys(j, path, {"type", "R"});
        s.kind = ShapeSpec::Kind::Sphere;
        s.R = positive(number(j, "R", path), path + ".R");
    } else if (type == "paraboloid") {
        allow_keys(j, path, {"type", "R1", "R2"});
        s.kind = ShapeSpec::Kind::Paraboloid;
        s.R1 = positive(number(j, "R1", path), path + ".R1");
        s.R2 = positive(number(j, "R2", path), path + ".R2");
    } else if (type == "power") {
        allow_keys(j, path, {"type", "coefficient", "exponent", "length_scale"});
        s.kind = ShapeSpec::Kind::Power;
        s.coefficient = positive(number(j, "coefficient", path), path + ".coefficient");
        s.exponent = positive(number(j, "exponent", path), path + ".exponent");
        s.length_scale = positive(number(j, "length_scale", path), path + ".length_scale");
    } else {
        config_error(path + ".type", "unknown punch type '" + type + "'");
    }
    return s;
}

PunchSpec parse_punch(const json& j) {
    const std::string path = "punch";
    require_object(j, path);
    PunchSpec p;
    if (j.value("type", std::string()) != "perturbed") {
        p.base = parse_shape(j, path);
        return p;
    }
    allow_keys(j, path, {"type", "base", "mu", "truncation", "modes"});
    p.perturbed = true;
    if (!j.contains("base")) config_error(path + ".base", "missing");
    p.base = parse_shape(j.at("base"), path + ".base");
    p.mu = number(j, "mu", path);
    if (!(p.mu >= 0.0)) config_error(path + ".mu", "must be >= 0");
    if (j.contains("truncation")) {
        p.truncation = integer(j, "truncation", path);
        if (p.truncation < 0) config_error(path + ".truncation", "must be >= 0");
    }
    if (!j.contains("modes") || !j.at("modes").is_array()) {
        config_error(path + ".modes", "expected an array");
    }
    int i = 0;
    for (const auto& m : j.at("modes")) {
        const std::string mp = path + ".modes[" + std::to_string(i++) + "]";
        require_object(m, mp);
        allow_keys(m, mp, {"n", "trig", "coefficient", "exponent"});
        ModeSpec ms;
        ms.n = integer(m, "n", mp);
        if (ms.n < 0 || ms.n > p.truncation) config_error(mp + ".n", "outside 0..truncation");
        const std::string trig = m.contains("trig") ? string(m, "trig", mp) : "cos";
        if (trig == "cos") {
            ms.trig = perturbation::Trig::Cos;
        } else if (trig == "sin") {
            ms.trig = perturbation::Trig::Sin;
            if (ms.n == 0) config_error(mp + ".trig", "harmonic 0 has no sine part");
        } else {
            config_error(mp + ".trig", "expected 'cos' or 'sin'");
        }
        ms.coefficient = number(m, "coefficient", mp);
        ms.exponent = m.contains("exponent") ? number(m, "exponent", mp) : 0.0;
        if (ms.exponent < 0.0) config_error(mp + ".exponent", "must be >= 0");
        p.modes.push_back(ms);
    }
    return p;
}

}  // namespace

static JobConfig parse_config_unchecked(const nlohmann::json& doc);

TaskSpec parse_task(const nlohmann::json& j) {
    const std::string path = "task";
    require_object(j, path);
    const std::string type = string(j, "type", path);
    TaskSpec t;
    auto range = [&](bool allow_log) {
        t.from = number(j, "from", path);
        t.to = number(j, "to", path);
        t.steps = integer(j, "steps", path);
        if (t.steps < 1 || t.steps > 1000000) config_error(path + ".steps", "must be in 1..1000000");
        if (j.contains("scale")) {
            const std::string sc = string(j, "scale", path);
            if (sc == "log") {
                if (!allow_log) config_error(path + ".scale", "log scale not allowed here");
                t.log_scale = true;
            } else if (sc != "linear") {
                config_error(path + ".scale", "expected 'linear' or 'log'");
            }
        }
        if (t.log_scale && !(t.from > 0.0 && t.to > 0.0)) {
            config_error(path, "log scale needs a positive range");
        }
    };
    if (j.contains("tolerance")) t.tolerance = positive(number(j, "tolerance", path), path + ".tolerance");
    if (type == "solve_displacement") {
        allow_keys(j, path, {"type", "delta0", "tolerance"});
        t.kind = TaskKind::SolveDisplacement;
        t.delta0 = number(j, "delta0", path);
    } else if (type == "solve_force") {
        allow_keys(j, path, {"type", "F", "tolerance"});
        t.kind = TaskKind::SolveForce;
        t.F = number(j, "F", path);
    } else if (type == "sweep") {
        allow_keys(j, path, {"type", "variable", "from", "to", "steps", "scale", "tolerance"});
        t.kind = TaskKind::Sweep;
        const std::string v = string(j, "variable", path);
        if (v == "delta0") {
            t.variable = SweepVariable::Delta0;
        } else if (v == "F") {
            t.variable = SweepVariable::Force;
        } else if (v == "a") {
            t.variable = SweepVariable::Radius;
        } else {
            config_error(path + ".variable", "expected 'delta0', 'F' or 'a'");
        }
        range(true);
    } else if (type == "pulloff") {
        allow_keys(j, path, {"type", "tolerance"});
        t.kind = TaskKind::Pulloff;
    } else if (type == "blprofile") {
        allow_keys(j, path, {"type", "from", "to", "steps", "scale", "C1", "tolerance"});
        t.kind = TaskKind::BlProfile;
        range(true);
        if (!(t.from > 0.0) || !(t.to > t.from)) config_error(path, "needs 0 < from < to");
        if (j.contains("C1")) t.C1 = number(j, "C1", path);
    } else {
        config_error(path + ".type", "unknown task '" + type + "'");
    }
    return t;
}

nlohmann::ordered_json task_to_json(const TaskSpec& t) {
    nlohmann::ordered_json j;
    auto add_range = [&] {
        j["from"] = t.from;
        j["to"] = t.to;
        j["steps"] = t.steps;
        j["scale"] = t.log_scale ? "log" : "linear";
    };
    switch (t.kind) {
        case TaskKind::SolveDisplacement:
            j["type"] = "solve_displacement";
            j["delta0"] = t.delta0;
            break;
        case TaskKind::SolveForce:
            j["type"] = "solve_force";
            j["F"] = t.F;
            break;
        case TaskKind::Sweep:
            j["type"] = "sweep";
            j["variable"] = t.variable == SweepVariable::Delta0   ? "delta0"
                            : t.variable == SweepVariable::Force ? "F"
                                                                  : "a";
            add_range();
            break;
        case TaskKind::Pulloff:
            j["type"] = "pulloff";
            break;
        case TaskKind::BlProfile:
            j["type"] = "blprofile";
            add_range();
            j["C1"] = t.C1;
            break;
    }
    j["tolerance"] = t.tolerance;
    return j;
}

static JobConfig parse_config_unchecked(const nlohmann::json& doc) {
    require_object(doc, "config");
    allow_keys(doc, "config", {"schema_version", "material", "layer", "punch", "task"});
    JobConfig cfg;
    cfg.schema_version = integer(doc, "schema_version", "config");
    if (cfg.schema_version != kSchemaVersion) {
        config_error("config.schema_version",
                     "unsupported version " + std::to_string(cfg.schema_version) +
                         " (expected " + std::to_string(kSchemaVersion) + ")");
    }
    for (const char* block : {"material", "layer", "punch", "task"}) {
        if (!doc.contains(block)) config_error(std::string("config.") + block, "missing");
    }

    const json& mat = doc.at("material");
    require_object(mat, "material");
    const json& lay = doc.at("layer");
    require_object(lay, "layer");
    allow_keys(lay, "layer", {"h", "work_of_adhesion", "theta", "gamma_sum", "edge_B", "aleksandrov"});
    const double h = number(lay, "h", "layer");
    const double dg = number(lay, "work_of_adhesion", "layer");

    const std::string mtype = string(mat, "type", "material");
    if (mtype == "isotropic") {
        allow_keys(mat, "material", {"type", "E", "nu"});
        cfg.layer = LayerSpec::isotropic({number(mat, "E", "material"), number(mat, "nu", "material")},
                                         h, dg);
    } else if (mtype == "transverse_isotropic") {
        allow_keys(mat, "material", {"type", "A11", "A13", "A33", "A44"});
        TransverseIsotropicStiffness s{number(mat, "A11", "material"), number(mat, "A13", "material"),
                                       number(mat, "A33", "material"), number(mat, "A44", "material")};
        cfg.layer = LayerSpec::transverse(s, h, dg);
    } else if (mtype == "incompressible") {
        allow_keys(mat, "material", {"type", "G_prime"});
        cfg.layer = LayerSpec::incompressible(number(mat, "G_prime", "material"), h, dg);
    } else {
        config_error("material.type", "unknown material '" + mtype + "'");
    }
    if (auto th = optional_number(lay, "theta", "layer")) cfg.layer.theta = th;
    if (auto gs = optional_number(lay, "gamma_sum", "layer")) cfg.layer.gamma_sum = gs;
    cfg.edge_B = optional_number(lay, "edge_B", "layer");
    if (lay.contains("aleksandrov")) {
        const json& al = lay.at("aleksandrov");
        if (al.is_string()) {
            const std::string v = al.get<std::string>();
            if (v == "isotropic") {
                cfg.aleksandrov_choice = AleksandrovChoice::Isotropic;
            } else if (v == "identity") {
                cfg.aleksandrov_choice = AleksandrovChoice::Identity;
            } else {
                config_error("layer.aleksandrov", "expected 'isotropic', 'identity' or {A, B}");
            }
        } else {
            require_object(al, "layer.aleksandrov");
            allow_keys(al, "layer.aleksandrov", {"A", "B"});
            cfg.aleksandrov_choice = AleksandrovChoice::Explicit;
            cfg.aleksandrov = {number(al, "A", "layer.aleksandrov"), number(al, "B", "layer.aleksandrov")};
            cfg.aleksandrov.validate();
        }
    }
    cfg.layer.validate();

    cfg.punch = parse_punch(doc.at("punch"));
    cfg.task = parse_task(doc.at("task"));
    cfg.task_echo = task_to_json(cfg.task);
    return cfg;
}

JobConfig parse_config(const nlohmann::json& doc) {
    try {
        return parse_config_unchecked(doc);
    } catch (const json::exception& e) {
        fail(ErrorKind::ConfigError, std::string("invalid value: ") + e.what());
    }
}

JobConfig load_config(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        fail(ErrorKind::ConfigError, std::string("malformed JSON: ") + e.what());
    }
    return parse_config(doc);
}

JobConfig load_config(const std::string& path) {
    if (path == "-") return load_config(std::cin);
    std::ifstream in(path);
    if (!in) fail(ErrorKind::ConfigError, "cannot open config file '" + path + "'");
    return load_config(in);
}

}  // namespace thinlayer::cli
