#pragma once
// Job configuration: one JSON document with material, layer, punch and task
// blocks. Parsing is strict: unknown keys and wrong types are ConfigErrors.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "thinlayer/boundary_layer.hpp"
#include "thinlayer/material.hpp"
#include "thinlayer/perturbation.hpp"

namespace thinlayer::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

struct ShapeSpec {
    enum class Kind { Sphere, Paraboloid, Power };
    Kind kind = Kind::Sphere;
    double R = 0.0;             // sphere
    double R1 = 0.0, R2 = 0.0;  // paraboloid
    double coefficient = 0.0;   // power: coefficient * r^exponent
    double exponent = 0.0;
    double length_scale = 0.0;
};

struct ModeSpec {
    int n = 0;
    perturbation::Trig trig = perturbation::Trig::Cos;
    double coefficient = 0.0;  // radial part coefficient * r^exponent
    double exponent = 0.0;
};

struct PunchSpec {
    ShapeSpec base;
    bool perturbed = false;
    double mu = 0.0;
    int truncation = 32;
    std::vector<ModeSpec> modes;
};

enum class TaskKind { SolveDisplacement, SolveForce, Sweep, Pulloff, BlProfile };
enum class SweepVariable { Delta0, Force, Radius };

struct TaskSpec {
    TaskKind kind = TaskKind::Pulloff;
    double delta0 = 0.0;  // solve_displacement
    double F = 0.0;       // solve_force
    SweepVariable variable = SweepVariable::Delta0;
    double from = 0.0, to = 0.0;  // sweep / blprofile range
    int steps = 0;
    bool log_scale = false;
    double C1 = 1.0;          // blprofile: regular-part amplitude
    double tolerance = 1e-8;  // edge-condition diagnostics above this fail the run
};

enum class AleksandrovChoice { Isotropic, Identity, Explicit };

struct JobConfig {
    int schema_version = kSchemaVersion;
    LayerSpec layer;
    std::optional<double> edge_B;  // compressible edge-profile decay rate
    AleksandrovChoice aleksandrov_choice = AleksandrovChoice::Isotropic;
    boundary_layer::AleksandrovConstants aleksandrov = boundary_layer::AleksandrovConstants::isotropic();
    PunchSpec punch;
    TaskSpec task;
    nlohmann::ordered_json task_echo;
};

/// Parses and validates a whole document. Throws Error(ConfigError) or the
/// validation error raised by the material checks.
JobConfig parse_config(const nlohmann::json& doc);

/// Reads JSON from a file, or from stdin when path is "-".
JobConfig load_config(const std::string& path);
JobConfig load_config(std::istream& in);

/// Parses a task block on its own (used by the subcommand overrides).
TaskSpec parse_task(const nlohmann::json& task);

/// Canonical echo of a task block.
nlohmann::ordered_json task_to_json(const TaskSpec& task);

}  // namespace thinlayer::cli
