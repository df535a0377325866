#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "thinlayer/cli/config.hpp"

namespace thinlayer::cli {

enum class Format { Json, Csv };

struct RunOptions {
    Format format = Format::Json;
    bool diagnostics = true;
    int threads = 0;  // 0: THINLAYER_JKR_THREADS, else hardware concurrency
};

using Cell = std::variant<double, std::string>;

/// Everything a task produces, before serialization.
struct ResultRecord {
    struct Scalar {
        std::string name;
        double value;
        std::string unit;
    };
    std::string regime;
    std::vector<Scalar> scalars;
    std::vector<std::pair<std::string, std::string>> labels;
    nlohmann::ordered_json extra = nlohmann::ordered_json::object();
    std::vector<Scalar> diagnostics;
    // Tabular output (sweeps, profiles); empty for single-state tasks.
    std::vector<std::string> columns;
    std::vector<std::string> units;
    std::vector<std::vector<Cell>> rows;
    // Largest diagnostic that is held to the task tolerance.
    double worst_check = 0.0;
    std::string worst_check_name;
};

/// Runs the task in `cfg`. Solver and validation failures throw Error.
ResultRecord execute(const JobConfig& cfg, const RunOptions& opts);

std::string to_json(const JobConfig& cfg, const ResultRecord& rec, bool diagnostics);
std::string to_csv(const ResultRecord& rec, bool diagnostics);

/// Shortest decimal string that parses back to the same double.
std::string format_number(double x);

/// Worker count: opts.threads if positive, else THINLAYER_JKR_THREADS if
/// set and valid, else the hardware concurrency (at least 1).
int worker_count(int requested);

}  // namespace thinlayer::cli
