#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "ckls/model.hpp"

namespace ckls {

enum class OutputFormat { csv, json, binary };
enum class SimMode { euler_p, explicit_q, cir_exact, auxiliary };

std::string_view to_string(OutputFormat f);
std::string_view to_string(SimMode m);

struct DensityGrid {
    double x_min = 0.01;
    double x_max = 10.0;
    std::size_t n_points = 200;
    bool log_spacing = false;

    friend bool operator==(const DensityGrid&, const DensityGrid&) = default;
};

struct OutputSpec {
    OutputFormat format = OutputFormat::csv;
    std::string path;  // empty -> stdout

    friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

// Resolved run configuration. JSON layout:
//   {"a", "b", "sigma", "gamma", "r0", "C"?,
//    "grid": {"t_end", "n_steps"}, "n_paths", "seed",
//    "delta_rule", "aux_variant", "scale_variant",
//    "mode", "suite", "density": {"x_min", "x_max", "n_points", "spacing"},
//    "output": {"format", "path"}}
// Only the five model parameters are required; unknown keys are rejected.
struct RunConfig {
    explicit RunConfig(CklsParams p) : params(p) {}

    CklsParams params;
    std::optional<double> C;
    double t_end = 1.0;
    std::size_t n_steps = 1024;
    std::size_t n_paths = 1000;
    std::uint64_t seed = 1;
    Variant delta_rule = Variant::derived;
    Variant aux_variant = Variant::derived;
    Variant scale_variant = Variant::paper;
    SimMode mode = SimMode::euler_p;
    std::string suite = "default";
    DensityGrid density;
    OutputSpec output;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Throws InputError with a readable message on any schema violation.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
nlohmann::json to_json(const RunConfig& c);

nlohmann::json to_json(const CklsParams& p);
nlohmann::json regime_report(const CklsParams& p);

}  // namespace ckls
