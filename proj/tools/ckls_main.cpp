// Command-line entry point: regime | simulate | density | verify.
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ckls/analysis.hpp"
#include "ckls/config.hpp"
#include "ckls/distribution.hpp"
#include "ckls/errors.hpp"
#include "ckls/exact.hpp"
#include "ckls/girsanov.hpp"
#include "ckls/parallel.hpp"
#include "ckls/path_io.hpp"
#include "ckls/rng.hpp"
#include "ckls/simulation.hpp"
#include "ckls/verify.hpp"

namespace {

using nlohmann::json;
using namespace ckls;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRegime = 2;
constexpr int kExitChecksFailed = 3;

struct GlobalOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    unsigned workers = 1;
    std::optional<std::string> out;
};

struct DensityOptions {
    std::optional<double> x_min;
    std::optional<double> x_max;
    std::optional<std::size_t> n_points;
    bool log_spacing = false;
};

RunConfig resolve(const GlobalOptions& g) {
    RunConfig c = load_config(g.config_path);
    if (g.seed) c.seed = *g.seed;
    if (g.out) c.output.path = *g.out;
    return c;
}

// Data goes to the configured path, or stdout when none is set.
class Sink {
public:
    explicit Sink(const std::string& path, bool binary = false) {
        if (path.empty()) return;
        file_ = std::make_unique<std::ofstream>(
            path, binary ? std::ios::out | std::ios::binary : std::ios::out);
        if (!*file_) throw InputError("cannot open output file '" + path + "'");
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }
    bool is_stdout() const { return !file_; }
    void close() {
        if (file_) {
            file_->close();
            if (!*file_) throw InputError("failed writing output file");
        }
    }

private:
    std::unique_ptr<std::ofstream> file_;
};

void write_config_sidecar(const RunConfig& c) {
    std::ofstream side(c.output.path + ".config.json");
    side << to_json(c).dump(2) << '\n';
    if (!side) throw InputError("cannot write config sidecar");
}

int cmd_regime(const GlobalOptions& g) {
    const RunConfig c = resolve(g);
    make_transform(c.params, c.C);  // rejects gamma == 1
    const json report = regime_report(c.params);
    std::cout << report.dump(2) << '\n';
    return report["girsanov"]["valid"].get<bool>() ? kExitOk : kExitRegime;
}

void emit_paths(const RunConfig& c, const std::vector<Path>& paths) {
    const bool binary = c.output.format == OutputFormat::binary;
    Sink sink(c.output.path, binary);
    switch (c.output.format) {
        case OutputFormat::csv:
            sink.stream() << "# config: " << to_json(c).dump() << '\n';
            write_paths_csv(sink.stream(), paths);
            break;
        case OutputFormat::binary:
            if (sink.is_stdout()) throw InputError("binary output needs an output path");
            write_paths_binary(sink.stream(), paths);
            write_config_sidecar(c);
            break;
        case OutputFormat::json: {
            json arr = json::array();
            for (const Path& p : paths) arr.push_back(p.values);
            sink.stream() << json{{"config", to_json(c)}, {"times", paths.front().grid.times()},
                                  {"paths", arr}}
                                 .dump()
                          << '\n';
            break;
        }
    }
    sink.close();
}

void emit_samples(const RunConfig& c, const std::vector<double>& values) {
    const bool binary = c.output.format == OutputFormat::binary;
    Sink sink(c.output.path, binary);
    switch (c.output.format) {
        case OutputFormat::csv:
            sink.stream() << "# config: " << to_json(c).dump() << '\n';
            write_samples_csv(sink.stream(), c.t_end, values);
            break;
        case OutputFormat::binary:
            if (sink.is_stdout()) throw InputError("binary output needs an output path");
            write_samples_binary(sink.stream(), c.t_end, values);
            write_config_sidecar(c);
            break;
        case OutputFormat::json:
            sink.stream() << json{{"config", to_json(c)}, {"t", c.t_end}, {"samples", values}}.dump()
                          << '\n';
            break;
    }
    sink.close();
}

int cmd_simulate(const GlobalOptions& g) {
    const RunConfig c = resolve(g);
    const auto start = std::chrono::steady_clock::now();
    json summary = {{"command", "simulate"}, {"mode", to_string(c.mode)}, {"config", to_json(c)}};
    const NoiseMatrix noise(c.seed, TimeGrid(c.t_end, c.n_steps), c.n_paths);

    if (c.mode == SimMode::euler_p || c.mode == SimMode::auxiliary) {
        std::vector<Path> paths;
        if (c.mode == SimMode::euler_p) {
            paths = euler_ckls(c.params, noise, g.workers);
        } else {
            paths = euler_auxiliary(c.params, noise, c.aux_variant, g.workers);
            summary["aux_variant"] = to_string(c.aux_variant);
        }
        const PositivityStats st = positivity_stats(paths);
        std::vector<double> terminal(paths.size());
        for (std::size_t i = 0; i < paths.size(); ++i) terminal[i] = paths[i].terminal();
        const MeanEstimate m = sample_mean(terminal);
        summary["n_paths"] = paths.size();
        summary["truncated_paths"] = st.paths_truncated;
        summary["truncation_events"] = st.truncation_events;
        summary["min_value"] = st.min_value;
        summary["terminal_mean"] = m.estimate;
        summary["terminal_std_error"] = m.std_error;
        if (c.mode == SimMode::euler_p) summary["closed_form_mean"] = mean_rate(c.params, c.t_end);
        emit_paths(c, paths);
    } else {
        if (!classify_regime(c.params).girsanov_valid()) {
            std::cerr << "error: " << classify_regime(c.params).girsanov_violation << '\n';
            return kExitRegime;
        }
        std::vector<double> values;
        if (c.mode == SimMode::explicit_q) {
            values = explicit_r_samples(c.params, c.t_end, c.n_paths, c.seed, g.workers);
        } else {
            const Transform tr = make_transform(c.params, c.C);
            const CirParams cir = derive_cir(c.params, tr);
            values.resize(c.n_paths);
            parallel_for(c.n_paths, g.workers, [&](std::size_t i) {
                auto gen = substream(c.seed, i, StreamTag::chi_square);
                values[i] = sample_cir_exact(c.params, cir, c.t_end, gen);
            });
        }
        const MeanEstimate m = sample_mean(values);
        summary["n_paths"] = values.size();
        summary["truncated_paths"] = 0;
        summary["sample_mean"] = m.estimate;
        summary["sample_std_error"] = m.std_error;
        emit_samples(c, values);
    }
    const auto elapsed = std::chrono::steady_clock::now() - start;
    summary["elapsed_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
    (c.output.path.empty() ? std::cerr : std::cout) << summary.dump(2) << '\n';
    return kExitOk;
}

int cmd_density(const GlobalOptions& g, const DensityOptions& d) {
    RunConfig c = resolve(g);
    if (d.x_min) c.density.x_min = *d.x_min;
    if (d.x_max) c.density.x_max = *d.x_max;
    if (d.n_points) c.density.n_points = *d.n_points;
    if (d.log_spacing) c.density.log_spacing = true;
    if (!(c.density.x_min > 0.0) || !(c.density.x_max > c.density.x_min) || c.density.n_points < 2)
        throw InputError("density grid needs 0 < x_min < x_max and n_points >= 2");
    const Transform tr = make_transform(c.params, c.C);
    const Regime regime = classify_regime(c.params);
    if (!regime.girsanov_valid()) {
        std::cerr << "error: " << regime.girsanov_violation << '\n';
        return kExitRegime;
    }
    const CirParams cir = derive_cir(c.params, tr);
    const TransitionSpec spec = transition_spec(c.params, cir, c.t_end, c.delta_rule);

    Sink sink(c.output.path);
    std::ostream& out = sink.stream();
    out << "# config: " << to_json(c).dump() << '\n';
    out << "# delta_rule=" << to_string(spec.delta_rule) << " L=" << format_double(spec.L)
        << " delta=" << format_double(spec.delta) << " zeta=" << format_double(spec.zeta)
        << " t=" << format_double(spec.t) << '\n';
    out << "x,pdf,cdf\n";
    const std::size_t n = c.density.n_points;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = static_cast<double>(i) / static_cast<double>(n - 1);
        const double x = c.density.log_spacing
                             ? std::exp(std::log(c.density.x_min) +
                                        u * (std::log(c.density.x_max) - std::log(c.density.x_min)))
                             : c.density.x_min + u * (c.density.x_max - c.density.x_min);
        out << format_double(x) << ',' << format_double(rate_density(c.params, tr, spec, x)) << ','
            << format_double(rate_cdf(c.params, tr, spec, x)) << '\n';
    }
    sink.close();
    return kExitOk;
}

int cmd_verify(const GlobalOptions& g, const std::optional<std::string>& suite) {
    RunConfig c = resolve(g);
    if (suite) c.suite = *suite;
    CheckContext ctx;
    ctx.seed = c.seed;
    ctx.workers = g.workers;
    const std::vector<CheckResult> results = run_suite(c.suite, c, ctx);
    json checks = json::array();
    bool ok = true;
    for (const auto& r : results) {
        checks.push_back(to_json(r));
        ok = ok && !r.failed();
    }
    const json report = {{"config", to_json(c)}, {"suite", c.suite}, {"checks", checks}, {"passed", ok}};
    Sink sink(c.output.path);
    sink.stream() << report.dump(2) << '\n';
    sink.close();
    return ok ? kExitOk : kExitChecksFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CKLS short-rate model: regime checks, simulation, transition densities and verification"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--config", g.config_path, "JSON run configuration")->required();
    app.add_option("--seed", g.seed, "override the configured seed");
    app.add_option("--workers", g.workers, "worker threads (results do not depend on it)")
        ->check(CLI::PositiveNumber);
    app.add_option("--out", g.out, "output path (overrides output.path)");

    auto* regime = app.add_subcommand("regime", "classify the parameter regime");
    auto* simulate = app.add_subcommand("simulate", "simulate paths or exact samples");
    DensityOptions dens;
    auto* density = app.add_subcommand("density", "tabulate the transition density of r_t");
    density->add_option("--x-min", dens.x_min);
    density->add_option("--x-max", dens.x_max);
    density->add_option("--n-points", dens.n_points);
    density->add_flag("--log", dens.log_spacing, "log-spaced grid");
    std::optional<std::string> suite;
    auto* verify = app.add_subcommand("verify", "run verification checks");
    verify->add_option("--suite", suite, "check suite (default runs everything)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*regime) return cmd_regime(g);
        if (*simulate) return cmd_simulate(g);
        if (*density) return cmd_density(g, dens);
        if (*verify) return cmd_verify(g, suite);
    } catch (const RegimeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRegime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
