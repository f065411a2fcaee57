#include "ckls/config.hpp"

#include <fstream>
#include <set>

#include "ckls/errors.hpp"

namespace ckls {

using nlohmann::json;

std::string_view to_string(OutputFormat f) {
    switch (f) {
        case OutputFormat::csv: return "csv";
        case OutputFormat::json: return "json";
        case OutputFormat::binary: break;
    }
    return "binary";
}

std::string_view to_string(SimMode m) {
    switch (m) {
        case SimMode::euler_p: return "euler-p";
        case SimMode::explicit_q: return "explicit-q";
        case SimMode::cir_exact: return "cir-exact";
        case SimMode::auxiliary: break;
    }
    return "auxiliary";
}

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw InputError(where + " must be a JSON object");
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key)) throw InputError("unknown key '" + key + "' in " + where);
}

double get_number(const json& j, const char* key) {
    if (!j.contains(key)) throw InputError(std::string("missing required key '") + key + "'");
    const json& v = j.at(key);
    if (!v.is_number()) throw InputError(std::string("'") + key + "' must be a number");
    return v.get<double>();
}

template <class T>
T get_unsigned(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<long long>() < 0)) throw InputError(std::string("'") + key + "' must be a non-negative integer");
    return v.get<T>();
}

std::string get_string(const json& j, const char* key, std::string fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_string()) throw InputError(std::string("'") + key + "' must be a string");
    return v.get<std::string>();
}

SimMode parse_mode(const std::string& s) {
    if (s == "euler-p") return SimMode::euler_p;
    if (s == "explicit-q") return SimMode::explicit_q;
    if (s == "cir-exact") return SimMode::cir_exact;
    if (s == "auxiliary") return SimMode::auxiliary;
    throw InputError("unknown mode '" + s + "' (expected euler-p|explicit-q|cir-exact|auxiliary)");
}

OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    if (s == "binary") return OutputFormat::binary;
    throw InputError("unknown output format '" + s + "' (expected csv|json|binary)");
}

}  // namespace

RunConfig parse_config(const json& j) {
    reject_unknown(j,
                   {"a", "b", "sigma", "gamma", "r0", "C", "grid", "n_paths", "seed", "delta_rule",
                    "aux_variant", "scale_variant", "mode", "suite", "density", "output"},
                   "config");
    RunConfig c(CklsParams(1, 0, 1, 1, 1));
    try {
        c.params = CklsParams(get_number(j, "a"), get_number(j, "b"), get_number(j, "sigma"),
                              get_number(j, "gamma"), get_number(j, "r0"));
    } catch (const DomainError& e) {
        throw InputError(std::string("invalid model parameters: ") + e.what());
    }
    if (j.contains("C") && !j.at("C").is_null()) {
        const double cval = get_number(j, "C");
        if (!(cval > 0.0)) throw InputError("'C' must be > 0");
        c.C = cval;
    }
    if (j.contains("grid")) {
        const json& g = j.at("grid");
        reject_unknown(g, {"t_end", "n_steps"}, "grid");
        if (g.contains("t_end")) c.t_end = get_number(g, "t_end");
        c.n_steps = get_unsigned<std::size_t>(g, "n_steps", c.n_steps);
        if (!(c.t_end > 0.0)) throw InputError("grid.t_end must be > 0");
        if (c.n_steps == 0) throw InputError("grid.n_steps must be > 0");
    }
    c.n_paths = get_unsigned<std::size_t>(j, "n_paths", c.n_paths);
    if (c.n_paths == 0) throw InputError("'n_paths' must be > 0");
    c.seed = get_unsigned<std::uint64_t>(j, "seed", c.seed);
    c.delta_rule = parse_variant(get_string(j, "delta_rule", "derived"));
    c.aux_variant = parse_variant(get_string(j, "aux_variant", "derived"));
    c.scale_variant = parse_variant(get_string(j, "scale_variant", "paper"));
    c.mode = parse_mode(get_string(j, "mode", "euler-p"));
    c.suite = get_string(j, "suite", c.suite);
    if (j.contains("density")) {
        const json& d = j.at("density");
        reject_unknown(d, {"x_min", "x_max", "n_points", "spacing"}, "density");
        if (d.contains("x_min")) c.density.x_min = get_number(d, "x_min");
        if (d.contains("x_max")) c.density.x_max = get_number(d, "x_max");
        c.density.n_points = get_unsigned<std::size_t>(d, "n_points", c.density.n_points);
        const std::string spacing = get_string(d, "spacing", "linear");
        if (spacing != "linear" && spacing != "log")
            throw InputError("density.spacing must be linear|log");
        c.density.log_spacing = spacing == "log";
        if (!(c.density.x_min > 0.0) || !(c.density.x_max > c.density.x_min))
            throw InputError("density grid needs 0 < x_min < x_max");
        if (c.density.n_points < 2) throw InputError("density.n_points must be >= 2");
    }
    if (j.contains("output")) {
        const json& o = j.at("output");
        reject_unknown(o, {"format", "path"}, "output");
        c.output.format = parse_format(get_string(o, "format", "csv"));
        c.output.path = get_string(o, "path", "");
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw InputError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

json to_json(const CklsParams& p) {
    return {{"a", p.a()}, {"b", p.b()}, {"sigma", p.sigma()}, {"gamma", p.gamma()}, {"r0", p.r0()}};
}

json to_json(const RunConfig& c) {
    json j = to_json(c.params);
    if (c.C) j["C"] = *c.C;
    j["grid"] = {{"t_end", c.t_end}, {"n_steps", c.n_steps}};
    j["n_paths"] = c.n_paths;
    j["seed"] = c.seed;
    j["delta_rule"] = to_string(c.delta_rule);
    j["aux_variant"] = to_string(c.aux_variant);
    j["scale_variant"] = to_string(c.scale_variant);
    j["mode"] = to_string(c.mode);
    j["suite"] = c.suite;
    j["density"] = {{"x_min", c.density.x_min},
                    {"x_max", c.density.x_max},
                    {"n_points", c.density.n_points},
                    {"spacing", c.density.log_spacing ? "log" : "linear"}};
    j["output"] = {{"format", to_string(c.output.format)}, {"path", c.output.path}};
    return j;
}

json regime_report(const CklsParams& p) {
    const Regime r = classify_regime(p);
    json g = {{"valid", r.girsanov_valid()}, {"branch", to_string(r.girsanov)}};
    if (!r.girsanov_valid()) g["violation"] = r.girsanov_violation;
    json m = {{"valid", r.moment_valid()}, {"case", to_string(r.moment)}};
    if (!r.moment_valid()) m["violation"] = r.moment_violation;
    return {{"params", to_json(p)}, {"girsanov", g}, {"moment", m}};
}

}  // namespace ckls
