#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "morrey/approximation.hpp"
#include "morrey/weighted.hpp"

namespace morrey {

using json = nlohmann::ordered_json;

enum class Command { norm, classify, mollify, truncate, zorko, young, embed, phi_bounds };

inline std::string to_string(Command c) {
    switch (c) {
        case Command::norm: return "norm";
        case Command::classify: return "classify";
        case Command::mollify: return "mollify";
        case Command::truncate: return "truncate";
        case Command::zorko: return "zorko";
        case Command::young: return "young";
        case Command::embed: return "embed";
        case Command::phi_bounds: return "phi-bounds";
    }
    return "?";
}

inline Command parse_command(const std::string& s) {
    if (s == "norm") return Command::norm;
    if (s == "classify") return Command::classify;
    if (s == "mollify") return Command::mollify;
    if (s == "truncate") return Command::truncate;
    if (s == "zorko") return Command::zorko;
    if (s == "young") return Command::young;
    if (s == "embed") return Command::embed;
    if (s == "phi-bounds") return Command::phi_bounds;
    throw ConfigError("unknown command '" + s + "'");
}

struct ExperimentConfig {
    Command command = Command::norm;
    std::optional<FunctionDescriptor> function;
    std::optional<KernelDescriptor> kernel;
    std::optional<WeightDescriptor> weight;
    std::vector<FunctionDescriptor> catalog;
    MorreyParams params;
    SearchConfig search;
    std::vector<double> t_schedule;
    std::vector<double> k_schedule;
    std::vector<double> n_schedule;
    std::vector<double> r_schedule;
    std::vector<Vec> xi_schedule;
    int phi_cap = 40;
    std::string out_path;
};

namespace detail {

inline void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                                const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [key, _] : j.items())
        if (!allowed.count(key)) throw ConfigError(where + ": unknown field '" + key + "'");
}

inline double require_number(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_number())
        throw ConfigError(where + ": missing numeric field '" + key + "'");
    return j[key].get<double>();
}

inline double number_or(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) throw ConfigError("field '" + key + "' must be numeric");
    return j[key].get<double>();
}

inline int require_int(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw ConfigError(where + ": missing integer field '" + key + "'");
    return j[key].get<int>();
}

inline Vec parse_point(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty() || j.size() > 3)
        throw ConfigError(where + ": expected a coordinate array of length 1..3");
    Vec v(static_cast<int>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) throw ConfigError(where + ": coordinates must be numeric");
        v[static_cast<int>(i)] = j[i].get<double>();
    }
    return v;
}

inline std::vector<double> parse_schedule(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where + ": expected an array");
    std::vector<double> out;
    for (const auto& e : j) {
        if (!e.is_number()) throw ConfigError(where + ": entries must be numeric");
        out.push_back(e.get<double>());
    }
    return out;
}

} // namespace detail

// Descriptor grammar, e.g. {"fn":"piecewise_radial","alpha":0.25,"beta":2,"n":1}.
inline FunctionDescriptor parse_function(const json& j) {
    using detail::reject_unknown_keys;
    using detail::require_number;
    if (!j.is_object() || !j.contains("fn") || !j["fn"].is_string())
        throw ConfigError("function: missing string field 'fn'");
    const std::string fn = j["fn"].get<std::string>();
    const std::string where = "function '" + fn + "'";
    if (fn == "zero") {
        reject_unknown_keys(j, {"fn", "n"}, where);
        return FunctionDescriptor::zero(detail::require_int(j, "n", where));
    }
    if (fn == "constant") {
        reject_unknown_keys(j, {"fn", "c", "n"}, where);
        return FunctionDescriptor::constant(require_number(j, "c", where),
                                            detail::require_int(j, "n", where));
    }
    if (fn == "radial_power") {
        reject_unknown_keys(j, {"fn", "alpha", "n"}, where);
        return FunctionDescriptor::radial_power(require_number(j, "alpha", where),
                                                detail::require_int(j, "n", where));
    }
    if (fn == "piecewise_radial") {
        reject_unknown_keys(j, {"fn", "alpha", "beta", "n"}, where);
        return FunctionDescriptor::piecewise_radial_power(require_number(j, "alpha", where),
                                                          require_number(j, "beta", where),
                                                          detail::require_int(j, "n", where));
    }
    if (fn == "ball_indicator") {
        reject_unknown_keys(j, {"fn", "center", "radius"}, where);
        if (!j.contains("center")) throw ConfigError(where + ": missing 'center'");
        return FunctionDescriptor::ball_indicator(detail::parse_point(j["center"], where),
                                                  require_number(j, "radius", where));
    }
    if (fn == "ball_sum_phi") {
        reject_unknown_keys(j, {"fn", "cap", "n"}, where);
        return FunctionDescriptor::ball_sum_phi(detail::require_int(j, "cap", where),
                                                detail::require_int(j, "n", where));
    }
    if (fn == "gaussian") {
        reject_unknown_keys(j, {"fn", "sigma", "n"}, where);
        return FunctionDescriptor::gaussian(require_number(j, "sigma", where),
                                            detail::require_int(j, "n", where));
    }
    if (fn == "smooth_bump") {
        reject_unknown_keys(j, {"fn", "radius", "n"}, where);
        return FunctionDescriptor::smooth_bump(require_number(j, "radius", where),
                                               detail::require_int(j, "n", where));
    }
    if (fn == "sum") {
        reject_unknown_keys(j, {"fn", "terms", "n"}, where);
        if (!j.contains("terms") || !j["terms"].is_array())
            throw ConfigError(where + ": missing array 'terms'");
        std::vector<FunctionDescriptor> terms;
        for (const auto& t : j["terms"]) terms.push_back(parse_function(t));
        return FunctionDescriptor::sum(std::move(terms), detail::require_int(j, "n", where));
    }
    if (fn == "scaled") {
        reject_unknown_keys(j, {"fn", "inner", "t"}, where);
        if (!j.contains("inner")) throw ConfigError(where + ": missing 'inner'");
        return FunctionDescriptor::scaled(parse_function(j["inner"]), require_number(j, "t", where));
    }
    if (fn == "translated") {
        reject_unknown_keys(j, {"fn", "inner", "xi"}, where);
        if (!j.contains("inner") || !j.contains("xi"))
            throw ConfigError(where + ": requires 'inner' and 'xi'");
        return FunctionDescriptor::translated(parse_function(j["inner"]),
                                              detail::parse_point(j["xi"], where));
    }
    if (fn == "ball_truncated") {
        reject_unknown_keys(j, {"fn", "inner", "k"}, where);
        if (!j.contains("inner")) throw ConfigError(where + ": missing 'inner'");
        return FunctionDescriptor::exterior_truncated(parse_function(j["inner"]),
                                                      require_number(j, "k", where));
    }
    throw ConfigError("unknown function variant '" + fn + "'");
}

inline json function_to_json(const FunctionDescriptor& f) {
    json j;
    switch (f.kind()) {
        case FnKind::zero:
            j["fn"] = "zero";
            j["n"] = f.dim();
            break;
        case FnKind::constant:
            j["fn"] = "constant";
            j["c"] = f.param_a();
            j["n"] = f.dim();
            break;
        case FnKind::radial_power:
            j["fn"] = "radial_power";
            j["alpha"] = f.param_a();
            j["n"] = f.dim();
            break;
        case FnKind::piecewise_radial_power:
            j["fn"] = "piecewise_radial";
            j["alpha"] = f.param_a();
            j["beta"] = f.param_b();
            j["n"] = f.dim();
            break;
        case FnKind::ball_indicator: {
            j["fn"] = "ball_indicator";
            json c = json::array();
            for (int i = 0; i < f.dim(); ++i) c.push_back(f.center()[i]);
            j["center"] = c;
            j["radius"] = f.param_a();
            break;
        }
        case FnKind::ball_sum_phi:
            j["fn"] = "ball_sum_phi";
            j["cap"] = f.cap();
            j["n"] = f.dim();
            break;
        case FnKind::gaussian:
            j["fn"] = "gaussian";
            j["sigma"] = f.param_a();
            j["n"] = f.dim();
            break;
        case FnKind::smooth_bump:
            j["fn"] = "smooth_bump";
            j["radius"] = f.param_a();
            j["n"] = f.dim();
            break;
        case FnKind::sum: {
            j["fn"] = "sum";
            json terms = json::array();
            for (const auto& c : f.children()) terms.push_back(function_to_json(c));
            j["terms"] = terms;
            j["n"] = f.dim();
            break;
        }
        case FnKind::scaled:
            j["fn"] = "scaled";
            j["inner"] = function_to_json(f.children()[0]);
            j["t"] = f.param_a();
            break;
        case FnKind::translated: {
            j["fn"] = "translated";
            j["inner"] = function_to_json(f.children()[0]);
            json c = json::array();
            for (int i = 0; i < f.dim(); ++i) c.push_back(f.center()[i]);
            j["xi"] = c;
            break;
        }
        case FnKind::exterior_truncated:
            j["fn"] = "ball_truncated";
            j["inner"] = function_to_json(f.children()[0]);
            j["k"] = f.param_a();
            break;
        case FnKind::tail_restricted:
            throw ConfigError("tail_restricted is internal and not serializable");
    }
    return j;
}

// Weight grammar, e.g. {"weight":"power","alpha":-1.1}.
inline WeightDescriptor parse_weight(const json& j) {
    using detail::require_number;
    if (!j.is_object() || !j.contains("weight") || !j["weight"].is_string())
        throw ConfigError("weight: missing string field 'weight'");
    const std::string kind = j["weight"].get<std::string>();
    const std::string where = "weight '" + kind + "'";
    if (kind == "power") {
        detail::reject_unknown_keys(j, {"weight", "alpha"}, where);
        return WeightDescriptor::power(require_number(j, "alpha", where));
    }
    if (kind == "plain_power") {
        detail::reject_unknown_keys(j, {"weight", "alpha"}, where);
        return WeightDescriptor::plain_power(require_number(j, "alpha", where));
    }
    if (kind == "power_log") {
        detail::reject_unknown_keys(j, {"weight", "gamma", "p", "beta"}, where);
        return WeightDescriptor::power_log(require_number(j, "gamma", where),
                                           require_number(j, "p", where),
                                           require_number(j, "beta", where));
    }
    throw ConfigError("unknown weight variant '" + kind + "'");
}

inline json weight_to_json(const WeightDescriptor& w) {
    json j;
    switch (w.kind()) {
        case WeightDescriptor::Kind::power:
            j["weight"] = "power";
            j["alpha"] = w.alpha();
            break;
        case WeightDescriptor::Kind::plain_power:
            j["weight"] = "plain_power";
            j["alpha"] = w.alpha();
            break;
        case WeightDescriptor::Kind::power_log:
            j["weight"] = "power_log";
            j["gamma"] = w.gamma();
            j["p"] = w.p_ref();
            j["beta"] = w.beta();
            break;
    }
    return j;
}

inline KernelDescriptor parse_kernel(const json& j) {
    using detail::require_number;
    if (!j.is_object() || !j.contains("kernel") || !j["kernel"].is_string())
        throw ConfigError("kernel: missing string field 'kernel'");
    const std::string kind = j["kernel"].get<std::string>();
    const std::string where = "kernel '" + kind + "'";
    bool normalized = true;
    if (j.contains("normalized")) {
        if (!j["normalized"].is_boolean()) throw ConfigError(where + ": 'normalized' must be boolean");
        normalized = j["normalized"].get<bool>();
    }
    const double t = detail::number_or(j, "t", 1.0);
    KernelDescriptor base = [&] {
        if (kind == "gaussian") {
            detail::reject_unknown_keys(j, {"kernel", "sigma", "n", "normalized", "t"}, where);
            return KernelDescriptor::gaussian(require_number(j, "sigma", where),
                                              detail::require_int(j, "n", where), normalized);
        }
        if (kind == "smooth_bump") {
            detail::reject_unknown_keys(j, {"kernel", "radius", "n", "normalized", "t"}, where);
            return KernelDescriptor::bump(require_number(j, "radius", where),
                                          detail::require_int(j, "n", where), normalized);
        }
        throw ConfigError("unknown kernel variant '" + kind + "'");
    }();
    return t == 1.0 ? base : dilate(base, t);
}

inline json kernel_to_json(const KernelDescriptor& k) {
    json j;
    if (k.base().kind() == FnKind::gaussian) {
        j["kernel"] = "gaussian";
        j["sigma"] = k.base().param_a();
    } else {
        j["kernel"] = "smooth_bump";
        j["radius"] = k.base().param_a();
    }
    j["n"] = k.base().dim();
    j["normalized"] = k.normalized();
    j["t"] = k.scale();
    return j;
}

inline MorreyParams parse_params(const json& j) {
    detail::reject_unknown_keys(j, {"n", "p", "lambda", "variant"}, "params");
    MorreyParams p;
    p.n = detail::require_int(j, "n", "params");
    p.p = detail::require_number(j, "p", "params");
    p.lambda = detail::require_number(j, "lambda", "params");
    if (j.contains("variant")) {
        const std::string v = j["variant"].is_string() ? j["variant"].get<std::string>() : "";
        if (v == "homogeneous")
            p.variant = Variant::homogeneous;
        else if (v == "inhomogeneous")
            p.variant = Variant::inhomogeneous;
        else
            throw ConfigError("params: variant must be 'homogeneous' or 'inhomogeneous'");
    }
    p.validate();
    return p;
}

inline json params_to_json(const MorreyParams& p) {
    json j;
    j["n"] = p.n;
    j["p"] = p.p;
    j["lambda"] = p.lambda;
    j["variant"] = to_string(p.variant);
    return j;
}

inline QuadScheme parse_scheme(const std::string& s) {
    if (s == "analytic-radial") return QuadScheme::analytic_radial;
    if (s == "product-rule") return QuadScheme::product_rule;
    if (s == "monte-carlo") return QuadScheme::monte_carlo;
    throw ConfigError("unknown quadrature scheme '" + s + "'");
}

inline SearchConfig parse_search(const json& j) {
    detail::reject_unknown_keys(
        j, {"k_min", "k_max", "lattice_spacing", "max_grid_per_axis", "quadrature"}, "search");
    SearchConfig cfg;
    cfg.k_min = static_cast<int>(detail::number_or(j, "k_min", cfg.k_min));
    cfg.k_max = static_cast<int>(detail::number_or(j, "k_max", cfg.k_max));
    cfg.lattice_spacing = detail::number_or(j, "lattice_spacing", cfg.lattice_spacing);
    cfg.max_grid_per_axis =
        static_cast<int>(detail::number_or(j, "max_grid_per_axis", cfg.max_grid_per_axis));
    if (j.contains("quadrature")) {
        const json& q = j["quadrature"];
        detail::reject_unknown_keys(q,
                                    {"scheme", "radial_nodes", "angular_nodes", "mc_samples",
                                     "seed", "rel_tol", "abs_tol", "prefer_analytic"},
                                    "search.quadrature");
        if (q.contains("scheme")) {
            if (!q["scheme"].is_string()) throw ConfigError("quadrature.scheme must be a string");
            cfg.quadrature.scheme = parse_scheme(q["scheme"].get<std::string>());
        }
        cfg.quadrature.radial_nodes =
            static_cast<int>(detail::number_or(q, "radial_nodes", cfg.quadrature.radial_nodes));
        cfg.quadrature.angular_nodes =
            static_cast<int>(detail::number_or(q, "angular_nodes", cfg.quadrature.angular_nodes));
        cfg.quadrature.mc_samples =
            static_cast<int>(detail::number_or(q, "mc_samples", cfg.quadrature.mc_samples));
        if (q.contains("seed")) {
            if (!q["seed"].is_number_unsigned() && !q["seed"].is_number_integer())
                throw ConfigError("quadrature.seed must be an integer");
            cfg.quadrature.seed = q["seed"].get<std::uint64_t>();
        }
        cfg.quadrature.rel_tol = detail::number_or(q, "rel_tol", cfg.quadrature.rel_tol);
        cfg.quadrature.abs_tol = detail::number_or(q, "abs_tol", cfg.quadrature.abs_tol);
        if (q.contains("prefer_analytic")) {
            if (!q["prefer_analytic"].is_boolean())
                throw ConfigError("quadrature.prefer_analytic must be boolean");
            cfg.quadrature.prefer_analytic = q["prefer_analytic"].get<bool>();
        }
    }
    cfg.validate();
    return cfg;
}

inline json search_to_json(const SearchConfig& cfg) {
    json j;
    j["k_min"] = cfg.k_min;
    j["k_max"] = cfg.k_max;
    j["lattice_spacing"] = cfg.lattice_spacing;
    j["max_grid_per_axis"] = cfg.max_grid_per_axis;
    json q;
    q["scheme"] = to_string(cfg.quadrature.scheme);
    q["radial_nodes"] = cfg.quadrature.radial_nodes;
    q["angular_nodes"] = cfg.quadrature.angular_nodes;
    q["mc_samples"] = cfg.quadrature.mc_samples;
    q["seed"] = cfg.quadrature.seed;
    q["rel_tol"] = cfg.quadrature.rel_tol;
    q["abs_tol"] = cfg.quadrature.abs_tol;
    q["prefer_analytic"] = cfg.quadrature.prefer_analytic;
    j["quadrature"] = q;
    return j;
}

inline ExperimentConfig parse_experiment_config(const json& j) {
    detail::reject_unknown_keys(j,
                                {"command", "function", "kernel", "weight", "catalog", "params",
                                 "search", "t_schedule", "k_schedule", "n_schedule", "r_schedule",
                                 "xi", "xi_schedule", "phi_cap", "out", "seed"},
                                "config");
    if (!j.contains("command") || !j["command"].is_string())
        throw ConfigError("config: missing string field 'command'");
    ExperimentConfig cfg;
    cfg.command = parse_command(j["command"].get<std::string>());
    if (j.contains("function")) cfg.function = parse_function(j["function"]);
    if (j.contains("kernel")) cfg.kernel = parse_kernel(j["kernel"]);
    if (j.contains("weight")) cfg.weight = parse_weight(j["weight"]);
    if (j.contains("catalog")) {
        if (!j["catalog"].is_array()) throw ConfigError("config: 'catalog' must be an array");
        for (const auto& f : j["catalog"]) cfg.catalog.push_back(parse_function(f));
    }
    if (j.contains("params")) cfg.params = parse_params(j["params"]);
    if (j.contains("search")) cfg.search = parse_search(j["search"]);
    if (j.contains("t_schedule")) cfg.t_schedule = detail::parse_schedule(j["t_schedule"], "t_schedule");
    if (j.contains("k_schedule")) cfg.k_schedule = detail::parse_schedule(j["k_schedule"], "k_schedule");
    if (j.contains("n_schedule")) cfg.n_schedule = detail::parse_schedule(j["n_schedule"], "n_schedule");
    if (j.contains("r_schedule")) cfg.r_schedule = detail::parse_schedule(j["r_schedule"], "r_schedule");
    if (j.contains("xi")) cfg.xi_schedule.push_back(detail::parse_point(j["xi"], "xi"));
    if (j.contains("xi_schedule")) {
        if (!j["xi_schedule"].is_array()) throw ConfigError("config: 'xi_schedule' must be an array");
        for (const auto& x : j["xi_schedule"])
            cfg.xi_schedule.push_back(detail::parse_point(x, "xi_schedule"));
    }
    if (j.contains("phi_cap")) cfg.phi_cap = detail::require_int(j, "phi_cap", "config");
    if (j.contains("out")) {
        if (!j["out"].is_string()) throw ConfigError("config: 'out' must be a string");
        cfg.out_path = j["out"].get<std::string>();
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
            throw ConfigError("config: 'seed' must be an integer");
        cfg.search.quadrature.seed = j["seed"].get<std::uint64_t>();
    }
    return cfg;
}

inline json experiment_config_to_json(const ExperimentConfig& cfg) {
    json j;
    j["command"] = to_string(cfg.command);
    if (cfg.function) j["function"] = function_to_json(*cfg.function);
    if (cfg.kernel) j["kernel"] = kernel_to_json(*cfg.kernel);
    if (cfg.weight) j["weight"] = weight_to_json(*cfg.weight);
    if (!cfg.catalog.empty()) {
        json cat = json::array();
        for (const auto& f : cfg.catalog) cat.push_back(function_to_json(f));
        j["catalog"] = cat;
    }
    j["params"] = params_to_json(cfg.params);
    j["search"] = search_to_json(cfg.search);
    auto emit_schedule = [&](const char* key, const std::vector<double>& v) {
        if (v.empty()) return;
        json a = json::array();
        for (double x : v) a.push_back(x);
        j[key] = a;
    };
    emit_schedule("t_schedule", cfg.t_schedule);
    emit_schedule("k_schedule", cfg.k_schedule);
    emit_schedule("n_schedule", cfg.n_schedule);
    emit_schedule("r_schedule", cfg.r_schedule);
    if (!cfg.xi_schedule.empty()) {
        json a = json::array();
        for (const auto& x : cfg.xi_schedule) {
            json pt = json::array();
            for (int i = 0; i < x.dim(); ++i) pt.push_back(x[i]);
            a.push_back(pt);
        }
        j["xi_schedule"] = a;
    }
    if (cfg.command == Command::phi_bounds) j["phi_cap"] = cfg.phi_cap;
    if (!cfg.out_path.empty()) j["out"] = cfg.out_path;
    return j;
}

} // namespace morrey
