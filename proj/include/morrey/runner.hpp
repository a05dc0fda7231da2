#pragma once

#include <chrono>
#include <cmath>

#include "morrey/report.hpp"

namespace morrey {

namespace detail {

// Smallest ball_sum_phi cap appearing in the descriptor tree, if any.
inline std::optional<int> min_phi_cap(const FunctionDescriptor& f) {
    if (f.kind() == FnKind::ball_sum_phi) return f.cap();
    std::optional<int> out;
    for (const auto& c : f.children()) {
        const auto inner = min_phi_cap(c);
        if (inner && (!out || *inner < *out)) out = inner;
    }
    return out;
}

inline std::string flag_rule_text() {
    return "holds: last three profile points toward the limit are non-increasing and the final "
           "one is below 1e-2 x (norm estimate)^p; fails: last three lie within 10% of a "
           "positive constant at or above that threshold; otherwise inconclusive";
}

inline std::string center_strategy_text() {
    return "singularity-seeded lattice: seed points of the descriptor, per-radius stencils "
           "around each seed, and a per-radius axis-aligned grid";
}

inline json flags_to_json(const VanishingReport& rep) {
    json f;
    f["V0"] = to_string(rep.v0);
    f["VInf"] = to_string(rep.vinf);
    f["VStar"] = to_string(rep.vstar);
    f["VClass"] = to_string(rep.vclass);
    return f;
}

inline json truncation_to_json(const TruncationProfile& t) {
    json a = json::array();
    for (const auto& [N, v] : t.entries) {
        json row;
        row["N"] = N;
        row["value"] = v;
        a.push_back(row);
    }
    return a;
}

inline json classify_results(const VanishingReport& rep) {
    json results;
    results["flags"] = flags_to_json(rep);
    results["norm_estimate_pow_p"] = rep.norm_estimate_pow_p;
    results["profile"] = profile_to_json(rep.profile);
    results["truncation"] = truncation_to_json(rep.truncation);
    results["v0_fit"] = fit_to_json(rep.v0_fit);
    results["vinf_fit"] = fit_to_json(rep.vinf_fit);
    results["vstar_fit"] = fit_to_json(rep.vstar_fit);
    return results;
}

inline json table_to_json(const ConvergenceTable& t) {
    json a = json::array();
    for (const auto& [scale, error] : t.rows) {
        json row;
        row["scale"] = scale;
        row["error"] = error;
        a.push_back(row);
    }
    return a;
}

} // namespace detail

// Validates a ball_sum_phi cap against the probe range: the largest probed
// radius must stay well inside the represented sum.
inline void validate_phi_cap(const FunctionDescriptor& f, const SearchConfig& cfg) {
    const auto cap = detail::min_phi_cap(f);
    if (cap && std::ldexp(1.0, *cap) < std::ldexp(1.0, cfg.k_max + 1))
        throw ConfigError("ball_sum_phi cap 2^" + std::to_string(*cap) +
                          " is below the probe range 2^" + std::to_string(cfg.k_max + 1) +
                          "; raise the cap or lower k_max");
}

// Executes one experiment config and assembles the machine-readable report.
inline Report run(const ExperimentConfig& cfg) {
    const auto t_start = std::chrono::steady_clock::now();
    cfg.params.validate();
    cfg.search.validate();
    if (cfg.function) validate_phi_cap(*cfg.function, cfg.search);

    auto require_function = [&]() -> const FunctionDescriptor& {
        if (!cfg.function) throw ConfigError("command requires a 'function' descriptor");
        if (cfg.function->dim() != cfg.params.n)
            throw ConfigError("function dimension does not match params.n");
        return *cfg.function;
    };
    auto require_kernel = [&]() -> const KernelDescriptor& {
        if (!cfg.kernel) throw ConfigError("command requires a 'kernel' descriptor");
        if (cfg.kernel->base().dim() != cfg.params.n)
            throw ConfigError("kernel dimension does not match params.n");
        return *cfg.kernel;
    };

    json results;
    json provenance;
    switch (cfg.command) {
        case Command::norm: {
            const auto& f = require_function();
            const auto nr = morrey_norm(f, cfg.params, cfg.search);
            results["estimate"] = nr.estimate;
            results["profile"] = detail::profile_to_json(nr.profile);
            break;
        }
        case Command::classify: {
            const auto& f = require_function();
            const auto rep = vanishing_profiles(make_field(f), cfg.params, cfg.search, cfg.n_schedule);
            results = detail::classify_results(rep);
            break;
        }
        case Command::mollify: {
            const auto& f = require_function();
            const auto& kernel = require_kernel();
            const auto schedule =
                cfg.t_schedule.empty() ? default_mollifier_schedule() : cfg.t_schedule;
            const auto table = mollifier_convergence(f, kernel, schedule, cfg.params, cfg.search);
            results["norm"] = morrey_norm(f, cfg.params, cfg.search).estimate;
            results["table"] = detail::table_to_json(table);
            results["fit"] = detail::fit_to_json(table.fit);
            provenance["kernel_mass_defect"] = kernel.mass_defect();
            break;
        }
        case Command::truncate: {
            const auto& f = require_function();
            std::vector<double> schedule = cfg.k_schedule;
            if (schedule.empty())
                for (int e = 1; e <= 10; ++e) schedule.push_back(std::ldexp(1.0, e));
            const auto table = truncation_convergence(f, schedule, cfg.params, cfg.search);
            results["norm"] = morrey_norm(f, cfg.params, cfg.search).estimate;
            results["table"] = detail::table_to_json(table);
            results["fit"] = detail::fit_to_json(table.fit);
            break;
        }
        case Command::zorko: {
            const auto& f = require_function();
            if (cfg.xi_schedule.empty())
                throw ConfigError("zorko requires 'xi' or 'xi_schedule'");
            results["norm"] = morrey_norm(f, cfg.params, cfg.search).estimate;
            json rows = json::array();
            for (const auto& xi : cfg.xi_schedule) {
                if (xi.dim() != cfg.params.n)
                    throw ConfigError("xi dimension does not match params.n");
                json row;
                row["xi"] = detail::vec_to_json(xi);
                row["xi_norm"] = xi.norm();
                row["modulus"] = zorko_modulus(f, xi, cfg.params, cfg.search);
                rows.push_back(row);
            }
            results["moduli"] = rows;
            break;
        }
        case Command::young: {
            const auto& f = require_function();
            const auto& kernel = require_kernel();
            const auto yr = young_check(f, kernel, cfg.params, cfg.search);
            results["lhs"] = yr.lhs;
            results["rhs"] = yr.rhs;
            results["kernel_mass"] = kernel.mass();
            provenance["kernel_mass_defect"] = kernel.mass_defect();
            break;
        }
        case Command::embed: {
            if (!cfg.weight) throw ConfigError("embed requires a 'weight' descriptor");
            if (cfg.catalog.empty() && cfg.function)
                throw ConfigError("embed expects the functions under 'catalog'");
            const double gamma = cfg.params.variant == Variant::homogeneous
                                     ? cfg.params.lambda
                                     : double(cfg.params.n);
            const auto ad =
                almost_decreasing_check(*cfg.weight, cfg.params.p, gamma, default_weight_grid());
            const auto ic = integral_condition(*cfg.weight, cfg.params.p, gamma);
            results["gamma"] = gamma;
            json adj;
            adj["holds"] = ad.holds;
            adj["worst_ratio"] = ad.worst_ratio;
            results["almost_decreasing"] = adj;
            json icj;
            icj["finite"] = ic.finite;
            if (ic.finite) icj["value"] = ic.value;
            results["integral_condition"] = icj;
            const auto scan = embedding_scan(cfg.catalog, *cfg.weight, cfg.params, cfg.search);
            json rows = json::array();
            for (const auto& r : scan.rows) {
                json row;
                row["fn"] = r.fn;
                row["weighted"] = r.weighted;
                row["morrey"] = r.morrey;
                row["ratio"] = r.ratio;
                row["skipped"] = r.skipped;
                rows.push_back(row);
            }
            results["rows"] = rows;
            results["max_ratio"] = scan.max_ratio;
            const auto bounds = cfg.weight->unit_interval_bounds();
            json ub;
            ub["lower"] = bounds.first;
            ub["upper"] = bounds.second;
            provenance["weight_unit_interval_bounds"] = ub;
            break;
        }
        case Command::phi_bounds: {
            std::vector<double> schedule = cfg.r_schedule;
            if (schedule.empty())
                for (int e = 1; e <= 20; ++e) schedule.push_back(std::ldexp(1.0, e));
            SearchConfig sweep_cfg = cfg.search;
            json rows = json::array();
            double empirical = 0.0;
            for (double r : schedule) {
                const auto pb = phi_bound_check(cfg.phi_cap, cfg.params, r, sweep_cfg);
                json row;
                row["r"] = r;
                row["sup_estimate"] = pb.sup_estimate;
                row["bound"] = pb.bound;
                row["argmax"] = detail::vec_to_json(pb.argmax);
                rows.push_back(row);
                if (pb.bound > 0) empirical = std::max(empirical, pb.sup_estimate / pb.bound);
            }
            results["rows"] = rows;
            results["empirical_constant"] = empirical;
            // Small-radius profile: sup is exactly V_n r^{n - lambda} here, so
            // the reported constant calibrates the r <= 1 envelope.
            const auto phi = FunctionDescriptor::ball_sum_phi(cfg.phi_cap, cfg.params.n);
            SearchConfig small = cfg.search;
            small.k_min = -8;
            small.k_max = 0;
            const auto profile = sweep_profile(make_field(phi), cfg.params, small);
            json small_rows = json::array();
            double small_c = 0.0;
            for (const auto& e : profile.entries) {
                json row;
                row["r"] = e.radius;
                row["sup_estimate"] = e.value;
                small_rows.push_back(row);
                small_c = std::max(small_c,
                                   e.value / std::pow(e.radius, cfg.params.n - cfg.params.lambda));
            }
            results["small_r"] = small_rows;
            results["small_r_constant"] = small_c;
            break;
        }
    }

    Report report;
    report.doc["tool_version"] = kToolVersion;
    report.doc["command"] = to_string(cfg.command);
    report.doc["config"] = experiment_config_to_json(cfg);
    report.doc["results"] = results;
    provenance["scheme"] = to_string(cfg.search.quadrature.scheme);
    provenance["seed"] = cfg.search.quadrature.seed;
    provenance["radius_discretization_factor"] =
        std::pow(2.0, cfg.params.lambda / cfg.params.p);
    provenance["center_strategy"] = detail::center_strategy_text();
    provenance["flag_rule"] = detail::flag_rule_text();
    provenance["estimates_are_lower_bounds"] = true;
    report.doc["provenance"] = provenance;
    const auto t_end = std::chrono::steady_clock::now();
    json timing;
    timing["wall_ms"] =
        std::chrono::duration<double, std::milli>(t_end - t_start).count();
    report.doc["timing"] = timing;
    return report;
}

} // namespace morrey
