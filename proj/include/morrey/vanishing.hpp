#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "morrey/morrey_core.hpp"

namespace morrey {

// Extended cutoff chi_a = chi_{R^n \ B(0,a)} for a > 0, identically 1 for a <= 0.
struct ExtendedCutoff {
    double a = 0.0;
};

struct TruncationProfile {
    double p = 1.0;
    std::vector<std::pair<double, double>> entries; // N -> A_{N,p}(f)
};

enum class Flag { holds, fails, inconclusive };

inline std::string to_string(Flag f) {
    switch (f) {
        case Flag::holds: return "holds";
        case Flag::fails: return "fails";
        case Flag::inconclusive: return "inconclusive";
    }
    return "?";
}

struct DecayFit {
    double slope = 0.0;    // least-squares slope of log2(value) against log2(scale)
    double residual = 0.0; // rms residual of the fit
    bool all_zero = false; // profile tail is exactly zero
};

struct VanishingReport {
    AverageProfile profile;
    std::vector<ProfileEntry> v0_tail;   // smallest radii
    std::vector<ProfileEntry> vinf_tail; // largest radii
    TruncationProfile truncation;
    Flag v0 = Flag::inconclusive;
    Flag vinf = Flag::inconclusive;
    Flag vstar = Flag::inconclusive;
    Flag vclass = Flag::inconclusive;
    DecayFit v0_fit, vinf_fit, vstar_fit;
    double norm_estimate_pow_p = 0.0; // max profile entry = (norm estimate)^p
};

namespace detail {

inline DecayFit fit_decay(const std::vector<std::pair<double, double>>& points) {
    DecayFit fit;
    std::vector<std::pair<double, double>> logs;
    for (const auto& [x, y] : points)
        if (y > 0 && x > 0) logs.emplace_back(std::log2(x), std::log2(y));
    if (logs.empty()) {
        fit.all_zero = true;
        return fit;
    }
    if (logs.size() == 1) return fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : logs) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = static_cast<double>(logs.size());
    const double denom = m * sxx - sx * sx;
    if (denom == 0) return fit;
    fit.slope = (m * sxy - sx * sy) / denom;
    const double b = (sy - fit.slope * sx) / m;
    double rss = 0;
    for (const auto& [x, y] : logs) {
        const double e = y - (fit.slope * x + b);
        rss += e * e;
    }
    fit.residual = std::sqrt(rss / m);
    return fit;
}

// Advisory limit classification from a finite profile tail ordered toward the
// limit.   "holds": the last three values are non-increasing and the final one
// is below 1e-2 x norm^p.  "fails": the last three sit within 10% of a
// positive constant at or above that threshold.  Anything else is
// inconclusive; numerics cannot certify a limit.
inline Flag classify_tail(const std::vector<double>& toward_limit, double norm_pow_p) {
    if (toward_limit.size() < 3) return Flag::inconclusive;
    const std::size_t m = toward_limit.size();
    const double a = toward_limit[m - 3], b = toward_limit[m - 2], c = toward_limit[m - 1];
    const double threshold = 1e-2 * norm_pow_p;
    const bool nonincreasing = a >= b && b >= c;
    if (nonincreasing && c < threshold) return Flag::holds;
    const double hi = std::max({a, b, c});
    const double lo = std::min({a, b, c});
    const double mean = (a + b + c) / 3.0;
    if (mean > 0 && (hi - lo) <= 0.1 * mean && c >= threshold) return Flag::fails;
    return Flag::inconclusive;
}

} // namespace detail

// Truncation functional A_{N,p}(f) = sup_x ∫_{B(x,1)} |f|^p chi_N dy (lower
// bound over the lattice sweep).  For a <= 0 this is the uniform Lebesgue
// norm raised to p.
inline double truncation_functional(const Field& F, double p, ExtendedCutoff N,
                                    const SearchConfig& cfg) {
    if (p < 1.0) throw RangeError("truncation_functional: p must be >= 1");
    cfg.validate();
    // Entire support inside the cutoff ball: the integrand vanishes.
    if (N.a > 0 && F.support_radius && *F.support_radius <= N.a) return 0.0;
    const Field G = masked_field(F, N.a);
    const auto centers = detail::center_candidates(G, 1.0, cfg);
    std::vector<double> values(centers.size());
    parallel_for(centers.size(), [&](std::size_t i) {
        QuadratureConfig q = cfg.quadrature;
        q.seed = derive_seed(cfg.quadrature.seed, i, 2);
        values[i] = integrate_ball(G, p, centers[i], 1.0, q).value;
    });
    double best = 0.0;
    for (double v : values) best = std::max(best, v);
    return best;
}

inline double truncation_functional(const FunctionDescriptor& f, double p, ExtendedCutoff N,
                                    const SearchConfig& cfg) {
    return truncation_functional(make_field(f), p, N, cfg);
}

struct UniformTruncationResult {
    double lhs = 0.0;            // sup over centers and dyadic r <= R0 of ∫_{B(x,r)} |f|^p chi_N
    double bound_constant = 0.0; // K_0 = explicit unit-ball covering count for B(x, R0)
};

// Quantitative content of the covering lemma: the truncated mass on balls of
// radius up to R0 is controlled by K_0 times the unit-ball truncation
// functional, uniformly in the radius.
inline UniformTruncationResult uniform_truncation_check(const Field& F, double p, double N,
                                                        double R0, const SearchConfig& cfg) {
    if (R0 <= 0) throw RangeError("uniform_truncation_check: R0 must be positive");
    cfg.validate();
    UniformTruncationResult out;
    out.bound_constant = covering_unit_ball_count(F.dim, R0);
    const Field G = masked_field(F, N);
    if (N > 0 && F.support_radius && *F.support_radius <= N) return out; // lhs = 0
    const int k_hi = static_cast<int>(std::floor(std::log2(R0)));
    for (int k = cfg.k_min; k <= k_hi; ++k) {
        const double r = std::ldexp(1.0, k);
        const auto centers = detail::center_candidates(G, r, cfg);
        std::vector<double> values(centers.size());
        parallel_for(centers.size(), [&](std::size_t i) {
            QuadratureConfig q = cfg.quadrature;
            q.seed = derive_seed(cfg.quadrature.seed, i, static_cast<std::uint64_t>(k + 8192));
            values[i] = integrate_ball(G, p, centers[i], r, q).value;
        });
        for (double v : values) out.lhs = std::max(out.lhs, v);
    }
    // R0 itself need not be dyadic; probe it as well.
    {
        const auto centers = detail::center_candidates(G, R0, cfg);
        std::vector<double> values(centers.size());
        parallel_for(centers.size(), [&](std::size_t i) {
            QuadratureConfig q = cfg.quadrature;
            q.seed = derive_seed(cfg.quadrature.seed, i, 16384);
            values[i] = integrate_ball(G, p, centers[i], R0, q).value;
        });
        for (double v : values) out.lhs = std::max(out.lhs, v);
    }
    return out;
}

inline UniformTruncationResult uniform_truncation_check(const FunctionDescriptor& f, double p,
                                                        double N, double R0,
                                                        const SearchConfig& cfg) {
    return uniform_truncation_check(make_field(f), p, N, R0, cfg);
}

inline std::vector<double> default_truncation_schedule() {
    std::vector<double> out;
    for (int e = 1; e <= 12; ++e) out.push_back(std::ldexp(1.0, e));
    return out;
}

// Full vanishing diagnosis: dyadic sup profile with small/large radius tails,
// truncation profile over the N schedule, and advisory flags.
inline VanishingReport vanishing_profiles(const Field& F, const MorreyParams& params,
                                          const SearchConfig& cfg,
                                          std::vector<double> n_schedule = {}) {
    if (params.variant != Variant::homogeneous)
        throw RangeError("vanishing_profiles: homogeneous variant required");
    if (n_schedule.empty()) n_schedule = default_truncation_schedule();
    VanishingReport rep;
    rep.profile = sweep_profile(F, params, cfg);
    rep.norm_estimate_pow_p = rep.profile.max_value();

    const auto& entries = rep.profile.entries;
    const std::size_t tail_len = std::min<std::size_t>(3, entries.size());
    rep.v0_tail.assign(entries.begin(), entries.begin() + tail_len);
    rep.vinf_tail.assign(entries.end() - tail_len, entries.end());

    // Tails ordered toward their limits (r -> 0 and r -> infinity).  A norm
    // of zero means the function vanishes a.e. and every property holds.
    std::vector<double> v0_toward, vinf_toward;
    for (auto it = rep.v0_tail.rbegin(); it != rep.v0_tail.rend(); ++it) v0_toward.push_back(it->value);
    for (const auto& e : rep.vinf_tail) vinf_toward.push_back(e.value);
    if (rep.norm_estimate_pow_p == 0.0) {
        rep.v0 = rep.vinf = rep.vstar = rep.vclass = Flag::holds;
        rep.truncation.p = params.p;
        for (double N : n_schedule) rep.truncation.entries.emplace_back(N, 0.0);
        return rep;
    }
    rep.v0 = detail::classify_tail(v0_toward, rep.norm_estimate_pow_p);
    rep.vinf = detail::classify_tail(vinf_toward, rep.norm_estimate_pow_p);

    rep.truncation.p = params.p;
    for (double N : n_schedule)
        rep.truncation.entries.emplace_back(N, truncation_functional(F, params.p, {N}, cfg));
    std::vector<double> vstar_toward;
    const std::size_t tcount = rep.truncation.entries.size();
    for (std::size_t i = tcount >= 3 ? tcount - 3 : 0; i < tcount; ++i)
        vstar_toward.push_back(rep.truncation.entries[i].second);
    rep.vstar = detail::classify_tail(vstar_toward, rep.norm_estimate_pow_p);

    {
        std::vector<std::pair<double, double>> pts;
        const std::size_t w = std::min<std::size_t>(8, entries.size());
        for (std::size_t i = 0; i < w; ++i) pts.emplace_back(entries[i].radius, entries[i].value);
        rep.v0_fit = detail::fit_decay(pts);
        pts.clear();
        for (std::size_t i = entries.size() - w; i < entries.size(); ++i)
            pts.emplace_back(entries[i].radius, entries[i].value);
        rep.vinf_fit = detail::fit_decay(pts);
        rep.vstar_fit = detail::fit_decay(rep.truncation.entries);
    }

    if (rep.v0 == Flag::holds && rep.vinf == Flag::holds && rep.vstar == Flag::holds)
        rep.vclass = Flag::holds;
    else if (rep.v0 == Flag::fails || rep.vinf == Flag::fails || rep.vstar == Flag::fails)
        rep.vclass = Flag::fails;
    else
        rep.vclass = Flag::inconclusive;
    return rep;
}

inline VanishingReport vanishing_profiles(const FunctionDescriptor& f, const MorreyParams& params,
                                          const SearchConfig& cfg,
                                          std::vector<double> n_schedule = {}) {
    return vanishing_profiles(make_field(f), params, cfg, std::move(n_schedule));
}

struct PhiBoundResult {
    double sup_estimate = 0.0; // lower bound of sup_x M_{p,lambda}(phi; x, r)
    double bound = 0.0;        // log(4r) / r^lambda
    Vec argmax;
};

// Probes the counterexample function phi against the large-radius envelope
// log(4r)/r^lambda.  Requires r > 1 and a cap comfortably beyond the probe.
inline PhiBoundResult phi_bound_check(int K, const MorreyParams& params, double r,
                                      const SearchConfig& cfg) {
    params.validate();
    if (params.lambda <= 0) throw RangeError("phi_bound_check: lambda must be positive");
    if (r <= 1.0) throw RangeError("phi_bound_check: r must exceed 1");
    if (std::ldexp(1.0, K) < 2.0 * r)
        throw ConfigError("phi_bound_check: ball_sum_phi cap 2^K must exceed the probe range");
    const auto F = make_field(FunctionDescriptor::ball_sum_phi(K, params.n));
    const auto centers = detail::center_candidates(F, r, cfg);
    std::vector<double> values(centers.size());
    parallel_for(centers.size(), [&](std::size_t i) {
        QuadratureConfig q = cfg.quadrature;
        q.seed = derive_seed(cfg.quadrature.seed, i, 3);
        values[i] = integrate_ball(F, params.p, centers[i], r, q).value;
    });
    PhiBoundResult out;
    out.bound = std::log(4.0 * r) / std::pow(r, params.lambda);
    out.argmax = Vec::zero(params.n);
    bool any = false;
    for (std::size_t i = 0; i < centers.size(); ++i) {
        const double v = std::pow(r, -params.lambda) * values[i];
        if (!any || v > out.sup_estimate) {
            out.sup_estimate = v;
            out.argmax = centers[i];
            any = true;
        } else if (v == out.sup_estimate && lex_less(centers[i], out.argmax)) {
            out.argmax = centers[i];
        }
    }
    return out;
}

} // namespace morrey
