#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "morrey/morrey_core.hpp"

namespace morrey {

// Radial weights of the embedding theorem.  All satisfy w(t) ~ 1 on [0,1)
// with the two-sided constants exposed below.
class WeightDescriptor {
public:
    enum class Kind { power, plain_power, power_log };

    // (1 + |x|^2)^{alpha/2}
    static WeightDescriptor power(double alpha) {
        WeightDescriptor w;
        w.kind_ = Kind::power;
        w.alpha_ = alpha;
        return w;
    }
    // (1 + |x|)^{alpha}
    static WeightDescriptor plain_power(double alpha) {
        WeightDescriptor w;
        w.kind_ = Kind::plain_power;
        w.alpha_ = alpha;
        return w;
    }
    // (1 + |x|)^{-gamma/p} ln^{-beta}(e + |x|)
    static WeightDescriptor power_log(double gamma, double p, double beta) {
        if (p < 1.0) throw RangeError("power_log weight: p must be >= 1");
        WeightDescriptor w;
        w.kind_ = Kind::power_log;
        w.gamma_ = gamma;
        w.p_ = p;
        w.beta_ = beta;
        w.alpha_ = -gamma / p;
        return w;
    }

    Kind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    double gamma() const { return gamma_; }
    double beta() const { return beta_; }
    double p_ref() const { return p_; }

    double operator()(double t) const {
        switch (kind_) {
            case Kind::power: return std::pow(1.0 + t * t, 0.5 * alpha_);
            case Kind::plain_power: return std::pow(1.0 + t, alpha_);
            case Kind::power_log:
                return std::pow(1.0 + t, -gamma_ / p_) *
                       std::pow(std::log(std::numbers::e + t), -beta_);
        }
        return 1.0;
    }

    // w(t) ~ C t^{alpha} ln^{-log_exponent}(t) as t -> infinity.
    double tail_exponent() const { return alpha_; }
    double tail_log_exponent() const { return kind_ == Kind::power_log ? beta_ : 0.0; }

    // Two-sided constants for the w ~ 1 hypothesis on [0,1): the weights are
    // monotone there, so the endpoint values bound w exactly.
    std::pair<double, double> unit_interval_bounds() const {
        const double a = (*this)(0.0), b = (*this)(1.0);
        return {std::min(a, b), std::max(a, b)};
    }

    std::string name() const {
        switch (kind_) {
            case Kind::power: return "power(alpha=" + std::to_string(alpha_) + ")";
            case Kind::plain_power: return "plain_power(alpha=" + std::to_string(alpha_) + ")";
            case Kind::power_log:
                return "power_log(gamma=" + std::to_string(gamma_) + ",p=" + std::to_string(p_) +
                       ",beta=" + std::to_string(beta_) + ")";
        }
        return "?";
    }

private:
    Kind kind_ = Kind::power;
    double alpha_ = 0.0;
    double gamma_ = 0.0;
    double beta_ = 0.0;
    double p_ = 1.0;
};

struct AlmostDecreasingResult {
    bool holds = false;
    double worst_ratio = 0.0; // max over grid pairs s >= t of g(s)/g(t)
};

inline std::vector<double> default_weight_grid() {
    std::vector<double> grid;
    for (double t = 1.0; t <= 65536.0; t *= std::sqrt(2.0)) grid.push_back(t);
    return grid;
}

// Tests whether g(t) = w(t)^p t^gamma is almost decreasing over the grid:
// g(s) <= c g(t) for all s >= t.  worst_ratio is the smallest admissible c on
// the grid; "holds" caps it at ratio_cap since a genuinely increasing g
// produces ratios growing with the grid span.
inline AlmostDecreasingResult almost_decreasing_check(const WeightDescriptor& w, double p,
                                                      double gamma,
                                                      const std::vector<double>& grid,
                                                      double ratio_cap = 16.0) {
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (grid[i] >= grid[i + 1] || grid[i] <= 0)
            throw RangeError("almost_decreasing_check: grid must be increasing and positive");
    AlmostDecreasingResult out;
    std::vector<double> g(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        g[i] = std::pow(w(grid[i]), p) * std::pow(grid[i], gamma);
    double running_min = std::numeric_limits<double>::infinity();
    out.worst_ratio = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        running_min = std::min(running_min, g[i]);
        if (running_min > 0) out.worst_ratio = std::max(out.worst_ratio, g[i] / running_min);
    }
    out.holds = out.worst_ratio <= ratio_cap;
    return out;
}

struct IntegralConditionResult {
    bool finite = false;
    double value = 0.0; // quadrature over [1, T] plus analytic tail estimate
};

// The tail integral ∫_1^∞ w(t)^p t^{gamma-1} dt.  Finiteness is decided by
// the tail exponents, not by quadrature growth.
inline IntegralConditionResult integral_condition(const WeightDescriptor& w, double p,
                                                  double gamma, double T = 65536.0) {
    if (p < 1.0) throw RangeError("integral_condition: p must be >= 1");
    if (gamma <= 0) throw RangeError("integral_condition: gamma must be positive");
    IntegralConditionResult out;
    const double E = w.tail_exponent() * p + gamma - 1.0;
    const double L = w.tail_log_exponent() * p;
    out.finite = (E < -1.0) || (E == -1.0 && L > 1.0);
    if (!out.finite) {
        out.value = std::numeric_limits<double>::infinity();
        return out;
    }
    auto integrand = [&](double t) { return std::pow(w(t), p) * std::pow(t, gamma - 1.0); };
    const auto main = integrate_adaptive(integrand, 1.0, T, 1e-11, 1e-300, 2000);
    double tail = 0.0;
    const double aT = integrand(T);
    if (E < -1.0)
        tail = aT * T / (-E - 1.0);
    else
        tail = aT * T * std::log(std::numbers::e + T) / (L - 1.0);
    out.value = main.value + tail;
    return out;
}

struct WeightedNormResult {
    double value = 0.0; // (main + tail)^{1/p}
    double main = 0.0;  // ∫_{B(0,Rmax)} |f|^p w^p
    double tail = 0.0;  // analytic bound on the remainder
};

namespace detail {

struct TailBehavior {
    enum class Kind { compact, rapid, power } kind = Kind::compact;
    double exponent = 0.0;
};

inline TailBehavior tail_behavior(const FunctionDescriptor& f) {
    if (f.support_radius()) return {TailBehavior::Kind::compact, 0.0};
    switch (f.kind()) {
        case FnKind::gaussian: return {TailBehavior::Kind::rapid, 0.0};
        case FnKind::constant: return {TailBehavior::Kind::power, 0.0};
        case FnKind::radial_power: return {TailBehavior::Kind::power, -f.param_a()};
        case FnKind::piecewise_radial_power: return {TailBehavior::Kind::power, -f.param_b()};
        case FnKind::sum: {
            TailBehavior out{TailBehavior::Kind::compact, -std::numeric_limits<double>::infinity()};
            bool any_power = false, any_rapid = false;
            for (const auto& c : f.children()) {
                const auto tb = tail_behavior(c);
                if (tb.kind == TailBehavior::Kind::power) {
                    any_power = true;
                    out.exponent = std::max(out.exponent, tb.exponent);
                } else if (tb.kind == TailBehavior::Kind::rapid) {
                    any_rapid = true;
                }
            }
            if (any_power) return {TailBehavior::Kind::power, out.exponent};
            if (any_rapid) return {TailBehavior::Kind::rapid, 0.0};
            return {TailBehavior::Kind::compact, 0.0};
        }
        case FnKind::scaled:
        case FnKind::translated:
        case FnKind::tail_restricted: return tail_behavior(f.children()[0]);
        default: return {TailBehavior::Kind::rapid, 0.0};
    }
}

} // namespace detail

// Weighted Lebesgue norm ||w f||_p computed over B(0, Rmax) with an analytic
// tail bound for the remainder.  Throws DivergentError when the tail
// exponents make the integral infinite.
inline WeightedNormResult weighted_norm(const FunctionDescriptor& f, const WeightDescriptor& w,
                                        double p, int n, const QuadratureConfig& q,
                                        double Rmax = 65536.0) {
    if (p < 1.0) throw RangeError("weighted_norm: p must be >= 1");
    if (f.dim() != n) throw DimensionMismatchError("weighted_norm: dimension mismatch");
    WeightedNormResult out;

    const auto tb = detail::tail_behavior(f);
    if (tb.kind == detail::TailBehavior::Kind::power) {
        const double E = tb.exponent * p + w.tail_exponent() * p + n - 1.0;
        const double L = w.tail_log_exponent() * p;
        if (E > -1.0 || (E == -1.0 && L <= 1.0))
            throw DivergentError("weighted_norm: tail exponent " + std::to_string(E) +
                                 " makes the weighted integral diverge");
    }

    if (f.is_radial_about_origin()) {
        auto rp = f.radial_profile();
        const double e0 = rp->exponent_at_zero;
        if (p * e0 <= -double(n))
            throw DivergentError("weighted_norm: integrand diverges at the origin");
        auto integrand = [&](double s) {
            return std::pow(std::abs(rp->value(s)), p) * std::pow(w(s), p) * std::pow(s, n - 1);
        };
        std::vector<double> singular;
        if (e0 * p + n - 1 < 0) singular.push_back(0.0);
        const double upper = f.support_radius() ? std::min(*f.support_radius(), Rmax) : Rmax;
        out.main = unit_sphere_area(n) *
                   integrate_with_breaks(integrand, 0.0, upper, rp->breaks, singular, 1e-11, 1e-300, 2000)
                       .value;
        if (!f.support_radius() || *f.support_radius() > Rmax) {
            const double aT = unit_sphere_area(n) * integrand(Rmax);
            if (tb.kind == detail::TailBehavior::Kind::power) {
                const double E = tb.exponent * p + w.tail_exponent() * p + n - 1.0;
                const double L = w.tail_log_exponent() * p;
                out.tail = (E < -1.0) ? aT * Rmax / (-E - 1.0)
                                      : aT * Rmax * std::log(std::numbers::e + Rmax) / (L - 1.0);
            } else {
                // Rapid decay: one more scale length bounds the remainder.
                out.tail = aT * Rmax;
            }
        }
        out.value = std::pow(out.main + out.tail, 1.0 / p);
        return out;
    }

    if (auto balls = f.indicator_balls()) {
        // |f|^p = f; integrate w^p ball by ball.
        Field wf;
        wf.dim = n;
        const WeightDescriptor wcopy = w;
        wf.eval = [wcopy](const Vec& y) { return wcopy(y.norm()); };
        wf.label = "weight";
        for (const auto& [c, rho] : *balls) {
            const double part = integrate_ball(wf, p, c, rho, q).value;
            if (c.norm() > Rmax)
                out.tail += part;
            else
                out.main += part;
        }
        out.value = std::pow(out.main + out.tail, 1.0 / p);
        return out;
    }

    if (auto sup = f.support_radius()) {
        Field G = make_field(f);
        auto inner = G.eval;
        const WeightDescriptor wcopy = w;
        G.eval = [inner, wcopy](const Vec& y) { return inner(y) * wcopy(y.norm()); };
        G.analytic = nullptr;
        G.label = "weighted " + G.label;
        out.main = integrate_ball(G, p, Vec::zero(n), std::min(*sup, Rmax) + 1.0, q).value;
        out.value = std::pow(out.main, 1.0 / p);
        return out;
    }
    throw RangeError("weighted_norm: no tail bound available for descriptor " + f.name());
}

struct EmbeddingScanRow {
    std::string fn;
    double weighted = 0.0;
    double morrey = 0.0;
    double ratio = 0.0;
    bool skipped = false; // norm-zero entries are reported but not ranked
};

struct EmbeddingScan {
    std::vector<EmbeddingScanRow> rows;
    double max_ratio = 0.0;
    double gamma = 0.0;
};

// Empirical embedding constants: ratio of weighted to Morrey norm across the
// catalog.  gamma is lambda for the homogeneous variant and n otherwise.
inline EmbeddingScan embedding_scan(const std::vector<FunctionDescriptor>& catalog,
                                    const WeightDescriptor& w, const MorreyParams& params,
                                    const SearchConfig& cfg) {
    params.validate();
    EmbeddingScan out;
    out.gamma = params.variant == Variant::homogeneous ? params.lambda : double(params.n);
    const auto ad = almost_decreasing_check(w, params.p, out.gamma, default_weight_grid());
    if (!ad.holds)
        throw ConfigError("embedding_scan: weight fails the almost-decreasing hypothesis (ratio " +
                          std::to_string(ad.worst_ratio) + ")");
    const auto ic = integral_condition(w, params.p, out.gamma);
    if (!ic.finite)
        throw ConfigError("embedding_scan: weight fails the tail integral condition");
    for (const auto& f : catalog) {
        EmbeddingScanRow row;
        row.fn = f.name();
        row.morrey = morrey_norm(f, params, cfg).estimate;
        if (row.morrey <= 0.0) {
            row.skipped = true;
            out.rows.push_back(row);
            continue;
        }
        row.weighted = weighted_norm(f, w, params.p, params.n, cfg.quadrature).value;
        row.ratio = row.weighted / row.morrey;
        out.max_ratio = std::max(out.max_ratio, row.ratio);
        out.rows.push_back(row);
    }
    return out;
}

} // namespace morrey
