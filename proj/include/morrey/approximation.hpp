#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "morrey/vanishing.hpp"

namespace morrey {

// Mollifier kernel: a Gaussian or smooth bump base with the dilation scale
// folded in, phi_t(x) = t^{-n} phi(x/t).  Normalization fixes the mass to 1.
class KernelDescriptor {
public:
    static KernelDescriptor gaussian(double sigma, int n, bool normalized = true) {
        return KernelDescriptor(FunctionDescriptor::gaussian(sigma, n), normalized);
    }
    static KernelDescriptor bump(double radius, int n, bool normalized = true) {
        return KernelDescriptor(FunctionDescriptor::smooth_bump(radius, n), normalized);
    }
    static KernelDescriptor from_base(FunctionDescriptor base, bool normalized = true) {
        return KernelDescriptor(std::move(base), normalized);
    }

    const FunctionDescriptor& base() const { return base_; }
    bool normalized() const { return normalized_; }
    double scale() const { return scale_; }

    // ||phi_t||_1; dilation preserves mass exactly.
    double mass() const { return normalized_ ? 1.0 : base_mass_; }

    // Quadrature domain radius: exact support for bumps, 8 sigma t for
    // Gaussians (the discarded mass is below 1e-14).
    double effective_support() const {
        if (base_.kind() == FnKind::smooth_bump) return base_.param_a() * scale_;
        return 8.0 * base_.param_a() * scale_;
    }

    double mass_defect() const {
        if (base_.kind() == FnKind::smooth_bump) return 0.0;
        return std::max(0.0, mass() - mass_within(effective_support()));
    }

    double eval(const Vec& x) const {
        const double tn = std::pow(scale_, -base_.dim());
        return factor_ * tn * base_.evaluate((1.0 / scale_) * x);
    }

    // ∫_{B(0,s)} phi_t dy.
    double mass_within(double s) const {
        const int n = base_.dim();
        auto rp = base_.radial_profile();
        auto g = [&](double u) { return rp->value(u) * std::pow(u, n - 1); };
        const auto res = integrate_with_breaks(g, 0.0, s / scale_, rp->breaks, {}, 1e-13, 1e-300, 2000);
        return factor_ * unit_sphere_area(n) * res.value;
    }

    // Smallest radius holding the given fraction of the kernel mass.
    double quantile_radius(double fraction) const {
        const double target = fraction * mass();
        double lo = 0.0, hi = effective_support();
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            (mass_within(mid) < target ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }

    friend KernelDescriptor dilate(const KernelDescriptor& k, double t) {
        if (t <= 0) throw RangeError("dilate: t must be positive");
        KernelDescriptor out = k;
        out.scale_ *= t;
        return out;
    }

private:
    KernelDescriptor(FunctionDescriptor base, bool normalized)
        : base_(std::move(base)), normalized_(normalized) {
        if (base_.kind() != FnKind::gaussian && base_.kind() != FnKind::smooth_bump)
            throw ConfigError("KernelDescriptor: base must be gaussian or smooth_bump");
        if (base_.kind() == FnKind::gaussian) {
            base_mass_ = 1.0; // density normalization is exact
        } else {
            const int n = base_.dim();
            auto rp = base_.radial_profile();
            auto g = [&](double s) { return rp->value(s) * std::pow(s, n - 1); };
            base_mass_ = unit_sphere_area(n) *
                         integrate_with_breaks(g, 0.0, base_.param_a(), rp->breaks, {}, 1e-13, 1e-300, 2000)
                             .value;
        }
        factor_ = normalized_ ? 1.0 / base_mass_ : 1.0;
    }

    FunctionDescriptor base_;
    bool normalized_;
    double scale_ = 1.0;
    double base_mass_ = 1.0;
    double factor_ = 1.0;
};

inline Field kernel_field(const KernelDescriptor& k) {
    Field F = make_field(k.base());
    const double t = k.scale();
    const KernelDescriptor copy = k;
    F.eval = [copy](const Vec& x) { return copy.eval(x); };
    F.singularities.clear();
    for (auto& [c, rho] : F.spheres) {
        c = t * c;
        rho *= t;
    }
    for (auto& b : F.breaks_1d) b *= t;
    F.support_radius = k.effective_support();
    F.analytic = nullptr;
    F.label = "kernel(" + k.base().name() + ",t=" + std::to_string(t) + ")";
    return F;
}

// Tolerances for the inner convolution quadrature: one order tighter than
// the requested precision, so outer sweeps can stop at their own tolerance
// without chasing inner noise.
inline QuadratureConfig convolution_inner_config(const QuadratureConfig& q) {
    QuadratureConfig inner = q;
    inner.rel_tol = std::min(1e-6, std::max(1e-8, 0.1 * q.rel_tol));
    inner.abs_tol = std::min(q.abs_tol, 1e-15);
    inner.radial_nodes = std::min(q.radial_nodes, 200);
    inner.angular_nodes = std::min(q.angular_nodes, 32);
    return inner;
}

// (f * g)(x) = ∫ g(z) f(x - z) dz over the kernel field's support ball.
inline double convolve_fields(const Field& f, const Field& g, const Vec& x,
                              const QuadratureConfig& q) {
    if (f.dim != g.dim) throw DimensionMismatchError("convolve_fields: dimension mismatch");
    if (!g.support_radius)
        throw RangeError("convolve_fields: kernel field must have bounded support");
    const double S = *g.support_radius;
    // The integrand lives on B(0,S) ∩ B(x, supp f).
    if (f.support_radius && x.norm() - *f.support_radius >= S) return 0.0;
    Field prod;
    prod.dim = f.dim;
    auto fe = f.eval, ge = g.eval;
    prod.eval = [fe, ge, x](const Vec& z) { return ge(z) * fe(x - z); };
    for (const auto& s : f.singularities) {
        const Vec zs = x - s;
        if (zs.norm() < S) prod.singularities.push_back(zs);
    }
    prod.spheres = g.spheres;
    for (const auto& [c, rho] : f.spheres) prod.spheres.emplace_back(x - c, rho);
    if (f.dim == 1) {
        prod.breaks_1d = g.breaks_1d;
        for (double b : f.breaks_1d) prod.breaks_1d.push_back(x[0] - b);
    }
    if (f.support_radius) prod.spheres.emplace_back(x, *f.support_radius);
    prod.label = "conv-integrand";
    return integrate_ball_signed(prod, Vec::zero(f.dim), S, convolution_inner_config(q));
}

inline double convolve(const FunctionDescriptor& f, const KernelDescriptor& kernel, double t,
                       const Vec& x, const QuadratureConfig& q) {
    if (t <= 0) throw RangeError("convolve: t must be positive");
    return convolve_fields(make_field(f), kernel_field(dilate(kernel, t)), x, q);
}

// f * phi_t as a sweepable field.  Pointwise values are computed on demand by
// quadrature; convolution removes the singularities of f.
inline Field convolved_field(const Field& f, const KernelDescriptor& kernel, double t,
                             const QuadratureConfig& q) {
    const KernelDescriptor kt = dilate(kernel, t);
    const Field g = kernel_field(kt);
    const double S = *g.support_radius;
    Field F;
    F.dim = f.dim;
    Field fcopy = f;
    F.eval = [fcopy, g, q](const Vec& x) { return convolve_fields(fcopy, g, x, q); };
    F.seeds = f.seeds;
    F.spheres = f.spheres;
    for (auto& [c, rho] : F.spheres) rho += S; // smearing by the kernel support
    if (f.dim == 1)
        for (double b : f.breaks_1d) {
            F.breaks_1d.push_back(b - S);
            F.breaks_1d.push_back(b + S);
        }
    if (f.support_radius) F.support_radius = *f.support_radius + S;
    F.eval_noise_rel =
        std::max(10.0 * convolution_inner_config(q).rel_tol, f.eval_noise_rel);
    F.label = f.label + " * phi_t(t=" + std::to_string(t) + ")";
    return F;
}

inline Field convolved_field(const FunctionDescriptor& f, const KernelDescriptor& kernel, double t,
                             const QuadratureConfig& q) {
    return convolved_field(make_field(f), kernel, t, q);
}

struct YoungResult {
    double lhs = 0.0; // ||f * g||_{p,lambda}
    double rhs = 0.0; // ||g||_1 ||f||_{p,lambda}
};

inline YoungResult young_check(const FunctionDescriptor& f, const KernelDescriptor& g,
                               const MorreyParams& params, const SearchConfig& cfg) {
    YoungResult out;
    out.rhs = g.mass() * morrey_norm(f, params, cfg).estimate;
    out.lhs = morrey_norm(convolved_field(f, g, 1.0, cfg.quadrature), params, cfg).estimate;
    return out;
}

// Morrey norm of tau_xi f - f.
inline double zorko_modulus(const FunctionDescriptor& f, const Vec& xi, const MorreyParams& params,
                            const SearchConfig& cfg) {
    if (xi.is_zero()) return 0.0;
    const Field diff =
        difference_field(make_field(FunctionDescriptor::translated(f, xi)), make_field(f));
    return morrey_norm(diff, params, cfg).estimate;
}

struct ConvergenceTable {
    std::vector<std::pair<double, double>> rows; // scale -> norm error
    DecayFit fit;
};

// Mollification error ||f * phi_t - f|| along a decreasing t schedule.
inline ConvergenceTable mollifier_convergence(const FunctionDescriptor& f,
                                              const KernelDescriptor& kernel,
                                              const std::vector<double>& t_schedule,
                                              const MorreyParams& params, const SearchConfig& cfg) {
    for (std::size_t i = 0; i + 1 < t_schedule.size(); ++i)
        if (t_schedule[i] <= t_schedule[i + 1] || t_schedule[i + 1] <= 0)
            throw RangeError("mollifier_convergence: t schedule must be positive and decreasing");
    ConvergenceTable table;
    const Field base = make_field(f);
    for (double t : t_schedule) {
        const Field diff = difference_field(convolved_field(base, kernel, t, cfg.quadrature), base);
        table.rows.emplace_back(t, morrey_norm(diff, params, cfg).estimate);
    }
    table.fit = detail::fit_decay(table.rows);
    return table;
}

inline std::vector<double> default_mollifier_schedule() {
    std::vector<double> out;
    for (int e = 0; e <= 6; ++e) out.push_back(std::ldexp(1.0, -e));
    return out;
}

// Vanishing reports before and after convolution with the kernel.  The
// invariance statement: a property holding before never degrades to a clean
// failure after.
inline std::pair<VanishingReport, VanishingReport> invariance_experiment(
    const FunctionDescriptor& f, const KernelDescriptor& kernel, const MorreyParams& params,
    const SearchConfig& cfg, std::vector<double> n_schedule = {}) {
    auto before = vanishing_profiles(make_field(f), params, cfg, n_schedule);
    auto after =
        vanishing_profiles(convolved_field(f, kernel, 1.0, cfg.quadrature), params, cfg, n_schedule);
    return {std::move(before), std::move(after)};
}

// Truncation error ||f - f_k|| along an increasing cutoff schedule; f - f_k
// is exactly the tail restriction of f outside B(0,k).
inline ConvergenceTable truncation_convergence(const FunctionDescriptor& f,
                                               const std::vector<double>& k_schedule,
                                               const MorreyParams& params,
                                               const SearchConfig& cfg) {
    for (std::size_t i = 0; i + 1 < k_schedule.size(); ++i)
        if (k_schedule[i] >= k_schedule[i + 1] || k_schedule[i] <= 0)
            throw RangeError("truncation_convergence: k schedule must be positive and increasing");
    ConvergenceTable table;
    for (double k : k_schedule) {
        const auto tail = FunctionDescriptor::tail_restricted(f, k);
        table.rows.emplace_back(k, morrey_norm(tail, params, cfg).estimate);
    }
    table.fit = detail::fit_decay(table.rows);
    return table;
}

} // namespace morrey
