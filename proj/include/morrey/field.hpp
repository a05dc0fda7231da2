#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "morrey/ball_integrals.hpp"
#include "morrey/function_catalog.hpp"

namespace morrey {

// Type-erased integrand for the sweep machinery.  Catalog descriptors,
// truncation masks, differences and convolved functions all reduce to this.
struct Field {
    int dim = 1;
    std::function<double(const Vec&)> eval;

    // Points where |f| is unbounded; quadrature grades toward them.
    std::vector<Vec> singularities;
    // Candidate sweep centers.
    std::vector<Vec> seeds;
    // Spheres (center, radius) across which the integrand is non-smooth;
    // radial quadrature splits where rays cross them.
    std::vector<std::pair<Vec, double>> spheres;
    // 1-D discontinuity/kink coordinates (used when dim == 1).
    std::vector<double> breaks_1d;
    std::optional<double> support_radius;

    // Exact route for ∫_{B(x,r)} |f|^p restricted to the annulus [lo,hi],
    // when one exists.
    std::function<std::optional<double>(double p, const Vec& x, double r, double lo, double hi)>
        analytic;

    // Relative noise floor of eval (nonzero for quadrature-backed fields such
    // as convolutions); outer integrators must not chase accuracy below it.
    double eval_noise_rel = 0.0;

    std::string label;
};

namespace detail {

inline void collect_sphere_landmarks(const FunctionDescriptor& f,
                                     std::vector<std::pair<Vec, double>>& out) {
    switch (f.kind()) {
        case FnKind::ball_indicator: out.emplace_back(f.center(), f.param_a()); break;
        case FnKind::ball_sum_phi:
            for (int k = 2; k <= f.cap(); ++k)
                out.emplace_back(Vec::e1(f.dim(), std::ldexp(1.0, k)), 1.0);
            break;
        case FnKind::piecewise_radial_power: out.emplace_back(Vec::zero(f.dim()), 1.0); break;
        case FnKind::smooth_bump: out.emplace_back(Vec::zero(f.dim()), f.param_a()); break;
        case FnKind::gaussian: {
            // Scale markers so coarse radial passes notice the mass region.
            const double s = f.param_a();
            out.emplace_back(Vec::zero(f.dim()), s);
            out.emplace_back(Vec::zero(f.dim()), 4.0 * s);
            out.emplace_back(Vec::zero(f.dim()), 8.0 * s);
            break;
        }
        case FnKind::sum:
            for (const auto& c : f.children()) collect_sphere_landmarks(c, out);
            break;
        case FnKind::scaled: {
            std::vector<std::pair<Vec, double>> inner;
            collect_sphere_landmarks(f.children()[0], inner);
            const double t = f.param_a();
            for (auto& [c, r] : inner) out.emplace_back((1.0 / t) * c, r / t);
            break;
        }
        case FnKind::translated: {
            std::vector<std::pair<Vec, double>> inner;
            collect_sphere_landmarks(f.children()[0], inner);
            for (auto& [c, r] : inner) out.emplace_back(c + f.center(), r);
            break;
        }
        case FnKind::exterior_truncated:
        case FnKind::tail_restricted:
            collect_sphere_landmarks(f.children()[0], out);
            if (f.param_a() > 0) out.emplace_back(Vec::zero(f.dim()), f.param_a());
            break;
        default: break;
    }
}

} // namespace detail

inline Field make_field(const FunctionDescriptor& f) {
    Field F;
    F.dim = f.dim();
    F.eval = [f](const Vec& x) { return f.evaluate(x); };
    F.singularities = f.unbounded_points();
    F.seeds = f.seed_points();
    detail::collect_sphere_landmarks(f, F.spheres);
    if (f.dim() == 1) F.breaks_1d = f.breakpoints_1d();
    F.support_radius = f.support_radius();
    F.analytic = [f](double p, const Vec& x, double r, double lo, double hi) {
        return analytic_ball_integral(f, p, x, r, lo, hi);
    };
    F.label = f.name();
    return F;
}

// Field * chi_a with chi_a = chi_{R^n \ B(0,a)} for a > 0 and chi_a == 1 otherwise.
inline Field masked_field(const Field& F, double a) {
    if (a <= 0.0) return F;
    Field G = F;
    G.label = F.label + "*chi_" + std::to_string(a);
    auto inner = F.eval;
    G.eval = [inner, a](const Vec& x) { return x.norm() >= a ? inner(x) : 0.0; };
    G.singularities.clear();
    for (const auto& s : F.singularities)
        if (s.norm() >= a) G.singularities.push_back(s);
    G.spheres.emplace_back(Vec::zero(F.dim), a);
    if (F.dim == 1) {
        G.breaks_1d.push_back(-a);
        G.breaks_1d.push_back(a);
    }
    for (int i = 0; i < F.dim; ++i) {
        G.seeds.push_back(Vec::axis(F.dim, i, a));
        G.seeds.push_back(Vec::axis(F.dim, i, -a));
        G.seeds.push_back(Vec::axis(F.dim, i, a + 1.0));
        G.seeds.push_back(Vec::axis(F.dim, i, -(a + 1.0)));
    }
    if (F.analytic) {
        auto ia = F.analytic;
        G.analytic = [ia, a](double p, const Vec& x, double r, double lo, double hi) {
            return ia(p, x, r, std::max(lo, a), hi);
        };
    }
    return G;
}

// Pointwise difference A - B.  No analytic route in general.
inline Field difference_field(const Field& A, const Field& B) {
    if (A.dim != B.dim) throw DimensionMismatchError("difference_field: dimension mismatch");
    Field F;
    F.dim = A.dim;
    auto ea = A.eval, eb = B.eval;
    F.eval = [ea, eb](const Vec& x) { return ea(x) - eb(x); };
    F.singularities = A.singularities;
    F.singularities.insert(F.singularities.end(), B.singularities.begin(), B.singularities.end());
    F.seeds = A.seeds;
    F.seeds.insert(F.seeds.end(), B.seeds.begin(), B.seeds.end());
    F.spheres = A.spheres;
    F.spheres.insert(F.spheres.end(), B.spheres.begin(), B.spheres.end());
    F.breaks_1d = A.breaks_1d;
    F.breaks_1d.insert(F.breaks_1d.end(), B.breaks_1d.begin(), B.breaks_1d.end());
    if (A.support_radius && B.support_radius)
        F.support_radius = std::max(*A.support_radius, *B.support_radius);
    F.eval_noise_rel = std::max(A.eval_noise_rel, B.eval_noise_rel);
    F.label = A.label + " - " + B.label;
    return F;
}

} // namespace morrey
