#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "morrey/ball_quadrature.hpp"

namespace morrey {

// ---- parallel sweep helper -------------------------------------------------

// Worker count: MORREY_THREADS caps it, hardware concurrency otherwise.
inline int max_threads() {
    static const int cached = [] {
        if (const char* e = std::getenv("MORREY_THREADS")) {
            const int k = std::atoi(e);
            if (k >= 1) return k;
        }
        const unsigned h = std::thread::hardware_concurrency();
        return h ? static_cast<int>(h) : 4;
    }();
    return cached;
}

// Runs fn(i) for i in [0, count).  Each index writes only its own slot in the
// caller's output, so results are identical under any scheduling.
template <class Fn>
inline void parallel_for(std::size_t count, const Fn& fn) {
    const int workers = static_cast<int>(std::min<std::size_t>(max_threads(), count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error = nullptr;
    std::mutex err_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

// ---- parameters and configs -------------------------------------------------

enum class Variant { homogeneous, inhomogeneous };

inline std::string to_string(Variant v) {
    return v == Variant::homogeneous ? "homogeneous" : "inhomogeneous";
}

struct MorreyParams {
    int n = 1;
    double p = 1.0;
    double lambda = 0.0;
    Variant variant = Variant::homogeneous;

    void validate() const {
        if (n < 1 || n > 3) throw RangeError("MorreyParams: n must be 1, 2 or 3");
        if (p < 1.0) throw RangeError("MorreyParams: p must be >= 1");
        if (lambda < 0.0 || lambda >= n) throw RangeError("MorreyParams: lambda must lie in [0, n)");
    }
};

enum class CenterStrategy { singularity_seeded_lattice };

// Search space for the sup over centers and dyadic radii r = 2^k.  Centers
// are the field's seed points, short per-radius stencils around them, and a
// per-radius axis-aligned grid whose spacing scales with the radius (shifting
// a center by less than r costs at most the documented 2^lambda factor).
struct SearchConfig {
    int k_min = -20;
    int k_max = 20;
    CenterStrategy center_strategy = CenterStrategy::singularity_seeded_lattice;
    double lattice_spacing = 1.0; // minimum grid spacing
    int max_grid_per_axis = 17;   // cap on per-radius grid resolution
    QuadratureConfig quadrature;

    void validate() const {
        if (k_min > k_max) throw RangeError("SearchConfig: k_min must be <= k_max");
        if (lattice_spacing <= 0) throw RangeError("SearchConfig: lattice_spacing must be positive");
        if (max_grid_per_axis < 1) throw RangeError("SearchConfig: max_grid_per_axis must be >= 1");
    }
};

struct ProfileEntry {
    int k = 0;
    double radius = 0.0;
    double value = 0.0; // sup estimate of the Morrey average at this radius
    Vec argmax;
};

struct AverageProfile {
    MorreyParams params;
    std::vector<ProfileEntry> entries;

    double max_value() const {
        double m = 0.0;
        for (const auto& e : entries) m = std::max(m, e.value);
        return m;
    }
    // Max-value entry; ties resolved toward the smaller radius.
    const ProfileEntry* argmax_entry() const {
        const ProfileEntry* best = nullptr;
        for (const auto& e : entries)
            if (!best || e.value > best->value) best = &e;
        return best;
    }
};

// ---- center candidates -------------------------------------------------------

namespace detail {

inline std::vector<Vec> center_candidates(const Field& F, double r, const SearchConfig& cfg) {
    std::vector<Vec> out = F.seeds;
    const int n = F.dim;
    // Stencil offsets around each seed at the probing scale.
    static constexpr double mults[] = {0.5, 1.0, 1.5, 2.0};
    const size_t seed_count = out.size();
    for (size_t s = 0; s < seed_count; ++s)
        for (int i = 0; i < n; ++i)
            for (double m : mults) {
                out.push_back(out[s] + Vec::axis(n, i, m * r));
                out.push_back(out[s] + Vec::axis(n, i, -m * r));
            }
    // Per-radius grid.
    double focus = 4.0;
    for (const auto& s : F.seeds) focus = std::max(focus, s.norm() + 2.0);
    if (F.support_radius) focus = std::max(focus, *F.support_radius + 1.0);
    const double extent = std::min(focus + 2.0 * r, std::ldexp(1.0, cfg.k_max + 1));
    double h = std::max(cfg.lattice_spacing, r / 2.0);
    const int half_axis = cfg.max_grid_per_axis / 2;
    if (extent / h > half_axis) h = extent / half_axis;
    const int m = static_cast<int>(std::floor(extent / h));
    if (n == 1) {
        for (int i = -m; i <= m; ++i) out.push_back(Vec{i * h});
    } else if (n == 2) {
        for (int i = -m; i <= m; ++i)
            for (int j = -m; j <= m; ++j) out.push_back(Vec{i * h, j * h});
    } else {
        for (int i = -m; i <= m; ++i)
            for (int j = -m; j <= m; ++j)
                for (int k = -m; k <= m; ++k) out.push_back(Vec{i * h, j * h, k * h});
    }
    std::sort(out.begin(), out.end(), [](const Vec& a, const Vec& b) { return lex_less(a, b); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace detail

// ---- core operations ----------------------------------------------------------

// Morrey average M_{p,lambda}(f; x, r) = r^{-lambda} ∫_{B(x,r)} |f|^p dy.
inline double ball_average(const Field& F, const MorreyParams& params, const Vec& x, double r,
                           const QuadratureConfig& q) {
    params.validate();
    if (r <= 0) throw RangeError("ball_average: radius must be positive");
    if (params.variant == Variant::inhomogeneous && r > 1.0)
        throw RangeError("ball_average: inhomogeneous variant restricts radii to (0,1]");
    if (F.dim != params.n) throw DimensionMismatchError("ball_average: dimension mismatch");
    const auto integral = integrate_ball(F, params.p, x, r, q);
    return std::pow(r, -params.lambda) * integral.value;
}

inline double ball_average(const FunctionDescriptor& f, const MorreyParams& params, const Vec& x,
                           double r, const QuadratureConfig& q) {
    return ball_average(make_field(f), params, x, r, q);
}

// Sup profile over dyadic radii: entry k holds the estimated
// sup_x M_{p,lambda}(f; x, 2^k) together with the maximizing center.
inline AverageProfile sweep_profile(const Field& F, const MorreyParams& params,
                                    const SearchConfig& cfg) {
    params.validate();
    cfg.validate();
    if (F.dim != params.n) throw DimensionMismatchError("sweep_profile: dimension mismatch");
    const int k_hi = params.variant == Variant::inhomogeneous ? std::min(cfg.k_max, 0) : cfg.k_max;
    AverageProfile profile;
    profile.params = params;
    for (int k = cfg.k_min; k <= k_hi; ++k) {
        const double r = std::ldexp(1.0, k);
        const auto centers = detail::center_candidates(F, r, cfg);
        std::vector<double> values(centers.size());
        parallel_for(centers.size(), [&](std::size_t i) {
            QuadratureConfig q = cfg.quadrature;
            q.seed = derive_seed(cfg.quadrature.seed, i, static_cast<std::uint64_t>(k + 4096));
            values[i] = integrate_ball(F, params.p, centers[i], r, q).value;
        });
        ProfileEntry entry;
        entry.k = k;
        entry.radius = r;
        entry.value = 0.0;
        entry.argmax = Vec::zero(params.n);
        bool any = false;
        for (std::size_t i = 0; i < centers.size(); ++i) {
            const double v = std::pow(r, -params.lambda) * values[i];
            if (!any || v > entry.value) {
                entry.value = v;
                entry.argmax = centers[i];
                any = true;
            } else if (v == entry.value && lex_less(centers[i], entry.argmax)) {
                // Ties break toward the lexicographically smaller center.
                entry.argmax = centers[i];
            }
        }
        profile.entries.push_back(entry);
    }
    return profile;
}

struct NormResult {
    double estimate = 0.0; // certified lower bound of the Morrey norm
    AverageProfile profile;
};

// Morrey norm estimate: (max over dyadic profile entries)^{1/p}.  A lower
// bound of the true norm; the radius discretization alone loses at most the
// factor 2^{lambda/p}.
inline NormResult morrey_norm(const Field& F, const MorreyParams& params, const SearchConfig& cfg) {
    NormResult out;
    out.profile = sweep_profile(F, params, cfg);
    out.estimate = std::pow(out.profile.max_value(), 1.0 / params.p);
    return out;
}

inline NormResult morrey_norm(const FunctionDescriptor& f, const MorreyParams& params,
                              const SearchConfig& cfg) {
    return morrey_norm(make_field(f), params, cfg);
}

// Uniform Lebesgue norm: sup over centers of ||f||_{L^p(B(x,1))}.
inline double uniform_lebesgue_norm(const Field& F, int n, double p, const SearchConfig& cfg) {
    if (p < 1.0) throw RangeError("uniform_lebesgue_norm: p must be >= 1");
    if (F.dim != n) throw DimensionMismatchError("uniform_lebesgue_norm: dimension mismatch");
    cfg.validate();
    const auto centers = detail::center_candidates(F, 1.0, cfg);
    std::vector<double> values(centers.size());
    parallel_for(centers.size(), [&](std::size_t i) {
        QuadratureConfig q = cfg.quadrature;
        q.seed = derive_seed(cfg.quadrature.seed, i, 1);
        values[i] = integrate_ball(F, p, centers[i], 1.0, q).value;
    });
    double best = 0.0;
    for (double v : values) best = std::max(best, v);
    return std::pow(best, 1.0 / p);
}

inline double uniform_lebesgue_norm(const FunctionDescriptor& f, int n, double p,
                                    const SearchConfig& cfg) {
    return uniform_lebesgue_norm(make_field(f), n, p, cfg);
}

// Parameter condition for the Hölder embedding L^{q,mu} into L^{p,lambda}:
// equality of (lambda-n)/p and (mu-n)/q on infinite-measure domains, <= on
// finite ones.
inline bool holder_embedding_params(double p, double lambda, double q, double mu, int n,
                                    bool domain_finite) {
    if (p > q) throw ParameterOrderError("holder_embedding_params: requires p <= q");
    if (p < 1.0) throw RangeError("holder_embedding_params: p must be >= 1");
    if (lambda < 0 || lambda > n || mu < 0 || mu > n)
        throw RangeError("holder_embedding_params: lambda, mu must lie in [0, n]");
    const double left = (lambda - n) / p;
    const double right = (mu - n) / q;
    const double tol = 1e-12 * std::max({1.0, std::abs(left), std::abs(right)});
    if (domain_finite) return left <= right + tol;
    return std::abs(left - right) <= tol;
}

struct ScalingCheck {
    double lhs = 0.0; // ||f(t .)||
    double rhs = 0.0; // t^{(lambda-n)/p} ||f||
};

// Homogeneity of the norm under dilation f -> f(t .).
inline ScalingCheck scaling_check(const FunctionDescriptor& f, const MorreyParams& params, double t,
                                  const SearchConfig& cfg) {
    if (params.variant != Variant::homogeneous)
        throw RangeError("scaling_check: homogeneous variant required");
    if (t <= 0) throw RangeError("scaling_check: t must be positive");
    ScalingCheck out;
    out.lhs = morrey_norm(FunctionDescriptor::scaled(f, t), params, cfg).estimate;
    const double base = morrey_norm(f, params, cfg).estimate;
    out.rhs = std::pow(t, (params.lambda - params.n) / params.p) * base;
    return out;
}

} // namespace morrey
