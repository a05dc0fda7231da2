#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "morrey/errors.hpp"

namespace morrey {

// 1-D adaptive Gauss-Kronrod (G7,K15) integration utilities.

struct QuadResult {
    double value = 0.0;
    double error = 0.0; // absolute error estimate
    bool converged = true;
};

namespace detail {

// Kronrod-15 abscissas (positive half) with Kronrod and embedded Gauss-7 weights.
struct GK15Row {
    double x, wg, wk;
};
inline constexpr GK15Row gk15[8] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

template <class F>
inline void gk15_step(const F& f, double a, double b, double& k15, double& err) {
    const double mid = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double f0 = f(mid);
    double g7 = gk15[0].wg * f0;
    double k = gk15[0].wk * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = h * gk15[i].x;
        const double fi = f(mid + dx) + f(mid - dx);
        g7 += gk15[i].wg * fi;
        k += gk15[i].wk * fi;
    }
    g7 *= h;
    k *= h;
    k15 = k;
    const double d = std::abs(k - g7);
    // Standard QUADPACK-style sharpened estimate.
    err = d * std::min(1.0, std::pow(200.0 * d / std::max(std::abs(k), 1e-300), 1.5));
    if (!std::isfinite(err)) err = d;
}

} // namespace detail

// Adaptive integration of f over [a,b].  max_intervals bounds the work;
// rel_tol/abs_tol control acceptance per sub-interval (scaled by length share).
template <class F>
QuadResult integrate_adaptive(const F& f, double a, double b, double rel_tol = 1e-10,
                              double abs_tol = 1e-14, int max_intervals = 512) {
    QuadResult out;
    if (a == b) return out;
    struct Seg {
        double a, b, val, err;
    };
    std::vector<Seg> stack;
    stack.reserve(64);
    double v0, e0;
    detail::gk15_step(f, a, b, v0, e0);
    stack.push_back({a, b, v0, e0});
    const double total_len = std::abs(b - a);
    double sum = 0.0, err_sum = 0.0;
    int used = 1;
    // Rough magnitude scale for relative acceptance, refreshed as we go.
    double scale = std::abs(v0);
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        const double len_share = std::abs(s.b - s.a) / total_len;
        const double tol = std::max(abs_tol * len_share, rel_tol * std::max(scale, std::abs(s.val)) * len_share);
        if (s.err <= tol || used >= max_intervals || std::abs(s.b - s.a) < 1e-15 * total_len) {
            sum += s.val;
            err_sum += s.err;
            scale = std::max(scale, std::abs(sum));
            continue;
        }
        const double mid = 0.5 * (s.a + s.b);
        double vl, el, vr, er;
        detail::gk15_step(f, s.a, mid, vl, el);
        detail::gk15_step(f, mid, s.b, vr, er);
        used += 2;
        stack.push_back({s.a, mid, vl, el});
        stack.push_back({mid, s.b, vr, er});
    }
    out.value = sum;
    out.error = err_sum;
    out.converged = err_sum <= std::max(abs_tol, rel_tol * std::abs(sum)) * 50.0 + abs_tol;
    return out;
}

// Integrate f over [a,b] with an integrable singularity at the endpoint `sing`
// (either a or b).  Substitutes the graded map s = sing +/- len*u^2, which
// clusters nodes toward the singular end.
template <class F>
QuadResult integrate_graded_endpoint(const F& f, double a, double b, bool singular_at_a,
                                     double rel_tol = 1e-10, double abs_tol = 1e-14,
                                     int max_intervals = 512) {
    const double len = b - a;
    if (len <= 0) return {};
    auto g = [&](double u) {
        const double s = singular_at_a ? a + len * u * u : b - len * u * u;
        return f(s) * 2.0 * len * u;
    };
    return integrate_adaptive(g, 0.0, 1.0, rel_tol, abs_tol, max_intervals);
}

// Integrate f over [a,b] splitting at the given breakpoints and grading at the
// given singular coordinates (points where |f| may blow up integrably).
template <class F>
QuadResult integrate_with_breaks(const F& f, double a, double b, std::vector<double> breaks,
                                 const std::vector<double>& singular, double rel_tol = 1e-10,
                                 double abs_tol = 1e-14, int max_intervals = 512) {
    if (b <= a) return {};
    for (double s : singular) breaks.push_back(s);
    breaks.push_back(a);
    breaks.push_back(b);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    QuadResult out;
    auto is_singular = [&](double x) {
        for (double s : singular)
            if (s == x) return true;
        return false;
    };
    double prev = a;
    for (double x : breaks) {
        if (x <= a || x > b) continue;
        const double lo = prev, hi = std::min(x, b);
        if (hi > lo) {
            QuadResult r;
            const bool sing_lo = is_singular(lo), sing_hi = is_singular(hi);
            if (sing_lo && !sing_hi)
                r = integrate_graded_endpoint(f, lo, hi, true, rel_tol, abs_tol, max_intervals);
            else if (sing_hi && !sing_lo)
                r = integrate_graded_endpoint(f, lo, hi, false, rel_tol, abs_tol, max_intervals);
            else if (sing_lo && sing_hi) {
                const double mid = 0.5 * (lo + hi);
                auto r1 = integrate_graded_endpoint(f, lo, mid, true, rel_tol, abs_tol, max_intervals);
                auto r2 = integrate_graded_endpoint(f, mid, hi, false, rel_tol, abs_tol, max_intervals);
                r = {r1.value + r2.value, r1.error + r2.error, r1.converged && r2.converged};
            } else
                r = integrate_adaptive(f, lo, hi, rel_tol, abs_tol, max_intervals);
            out.value += r.value;
            out.error += r.error;
            out.converged = out.converged && r.converged;
        }
        prev = hi;
    }
    return out;
}

} // namespace morrey
