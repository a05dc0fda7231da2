#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "morrey/geometry.hpp"

namespace morrey {

enum class FnKind {
    zero,
    constant,
    radial_power,           // |y|^{-alpha}
    piecewise_radial_power, // |y|^{-alpha} on |y|<=1, |y|^{-beta} outside
    ball_indicator,
    ball_sum_phi, // sum_{k=2..K} chi_{B(2^k e1, 1)}
    gaussian,     // normalized density, (2 pi sigma^2)^{-n/2} exp(-|y|^2/(2 sigma^2))
    smooth_bump,  // exp(-1/(1-(|y|/R)^2)) inside B(0,R), 0 outside
    sum,
    scaled,             // f(t y)
    translated,         // f(y - xi)
    exterior_truncated, // f on B(0,k), 0 outside
    tail_restricted,    // f * chi_a with chi_a = 1 outside B(0,a) (identity for a<=0)
};

struct SingularPoint {
    Vec point;
    double exponent = 0.0; // local power exponent when known (f ~ |y-pt|^exponent)
    bool unbounded = false;
};
using SingularitySet = std::vector<SingularPoint>;

// Radial reduction of a descriptor that is radial about the origin:
// f(y) = value(|y|), with breakpoints where the profile is non-smooth and the
// power exponent governing behaviour at 0.
struct RadialProfile {
    std::function<double(double)> value;
    std::vector<double> breaks;
    double exponent_at_zero = 0.0;
};

// Immutable symbolic function on R^n.  The catalog is closed: new functions
// are built only from these variants and the combinators below.
class FunctionDescriptor {
public:
    static FunctionDescriptor zero(int n) { return FunctionDescriptor(FnKind::zero, n); }

    static FunctionDescriptor constant(double c, int n) {
        FunctionDescriptor f(FnKind::constant, n);
        f.a_ = c;
        return f;
    }

    static FunctionDescriptor radial_power(double alpha, int n) {
        FunctionDescriptor f(FnKind::radial_power, n);
        f.a_ = alpha;
        return f;
    }

    static FunctionDescriptor piecewise_radial_power(double alpha, double beta, int n) {
        FunctionDescriptor f(FnKind::piecewise_radial_power, n);
        f.a_ = alpha;
        f.b_ = beta;
        return f;
    }

    static FunctionDescriptor ball_indicator(const Vec& center, double radius) {
        if (radius <= 0) throw RangeError("ball_indicator: radius must be positive");
        FunctionDescriptor f(FnKind::ball_indicator, center.dim());
        f.center_ = center;
        f.a_ = radius;
        return f;
    }

    static FunctionDescriptor ball_sum_phi(int cap, int n) {
        if (cap < 2) throw RangeError("ball_sum_phi: cap must be >= 2");
        if (cap > 60) throw RangeError("ball_sum_phi: cap too large for double-precision centers");
        FunctionDescriptor f(FnKind::ball_sum_phi, n);
        f.cap_ = cap;
        return f;
    }

    static FunctionDescriptor gaussian(double sigma, int n) {
        if (sigma <= 0) throw RangeError("gaussian: sigma must be positive");
        FunctionDescriptor f(FnKind::gaussian, n);
        f.a_ = sigma;
        return f;
    }

    static FunctionDescriptor smooth_bump(double radius, int n) {
        if (radius <= 0) throw RangeError("smooth_bump: radius must be positive");
        FunctionDescriptor f(FnKind::smooth_bump, n);
        f.a_ = radius;
        return f;
    }

    static FunctionDescriptor sum(std::vector<FunctionDescriptor> terms, int n) {
        FunctionDescriptor f(FnKind::sum, n);
        for (const auto& t : terms)
            if (t.dim() != n) throw DimensionMismatchError("sum: mixed dimensions");
        f.children_ = std::move(terms);
        return f;
    }

    static FunctionDescriptor scaled(FunctionDescriptor inner, double t) {
        if (t <= 0) throw RangeError("scaled: t must be positive");
        FunctionDescriptor f(FnKind::scaled, inner.dim());
        f.a_ = t;
        f.children_.push_back(std::move(inner));
        return f;
    }

    static FunctionDescriptor translated(FunctionDescriptor inner, const Vec& xi) {
        if (xi.dim() != inner.dim()) throw DimensionMismatchError("translated: xi dimension mismatch");
        FunctionDescriptor f(FnKind::translated, inner.dim());
        f.center_ = xi;
        f.children_.push_back(std::move(inner));
        return f;
    }

    static FunctionDescriptor exterior_truncated(FunctionDescriptor inner, double k) {
        if (k <= 0) throw RangeError("exterior_truncated: k must be positive");
        // Composing truncations keeps only the smaller cutoff.
        if (inner.kind() == FnKind::exterior_truncated) {
            const double k0 = inner.a_;
            FunctionDescriptor g = inner.children_[0];
            return exterior_truncated(std::move(g), std::min(k, k0));
        }
        FunctionDescriptor f(FnKind::exterior_truncated, inner.dim());
        f.a_ = k;
        f.children_.push_back(std::move(inner));
        return f;
    }

    static FunctionDescriptor tail_restricted(FunctionDescriptor inner, double a) {
        if (inner.kind() == FnKind::tail_restricted) {
            const double a0 = inner.a_;
            FunctionDescriptor g = inner.children_[0];
            return tail_restricted(std::move(g), std::max(a, a0));
        }
        FunctionDescriptor f(FnKind::tail_restricted, inner.dim());
        f.a_ = a;
        f.children_.push_back(std::move(inner));
        return f;
    }

    FnKind kind() const { return kind_; }
    int dim() const { return n_; }
    double param_a() const { return a_; }
    double param_b() const { return b_; }
    int cap() const { return cap_; }
    const Vec& center() const { return center_; }
    const std::vector<FunctionDescriptor>& children() const { return children_; }

    // Exact pointwise evaluation.  Throws SingularPointError on the declared
    // singular set and DimensionMismatchError on wrong-sized points.
    double evaluate(const Vec& x) const {
        if (x.dim() != n_)
            throw DimensionMismatchError("evaluate: point has dimension " + std::to_string(x.dim()) +
                                         ", function expects " + std::to_string(n_));
        return eval_impl(x);
    }

    // Declared singular set: unbounded points plus representative points of
    // discontinuity spheres.  Finite by construction.
    SingularitySet singularity_set() const {
        SingularitySet out;
        collect_singularities(out);
        return out;
    }

    // Points where |f| is unbounded (used for quadrature grading).
    std::vector<Vec> unbounded_points() const {
        std::vector<Vec> out;
        for (const auto& s : singularity_set())
            if (s.unbounded) out.push_back(s.point);
        return out;
    }

    // Candidate sweep centers: singular points, ball centers, mask spheres.
    std::vector<Vec> seed_points() const {
        std::vector<Vec> out;
        collect_seeds(out);
        out.push_back(Vec::zero(n_));
        std::sort(out.begin(), out.end(), [](const Vec& a, const Vec& b) { return lex_less(a, b); });
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    // Smallest R with supp f inside closed B(0,R), when the support is bounded.
    std::optional<double> support_radius() const {
        switch (kind_) {
            case FnKind::zero: return 0.0;
            case FnKind::ball_indicator: return center_.norm() + a_;
            case FnKind::ball_sum_phi: return std::ldexp(1.0, cap_) + 1.0;
            case FnKind::smooth_bump: return a_;
            case FnKind::sum: {
                double r = 0.0;
                for (const auto& c : children_) {
                    auto s = c.support_radius();
                    if (!s) return std::nullopt;
                    r = std::max(r, *s);
                }
                return r;
            }
            case FnKind::scaled: {
                auto s = children_[0].support_radius();
                if (!s) return std::nullopt;
                return *s / a_;
            }
            case FnKind::translated: {
                auto s = children_[0].support_radius();
                if (!s) return std::nullopt;
                return *s + center_.norm();
            }
            case FnKind::exterior_truncated: {
                auto s = children_[0].support_radius();
                return s ? std::min(*s, a_) : a_;
            }
            case FnKind::tail_restricted: {
                auto s = children_[0].support_radius();
                if (s && a_ > 0 && *s <= a_) return 0.0; // mask removes the whole support
                return s;
            }
            default: return std::nullopt;
        }
    }

    bool is_nonnegative() const {
        switch (kind_) {
            case FnKind::constant: return a_ >= 0;
            case FnKind::sum: {
                for (const auto& c : children_)
                    if (!c.is_nonnegative()) return false;
                return true;
            }
            case FnKind::scaled:
            case FnKind::translated:
            case FnKind::exterior_truncated:
            case FnKind::tail_restricted: return children_[0].is_nonnegative();
            default: return true;
        }
    }

    bool is_radial_about_origin() const {
        switch (kind_) {
            case FnKind::zero:
            case FnKind::constant:
            case FnKind::radial_power:
            case FnKind::piecewise_radial_power:
            case FnKind::gaussian:
            case FnKind::smooth_bump: return true;
            case FnKind::ball_indicator: return center_.is_zero();
            case FnKind::ball_sum_phi: return false;
            case FnKind::sum: {
                for (const auto& c : children_)
                    if (!c.is_radial_about_origin()) return false;
                return true;
            }
            case FnKind::scaled: return children_[0].is_radial_about_origin();
            case FnKind::translated:
                return center_.is_zero() && children_[0].is_radial_about_origin();
            case FnKind::exterior_truncated:
            case FnKind::tail_restricted: return children_[0].is_radial_about_origin();
        }
        return false;
    }

    // Radial reduction, available when the descriptor is radial about 0.
    std::optional<RadialProfile> radial_profile() const {
        if (!is_radial_about_origin()) return std::nullopt;
        RadialProfile rp;
        rp.breaks = radial_breaks();
        rp.exponent_at_zero = exponent_at_zero();
        // Copy by value: descriptors are cheap immutable trees.
        FunctionDescriptor self = *this;
        rp.value = [self](double s) { return self.radial_value(s); };
        return rp;
    }

    // Profile value at radius s > 0 for radial descriptors.
    double radial_value(double s) const {
        switch (kind_) {
            case FnKind::zero: return 0.0;
            case FnKind::constant: return a_;
            case FnKind::radial_power: return std::pow(s, -a_);
            case FnKind::piecewise_radial_power:
                return s <= 1.0 ? std::pow(s, -a_) : std::pow(s, -b_);
            case FnKind::gaussian: return gaussian_coeff() * std::exp(-s * s / (2.0 * a_ * a_));
            case FnKind::smooth_bump: {
                const double u = s / a_;
                return u < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0;
            }
            case FnKind::ball_indicator: return s < a_ ? 1.0 : 0.0;
            case FnKind::sum: {
                double v = 0;
                for (const auto& c : children_) v += c.radial_value(s);
                return v;
            }
            case FnKind::scaled: return children_[0].radial_value(a_ * s);
            case FnKind::translated: return children_[0].radial_value(s);
            case FnKind::exterior_truncated: return s < a_ ? children_[0].radial_value(s) : 0.0;
            case FnKind::tail_restricted:
                return (a_ <= 0.0 || s >= a_) ? children_[0].radial_value(s) : 0.0;
            default: throw Error("radial_value: descriptor is not radial");
        }
    }

    // Radii where the radial profile is non-smooth (for radial descriptors).
    std::vector<double> radial_breaks() const {
        std::vector<double> out;
        switch (kind_) {
            case FnKind::piecewise_radial_power: out.push_back(1.0); break;
            case FnKind::ball_indicator: out.push_back(a_); break;
            case FnKind::smooth_bump: out.push_back(a_); break;
            case FnKind::gaussian:
                out.push_back(a_);
                out.push_back(4.0 * a_);
                out.push_back(8.0 * a_);
                break;
            case FnKind::sum:
                for (const auto& c : children_) {
                    auto inner = c.radial_breaks();
                    out.insert(out.end(), inner.begin(), inner.end());
                }
                break;
            case FnKind::scaled: {
                for (double b : children_[0].radial_breaks()) out.push_back(b / a_);
                break;
            }
            case FnKind::translated: return children_[0].radial_breaks();
            case FnKind::exterior_truncated:
            case FnKind::tail_restricted: {
                out = children_[0].radial_breaks();
                out.push_back(a_);
                break;
            }
            default: break;
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    // Power exponent e with f ~ c |y|^e near the origin (0 when bounded there).
    double exponent_at_zero() const {
        switch (kind_) {
            case FnKind::radial_power:
            case FnKind::piecewise_radial_power: return -a_;
            case FnKind::sum: {
                double e = 0;
                for (const auto& c : children_) e = std::min(e, c.exponent_at_zero());
                return e;
            }
            case FnKind::scaled: return children_[0].exponent_at_zero();
            case FnKind::exterior_truncated: return children_[0].exponent_at_zero();
            case FnKind::tail_restricted: return a_ > 0 ? 0.0 : children_[0].exponent_at_zero();
            default: return 0.0;
        }
    }

    // 1-D coordinates (n = 1) where f is discontinuous or kinked; quadrature
    // splits intervals there.
    std::vector<double> breakpoints_1d() const {
        std::vector<double> out;
        collect_breaks_1d(out);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    // Disjoint-ball representation for 0/1-valued indicator sums, when one
    // exists: f = sum of chi_{B(c_i, r_i)} with pairwise disjoint balls.
    std::optional<std::vector<std::pair<Vec, double>>> indicator_balls() const {
        std::vector<std::pair<Vec, double>> balls;
        if (!collect_indicator_balls(balls)) return std::nullopt;
        for (size_t i = 0; i < balls.size(); ++i)
            for (size_t j = i + 1; j < balls.size(); ++j)
                if (distance(balls[i].first, balls[j].first) < balls[i].second + balls[j].second)
                    return std::nullopt;
        return balls;
    }

    std::string name() const {
        switch (kind_) {
            case FnKind::zero: return "zero";
            case FnKind::constant: return "constant(" + fmt(a_) + ")";
            case FnKind::radial_power: return "radial_power(" + fmt(a_) + ")";
            case FnKind::piecewise_radial_power:
                return "piecewise_radial(" + fmt(a_) + "," + fmt(b_) + ")";
            case FnKind::ball_indicator:
                return "ball_indicator(" + center_.str() + "," + fmt(a_) + ")";
            case FnKind::ball_sum_phi: return "ball_sum_phi(" + std::to_string(cap_) + ")";
            case FnKind::gaussian: return "gaussian(" + fmt(a_) + ")";
            case FnKind::smooth_bump: return "smooth_bump(" + fmt(a_) + ")";
            case FnKind::sum: {
                std::string s = "sum(";
                for (size_t i = 0; i < children_.size(); ++i)
                    s += (i ? "," : "") + children_[i].name();
                return s + ")";
            }
            case FnKind::scaled: return "scaled(" + children_[0].name() + "," + fmt(a_) + ")";
            case FnKind::translated:
                return "translated(" + children_[0].name() + "," + center_.str() + ")";
            case FnKind::exterior_truncated:
                return "ball_truncated(" + children_[0].name() + "," + fmt(a_) + ")";
            case FnKind::tail_restricted:
                return "tail_restricted(" + children_[0].name() + "," + fmt(a_) + ")";
        }
        return "?";
    }

private:
    FunctionDescriptor(FnKind k, int n) : kind_(k), n_(n), center_(n) {
        if (n < 1 || n > 3) throw DimensionMismatchError("dimension must be 1, 2 or 3");
    }

    static std::string fmt(double v) {
        std::string s = std::to_string(v);
        while (s.size() > 1 && s.back() == '0') s.pop_back();
        if (!s.empty() && s.back() == '.') s.pop_back();
        return s;
    }

    double gaussian_coeff() const {
        return std::pow(2.0 * std::numbers::pi * a_ * a_, -0.5 * n_);
    }

    Vec phi_center(int k) const { return Vec::e1(n_, std::ldexp(1.0, k)); }

    double eval_impl(const Vec& x) const {
        switch (kind_) {
            case FnKind::zero: return 0.0;
            case FnKind::constant: return a_;
            case FnKind::radial_power: {
                const double s = x.norm();
                if (s == 0.0) {
                    if (a_ > 0) throw SingularPointError("radial_power singular at origin");
                    return a_ == 0 ? 1.0 : 0.0;
                }
                return std::pow(s, -a_);
            }
            case FnKind::piecewise_radial_power: {
                const double s = x.norm();
                if (s == 0.0) {
                    if (a_ > 0) throw SingularPointError("piecewise_radial singular at origin");
                    return a_ == 0 ? 1.0 : 0.0;
                }
                return s <= 1.0 ? std::pow(s, -a_) : std::pow(s, -b_);
            }
            case FnKind::ball_indicator: {
                const double d = distance(x, center_);
                if (d == a_) throw_if_declared(x);
                return d < a_ ? 1.0 : 0.0;
            }
            case FnKind::ball_sum_phi: {
                // Balls are pairwise disjoint, so at most one term is 1.
                for (int k = 2; k <= cap_; ++k) {
                    const Vec c = phi_center(k);
                    const double d = distance(x, c);
                    if (d == 1.0) throw_if_declared(x);
                    if (d < 1.0) return 1.0;
                }
                return 0.0;
            }
            case FnKind::gaussian:
                return gaussian_coeff() * std::exp(-x.norm2() / (2.0 * a_ * a_));
            case FnKind::smooth_bump: {
                const double u = x.norm() / a_;
                return u < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0;
            }
            case FnKind::sum: {
                double v = 0;
                for (const auto& c : children_) v += c.eval_impl(x);
                return v;
            }
            case FnKind::scaled: return children_[0].eval_impl(a_ * x);
            case FnKind::translated: return children_[0].eval_impl(x - center_);
            case FnKind::exterior_truncated: {
                const double d = x.norm();
                if (d == a_) throw_if_declared(x);
                return d < a_ ? children_[0].eval_impl(x) : 0.0;
            }
            case FnKind::tail_restricted: {
                if (a_ <= 0.0) return children_[0].eval_impl(x);
                return x.norm() >= a_ ? children_[0].eval_impl(x) : 0.0;
            }
        }
        return 0.0;
    }

    void throw_if_declared(const Vec& x) const {
        for (const auto& s : singularity_set())
            if (s.point == x) throw SingularPointError("evaluation at declared singular point " + x.str());
    }

    void sphere_representatives(const Vec& c, double r, SingularitySet& out) const {
        for (int i = 0; i < n_; ++i) {
            out.push_back({c + Vec::axis(n_, i, r), 0.0, false});
            out.push_back({c + Vec::axis(n_, i, -r), 0.0, false});
        }
    }

    void collect_singularities(SingularitySet& out) const {
        switch (kind_) {
            case FnKind::radial_power:
            case FnKind::piecewise_radial_power:
                if (a_ > 0) out.push_back({Vec::zero(n_), -a_, true});
                break;
            case FnKind::ball_indicator: sphere_representatives(center_, a_, out); break;
            case FnKind::ball_sum_phi:
                for (int k = 2; k <= cap_; ++k) sphere_representatives(phi_center(k), 1.0, out);
                break;
            case FnKind::sum:
                for (const auto& c : children_) c.collect_singularities(out);
                break;
            case FnKind::scaled: {
                SingularitySet inner;
                children_[0].collect_singularities(inner);
                for (auto& s : inner) out.push_back({(1.0 / a_) * s.point, s.exponent, s.unbounded});
                break;
            }
            case FnKind::translated: {
                SingularitySet inner;
                children_[0].collect_singularities(inner);
                for (auto& s : inner) out.push_back({s.point + center_, s.exponent, s.unbounded});
                break;
            }
            case FnKind::exterior_truncated: {
                SingularitySet inner;
                children_[0].collect_singularities(inner);
                for (auto& s : inner)
                    if (s.point.norm() < a_) out.push_back(s);
                sphere_representatives(Vec::zero(n_), a_, out);
                break;
            }
            case FnKind::tail_restricted: {
                SingularitySet inner;
                children_[0].collect_singularities(inner);
                for (auto& s : inner)
                    if (a_ <= 0.0 || s.point.norm() >= a_) out.push_back(s);
                if (a_ > 0.0) sphere_representatives(Vec::zero(n_), a_, out);
                break;
            }
            default: break;
        }
    }

    void collect_seeds(std::vector<Vec>& out) const {
        switch (kind_) {
            case FnKind::radial_power:
            case FnKind::piecewise_radial_power:
            case FnKind::gaussian:
            case FnKind::smooth_bump:
            case FnKind::constant:
            case FnKind::zero: out.push_back(Vec::zero(n_)); break;
            case FnKind::ball_indicator: out.push_back(center_); break;
            case FnKind::ball_sum_phi:
                for (int k = 2; k <= cap_; ++k) out.push_back(phi_center(k));
                break;
            case FnKind::sum:
                for (const auto& c : children_) c.collect_seeds(out);
                break;
            case FnKind::scaled: {
                std::vector<Vec> inner;
                children_[0].collect_seeds(inner);
                for (auto& s : inner) out.push_back((1.0 / a_) * s);
                break;
            }
            case FnKind::translated: {
                std::vector<Vec> inner;
                children_[0].collect_seeds(inner);
                for (auto& s : inner) out.push_back(s + center_);
                break;
            }
            case FnKind::exterior_truncated:
            case FnKind::tail_restricted: {
                children_[0].collect_seeds(out);
                const double a = std::abs(a_);
                if (a > 0) {
                    for (int i = 0; i < n_; ++i) {
                        out.push_back(Vec::axis(n_, i, a));
                        out.push_back(Vec::axis(n_, i, -a));
                        out.push_back(Vec::axis(n_, i, a + 1.0));
                        out.push_back(Vec::axis(n_, i, -(a + 1.0)));
                    }
                }
                break;
            }
        }
    }

    void collect_breaks_1d(std::vector<double>& out) const {
        switch (kind_) {
            case FnKind::ball_indicator:
                out.push_back(center_[0] - a_);
                out.push_back(center_[0] + a_);
                break;
            case FnKind::piecewise_radial_power:
                out.push_back(-1.0);
                out.push_back(1.0);
                break;
            case FnKind::ball_sum_phi:
                for (int k = 2; k <= cap_; ++k) {
                    const double c = std::ldexp(1.0, k);
                    out.push_back(c - 1.0);
                    out.push_back(c + 1.0);
                }
                break;
            case FnKind::smooth_bump:
                out.push_back(-a_);
                out.push_back(a_);
                break;
            case FnKind::sum:
                for (const auto& c : children_) c.collect_breaks_1d(out);
                break;
            case FnKind::scaled: {
                std::vector<double> inner;
                children_[0].collect_breaks_1d(inner);
                for (double b : inner) out.push_back(b / a_);
                break;
            }
            case FnKind::translated: {
                std::vector<double> inner;
                children_[0].collect_breaks_1d(inner);
                for (double b : inner) out.push_back(b + center_[0]);
                break;
            }
            case FnKind::exterior_truncated:
            case FnKind::tail_restricted: {
                children_[0].collect_breaks_1d(out);
                out.push_back(-a_);
                out.push_back(a_);
                break;
            }
            default: break;
        }
    }

    bool collect_indicator_balls(std::vector<std::pair<Vec, double>>& out) const {
        switch (kind_) {
            case FnKind::zero: return true;
            case FnKind::ball_indicator:
                out.emplace_back(center_, a_);
                return true;
            case FnKind::ball_sum_phi:
                for (int k = 2; k <= cap_; ++k) out.emplace_back(phi_center(k), 1.0);
                return true;
            case FnKind::sum:
                for (const auto& c : children_)
                    if (!c.collect_indicator_balls(out)) return false;
                return true;
            case FnKind::translated: {
                std::vector<std::pair<Vec, double>> inner;
                if (!children_[0].collect_indicator_balls(inner)) return false;
                for (auto& [c, r] : inner) out.emplace_back(c + center_, r);
                return true;
            }
            case FnKind::scaled: {
                std::vector<std::pair<Vec, double>> inner;
                if (!children_[0].collect_indicator_balls(inner)) return false;
                for (auto& [c, r] : inner) out.emplace_back((1.0 / a_) * c, r / a_);
                return true;
            }
            default: return false;
        }
    }

    FnKind kind_;
    int n_;
    double a_ = 0.0;
    double b_ = 0.0;
    int cap_ = 0;
    Vec center_;
    std::vector<FunctionDescriptor> children_;
};

// Restriction of f to the ball B(0,k): equals f inside, 0 outside.
inline FunctionDescriptor ball_truncate(const FunctionDescriptor& f, double k) {
    return FunctionDescriptor::exterior_truncated(f, k);
}

} // namespace morrey
