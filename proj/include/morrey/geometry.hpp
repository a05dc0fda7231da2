#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "morrey/errors.hpp"

namespace morrey {

// Small point/vector in R^n, n in {1,2,3}.
class Vec {
public:
    Vec() : n_(1), v_{0, 0, 0} {}

    explicit Vec(int n) : n_(n), v_{0, 0, 0} { check_dim(n); }

    Vec(std::initializer_list<double> xs) : n_(static_cast<int>(xs.size())), v_{0, 0, 0} {
        check_dim(n_);
        int i = 0;
        for (double x : xs) v_[i++] = x;
    }

    static Vec zero(int n) { return Vec(n); }

    static Vec axis(int n, int i, double s = 1.0) {
        Vec v(n);
        v.v_[i] = s;
        return v;
    }

    // s * e_1
    static Vec e1(int n, double s = 1.0) { return axis(n, 0, s); }

    int dim() const { return n_; }

    double operator[](int i) const { return v_[i]; }
    double& operator[](int i) { return v_[i]; }

    double norm2() const {
        double s = 0;
        for (int i = 0; i < n_; ++i) s += v_[i] * v_[i];
        return s;
    }
    double norm() const { return std::sqrt(norm2()); }

    bool is_zero() const {
        for (int i = 0; i < n_; ++i)
            if (v_[i] != 0.0) return false;
        return true;
    }

    friend Vec operator+(const Vec& a, const Vec& b) {
        Vec r(a.n_);
        for (int i = 0; i < a.n_; ++i) r.v_[i] = a.v_[i] + b.v_[i];
        return r;
    }
    friend Vec operator-(const Vec& a, const Vec& b) {
        Vec r(a.n_);
        for (int i = 0; i < a.n_; ++i) r.v_[i] = a.v_[i] - b.v_[i];
        return r;
    }
    friend Vec operator*(double s, const Vec& a) {
        Vec r(a.n_);
        for (int i = 0; i < a.n_; ++i) r.v_[i] = s * a.v_[i];
        return r;
    }
    friend double dot(const Vec& a, const Vec& b) {
        double s = 0;
        for (int i = 0; i < a.n_; ++i) s += a.v_[i] * b.v_[i];
        return s;
    }
    friend double distance(const Vec& a, const Vec& b) { return (a - b).norm(); }

    friend bool operator==(const Vec& a, const Vec& b) {
        if (a.n_ != b.n_) return false;
        for (int i = 0; i < a.n_; ++i)
            if (a.v_[i] != b.v_[i]) return false;
        return true;
    }

    // Lexicographic order on coordinates; used for deterministic tie-breaking.
    friend bool lex_less(const Vec& a, const Vec& b) {
        for (int i = 0; i < std::min(a.n_, b.n_); ++i) {
            if (a.v_[i] < b.v_[i]) return true;
            if (a.v_[i] > b.v_[i]) return false;
        }
        return a.n_ < b.n_;
    }

    std::string str() const {
        std::string s = "(";
        for (int i = 0; i < n_; ++i) s += (i ? "," : "") + std::to_string(v_[i]);
        return s + ")";
    }

private:
    static void check_dim(int n) {
        if (n < 1 || n > 3) throw DimensionMismatchError("dimension must be 1, 2 or 3, got " + std::to_string(n));
    }
    int n_;
    std::array<double, 3> v_;
};

// Surface measure of the unit sphere S^{n-1}.
inline double unit_sphere_area(int n) {
    switch (n) {
        case 1: return 2.0;
        case 2: return 2.0 * std::numbers::pi;
        case 3: return 4.0 * std::numbers::pi;
        default: throw DimensionMismatchError("unit_sphere_area: n out of range");
    }
}

// Volume of the unit ball in R^n.
inline double unit_ball_volume(int n) { return unit_sphere_area(n) / n; }

inline double ball_volume(int n, double r) { return unit_ball_volume(n) * std::pow(r, n); }

// Lebesgue measure of B(c1,r1) ∩ B(c2,r2) in n = 1, 2, 3.
inline double ball_intersection_volume(int n, const Vec& c1, double r1, const Vec& c2, double r2) {
    if (r1 <= 0 || r2 <= 0) return 0.0;
    const double d = distance(c1, c2);
    if (d >= r1 + r2) return 0.0;
    if (d <= std::abs(r1 - r2)) return ball_volume(n, std::min(r1, r2));
    switch (n) {
        case 1:
            return std::min(c1[0] + r1, c2[0] + r2) - std::max(c1[0] - r1, c2[0] - r2);
        case 2: {
            // Two circular segments split by the radical line.  Computing the
            // half-angles through atan2 of the half-chord keeps the result
            // stable even when the radii differ by many orders of magnitude.
            const double d1 = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
            const double d2 = d - d1;
            const double chord2 = std::max(0.0, (r1 - d1) * (r1 + d1));
            const double L = std::sqrt(chord2);
            const double seg1 = r1 * r1 * std::atan2(L, d1) - L * d1;
            const double seg2 = r2 * r2 * std::atan2(L, d2) - L * d2;
            return std::max(0.0, seg1 + seg2);
        }
        case 3: {
            const double num = (r1 + r2 - d) * (r1 + r2 - d) *
                               (d * d + 2.0 * d * (r1 + r2) - 3.0 * (r1 - r2) * (r1 - r2));
            return std::numbers::pi * num / (12.0 * d);
        }
        default:
            throw DimensionMismatchError("ball_intersection_volume: n out of range");
    }
}

// Number of unit balls, centered on an integer lattice anchored at the query
// point, whose union covers B(x,R0).  Depends only on (n, R0): counts lattice
// offsets j with |j| < R0 + 1.  Valid for n <= 3 because a unit cube cell has
// half-diagonal sqrt(n)/2 < 1.
inline int covering_unit_ball_count(int n, double R0) {
    if (R0 <= 0) throw RangeError("covering_unit_ball_count: R0 must be positive");
    const int m = static_cast<int>(std::ceil(R0 + 1.0));
    const double lim2 = (R0 + 1.0) * (R0 + 1.0);
    int count = 0;
    const int jmin = -m, jmax = m;
    auto in_range = [&](double q2) { return q2 < lim2; };
    if (n == 1) {
        for (int i = jmin; i <= jmax; ++i)
            if (in_range(double(i) * i)) ++count;
    } else if (n == 2) {
        for (int i = jmin; i <= jmax; ++i)
            for (int j = jmin; j <= jmax; ++j)
                if (in_range(double(i) * i + double(j) * j)) ++count;
    } else {
        for (int i = jmin; i <= jmax; ++i)
            for (int j = jmin; j <= jmax; ++j)
                for (int k = jmin; k <= jmax; ++k)
                    if (in_range(double(i) * i + double(j) * j + double(k) * k)) ++count;
    }
    return count;
}

} // namespace morrey
