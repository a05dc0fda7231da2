#include <catch2/catch_amalgamated.hpp>

#include "morrey/morrey_core.hpp"
#include "test_helpers.hpp"

using namespace morrey;
using Catch::Approx;

namespace {

// Brute-force oracle for ∫_{B(x,r)} |y|^{-1} dy in n = 2: polar coordinates
// around the singularity with exact angular limits.
double power_ball_oracle_2d(const Vec& x, double r) {
    const double d = x.norm();
    if (d < r) {
        auto rho = [&](double th) {
            return d * std::cos(th) + std::sqrt(r * r - d * d * std::sin(th) * std::sin(th));
        };
        return oracle::integrate(rho, 0.0, 2.0 * M_PI, 1e-12);
    }
    const double a = std::asin(std::min(1.0, r / d));
    auto chord = [&](double th) {
        const double disc = r * r - d * d * std::sin(th) * std::sin(th);
        return disc > 0 ? 2.0 * std::sqrt(disc) : 0.0;
    };
    return oracle::integrate(chord, -a, a, 1e-12);
}

SearchConfig small_search(int k_min, int k_max) {
    SearchConfig cfg;
    cfg.k_min = k_min;
    cfg.k_max = k_max;
    return cfg;
}

} // namespace

TEST_CASE("ball averages match analytic values", "[core]") {
    QuadratureConfig q;
    const MorreyParams p21{2, 1.0, 1.0, Variant::homogeneous};
    CHECK(ball_average(FunctionDescriptor::radial_power(1.0, 2), p21, Vec::zero(2), 5.0, q) ==
          Approx(2.0 * M_PI).epsilon(1e-12));

    CHECK(ball_average(FunctionDescriptor::zero(2), p21, Vec{1.0, 1.0}, 2.0, q) == 0.0);

    const MorreyParams p20{2, 1.0, 0.0, Variant::homogeneous};
    CHECK(ball_average(FunctionDescriptor::ball_indicator(Vec::zero(2), 1.0), p20, Vec::zero(2),
                       1.0, q) == Approx(M_PI));

    const MorreyParams inhom{2, 1.0, 0.0, Variant::inhomogeneous};
    CHECK_THROWS_AS(ball_average(FunctionDescriptor::zero(2), inhom, Vec::zero(2), 2.0, q),
                    RangeError);
}

TEST_CASE("morrey norm oracles", "[core]") {
    auto cfg = small_search(-10, 10);
    CHECK(morrey_norm(FunctionDescriptor::zero(1), {1, 1.0, 0.5, Variant::homogeneous}, cfg)
              .estimate == 0.0);

    // L^1 norm of the interval indicator.
    CHECK(morrey_norm(FunctionDescriptor::ball_indicator(Vec::zero(1), 1.0),
                      {1, 1.0, 0.0, Variant::homogeneous}, cfg)
              .estimate == Approx(2.0).epsilon(1e-12));

    // Brute force over centers confirms x = 0 maximizes the radial power average.
    const double r = 1.0;
    const double at_zero = power_ball_oracle_2d(Vec::zero(2), r);
    CHECK(at_zero == Approx(2.0 * M_PI * r).epsilon(1e-10));
    for (double off : {0.25, 0.6, 1.4, 3.0})
        CHECK(power_ball_oracle_2d(Vec{off, 0.0}, r) < at_zero);

    const auto nr = morrey_norm(FunctionDescriptor::radial_power(1.0, 2),
                                {2, 1.0, 1.0, Variant::homogeneous}, cfg);
    CHECK(nr.estimate == Approx(2.0 * M_PI).epsilon(1e-9));
    CHECK(nr.profile.argmax_entry()->argmax == Vec::zero(2));
}

TEST_CASE("uniform Lebesgue norm", "[core]") {
    auto cfg = small_search(-6, 6);
    CHECK(uniform_lebesgue_norm(FunctionDescriptor::constant(1.0, 1), 1, 1.0, cfg) ==
          Approx(2.0).epsilon(1e-12));
    // 2 ∫_0^1 s^{-1/2} ds = 4, maximized at the singularity.
    CHECK(uniform_lebesgue_norm(FunctionDescriptor::radial_power(0.5, 1), 1, 1.0, cfg) ==
          Approx(4.0).epsilon(1e-10));
    CHECK(uniform_lebesgue_norm(FunctionDescriptor::zero(2), 2, 2.0, cfg) == 0.0);
}

TEST_CASE("holder embedding parameter condition", "[core]") {
    CHECK(holder_embedding_params(1.0, 1.0, 2.0, 0.0, 2, false));
    CHECK(holder_embedding_params(2.0, 1.5, 2.0, 1.5, 2, false)); // identity embedding
    CHECK_FALSE(holder_embedding_params(1.0, 0.0, 2.0, 0.0, 2, false));
    CHECK(holder_embedding_params(1.0, 0.0, 2.0, 1.0, 2, true));
    CHECK_THROWS_AS(holder_embedding_params(2.0, 0.0, 1.0, 0.0, 2, false), ParameterOrderError);
}

TEST_CASE("scaling identity", "[core]") {
    auto cfg = small_search(-12, 12);
    {
        const auto sc = scaling_check(FunctionDescriptor::ball_indicator(Vec::zero(1), 1.0),
                                      {1, 1.0, 0.0, Variant::homogeneous}, 2.0, cfg);
        CHECK(sc.lhs == Approx(1.0).epsilon(1e-12));
        CHECK(sc.rhs == Approx(1.0).epsilon(1e-12));
    }
    {
        const auto sc = scaling_check(FunctionDescriptor::zero(1),
                                      {1, 1.0, 0.5, Variant::homogeneous}, 3.0, cfg);
        CHECK(sc.lhs == 0.0);
        CHECK(sc.rhs == 0.0);
    }
    {
        // f(4x) = |4x|^{-1} scales the norm by t^{(lambda-n)/p} = 1/4.
        const auto sc = scaling_check(FunctionDescriptor::radial_power(1.0, 2),
                                      {2, 1.0, 1.0, Variant::homogeneous}, 4.0, cfg);
        CHECK(sc.lhs == Approx(M_PI / 2.0).epsilon(1e-9));
        CHECK(sc.rhs == Approx(M_PI / 2.0).epsilon(1e-9));
        CHECK(sc.lhs == Approx(sc.rhs).epsilon(1e-9));
    }
}

TEST_CASE("monotone mass in the radius", "[core]") {
    oracle::Rng rng(99);
    QuadratureConfig q;
    std::vector<FunctionDescriptor> catalog1 = {
        FunctionDescriptor::piecewise_radial_power(0.25, 2.0, 1),
        FunctionDescriptor::ball_indicator(Vec{0.5}, 1.0),
        FunctionDescriptor::gaussian(1.0, 1),
        FunctionDescriptor::smooth_bump(1.0, 1),
    };
    int checked = 0;
    for (int i = 0; i < 700; ++i) {
        const auto& f = catalog1[i % catalog1.size()];
        const Field F = make_field(f);
        const Vec x{rng.uniform(-2, 2)};
        const double r1 = rng.uniform(0.05, 2.0);
        const double r2 = r1 + rng.uniform(0.01, 2.0);
        const double v1 = integrate_ball(F, 1.0, x, r1, q).value;
        const double v2 = integrate_ball(F, 1.0, x, r2, q).value;
        REQUIRE(v2 >= v1 * (1.0 - 1e-9) - 1e-12);
        ++checked;
    }
    // Analytic-path cases in n = 2 (centered powers and indicators anywhere).
    for (int i = 0; i < 300; ++i) {
        const bool power = (i % 2) == 0;
        const Field F = power ? make_field(FunctionDescriptor::radial_power(0.7, 2))
                              : make_field(FunctionDescriptor::ball_sum_phi(6, 2));
        const Vec x = power ? Vec::zero(2) : Vec{rng.uniform(-2, 20), rng.uniform(-2, 2)};
        const double r1 = rng.uniform(0.05, 4.0);
        const double r2 = r1 + rng.uniform(0.01, 4.0);
        const double v1 = integrate_ball(F, 2.0, x, r1, q).value;
        const double v2 = integrate_ball(F, 2.0, x, r2, q).value;
        REQUIRE(v2 >= v1 * (1.0 - 1e-9) - 1e-12);
        ++checked;
    }
    CHECK(checked == 1000);
}

TEST_CASE("dyadic coverage bounds the continuum of radii", "[core]") {
    oracle::Rng rng(123);
    QuadratureConfig q;
    const MorreyParams params{2, 1.0, 1.0, Variant::homogeneous};
    const Field F = make_field(FunctionDescriptor::radial_power(1.0, 2));
    const Vec x = Vec::zero(2);
    const int k_min = -6, k_max = 6;
    double dyadic_max = 0.0;
    for (int k = k_min; k <= k_max; ++k) {
        const double r = std::ldexp(1.0, k);
        dyadic_max = std::max(dyadic_max,
                              std::pow(r, -params.lambda) * integrate_ball(F, 1.0, x, r, q).value);
    }
    const double loss = std::pow(2.0, -params.lambda);
    for (int i = 0; i < 50; ++i) {
        const double r = std::pow(2.0, rng.uniform(k_min, k_max));
        const double m = std::pow(r, -params.lambda) * integrate_ball(F, 1.0, x, r, q).value;
        REQUIRE(dyadic_max >= loss * m * (1.0 - 1e-9));
    }
}

TEST_CASE("translation invariance of the norm estimate", "[core]") {
    oracle::Rng rng(5);
    auto cfg = small_search(-8, 8);
    const MorreyParams params{1, 1.0, 0.5, Variant::homogeneous};
    const auto f = FunctionDescriptor::piecewise_radial_power(0.25, 2.0, 1);
    const double base = morrey_norm(f, params, cfg).estimate;
    for (int i = 0; i < 20; ++i) {
        const Vec xi{rng.uniform(-5, 5)};
        const double shifted =
            morrey_norm(FunctionDescriptor::translated(f, xi), params, cfg).estimate;
        REQUIRE(shifted == Approx(base).epsilon(0.02));
    }
}

TEST_CASE("inhomogeneous estimates never exceed homogeneous ones", "[core]") {
    auto cfg = small_search(-6, 6);
    for (const auto& f : {FunctionDescriptor::gaussian(1.0, 1),
                          FunctionDescriptor::ball_indicator(Vec{1.5}, 0.5)}) {
        MorreyParams hom{1, 1.0, 0.5, Variant::homogeneous};
        MorreyParams inhom = hom;
        inhom.variant = Variant::inhomogeneous;
        const auto nh = morrey_norm(f, hom, cfg);
        const auto ni = morrey_norm(f, inhom, cfg);
        CHECK(ni.estimate <= nh.estimate + 1e-12);
        // Shared dyadic entries agree exactly.
        for (const auto& ei : ni.profile.entries) {
            bool found = false;
            for (const auto& eh : nh.profile.entries)
                if (eh.k == ei.k) {
                    REQUIRE(eh.value == ei.value);
                    found = true;
                }
            CHECK(found);
        }
    }
}

TEST_CASE("product rule and monte carlo agree with the analytic oracle", "[core]") {
    const std::vector<FunctionDescriptor> radial = {
        FunctionDescriptor::radial_power(0.5, 2),
        FunctionDescriptor::gaussian(1.0, 2),
        FunctionDescriptor::ball_indicator(Vec::zero(2), 1.0),
        FunctionDescriptor::smooth_bump(1.0, 2),
    };
    for (const auto& f : radial) {
        const Field F = make_field(f);
        QuadratureConfig exact;
        exact.scheme = QuadScheme::analytic_radial;
        const double truth = integrate_ball(F, 1.0, Vec::zero(2), 1.5, exact).value;

        QuadratureConfig pr;
        pr.prefer_analytic = false;
        const double prv = integrate_ball(F, 1.0, Vec::zero(2), 1.5, pr).value;
        CHECK(prv == Approx(truth).epsilon(0.01));

        QuadratureConfig mc;
        mc.scheme = QuadScheme::monte_carlo;
        mc.prefer_analytic = false;
        const auto mcr = integrate_ball(F, 1.0, Vec::zero(2), 1.5, mc);
        CHECK(std::abs(mcr.value - truth) <= 3.0 * mcr.error + 1e-12);
    }
}
