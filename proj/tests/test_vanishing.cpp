#include <catch2/catch_amalgamated.hpp>

#include "morrey/vanishing.hpp"
#include "test_helpers.hpp"

using namespace morrey;
using Catch::Approx;

namespace {

SearchConfig search(int k_min, int k_max) {
    SearchConfig cfg;
    cfg.k_min = k_min;
    cfg.k_max = k_max;
    return cfg;
}

} // namespace

TEST_CASE("truncation functional of phi is the unit ball volume", "[vanishing]") {
    const auto phi = FunctionDescriptor::ball_sum_phi(40, 2);
    auto cfg = search(-4, 4);
    for (double N : {2.0, 8.0, 512.0, 4096.0})
        CHECK(truncation_functional(phi, 1.0, {N}, cfg) == Approx(M_PI).epsilon(1e-9));
}

TEST_CASE("truncation functional vanishes inside the support", "[vanishing]") {
    const auto bump = FunctionDescriptor::smooth_bump(1.5, 1);
    auto cfg = search(-4, 4);
    CHECK(truncation_functional(bump, 1.0, {2.0}, cfg) == 0.0);
    // a <= 0 reduces to the uniform Lebesgue norm raised to p.
    const double a0 = truncation_functional(bump, 1.0, {0.0}, cfg);
    const double ul = uniform_lebesgue_norm(bump, 1, 1.0, cfg);
    CHECK(a0 == Approx(ul).epsilon(1e-9));
}

TEST_CASE("truncation functional of the piecewise power matches the hand maximum", "[vanishing]") {
    // sup_x ∫_{B(x,1)} |y|^{-2} chi_8 dy in n=1 is attained at x = 9:
    // ∫_8^10 y^{-2} dy = 1/8 - 1/10 = 0.025, below the tail bound 2/8.
    const auto f = FunctionDescriptor::piecewise_radial_power(0.25, 2.0, 1);
    auto cfg = search(-4, 4);
    const double a8 = truncation_functional(f, 1.0, {8.0}, cfg);
    CHECK(a8 <= 0.25);
    CHECK(a8 == Approx(0.025).epsilon(1e-6));
}

TEST_CASE("covering constant counts unit balls on the anchored lattice", "[vanishing]") {
    CHECK(covering_unit_ball_count(1, 1.0) == 3);
    CHECK(covering_unit_ball_count(1, 2.0) == 5);
    CHECK(covering_unit_ball_count(2, 1.0) == 9);
    CHECK(covering_unit_ball_count(3, 1.0) == 27);
}

TEST_CASE("uniform truncation check", "[vanishing]") {
    auto cfg = search(-4, 4);

    // Support inside the cutoff ball: lhs is exactly zero.
    const auto chi = FunctionDescriptor::ball_indicator(Vec::zero(1), 2.0);
    const auto z = uniform_truncation_check(chi, 1.0, 8.0, 2.0, cfg);
    CHECK(z.lhs == 0.0);

    // A full unit ball of phi survives far truncations.
    const auto phi = FunctionDescriptor::ball_sum_phi(40, 2);
    const auto pr = uniform_truncation_check(phi, 1.0, 64.0, 2.0, cfg);
    CHECK(pr.lhs >= M_PI * (1.0 - 1e-9));
    CHECK(pr.bound_constant == 25.0);
    const double a = truncation_functional(phi, 1.0, {64.0}, cfg);
    CHECK(pr.lhs <= pr.bound_constant * a * (1.0 + 1e-9));

    // Piecewise power: covering bound with K0 = 3 on the line.
    const auto f = FunctionDescriptor::piecewise_radial_power(0.25, 2.0, 1);
    const auto fr = uniform_truncation_check(f, 1.0, 8.0, 1.0, cfg);
    CHECK(fr.bound_constant == 3.0);
    const double af = truncation_functional(f, 1.0, {8.0}, cfg);
    CHECK(fr.lhs <= 3.0 * af * (1.0 + 1e-9));
}

TEST_CASE("triangle-type bound for the truncation functional", "[vanishing]") {
    oracle::Rng rng(31);
    auto cfg = search(-3, 3);
    const std::vector<FunctionDescriptor> pool = {
        FunctionDescriptor::piecewise_radial_power(0.25, 2.0, 1),
        FunctionDescriptor::ball_indicator(Vec{3.0}, 1.0),
        FunctionDescriptor::gaussian(1.0, 1),
        FunctionDescriptor::smooth_bump(2.0, 1),
        FunctionDescriptor::translated(FunctionDescriptor::gaussian(0.5, 1), Vec{4.0}),
    };
    for (int i = 0; i < 8; ++i) {
        const auto& f = pool[rng.next() % pool.size()];
        const auto& g = pool[rng.next() % pool.size()];
        const double p = (i % 2) ? 2.0 : 1.0;
        const double N = std::ldexp(1.0, 1 + int(rng.next() % 3));
        const auto fg = FunctionDescriptor::sum({f, g}, 1);
        const double lhs = truncation_functional(fg, p, {N}, cfg);
        const double rhs = std::pow(2.0, p) * (truncation_functional(f, p, {N}, cfg) +
                                               truncation_functional(g, p, {N}, cfg));
        REQUIRE(lhs <= rhs * (1.0 + 1e-6) + 1e-12);
    }
}

TEST_CASE("membership table of the paper's examples", "[vanishing]") {
    // f_{0.25,2} with n=1, p=1, lambda=1/2: all three vanishing properties.
    {
        const auto f = FunctionDescriptor::piecewise_radial_power(0.25, 2.0, 1);
        const auto rep = vanishing_profiles(f, {1, 1.0, 0.5, Variant::homogeneous}, search(-32, 32));
        CHECK(rep.v0 == Flag::holds);
        CHECK(rep.vinf == Flag::holds);
        CHECK(rep.vstar == Flag::holds);
        CHECK(rep.vclass == Flag::holds);
    }
    // The limiting radial power: profile exactly constant, V0 and VInf fail.
    {
        const auto f = FunctionDescriptor::radial_power(1.0, 2);
        const auto rep = vanishing_profiles(f, {2, 1.0, 1.0, Variant::homogeneous}, search(-20, 20));
        CHECK(rep.v0 == Flag::fails);
        CHECK(rep.vinf == Flag::fails);
        CHECK(rep.vclass == Flag::fails);
        for (const auto& e : rep.profile.entries)
            REQUIRE(e.value == Approx(2.0 * M_PI).epsilon(1e-9));
    }
    // phi: vanishing at 0 and infinity but not under truncation.
    {
        const auto phi = FunctionDescriptor::ball_sum_phi(40, 2);
        const auto rep = vanishing_profiles(phi, {2, 1.0, 1.0, Variant::homogeneous}, search(-32, 32));
        CHECK(rep.v0 == Flag::holds);
        CHECK(rep.vinf == Flag::holds);
        CHECK(rep.vstar == Flag::fails);
        CHECK(rep.vclass == Flag::fails);
        for (const auto& [N, v] : rep.truncation.entries)
            REQUIRE(v == Approx(M_PI).epsilon(1e-9));
    }
}

TEST_CASE("truncation functional is non-increasing in the cutoff", "[vanishing]") {
    auto cfg = search(-3, 3);
    const std::vector<FunctionDescriptor> pool = {
        FunctionDescriptor::piecewise_radial_power(0.25, 2.0, 1),
        FunctionDescriptor::radial_power(1.0, 2),
        FunctionDescriptor::ball_sum_phi(40, 2),
        FunctionDescriptor::gaussian(1.0, 1),
        FunctionDescriptor::ball_indicator(Vec{2.0}, 1.0),
    };
    for (const auto& f : pool) {
        double prev = std::numeric_limits<double>::infinity();
        for (double N : default_truncation_schedule()) {
            const double a = truncation_functional(f, 1.0, {N}, cfg);
            REQUIRE(a <= prev * (1.0 + 1e-9) + 1e-12);
            REQUIRE(a >= 0.0);
            prev = a;
        }
    }
}

TEST_CASE("compact support forces the truncation profile to zero", "[vanishing]") {
    const auto bump = FunctionDescriptor::smooth_bump(1.0, 1);
    const auto rep = vanishing_profiles(bump, {1, 1.0, 0.5, Variant::homogeneous}, search(-24, 24));
    CHECK(rep.vstar == Flag::holds);
    for (const auto& [N, v] : rep.truncation.entries) {
        REQUIRE(N >= 2.0);
        REQUIRE(v == 0.0);
    }
}

TEST_CASE("phi bound check computes the paper envelope", "[vanishing]") {
    const MorreyParams params{2, 1.0, 1.0, Variant::homogeneous};
    auto cfg = search(-4, 4);
    {
        const auto pb = phi_bound_check(40, params, 16.0, cfg);
        CHECK(pb.bound == Approx(std::log(64.0) / 16.0).epsilon(1e-12));
        CHECK(pb.sup_estimate >= 3.0 * M_PI / 16.0 * (1.0 - 1e-9));
    }
    {
        const auto pb = phi_bound_check(40, params, 1.0001, cfg);
        CHECK(pb.bound == Approx(std::log(4.0 * 1.0001) / 1.0001).epsilon(1e-9));
        CHECK(pb.sup_estimate >= M_PI / 1.0001 * (1.0 - 1e-9));
    }
    CHECK_THROWS_AS(phi_bound_check(40, params, 1.0, cfg), RangeError);
    CHECK_THROWS_AS(phi_bound_check(8, params, 1024.0, cfg), ConfigError);
}

TEST_CASE("phi obeys the envelope with the paper's implicit constant", "[vanishing]") {
    // The displayed bound log(4r)/r^lambda carries a generic constant; with
    // balls of volume V_n and at most ~log2(3r) of them involved, the true
    // sup is below 2.2 V_n log(4r) / r^lambda.  The estimate must also decay.
    const MorreyParams params{2, 1.0, 1.0, Variant::homogeneous};
    auto cfg = search(-2, 2);
    const double cap_constant = 2.2 * unit_ball_volume(2);
    double prev = std::numeric_limits<double>::infinity();
    for (int e = 1; e <= 20; e += 1) {
        const double r = std::ldexp(1.0, e);
        const auto pb = phi_bound_check(40, params, r, cfg);
        REQUIRE(pb.sup_estimate <= cap_constant * pb.bound);
        if (e >= 5) {
            REQUIRE(pb.sup_estimate <= prev * (1.0 + 1e-9));
        }
        prev = pb.sup_estimate;
        // Far centers see at most two balls (the estimate2 regime).
        const Vec far = Vec::e1(2, 3.0 * r);
        QuadratureConfig q;
        const double far_mass =
            integrate_ball(make_field(FunctionDescriptor::ball_sum_phi(40, 2)), 1.0, far, r, q)
                .value;
        REQUIRE(far_mass <= 2.0 * M_PI * (1.0 + 1e-9));
    }
    const auto tail = phi_bound_check(40, params, std::ldexp(1.0, 20), cfg);
    CHECK(tail.sup_estimate < 1e-4);
}

TEST_CASE("small radii scale like r^{n - lambda} for phi", "[vanishing]") {
    const auto phi = FunctionDescriptor::ball_sum_phi(40, 2);
    const MorreyParams params{2, 1.0, 1.0, Variant::homogeneous};
    const auto profile = sweep_profile(make_field(phi), params, search(-8, 0));
    for (const auto& e : profile.entries) {
        // sup = V_2 r^{n-lambda} exactly: a radius-r ball inside one unit ball.
        REQUIRE(e.value == Approx(M_PI * e.radius).epsilon(1e-9));
    }
}
