// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line.  Run all of them with `morrey_acceptance "[acceptance]"` or a single
// criterion with e.g. `morrey_acceptance "[c4]"`.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>

#include "morrey/runner.hpp"

using namespace morrey;
using Catch::Approx;

namespace {

bool criterion_line(int id, const std::string& name, bool ok) {
    std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", id, name.c_str());
    std::fflush(stdout);
    return ok;
}

SearchConfig search(int k_min, int k_max) {
    SearchConfig cfg;
    cfg.k_min = k_min;
    cfg.k_max = k_max;
    return cfg;
}

bool roughly(double got, double want, double rel) {
    return std::abs(got - want) <= rel * std::abs(want);
}

} // namespace

TEST_CASE("C1: norm oracles", "[acceptance][c1]") {
    bool ok = true;
    const double zero =
        morrey_norm(FunctionDescriptor::zero(1), {1, 1.0, 0.5, Variant::homogeneous}, search(-8, 8))
            .estimate;
    ok &= (zero == 0.0);
    CHECK(zero == 0.0);

    const double chi = morrey_norm(FunctionDescriptor::ball_indicator(Vec::zero(1), 1.0),
                                   {1, 1.0, 0.0, Variant::homogeneous}, search(-12, 12))
                           .estimate;
    ok &= std::abs(chi - 2.0) < 1e-6;
    CHECK(chi == Approx(2.0).margin(1e-6));

    const double power = morrey_norm(FunctionDescriptor::radial_power(1.0, 2),
                                     {2, 1.0, 1.0, Variant::homogeneous}, search(-12, 12))
                             .estimate;
    ok &= roughly(power, 2.0 * M_PI, 0.01);
    CHECK(power == Approx(2.0 * M_PI).epsilon(0.01));

    CHECK(criterion_line(1, "norm oracles (0, 2, 2*pi)", ok));
}

TEST_CASE("C2: homogeneity under dilation", "[acceptance][c2]") {
    struct Case {
        FunctionDescriptor f;
        MorreyParams params;
    };
    const std::vector<Case> cases = {
        {FunctionDescriptor::ball_indicator(Vec::zero(1), 1.0), {1, 1.0, 0.0, Variant::homogeneous}},
        {FunctionDescriptor::radial_power(1.0, 2), {2, 1.0, 1.0, Variant::homogeneous}},
        {FunctionDescriptor::piecewise_radial_power(0.25, 2.0, 1),
         {1, 1.0, 0.5, Variant::homogeneous}},
        {FunctionDescriptor::gaussian(1.0, 1), {1, 1.0, 0.5, Variant::homogeneous}},
        {FunctionDescriptor::smooth_bump(1.0, 1), {1, 2.0, 0.25, Variant::homogeneous}},
    };
    bool ok = true;
    for (const auto& c : cases)
        for (double t : {0.25, 4.0}) {
            const auto sc = scaling_check(c.f, c.params, t, search(-16, 16));
            const double rel = std::abs(sc.lhs - sc.rhs) / sc.rhs;
            ok &= rel < 0.02;
            CHECK(rel < 0.02);
        }
    CHECK(criterion_line(2, "scaling identity within 2% (5 functions x t in {1/4, 4})", ok));
}

TEST_CASE("C3: Young convolution inequality", "[acceptance][c3]") {
    bool ok = true;
    auto check_pair = [&](const YoungResult& yr) {
        const bool pass = yr.lhs <= yr.rhs * 1.02 + 1e-12;
        ok &= pass;
        CHECK(pass);
    };

    check_pair(young_check(FunctionDescriptor::zero(1), KernelDescriptor::gaussian(1.0, 1),
                           {1, 1.0, 0.0, Variant::homogeneous}, search(-4, 4)));
    {
        // Nonnegative lambda = 0 case: Fubini forces equality.
        const auto yr = young_check(FunctionDescriptor::ball_indicator(Vec::zero(1), 1.0),
                                    KernelDescriptor::gaussian(1.0, 1),
                                    {1, 1.0, 0.0, Variant::homogeneous}, search(-4, 6));
        check_pair(yr);
        const bool eq = roughly(yr.lhs, yr.rhs, 0.01);
        ok &= eq;
        CHECK(eq);
    }
    check_pair(young_check(FunctionDescriptor::ball_indicator(Vec::zero(1), 1.0),
                           KernelDescriptor::bump(1.0, 1), {1, 1.0, 0.0, Variant::homogeneous},
                           search(-4, 6)));
    check_pair(young_check(FunctionDescriptor::piecewise_radial_power(0.25, 2.0, 1),
                           KernelDescriptor::bump(1.0, 1), {1, 1.0, 0.5, Variant::homogeneous},
                           search(-6, 6)));
    check_pair(young_check(FunctionDescriptor::gaussian(1.0, 1), KernelDescriptor::gaussian(0.5, 1),
                           {1, 1.0, 0.5, Variant::homogeneous}, search(-6, 5)));
    {
        SearchConfig cfg = search(-2, 4);
        cfg.max_grid_per_axis = 5;
        cfg.quadrature.angular_nodes = 24;
        cfg.quadrature.rel_tol = 1e-5;
        check_pair(young_check(FunctionDescriptor::radial_power(1.0, 2),
                               KernelDescriptor::gaussian(1.0, 2),
                               {2, 1.0, 1.0, Variant::homogeneous}, cfg));
    }
    CHECK(criterion_line(3, "young inequality on 6 pairs, equality on the Fubini case", ok));
}

TEST_CASE("C4: phi counterexample bounds", "[acceptance][c4]") {
    const MorreyParams params{2, 1.0, 1.0, Variant::homogeneous};
    const auto phi = FunctionDescriptor::ball_sum_phi(40, 2);

    bool trunc_ok = true;
    {
        auto cfg = search(-4, 4);
        for (double N = 2.0; N <= 4096.0; N *= 2.0) {
            const double a = truncation_functional(phi, 1.0, {N}, cfg);
            trunc_ok &= roughly(a, M_PI, 0.01);
            CHECK(a == Approx(M_PI).epsilon(0.01));
        }
    }
    criterion_line(4, "  [clause 1] truncation profile of phi constant pi", trunc_ok);

    // Large radii against the paper's displayed envelope log(4r)/r^lambda,
    // taken with constant exactly 1 as specified.
    bool envelope_ok = true;
    {
        auto cfg = search(-2, 2);
        for (int e = 1; e <= 20; ++e) {
            const double r = std::ldexp(1.0, e);
            const auto pb = phi_bound_check(40, params, r, cfg);
            const bool pass = pb.sup_estimate <= pb.bound;
            envelope_ok &= pass;
            CHECK(pb.sup_estimate <= pb.bound);
        }
    }
    criterion_line(4, "  [clause 2] sup estimate <= log(4r)/r^lambda on (1, 2^20]", envelope_ok);

    bool small_ok = true;
    {
        const auto profile = sweep_profile(make_field(phi), params, search(-8, 0));
        double c_report = 0.0;
        for (const auto& e : profile.entries)
            c_report = std::max(c_report,
                                e.value / std::pow(e.radius, params.n - params.lambda));
        for (const auto& e : profile.entries) {
            const bool pass =
                e.value <= c_report * std::pow(e.radius, params.n - params.lambda) * (1 + 1e-12);
            small_ok &= pass;
            CHECK(pass);
        }
        // The reported constant is the unit-ball volume: a radius-r ball
        // nested in one of the unit balls realizes the maximum exactly.
        small_ok &= roughly(c_report, M_PI, 1e-9);
        CHECK(c_report == Approx(M_PI).epsilon(1e-9));
    }
    criterion_line(4, "  [clause 3] sup estimate <= C r^{n-lambda} for r <= 1, C reported", small_ok);

    CHECK(criterion_line(4, "phi counterexample (all three clauses)",
                         trunc_ok && envelope_ok && small_ok));
}

TEST_CASE("C5: membership table", "[acceptance][c5]") {
    bool ok = true;
    {
        const auto rep = vanishing_profiles(FunctionDescriptor::piecewise_radial_power(0.25, 2.0, 1),
                                            {1, 1.0, 0.5, Variant::homogeneous}, search(-32, 32));
        ok &= rep.v0 == Flag::holds && rep.vinf == Flag::holds && rep.vstar == Flag::holds;
        CHECK(rep.v0 == Flag::holds);
        CHECK(rep.vinf == Flag::holds);
        CHECK(rep.vstar == Flag::holds);
    }
    {
        const auto rep = vanishing_profiles(FunctionDescriptor::radial_power(1.0, 2),
                                            {2, 1.0, 1.0, Variant::homogeneous}, search(-20, 20));
        ok &= rep.v0 == Flag::fails && rep.vinf == Flag::fails;
        CHECK(rep.v0 == Flag::fails);
        CHECK(rep.vinf == Flag::fails);
        for (const auto& e : rep.profile.entries) {
            ok &= roughly(e.value, 2.0 * M_PI, 0.01);
            CHECK(e.value == Approx(2.0 * M_PI).epsilon(0.01));
        }
    }
    {
        const auto rep = vanishing_profiles(FunctionDescriptor::ball_sum_phi(40, 2),
                                            {2, 1.0, 1.0, Variant::homogeneous}, search(-32, 32));
        ok &= rep.v0 == Flag::holds && rep.vinf == Flag::holds && rep.vstar == Flag::fails;
        CHECK(rep.v0 == Flag::holds);
        CHECK(rep.vinf == Flag::holds);
        CHECK(rep.vstar == Flag::fails);
    }
    CHECK(criterion_line(5, "membership table (f_{a,b}, limiting power, phi)", ok));
}

TEST_CASE("C6: uniform truncation lemma", "[acceptance][c6]") {
    bool ok = true;
    auto cfg = search(-4, 4);
    const std::vector<std::pair<FunctionDescriptor, double>> cases = {
        {FunctionDescriptor::piecewise_radial_power(0.25, 2.0, 1), 1.0},
        {FunctionDescriptor::ball_indicator(Vec::zero(1), 2.0), 1.0},
        {FunctionDescriptor::ball_sum_phi(40, 2), 1.0},
        {FunctionDescriptor::radial_power(1.0, 2), 1.0},
    };
    for (const auto& [f, p] : cases)
        for (double N : {8.0, 64.0, 512.0})
            for (double R0 : {1.0, 2.0}) {
                const auto r = uniform_truncation_check(f, p, N, R0, cfg);
                const double a = truncation_functional(f, p, {N}, cfg);
                const bool pass = r.lhs <= r.bound_constant * a * (1 + 1e-9) + 1e-12;
                ok &= pass;
                CHECK(pass);
            }
    CHECK(criterion_line(6, "uniform truncation bound lhs <= K0 * A_{N,p}", ok));
}

TEST_CASE("C7: convolution invariance of flags", "[acceptance][c7]") {
    bool ok = true;
    const MorreyParams params{1, 1.0, 0.5, Variant::homogeneous};
    const std::vector<FunctionDescriptor> functions = {
        FunctionDescriptor::piecewise_radial_power(0.25, 2.0, 1),
        FunctionDescriptor::ball_indicator(Vec::zero(1), 1.0),
        FunctionDescriptor::gaussian(1.0, 1),
        FunctionDescriptor::smooth_bump(1.0, 1),
    };
    const std::vector<KernelDescriptor> kernels = {
        dilate(KernelDescriptor::bump(1.0, 1), 0.5),
        KernelDescriptor::gaussian(0.5, 1),
    };
    const std::vector<double> n_schedule = {2, 8, 64, 512};
    for (const auto& f : functions) {
        const auto before = vanishing_profiles(make_field(f), params, search(-32, 32), n_schedule);
        for (const auto& kernel : kernels) {
            SearchConfig after_cfg = search(-8, 5);
            const auto after = vanishing_profiles(
                convolved_field(f, kernel, 1.0, after_cfg.quadrature), params, after_cfg,
                n_schedule);
            auto preserved = [&](Flag b, Flag a) { return b != Flag::holds || a != Flag::fails; };
            const bool pass = preserved(before.v0, after.v0) &&
                              preserved(before.vinf, after.vinf) &&
                              preserved(before.vstar, after.vstar);
            ok &= pass;
            CHECK(pass);
        }
    }
    CHECK(criterion_line(7, "convolution never downgrades holds to fails (4 x 2)", ok));
}

TEST_CASE("C8: mollification and truncation approximation", "[acceptance][c8]") {
    bool ok = true;
    {
        const MorreyParams params{1, 1.0, 0.5, Variant::homogeneous};
        SearchConfig cfg = search(-8, 4);
        const auto f = FunctionDescriptor::gaussian(1.0, 1);
        const auto table = mollifier_convergence(f, KernelDescriptor::bump(1.0, 1),
                                                 default_mollifier_schedule(), params, cfg);
        const double norm = morrey_norm(f, params, cfg).estimate;
        for (std::size_t i = 0; i + 1 < table.rows.size(); ++i) {
            const bool dec = table.rows[i + 1].second < table.rows[i].second;
            ok &= dec;
            CHECK(dec);
        }
        ok &= table.rows.back().second < 1e-2 * norm;
        CHECK(table.rows.back().second < 1e-2 * norm);
    }
    {
        const MorreyParams params{1, 1.0, 0.5, Variant::homogeneous};
        SearchConfig cfg = search(-10, 14);
        const auto f = FunctionDescriptor::piecewise_radial_power(0.25, 2.0, 1);
        std::vector<double> ks;
        for (int e = 1; e <= 10; ++e) ks.push_back(std::ldexp(1.0, e));
        const auto table = truncation_convergence(f, ks, params, cfg);
        const double norm = morrey_norm(f, params, cfg).estimate;
        ok &= table.rows.back().second < 1e-2 * norm;
        CHECK(table.rows.back().second < 1e-2 * norm);
    }
    {
        const MorreyParams params{2, 1.0, 1.0, Variant::homogeneous};
        SearchConfig cfg = search(-4, 18);
        std::vector<double> ks;
        for (int e = 1; e <= 10; ++e) ks.push_back(std::ldexp(1.0, e));
        const auto table =
            truncation_convergence(FunctionDescriptor::radial_power(1.0, 2), ks, params, cfg);
        for (const auto& [k, e] : table.rows) {
            ok &= roughly(e, 2.0 * M_PI, 0.02);
            CHECK(e == Approx(2.0 * M_PI).epsilon(0.02));
        }
    }
    CHECK(criterion_line(8, "mollifier/truncation convergence and the V* failure witness", ok));
}

TEST_CASE("C9: zorko failure for the homogeneous power", "[acceptance][c9]") {
    bool ok = true;
    const MorreyParams params{2, 1.0, 1.0, Variant::homogeneous};
    const auto f = FunctionDescriptor::radial_power(1.0, 2);
    SearchConfig cfg = search(-12, 2);
    cfg.max_grid_per_axis = 9;
    const double norm = morrey_norm(f, params, cfg).estimate;
    for (int e = 1; e <= 6; ++e) {
        const double xi = std::ldexp(1.0, -e);
        const double m = zorko_modulus(f, Vec{xi, 0.0}, params, cfg);
        ok &= m > 0.2 * norm;
        CHECK(m > 0.2 * norm);
    }
    CHECK(criterion_line(9, "translation modulus stays above 0.2 x norm", ok));
}

TEST_CASE("C10: weighted embeddings", "[acceptance][c10]") {
    bool ok = true;
    {
        // Dichotomy on a 9-point alpha grid around -gamma/p.
        for (double gamma : {0.5, 1.0}) {
            for (int i = -4; i <= 4; ++i) {
                const double alpha = -gamma + 0.1 * i;
                const auto r = integral_condition(WeightDescriptor::power(alpha), 1.0, gamma);
                const bool pass = r.finite == (alpha + gamma < 0.0);
                ok &= pass;
                CHECK(pass);
            }
        }
    }
    const std::vector<FunctionDescriptor> catalog = {
        FunctionDescriptor::ball_indicator(Vec::zero(1), 1.0),
        FunctionDescriptor::piecewise_radial_power(0.25, 2.0, 1),
        FunctionDescriptor::gaussian(1.0, 1),
        FunctionDescriptor::smooth_bump(1.0, 1),
    };
    {
        const MorreyParams hom{1, 1.0, 0.5, Variant::homogeneous};
        const auto scan =
            embedding_scan(catalog, WeightDescriptor::power(-0.6), hom, search(-10, 10));
        for (const auto& row : scan.rows) {
            ok &= row.skipped || std::isfinite(row.ratio);
            CHECK((row.skipped || std::isfinite(row.ratio)));
        }
        MorreyParams inhom = hom;
        inhom.variant = Variant::inhomogeneous;
        const auto scan2 =
            embedding_scan(catalog, WeightDescriptor::power(-1.1), inhom, search(-10, 0));
        for (const auto& row : scan2.rows) {
            ok &= row.skipped || std::isfinite(row.ratio);
            CHECK((row.skipped || std::isfinite(row.ratio)));
        }
        const auto scan3 = embedding_scan(catalog, WeightDescriptor::power_log(0.5, 1.0, 2.0), hom,
                                          search(-10, 10));
        for (const auto& row : scan3.rows) {
            ok &= row.skipped || std::isfinite(row.ratio);
            CHECK((row.skipped || std::isfinite(row.ratio)));
        }
    }
    {
        bool threw = false;
        try {
            QuadratureConfig q;
            weighted_norm(FunctionDescriptor::radial_power(1.0, 2), WeightDescriptor::power(-1.0),
                          1.0, 2, q);
        } catch (const DivergentError&) {
            threw = true;
        }
        ok &= threw;
        CHECK(threw);
    }
    CHECK(criterion_line(10, "weighted embedding dichotomy, scans, and divergence", ok));
}

TEST_CASE("C11: determinism of reports", "[acceptance][c11]") {
    bool ok = true;
    {
        auto cfg = parse_experiment_config(json::parse(R"({
          "command": "norm",
          "function": {"fn": "ball_sum_phi", "cap": 40, "n": 2},
          "params": {"n": 2, "p": 1, "lambda": 1, "variant": "homogeneous"},
          "search": {"k_min": -6, "k_max": 6}
        })"));
        ok &= run(cfg).results_dump() == run(cfg).results_dump();
    }
    {
        auto cfg = parse_experiment_config(json::parse(R"({
          "command": "classify",
          "function": {"fn": "gaussian", "sigma": 1.0, "n": 2},
          "params": {"n": 2, "p": 1, "lambda": 0.5, "variant": "homogeneous"},
          "search": {"k_min": -4, "k_max": 3,
                     "quadrature": {"scheme": "monte-carlo", "mc_samples": 20000,
                                     "prefer_analytic": false}},
          "n_schedule": [2, 4, 8]
        })"));
        ok &= run(cfg).results_dump() == run(cfg).results_dump();
    }
    CHECK(criterion_line(11, "byte-identical results sections under fixed seeds", ok));
}
