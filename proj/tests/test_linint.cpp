#include <doctest.h>

#include <memory>

#include "intlab/linint.hpp"

using namespace intlab;
using namespace intlab::linint;

TEST_CASE("fredholm2 solver degenerate cases") {
    // zero kernel: solution equals rhs
    auto s0 = solve_fredholm2([](double, double) { return 0.0; },
                              [](double x) { return std::cos(x); }, -1.0, 1.0, 32);
    CHECK(std::abs(s0.eval(0.3) - std::cos(0.3)) < 1e-14);
    CHECK(s0.residual < 1e-12);

    // rank-one kernel K = 1 on [0,1], rhs = 1: f = 1 / (1 - 1/(2 pi))
    auto s1 = solve_fredholm2([](double, double) { return 1.0; },
                              [](double) { return 1.0; }, 0.0, 1.0, 32);
    const double expect = 1.0 / (1.0 - 1.0 / (2.0 * M_PI));
    CHECK(std::abs(s1.eval(0.5) - expect) < 1e-12);

    // huge coupling: Lieb-Liniger kernel vanishes
    const double c = 1e6;
    auto s2 = solve_fredholm2(
        [c](double x, double y) { return kernel_ll(x - y, c); },
        [](double x) { return x * x - 1.0; }, -1.0, 1.0, 32);
    CHECK(std::abs(s2.eval(0.5) - (-0.75)) < 1e-4);
}

TEST_CASE("fermi boundary at large and small coupling") {
    // c -> infinity: q = sqrt(h), eps = l^2 - h
    auto [q, d] = fermi_boundary(1e8, 2.0);
    CHECK(std::abs(q - std::sqrt(2.0)) < 1e-6);
    CHECK(std::abs(d.eps(0.5) - (0.25 - 2.0)) < 1e-6);
    CHECK(std::abs(d.Z(0.3) - 1.0) < 1e-6);
    CHECK(std::abs(d.p(0.7) - 0.7) < 1e-6);
    CHECK(std::abs(d.phi(0.2, 0.5)) < 1e-6);

    // h -> 0+: q -> 0
    auto [q2, d2] = fermi_boundary(2.0, 1e-4);
    CHECK(q2 < 0.05);

    CHECK_THROWS(fermi_boundary(2.0, -1.0));
}

TEST_CASE("dressed data invariants at c=2, h=1") {
    DressedData d(2.0, 1.0);
    const double q = d.q();
    // eps vanishes at the boundary
    CHECK(std::abs(d.eps(q)) < 1e-10);
    CHECK(std::abs(d.eps(-q)) < 1e-10);
    // eps < 0 inside, > 0 outside, increasing beyond q
    double prev = d.eps(q);
    for (int k = 1; k <= 20; ++k) {
        CHECK(d.eps(-q + (2.0 * q) * k / 21.0) < 0.0);
        const double outside = d.eps(q + 5.0 * k / 20.0);
        CHECK(outside > prev);
        prev = outside;
    }
    // p odd, increasing; Z even
    for (double l : {0.2, 0.5, 0.9 * q}) {
        CHECK(std::abs(d.p(l) + d.p(-l)) < 1e-10);
        CHECK(std::abs(d.Z(l) - d.Z(-l)) < 1e-10);
        CHECK(d.p_prime(l) > 0.0);
    }
    CHECK(d.p(0.0) == 0.0);
    // grid-doubling stability of q
    DressedData d128(2.0, 1.0, 128);
    CHECK(std::abs(d128.q() - q) < 1e-9);
}

TEST_CASE("dressed charge identities") {
    for (double c : {1.0, 2.0, 8.0}) {
        for (double h : {0.5, 1.0, 2.0}) {
            DressedData d(c, h);
            const double q = d.q();
            for (double l : {0.0, 0.4 * q, 0.9 * q}) {
                const double lhs = d.Z(l);
                const double rhs = 1.0 + d.phi(l, -q) - d.phi(l, q);
                CHECK(std::abs(lhs - rhs) < 1e-8);
            }
            const double zinv = 1.0 + d.phi(-q, q) - d.phi(q, q);
            CHECK(std::abs(1.0 / d.Z(q) - zinv) < 1e-8);
        }
    }
}

TEST_CASE("shift function") {
    auto d = std::make_shared<DressedData>(1e8, 1.0);
    // c = infinity, beta = 0, kappa = 1, no excitations: F = -1/2
    auto f = shift_function(d, 0.0, 1, {}, {});
    CHECK(std::abs(f(0.3) - cplx(-0.5, 0.0)) < 1e-6);

    // identical particle-hole pair cancels exactly (hole must sit inside)
    const double q = d->q();
    auto f2 = shift_function(d, 0.0, 1, {0.5 * q}, {0.5 * q});
    CHECK(f2.particle_inside_warned);
    CHECK(std::abs(f2(0.3) - f(0.3)) < 1e-14);

    // refinement oracle at c=2, h=1 with one particle-hole pair
    auto d64 = std::make_shared<DressedData>(2.0, 1.0, 64);
    auto d256 = std::make_shared<DressedData>(2.0, 1.0, 256);
    const double qq = d64->q();
    auto g64 = shift_function(d64, 0.0, 1, {1.7 * qq}, {0.3 * qq});
    auto g256 = shift_function(d256, 0.0, 1, {1.7 * qq}, {0.3 * qq});
    for (double l : {-0.8 * qq, 0.1 * qq, 0.95 * qq})
        CHECK(std::abs(g64(l) - g256(l)) < 1e-9);

    CHECK_THROWS(shift_function(d, 0.0, 1, {}, {2.0 * q}));
}

TEST_CASE("fermi boundary values") {
    DressedData dinf(1e8, 1.0);
    auto [fp, fm] = fermi_boundary_values(dinf, 0);
    CHECK(std::abs(fp - 0.5) < 1e-6);
    CHECK(std::abs(fm + 0.5) < 1e-6);
    auto [fp1, fm1] = fermi_boundary_values(dinf, 1);
    CHECK(std::abs(fp1 - 0.5) < 1e-6);

    DressedData d(2.0, 1.0);
    auto [ap, am] = fermi_boundary_values(d, 0);
    CHECK(std::abs(ap + am) < 1e-12);  // ell = 0 symmetry
    // value from dressed functions
    auto [bp, bm] = fermi_boundary_values(d, 1);
    const double z = d.Z(d.q());
    CHECK(std::abs(bp - (z - 1.0 + 0.5 / z)) < 1e-12);
}
