#include <doctest.h>

#include <random>

#include "intlab/quadrature.hpp"
#include "intlab/special.hpp"

using namespace intlab;

TEST_CASE("gauss-legendre basics") {
    // n = 1 midpoint
    auto g1 = gauss_legendre(1, -1.0, 1.0);
    CHECK(g1.x[0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(g1.w[0] == doctest::Approx(2.0).epsilon(1e-14));
    // n = 2 classical nodes
    auto g2 = gauss_legendre(2, -1.0, 1.0);
    CHECK(g2.x[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(g2.w[0] == doctest::Approx(1.0).epsilon(1e-14));
    // exactness for x^4 at n = 3
    auto g3 = gauss_legendre(3, -1.0, 1.0);
    double s = 0.0;
    for (int i = 0; i < 3; ++i) s += g3.w[i] * std::pow(g3.x[i], 4);
    CHECK(s == doctest::Approx(0.4).epsilon(1e-14));
    CHECK_THROWS(gauss_legendre(0, 0.0, 1.0));
}

TEST_CASE("gauss-legendre exactness up to degree 2n-1") {
    for (int n : {4, 9, 16, 33, 64}) {
        auto g = gauss_legendre(n, -1.0, 1.0);
        for (int k = 0; k <= 2 * n - 1; ++k) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += g.w[i] * std::pow(g.x[i], k);
            const double expect = (k % 2 == 0) ? 2.0 / (k + 1.0) : 0.0;
            CHECK(std::abs(s - expect) < 1e-13 * (1.0 + std::abs(expect)));
        }
    }
}

TEST_CASE("contour quadrature residues") {
    auto circ = contour_quadrature(ContourDescriptor::circle(0.0, 1.0, 64));
    const cplx r1 = circ.integrate([](cplx z) { return 1.0 / z; });
    CHECK(std::abs(r1 - cplx(0.0, 2.0 * M_PI)) < 1e-12);
    const cplx r2 = circ.integrate([](cplx z) { return z; });
    CHECK(std::abs(r2) < 1e-12);

    auto rect = contour_quadrature(ContourDescriptor::rectangle(0.0, 1.3, 0.7, 48));
    const cplx r3 = rect.integrate([](cplx z) { return 1.0 / (z * z); });
    CHECK(std::abs(r3) < 1e-10);
    const cplx r4 = rect.integrate([](cplx z) { return 1.0 / z; });
    CHECK(std::abs(r4 - cplx(0.0, 2.0 * M_PI)) < 1e-10);

    // random enclosed pole
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-0.4, 0.4);
    for (int k = 0; k < 10; ++k) {
        const cplx z0(u(rng), u(rng));
        const cplx r = circ.integrate([z0](cplx z) { return 1.0 / (z - z0); });
        CHECK(std::abs(r - cplx(0.0, 2.0 * M_PI)) < 1e-10);
    }
    CHECK_THROWS(contour_quadrature(ContourDescriptor::circle(0.0, 0.0, 64)));
}

TEST_CASE("ln_gamma basics and recursion") {
    CHECK(std::abs(ln_gamma(cplx(1.0, 0.0))) < 1e-14);
    CHECK(std::abs(ln_gamma(cplx(0.5, 0.0)) - std::log(std::sqrt(M_PI))) < 1e-14);
    CHECK(std::abs(ln_gamma(cplx(5.0, 0.0)) - std::log(24.0)) < 1e-13);
    CHECK_THROWS(ln_gamma(cplx(0.0, 0.0)));
    CHECK_THROWS(ln_gamma(cplx(-3.0, 0.0)));

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ur(0.1, 10.0), ui(-5.0, 5.0);
    for (int k = 0; k < 100; ++k) {
        const cplx z(ur(rng), ui(rng));
        const cplx lhs = gamma_fn(z + 1.0);
        const cplx rhs = z * gamma_fn(z);
        CHECK(std::abs(lhs - rhs) < 1e-13 * std::abs(rhs));
    }
}

TEST_CASE("barnes G basics, recursion and integral representation") {
    CHECK(std::abs(barnes_g(cplx(1.0, 0.0)) - 1.0) < 1e-12);
    CHECK(std::abs(barnes_g(cplx(2.0, 0.0)) - 1.0) < 1e-12);
    CHECK(std::abs(barnes_g(cplx(3.0, 0.0)) - 1.0) < 1e-12);
    CHECK(std::abs(barnes_g(cplx(4.0, 0.0)) - 2.0) < 1e-10);
    CHECK(barnes_g(cplx(0.0, 0.0)) == cplx(0.0, 0.0));
    CHECK(barnes_g(cplx(-2.0, 0.0)) == cplx(0.0, 0.0));

    // G(3/2) from the integral representation against G(5/2)/Gamma(3/2)
    const cplx g32 = barnes_g(cplx(1.5, 0.0));
    const cplx g52 = barnes_g(cplx(2.5, 0.0));
    CHECK(std::abs(g52 / gamma_fn(cplx(1.5, 0.0)) - g32) < 1e-10 * std::abs(g32));

    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> ur(0.1, 10.0), ui(-5.0, 5.0);
    for (int k = 0; k < 100; ++k) {
        const cplx z(ur(rng), ui(rng));
        const cplx lhs = barnes_g(z + 1.0);
        const cplx rhs = gamma_fn(z) * barnes_g(z);
        CHECK(std::abs(lhs - rhs) < 1e-10 * std::abs(rhs));
    }
}

TEST_CASE("cauchy transform closed forms") {
    // f = 1, q = 1, lambda = 2
    const cplx v = cauchy_transform([](double) { return cplx(1.0, 0.0); }, 1.0, 2.0);
    const cplx expect = std::log(cplx(1.0 / 3.0, 0.0)) / cplx(0.0, 2.0 * M_PI);
    CHECK(std::abs(v - expect) < 1e-12);

    // Laurent tail: C[f](lambda) ~ -(int f) / (2 i pi lambda)
    const cplx far = cauchy_transform([](double) { return cplx(1.0, 0.0); }, 1.0, 4000.0);
    const cplx tail = -2.0 / (cplx(0.0, 2.0 * M_PI) * 4000.0);
    CHECK(std::abs(far - tail) < 1e-7 * std::abs(tail));

    // f(mu) = mu at lambda = 2i: int mu/(mu-l) dmu = 2 + l ln((q-l)/(-q-l))
    const cplx lam(0.0, 2.0);
    const cplx vf = cauchy_transform([](double m) { return cplx(m, 0.0); }, 1.0, lam);
    const cplx closed =
        (2.0 + lam * (std::log(1.0 - lam) - std::log(-1.0 - lam))) / cplx(0.0, 2.0 * M_PI);
    CHECK(std::abs(vf - closed) < 1e-12);

    // near-segment evaluation agrees with a very fine direct rule
    const cplx near(0.3, 0.02);
    const cplx a = cauchy_transform([](double m) { return cplx(std::cos(m), 0.0); }, 1.0,
                                    near, 96);
    const cplx b = cauchy_transform([](double m) { return cplx(std::cos(m), 0.0); }, 1.0,
                                    near, 4000);
    CHECK(std::abs(a - b) < 1e-9);

    CHECK_THROWS(cauchy_transform([](double) { return cplx(1.0, 0.0); }, 1.0, cplx(0.5, 0.0)));
}

TEST_CASE("barycentric interpolation reproduces smooth samples") {
    auto g = gauss_legendre(48, -2.0, 3.0);
    std::vector<cplx> vals(g.size());
    for (int i = 0; i < g.size(); ++i) vals[i] = std::exp(cplx(0.0, g.x[i]));
    BarycentricInterp interp(g.x, vals);
    for (double t : {-1.7, -0.3, 0.9, 2.4}) {
        CHECK(std::abs(interp(t) - std::exp(cplx(0.0, t))) < 1e-12);
    }
}
