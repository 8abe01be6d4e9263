#include "intlab/special.hpp"

#include <algorithm>
#include <cmath>

namespace intlab {

namespace {

// Lanczos approximation, g = 607/128, 15 coefficients (Godfrey).  Relative
// accuracy ~1e-15 on Re z > 1/2; the reflection formula covers the rest.
constexpr double kLanczosG = 4.7421875;
constexpr double kLanczosCoeff[15] = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5};

bool is_nonpositive_integer(cplx z) {
    if (z.imag() != 0.0) return false;
    const double r = z.real();
    return r <= 0.0 && r == std::floor(r);
}

cplx ln_gamma_core(cplx z) {
    // valid for Re z >= 1/2
    cplx s = kLanczosCoeff[0];
    for (int k = 1; k < 15; ++k) s += kLanczosCoeff[k] / (z + cplx(k - 1, 0.0));
    const cplx t = z + (kLanczosG - 0.5);
    return 0.5 * std::log(2.0 * M_PI) + (z - 0.5) * std::log(t) - t + std::log(s);
}

}  // namespace

cplx ln_gamma(cplx z) {
    if (is_nonpositive_integer(z)) throw std::domain_error("ln_gamma: pole at non-positive integer");
    if (z.real() >= 0.5) return ln_gamma_core(z);
    // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).  The log of sin(pi z)
    // is taken so that the result stays on the principal branch for real z
    // and continuously off the axis.
    const cplx lnsin = [&] {
        // log(sin(pi z)) computed without overflow for large |Im z|
        const cplx iz = cplx(0.0, 1.0) * (M_PI * z);
        if (z.imag() > 0.0) {
            // sin(pi z) = (e^{i pi z} - e^{-i pi z}) / (2i), factor out e^{-i pi z}
            return -iz - std::log(cplx(0.0, 2.0)) + std::log(std::exp(2.0 * iz) - 1.0);
        }
        return iz - std::log(cplx(0.0, 2.0)) + std::log(1.0 - std::exp(-2.0 * iz));
    }();
    cplx v = std::log(cplx(M_PI, 0.0)) - lnsin - ln_gamma_core(1.0 - z);
    if (z.imag() == 0.0) v = cplx(v.real(), std::remainder(v.imag(), 2.0 * M_PI));
    return v;
}

cplx gamma_fn(cplx z) { return std::exp(ln_gamma(z)); }

namespace {

// \int_0^z lnGamma(s) ds along the straight segment, via
// lnGamma(s) = lnGamma(s+2) - ln s - ln(1+s); the first piece is analytic
// on Re s > -2 and is integrated by Gauss-Legendre.
cplx integral_ln_gamma(cplx z) {
    const GaussLegendre g = gauss_legendre(64, 0.0, 1.0);
    cplx acc = 0.0;
    for (int i = 0; i < g.size(); ++i) acc += g.w[i] * ln_gamma(z * g.x[i] + 2.0);
    acc *= z;
    const cplx i_lns = z * std::log(z) - z;                       // \int_0^z ln s ds
    const cplx i_ln1s = (1.0 + z) * std::log(1.0 + z) - z;        // \int_0^z ln(1+s) ds
    return acc - i_lns - i_ln1s;
}

cplx ln_barnes_g_shifted(cplx z) {
    // log G(1+z) for Re z >= 0, from the integral representation
    // G(1+z) = (sqrt(2 pi) Gamma(z))^z exp(z(1-z)/2 - \int_0^z lnGamma).
    if (z == 0.0) return 0.0;
    return z * (0.5 * std::log(2.0 * M_PI) + ln_gamma(z)) + 0.5 * z * (1.0 - z) -
           integral_ln_gamma(z);
}

}  // namespace

cplx ln_barnes_g(cplx w) {
    // log G(w); w must stay away from the zeros at w = 0, -1, -2, ...
    cplx shift = 0.0;
    // raise the argument until Re(w) >= 1 using G(w) = G(w+1)/Gamma(w)
    cplx z = w;
    while (z.real() < 1.0) {
        if (is_nonpositive_integer(z)) throw std::domain_error("ln_barnes_g: zero of G");
        shift -= ln_gamma(z);
        z += 1.0;
    }
    return shift + ln_barnes_g_shifted(z - 1.0);
}

cplx barnes_g(cplx w) {
    if (is_nonpositive_integer(w)) return 0.0;
    return std::exp(ln_barnes_g(w));
}

CauchyTransform::CauchyTransform(GaussLegendre grid, std::vector<cplx> samples)
    : grid_(std::move(grid)), f_(std::move(samples)),
      interp_(std::vector<double>(grid_.x), std::vector<cplx>(f_)) {
    if (static_cast<size_t>(grid_.size()) != f_.size())
        throw std::invalid_argument("CauchyTransform: grid/sample size mismatch");
    if (grid_.a != -grid_.b)
        throw std::invalid_argument("CauchyTransform: expected a symmetric interval [-q,q]");
}

cplx CauchyTransform::operator()(cplx lambda) const {
    const double q = grid_.b;
    const cplx two_i_pi(0.0, 2.0 * M_PI);
    // distance from lambda to the segment [-q,q]
    const double dx = std::max({-q - lambda.real(), lambda.real() - q, 0.0});
    const double dist = std::hypot(dx, lambda.imag());
    const double spacing = 2.0 * q / grid_.size();
    if (dist < 1e-14) throw std::domain_error("cauchy_transform: lambda on the segment");

    if (dist > 5.0 * spacing) {
        cplx s = 0.0;
        for (int i = 0; i < grid_.size(); ++i) s += grid_.w[i] * f_[i] / (grid_.x[i] - lambda);
        return s / two_i_pi;
    }
    // Subtracted-singularity rule: f(mu) = [f(mu) - f(mu0)] + f(mu0) with mu0
    // the projection of lambda onto the segment.  The constant part integrates
    // to a logarithm in closed form; the remainder is integrated on panels
    // graded geometrically towards mu0.
    const double mu0 = std::clamp(lambda.real(), -q, q);
    const cplx f0 = interp_(mu0);
    std::vector<double> bp = {-q, q};
    double delta = q;
    while (delta > 0.25 * std::max(dist, 1e-13)) {
        for (double sgn : {-1.0, 1.0}) {
            const double p = mu0 + sgn * delta;
            if (p > -q && p < q) bp.push_back(p);
        }
        delta *= 0.5;
    }
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    const GaussLegendre fine = gauss_legendre_composite(16, bp);
    cplx s = 0.0;
    for (int i = 0; i < fine.size(); ++i)
        s += fine.w[i] * (interp_(fine.x[i]) - f0) / (fine.x[i] - lambda);
    s += f0 * (std::log(q - lambda) - std::log(-q - lambda));
    return s / two_i_pi;
}

cplx CauchyTransform::c0(double c) const {
    cplx s = 0.0;
    for (int i = 0; i < grid_.size(); ++i)
        for (int j = 0; j < grid_.size(); ++j) {
            const cplx d = grid_.x[i] - grid_.x[j] - cplx(0.0, c);
            s += grid_.w[i] * grid_.w[j] * f_[i] * f_[j] / (d * d);
        }
    return -s;
}

cplx cauchy_transform(const std::function<cplx(double)>& f, double q, cplx lambda, int n) {
    GaussLegendre g = gauss_legendre(n, -q, q);
    std::vector<cplx> samples(n);
    for (int i = 0; i < n; ++i) samples[i] = f(g.x[i]);
    return CauchyTransform(std::move(g), std::move(samples))(lambda);
}

}  // namespace intlab
