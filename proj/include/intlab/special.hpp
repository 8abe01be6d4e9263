#pragma once

#include <functional>

#include "intlab/quadrature.hpp"

namespace intlab {

// Principal-branch log-Gamma for complex argument (Lanczos, reflection for
// Re z < 1/2).  Throws on non-positive integer arguments.
cplx ln_gamma(cplx z);
cplx gamma_fn(cplx z);

// Barnes G-function.  G(z+1) = Gamma(z) G(z), G(1) = 1; zeros at
// z = 0, -1, -2, ... are returned as exact zeros.
cplx barnes_g(cplx z);
cplx ln_barnes_g(cplx z);  // principal value of log G(z), z away from zeros

// Cauchy transform C[f](lambda) = \int_{-q}^{q} f(mu) / (2 i pi (mu - lambda)) dmu
// for f sampled on a Gauss-Legendre grid of [-q,q].  Near the segment the
// rule switches to a subtracted-singularity form.
class CauchyTransform {
public:
    CauchyTransform(GaussLegendre grid, std::vector<cplx> samples);
    cplx operator()(cplx lambda) const;
    // C0[f] = -\int\int f(l) f(m) / (l - m - i c)^2 dl dm on the same grid
    cplx c0(double c) const;
    double q() const { return grid_.b; }

private:
    GaussLegendre grid_;
    std::vector<cplx> f_;
    BarycentricInterp interp_;
};

// One-off evaluation from a function object.
cplx cauchy_transform(const std::function<cplx(double)>& f, double q, cplx lambda,
                      int n = 96);

}  // namespace intlab
