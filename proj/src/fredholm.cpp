#include "intlab/fredholm.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "intlab/special.hpp"

namespace intlab::fredholm {

namespace {

const cplx kI(0.0, 1.0);
const cplx kTwoIPi(0.0, 2.0 * M_PI);

cplx derivative5c(const std::function<cplx(cplx)>& f, cplx x, double h) {
    return (-f(x + 2 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2 * h)) / (12.0 * h);
}

}  // namespace

KernelSpec KernelSpec::sine(double x) {
    KernelSpec k;
    k.name = "sine";
    k.eval = [x](cplx a, cplx b) { return std::sin(x * (a - b)) / (M_PI * (a - b)); };
    k.diag = [x](cplx) { return cplx(x / M_PI, 0.0); };
    return k;
}

KernelSpec KernelSpec::gsk(std::function<cplx(cplx)> nu, std::function<cplx(cplx)> u,
                           std::function<cplx(cplx)> g, double x) {
    KernelSpec k;
    k.name = "gsk";
    auto w = [nu](cplx z) { return 1.0 / (std::exp(-kTwoIPi * nu(z)) - 1.0); };
    k.eval = [nu, u, g, w, x](cplx a, cplx b) {
        const cplx amp = 4.0 * std::sin(M_PI * nu(a)) * std::sin(M_PI * nu(b)) /
                         (kTwoIPi * (a - b));
        const cplx A = std::exp(0.5 * (kI * x * (u(a) - u(b)) + g(a) - g(b)));
        return amp * (A * w(a) - w(b) / A);
    };
    k.diag = [nu, u, g, w, x](cplx a) {
        const double h = 1e-3;
        const cplx up = derivative5c(u, a, h), gp = derivative5c(g, a, h);
        const cplx nup = derivative5c(nu, a, h);
        const cplx e = std::exp(-kTwoIPi * nu(a));
        const cplx wp = kTwoIPi * nup * e / ((e - 1.0) * (e - 1.0));
        const cplx s = std::sin(M_PI * nu(a));
        return 4.0 * s * s / kTwoIPi * ((kI * x * up + gp) * w(a) + wp);
    };
    return k;
}

KernelSpec KernelSpec::cshift_w(std::function<cplx(cplx)> F, std::function<cplx(cplx)> p,
                                double c, double x) {
    KernelSpec k;
    k.name = "cshift_w";
    const cplx ic(0.0, c);
    k.eval = [F, p, c, x, ic](cplx a, cplx b) {
        const cplx ph = std::exp(0.5 * kI * x * (p(a) - p(b)));
        return ic * F(a) / (kTwoIPi * (a - b)) *
               (ph / (a - b + ic) + 1.0 / (ph * (a - b - ic)));
    };
    k.diag = [F, p, c, x](cplx a) {
        const cplx pp = derivative5c(p, a, 1e-3);
        return F(a) * (x * pp + 2.0 / c) / (2.0 * M_PI);
    };
    return k;
}

KernelSpec KernelSpec::cshift_s(std::function<cplx(cplx)> F, std::function<cplx(cplx)> p,
                                double x) {
    KernelSpec k;
    k.name = "cshift_s";
    k.eval = [F, p, x](cplx a, cplx b) {
        return F(a) * std::sin(0.5 * x * (p(a) - p(b))) / (M_PI * (a - b));
    };
    k.diag = [F, p, x](cplx a) {
        const cplx pp = derivative5c(p, a, 1e-3);
        return F(a) * x * pp / (2.0 * M_PI);
    };
    return k;
}

KernelSpec KernelSpec::u_pm(std::function<cplx(cplx)> alpha, double c, int sign) {
    KernelSpec k;
    k.name = sign > 0 ? "u_plus" : "u_minus";
    const cplx shift(0.0, sign > 0 ? -c : c);  // mu -/+ ic
    const cplx pole(0.0, sign > 0 ? c : -c);   // lambda - mu +/- ic
    k.eval = [alpha, shift, pole](cplx a, cplx b) {
        return alpha(a) / (alpha(b + shift) * kTwoIPi * (a - b + pole));
    };
    k.diag = [alpha, shift, pole](cplx a) {
        return alpha(a) / (alpha(a + shift) * kTwoIPi * pole);
    };
    return k;
}

cplx nystrom_det(const KernelSpec& k, double a, double b, int n) {
    const GaussLegendre g = gauss_legendre(n, a, b);
    Eigen::MatrixXcd m(n, n);
    std::vector<double> sw(n);
    for (int i = 0; i < n; ++i) sw[i] = std::sqrt(g.w[i]);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = (i == j ? 1.0 : 0.0) + sw[i] * k(g.x[i], g.x[j]) * sw[j];
    return m.partialPivLu().determinant();
}

cplx nystrom_det(const KernelSpec& k, const Quadrature& q) {
    const int n = q.size();
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = (i == j ? 1.0 : 0.0) + k(q.nodes[i], q.nodes[j]) * q.weights[j];
    return m.partialPivLu().determinant();
}

DetPair nystrom_det_checked(const KernelSpec& k, double a, double b, int n) {
    DetPair d;
    d.value = nystrom_det(k, a, b, n);
    d.refined = nystrom_det(k, a, b, 2 * n);
    return d;
}

// ---------------------------------------------------------------------------
//  GSK leading asymptotics
// ---------------------------------------------------------------------------

cplx gsk_v0(const std::function<cplx(cplx)>& nu, const std::function<cplx(cplx)>& u,
            const std::function<cplx(cplx)>& g, double q, double x) {
    const double hstep = 1e-3 * q;
    const cplx nq = nu(q), nmq = nu(-q);
    if (std::abs(nq.real()) >= 0.5 || std::abs(nmq.real()) >= 0.5)
        throw std::invalid_argument("gsk_v0: |Re nu(+-q)| must be < 1/2");
    const cplx upq = derivative5c(u, q, hstep), upmq = derivative5c(u, -q, hstep);
    if (upq.real() <= 0.0 || upmq.real() <= 0.0)
        throw std::invalid_argument("gsk_v0: requires u' > 0 at the endpoints");

    // C1[nu]
    cplx c1 = 0.0;
    {
        const GaussLegendre ga = gauss_legendre(72, -q, q), gb = gauss_legendre(73, -q, q);
        std::vector<cplx> na(ga.size()), npa(ga.size()), nb(gb.size()), npb(gb.size());
        for (int i = 0; i < ga.size(); ++i) {
            na[i] = nu(ga.x[i]);
            npa[i] = derivative5c(nu, ga.x[i], hstep);
        }
        for (int j = 0; j < gb.size(); ++j) {
            nb[j] = nu(gb.x[j]);
            npb[j] = derivative5c(nu, gb.x[j], hstep);
        }
        for (int i = 0; i < ga.size(); ++i)
            for (int j = 0; j < gb.size(); ++j)
                c1 += 0.5 * ga.w[i] * gb.w[j] * (npa[i] * nb[j] - npb[j] * na[i]) /
                      (ga.x[i] - gb.x[j]);
        const GaussLegendre gc = gauss_legendre(96, -q, q);
        for (int i = 0; i < gc.size(); ++i) {
            const cplx nl = nu(gc.x[i]);
            c1 += gc.w[i] * nq * (nq - nl) / (q - gc.x[i]);
            c1 += gc.w[i] * nmq * (nmq - nl) / (q + gc.x[i]);
        }
    }

    const cplx bfun = std::exp(2.0 * ln_barnes_g(1.0 + nq) + 2.0 * ln_barnes_g(1.0 - nmq) +
                               0.5 * kI * M_PI * (nq * nq - nmq * nmq) + c1 -
                               nq * nq * std::log(2.0 * q * upq) -
                               nmq * nmq * std::log(2.0 * q * upmq) +
                               (nmq - nq) * std::log(2.0 * M_PI));
    // exponent integral int (i x u' + g') nu
    cplx expo = 0.0;
    const GaussLegendre gg = gauss_legendre(96, -q, q);
    for (int i = 0; i < gg.size(); ++i) {
        const cplx up = derivative5c(u, gg.x[i], hstep);
        const cplx gp = derivative5c(g, gg.x[i], hstep);
        expo += gg.w[i] * (kI * x * up + gp) * nu(gg.x[i]);
    }
    return bfun * std::exp(expo - (nq * nq + nmq * nmq) * std::log(x));
}

cplx gsk_leading(const std::function<cplx(cplx)>& nu, const std::function<cplx(cplx)>& u,
                 const std::function<cplx(cplx)>& g, double q, double x) {
    cplx total = 0.0;
    for (int eps : {-1, 0, 1}) {
        const cplx nq = nu(q) + static_cast<double>(eps);
        const cplx nmq = nu(-q) + static_cast<double>(eps);
        // shifted Barnes factors can vanish identically (G at a zero)
        auto is_g_zero = [](cplx zarg) {
            return zarg.imag() == 0.0 && zarg.real() <= 0.0 &&
                   zarg.real() == std::floor(zarg.real());
        };
        if (is_g_zero(1.0 + nq) || is_g_zero(1.0 - nmq)) continue;
        auto nush = [&nu, eps](cplx z) { return nu(z) + static_cast<double>(eps); };
        total += gsk_v0(nush, u, g, q, x);
    }
    return total;
}

// ---------------------------------------------------------------------------
//  c-shift factorization
// ---------------------------------------------------------------------------

CshiftResult cshift_factorization(const std::function<cplx(cplx)>& F,
                                  const std::function<cplx(cplx)>& p, double c, double q,
                                  double x, const ContourDescriptor& loop, int n_interval) {
    if (loop.kind == ContourKind::Rectangle && loop.half_height >= 0.5 * c)
        throw std::invalid_argument("cshift_factorization: loop violates |Im z| < c/2");
    CshiftResult r;
    const KernelSpec w = KernelSpec::cshift_w(F, p, c, x);
    const KernelSpec s = KernelSpec::cshift_s(F, p, x);
    const cplx dw = nystrom_det(w, -q, q, n_interval);
    const cplx ds = nystrom_det(s, -q, q, n_interval);
    r.lhs = dw / ds;

    // alpha(z) = exp( int ln(1+F) / (z - mu) dmu / (2 i pi) ) = exp(-C[ln(1+F)](z))
    const int ns = 128;
    GaussLegendre gs = gauss_legendre(ns, -q, q);
    std::vector<cplx> samples(ns);
    for (int i = 0; i < ns; ++i) samples[i] = std::log(1.0 + F(gs.x[i]));
    const CauchyTransform cau(std::move(gs), std::move(samples));
    std::function<cplx(cplx)> alpha = [cau](cplx z) { return std::exp(-cau(z)); };

    const Quadrature lq = contour_quadrature(loop);
    const cplx dup = nystrom_det(KernelSpec::u_pm(alpha, c, +1), lq);
    const cplx dum = nystrom_det(KernelSpec::u_pm(alpha, c, -1), lq);
    r.rhs = dup * dum;
    return r;
}

// ---------------------------------------------------------------------------
//  Lacunary Toeplitz determinants
// ---------------------------------------------------------------------------

namespace {

// Fourier coefficients c_n[f] for n in [-nmax, nmax] by uniform sampling.
std::vector<cplx> fourier_coeffs(const std::function<cplx(cplx)>& f, int nmax, int m) {
    std::vector<cplx> vals(m);
    for (int k = 0; k < m; ++k) {
        const double t = 2.0 * M_PI * k / m;
        vals[k] = f(std::polar(1.0, t));
    }
    std::vector<cplx> out(2 * nmax + 1);
    for (int n = -nmax; n <= nmax; ++n) {
        cplx s = 0.0;
        for (int k = 0; k < m; ++k) {
            const double t = 2.0 * M_PI * k / m;
            s += vals[k] * std::polar(1.0, -n * t);
        }
        out[n + nmax] = s / static_cast<double>(m);
    }
    return out;
}

}  // namespace

LacunaryResult lacunary_toeplitz(const LacunarySpec& spec) {
    const int N = spec.N;
    long pmax = 0;
    for (long p : spec.particles) pmax = std::max(pmax, std::abs(p));
    const int nmax = static_cast<int>(N + pmax + 2);

    // winding check along the circle + continuous log for ln f
    const int m = spec.n_fourier;
    std::vector<cplx> fvals(m);
    std::vector<cplx> lnf(m);
    for (int k = 0; k < m; ++k) {
        const double t = 2.0 * M_PI * k / m;
        fvals[k] = spec.symbol(std::polar(1.0, t));
        if (std::abs(fvals[k]) < 1e-14)
            throw std::invalid_argument("lacunary_toeplitz: symbol vanishes on the circle");
    }
    double arg_acc = std::arg(fvals[0]);
    for (int k = 0; k < m; ++k) {
        if (k > 0) arg_acc += std::arg(fvals[k] / fvals[k - 1]);
        lnf[k] = cplx(std::log(std::abs(fvals[k])), arg_acc);
    }
    const double winding =
        (arg_acc + std::arg(fvals[0] / fvals[m - 1]) - std::arg(fvals[0])) / (2.0 * M_PI);
    if (std::abs(winding) > 1e-6)
        throw std::invalid_argument("lacunary_toeplitz: nonzero winding of the symbol");

    const std::vector<cplx> cf = fourier_coeffs(spec.symbol, nmax, m);
    auto coeff = [&](long n) { return cf[n + nmax]; };

    // Fourier coefficients of ln f (via the continuous log samples)
    const int kg = 96;  // truncation of the gamma series
    std::vector<cplx> clnf(2 * kg + 1);
    for (int n = -kg; n <= kg; ++n) {
        cplx s = 0.0;
        for (int k = 0; k < m; ++k) {
            const double t = 2.0 * M_PI * k / m;
            s += lnf[k] * std::polar(1.0, -n * t);
        }
        clnf[n + kg] = s / static_cast<double>(m);
    }
    auto gamma_in = [&](cplx z) {
        cplx s = 0.0, zp = 1.0;
        for (int n = 0; n <= kg; ++n) {
            s += clnf[n + kg] * zp;
            zp *= z;
        }
        return std::exp(-s);
    };
    auto gamma_out = [&](cplx z) {
        cplx s = 0.0, zp = 1.0 / z;
        for (int n = 1; n <= kg; ++n) {
            s += clnf[-n + kg] * zp;
            zp /= z;
        }
        return std::exp(s);
    };

    // exact lacunary determinant and the pure one
    std::vector<long> ell(N + 1);
    for (long a = 1; a <= N; ++a) ell[a] = a;
    for (size_t i = 0; i < spec.holes.size(); ++i) ell[spec.holes[i]] = spec.particles[i];

    Eigen::MatrixXcd exact(N, N), pure(N, N);
    for (int a = 1; a <= N; ++a)
        for (int b = 1; b <= N; ++b) {
            exact(a - 1, b - 1) = coeff(ell[a] - b);
            pure(a - 1, b - 1) = coeff(a - b);
        }
    LacunaryResult out;
    out.exact = exact.partialPivLu().determinant();
    out.det_pure = pure.partialPivLu().determinant();

    // matrix M of the asymptotic prediction
    const int n_lac = static_cast<int>(spec.holes.size());
    Eigen::MatrixXcd M(n_lac, n_lac);
    const int nc = spec.n_contour;
    auto circle_nodes = [&](double radius) {
        std::vector<std::pair<cplx, cplx>> nw(nc);
        for (int k = 0; k < nc; ++k) {
            const double t = 2.0 * M_PI * k / nc;
            const cplx z = std::polar(radius, t);
            nw[k] = {z, kI * z * (2.0 * M_PI / nc)};
        }
        return nw;
    };
    for (int a = 0; a < n_lac; ++a) {
        const long pa = spec.particles[a];
        for (int b = 0; b < n_lac; ++b) {
            const long hb = spec.holes[b];
            cplx acc = 0.0;
            if (pa >= 1) {
                const auto zs = circle_nodes(spec.eta_z);
                const auto ss = circle_nodes(spec.eta_s);
                for (const auto& [z, wz] : zs)
                    for (const auto& [sv, ws] : ss)
                        acc -= wz * ws * gamma_in(z) / gamma_in(sv) *
                               std::exp(static_cast<double>(N - pa) * std::log(sv) +
                                        static_cast<double>(hb - N - 1) * std::log(z)) /
                               (z - sv);
            } else {
                const auto zs = circle_nodes(1.0 / spec.eta_z);
                const auto ss = circle_nodes(1.0 / spec.eta_s);
                for (const auto& [z, wz] : zs)
                    for (const auto& [sv, ws] : ss)
                        acc += wz * ws * gamma_out(sv) / gamma_out(z) *
                               std::exp(static_cast<double>(-pa) * std::log(sv) +
                                        static_cast<double>(hb - 1) * std::log(z)) /
                               (z - sv);
            }
            M(a, b) = acc / (kTwoIPi * kTwoIPi);
        }
    }
    const cplx detM = n_lac == 0 ? cplx(1.0, 0.0) : M.partialPivLu().determinant();
    out.prediction = out.det_pure * detM;
    return out;
}

}  // namespace intlab::fredholm
