#include "intlab/formfactor.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "intlab/special.hpp"

namespace intlab::ff {

using linint::kernel_ll;
using linint::theta_ll;

namespace {

double log_abs_det(const Eigen::PartialPivLU<Eigen::MatrixXcd>& lu) {
    double s = 0.0;
    const auto& m = lu.matrixLU();
    for (int i = 0; i < m.rows(); ++i) s += std::log(std::abs(m(i, i)));
    return s;
}

double log_abs_det(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu) {
    double s = 0.0;
    const auto& m = lu.matrixLU();
    for (int i = 0; i < m.rows(); ++i) s += std::log(std::abs(m(i, i)));
    return s;
}

// ln det Xi with Xi_ab = delta - K(mu_a - mu_b) / (2 pi L xi'(mu_b))
double log_det_xi(const BetheState& s) {
    const int n = s.N;
    Eigen::MatrixXd xi(n, n);
    for (int b = 0; b < n; ++b) {
        const double d = 2.0 * M_PI * s.L * s.xi_hat_prime(s.roots[b]);
        for (int a = 0; a < n; ++a)
            xi(a, b) = (a == b ? 1.0 : 0.0) - kernel_ll(s.roots[a] - s.roots[b], s.c) / d;
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(xi);
    if (xi.determinant() <= 0.0) throw std::runtime_error("log_det_xi: non-positive det");
    return log_abs_det(lu);
}

}  // namespace

double log_gaudin_norm(const BetheState& s) {
    const int n = s.N;
    double v = n * std::log(2.0 * M_PI * s.c);
    for (int a = 0; a < n; ++a) v += std::log(s.L * s.xi_hat_prime(s.roots[a]));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            const double d = s.roots[a] - s.roots[b];
            v += std::log((d * d + s.c * s.c) / (d * d));
        }
    return v + log_det_xi(s);
}

double gaudin_norm(const BetheState& s) { return std::exp(log_gaudin_norm(s)); }

double discrete_shift_function(const BetheState& ground, const BetheState& excited,
                               double omega) {
    double v = -0.5;
    for (double l : ground.roots) v += theta_ll(omega - l, ground.c) / (2.0 * M_PI);
    for (double m : excited.roots) v -= theta_ll(omega - m, excited.c) / (2.0 * M_PI);
    return v;
}

FormFactorResult ff_conjugated_field(const BetheState& ground, const BetheState& excited) {
    if (excited.N != ground.N + 1 || excited.L != ground.L || excited.c != ground.c)
        throw std::invalid_argument("ff_conjugated_field: need N and N+1 states, same L, c");
    const int N = ground.N;
    const double c = ground.c, L = ground.L;
    const auto& lam = ground.roots;
    const auto& mu = excited.roots;
    const double mu_last = mu[N];

    std::vector<double> fhat(N);
    for (int k = 0; k < N; ++k) fhat[k] = discrete_shift_function(ground, excited, lam[k]);

    // U_{jk} = -i P_j K(l_j - l_k) / (e^{-2 i pi Fhat_j} - 1)
    std::vector<cplx> pref(N);
    const cplx ic(0.0, c);
    for (int j = 0; j < N; ++j) {
        cplx lnp = 0.0;
        for (int a = 0; a <= N; ++a)
            lnp += std::log(cplx(lam[j] - mu[a], 0.0)) - std::log(lam[j] - mu[a] + ic);
        for (int a = 0; a < N; ++a) {
            lnp += std::log(lam[j] - lam[a] + ic);
            if (a != j) lnp -= std::log(cplx(lam[j] - lam[a], 0.0));
        }
        const cplx denom = std::exp(cplx(0.0, -2.0 * M_PI * fhat[j])) - 1.0;
        if (std::abs(denom) < 1e-12)
            throw std::runtime_error("ff_conjugated_field: singular U at root " +
                                     std::to_string(lam[j]));
        pref[j] = cplx(0.0, -1.0) * std::exp(lnp) / denom;
    }
    Eigen::MatrixXcd U(N, N);
    for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k)
            U(j, k) = (j == k ? 1.0 : 0.0) + pref[j] * kernel_ll(lam[j] - lam[k], c);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(U);
    const double log_abs_detU = log_abs_det(lu);

    const double log_norm_mu = log_gaudin_norm(excited);
    const double log_norm_la = log_gaudin_norm(ground);

    FormFactorResult r;
    // normalized |FF|^2
    double v = std::log(c) + 2.0 * log_abs_detU - log_norm_mu - log_norm_la;
    for (int k = 0; k < N; ++k) {
        const double s2 = std::sin(M_PI * fhat[k]);
        v += std::log(4.0 * s2 * s2);
        for (int b = 0; b <= N; ++b) {
            const double d = mu[b] - lam[k];
            v += std::log((d * d + c * c) / (d * d));
        }
    }
    r.log_ff2 = v;

    // smooth part
    double g = 2.0 * log_abs_detU - log_det_xi(excited) - log_det_xi(ground);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            const double zw = mu[a] - lam[b];
            const double zz = mu[a] - mu[b];
            const double ww = lam[a] - lam[b];
            g += std::log(zw * zw + c * c) -
                 0.5 * (std::log(zz * zz + c * c) + std::log(ww * ww + c * c));
        }
    for (int a = 0; a < N; ++a) {
        const double dl = lam[a] - mu_last, dm = mu[a] - mu_last;
        g += std::log((dl * dl + c * c) / (dm * dm + c * c));
    }
    r.log_smooth = g;

    // discrete part
    double d = 0.0;
    for (int k = 0; k < N; ++k) {
        const double s2 = std::sin(M_PI * fhat[k]);
        d += std::log(4.0 * s2 * s2);
    }
    for (int a = 0; a <= N; ++a)
        d -= std::log(2.0 * M_PI * L * excited.xi_hat_prime(mu[a]));
    for (int a = 0; a < N; ++a)
        d -= std::log(2.0 * M_PI * L * ground.xi_hat_prime(lam[a]));
    for (int a = 0; a < N; ++a)
        d += 2.0 * (std::log(std::abs(mu[a] - mu_last)) - std::log(std::abs(lam[a] - mu_last)));
    // Cauchy determinant det_N[1/(mu_a - lam_b)]
    for (int a = 0; a < N; ++a)
        for (int b = a + 1; b < N; ++b)
            d += 2.0 * (std::log(std::abs(mu[a] - mu[b])) + std::log(std::abs(lam[a] - lam[b])));
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) d -= 2.0 * std::log(std::abs(mu[a] - lam[b]));
    r.log_discrete = d;
    return r;
}

// ---------------------------------------------------------------------------
//  Large-L asymptotics of the discrete part
// ---------------------------------------------------------------------------

namespace {

double derivative5(const std::function<double(double)>& f, double x, double h) {
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12.0 * h);
}

// kappa[nu](lambda) = exp{ -int_{-q}^{q} (nu(lambda) - nu(mu)) / (lambda - mu) dmu }
double log_kappa(const std::function<double(double)>& nu, double q, double lambda,
                 double nu_lambda, int n = 96) {
    const GaussLegendre g = gauss_legendre(n, -q, q);
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = lambda - g.x[i];
        if (std::abs(d) < 1e-7) {
            const double h = 1e-4 * q;
            s += g.w[i] * derivative5(nu, lambda, h);
        } else {
            s += g.w[i] * (nu_lambda - nu(g.x[i])) / d;
        }
    }
    return -s;
}

double aleph(const std::function<double(double)>& nu, const DressedData& dd, double omega,
             int n = 96) {
    const double q = dd.q();
    auto phi_fn = [&](double a, double b) {
        if (std::abs(a - b) < 1e-9) return 2.0 * M_PI / dd.Z(a);
        return 2.0 * M_PI * (a - b) / (dd.p(a) - dd.p(b));
    };
    const double nu_om = nu(omega);
    double v = nu_om * std::log(phi_fn(omega, q) / phi_fn(omega, -q));
    const GaussLegendre g = gauss_legendre(n, -q, q);
    for (int i = 0; i < n; ++i) {
        const double d = g.x[i] - omega;
        if (std::abs(d) < 1e-7) {
            v += g.w[i] * derivative5(nu, omega, 1e-4 * q);
        } else {
            v += g.w[i] * (nu(g.x[i]) - nu_om) / d;
        }
    }
    return v;
}

}  // namespace

double log_discrete_asymptotics(const std::function<double(double)>& nu,
                                const DressedData& d, const ExcitationSpec& spec,
                                const BetheState& ground) {
    const int N = ground.N;
    const double L = ground.L;
    const double q = d.q();
    const int n = static_cast<int>(spec.particles.size());
    if (spec.holes.size() != spec.particles.size())
        throw std::invalid_argument("log_discrete_asymptotics: #p != #h");
    for (long p : spec.particles)
        if (p >= 1 && p <= N + 1)
            throw std::invalid_argument("log_discrete_asymptotics: particle inside [1,N+1]");

    std::vector<double> mup(n), muh(n);
    for (int a = 0; a < n; ++a) {
        mup[a] = d.xi_inverse(static_cast<double>(spec.particles[a]) / L);
        muh[a] = d.xi_inverse(static_cast<double>(spec.holes[a]) / L);
    }
    const double nu_q = nu(q), nu_mq = nu(-q);
    const double lam_np1 = ground.background_root(N + 1);
    const double xi_prime_q = d.Z(q) / (2.0 * M_PI);

    // ---- D0 ----
    double v = std::log(q / M_PI);
    v += nu_mq * log_kappa(nu, q, -q, nu_mq);
    v -= (nu_q + 2.0) * log_kappa(nu, q, q, nu_q);
    for (int a = 0; a < n; ++a)
        v += 2.0 * (std::log(std::abs(lam_np1 - mup[a])) - std::log(std::abs(lam_np1 - muh[a])));
    v += 2.0 * ln_barnes_g(cplx(1.0 - nu_mq, 0.0)).real();
    v += 2.0 * ln_barnes_g(cplx(2.0 + nu_q, 0.0)).real();
    v -= (nu_q - nu_mq) * std::log(2.0 * M_PI);
    v -= ((nu_q + 1.0) * (nu_q + 1.0) + nu_mq * nu_mq) * std::log(2.0 * q * L * xi_prime_q);
    {
        // antisymmetric double integral on offset grids
        const GaussLegendre ga = gauss_legendre(72, -q, q), gb = gauss_legendre(73, -q, q);
        std::vector<double> nua(ga.size()), nupa(ga.size()), nub(gb.size()), nupb(gb.size());
        for (int i = 0; i < ga.size(); ++i) {
            nua[i] = nu(ga.x[i]);
            nupa[i] = derivative5(nu, ga.x[i], 1e-4 * q);
        }
        for (int j = 0; j < gb.size(); ++j) {
            nub[j] = nu(gb.x[j]);
            nupb[j] = derivative5(nu, gb.x[j], 1e-4 * q);
        }
        double ii = 0.0;
        for (int i = 0; i < ga.size(); ++i)
            for (int j = 0; j < gb.size(); ++j)
                ii += ga.w[i] * gb.w[j] * (nupa[i] * nub[j] - nupb[j] * nua[i]) /
                      (2.0 * (ga.x[i] - gb.x[j]));
        v += ii;
    }

    // ---- R_{N,n} ----
    auto phi_fn = [&](double a, double b) {
        if (std::abs(a - b) < 1e-9) return 2.0 * M_PI / d.Z(a);
        return 2.0 * M_PI * (a - b) / (d.p(a) - d.p(b));
    };
    for (int a = 0; a < n; ++a) {
        v += 2.0 * (std::log(phi_fn(muh[a], muh[a])) + std::log(phi_fn(mup[a], mup[a])) +
                    std::log(phi_fn(q, mup[a])) + aleph(nu, d, mup[a]) -
                    std::log(phi_fn(mup[a], muh[a])) - std::log(phi_fn(muh[a], mup[a])) -
                    std::log(phi_fn(q, muh[a])) - aleph(nu, d, muh[a]));
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a < b)
                v += 2.0 * (std::log(phi_fn(mup[a], mup[b])) + std::log(phi_fn(muh[a], muh[b])));
            if (a != b) v -= 2.0 * std::log(phi_fn(mup[a], muh[b]));
        }
    {
        Eigen::MatrixXd cau(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                cau(a, b) = 1.0 / (spec.holes[a] - spec.particles[b]);
        v += 2.0 * std::log(std::abs(cau.determinant()));
    }
    for (int a = 0; a < n; ++a) {
        const double nup = nu(mup[a]), nuh = nu(muh[a]);
        const double s = std::sin(M_PI * nuh);
        v += std::log(s * s / (M_PI * M_PI));
        const double p = static_cast<double>(spec.particles[a]);
        const double h = static_cast<double>(spec.holes[a]);
        v += 2.0 * (std::lgamma(p - N + nup) + std::lgamma(p) + std::lgamma(N + 1 - h - nuh) +
                    std::lgamma(h + nuh) - std::lgamma(p - N - 1.0) - std::lgamma(p + nup) -
                    std::lgamma(N + 2 - h) - std::lgamma(h));
    }
    return v;
}

// ---------------------------------------------------------------------------
//  Thermodynamic limit of the smooth part
// ---------------------------------------------------------------------------

namespace {

int winding_number(const std::vector<cplx>& values) {
    double total = 0.0;
    for (size_t i = 0; i < values.size(); ++i) {
        const cplx a = values[i], b = values[(i + 1) % values.size()];
        total += std::arg(b / a);
    }
    return static_cast<int>(std::lround(total / (2.0 * M_PI)));
}

}  // namespace

cplx smooth_limit_Gn(const DressedData& d, const std::function<cplx(cplx)>& f,
                     const std::vector<double>& particles, const std::vector<double>& holes,
                     const GnOptions& opt) {
    const double q = d.q(), c = d.c();
    const cplx ic(0.0, c);
    const cplx two_i_pi(0.0, 2.0 * M_PI);
    const int n = static_cast<int>(particles.size());
    if (holes.size() != particles.size())
        throw std::invalid_argument("smooth_limit_Gn: #p != #h");

    // Cauchy transform of f on [-q, q]
    const int ns = 128;
    GaussLegendre gs = gauss_legendre(ns, -q, q);
    std::vector<cplx> samples(ns);
    for (int i = 0; i < ns; ++i) samples[i] = f(gs.x[i]);
    const CauchyTransform C(gs, samples);

    // admissible loop around [-q, q]
    double hh = opt.half_height_factor * std::min(0.5 * c, q);
    Quadrature loop;
    bool ok = false;
    for (int attempt = 0; attempt < opt.max_shrink; ++attempt) {
        const ContourDescriptor cd =
            ContourDescriptor::rectangle(0.0, q + hh, hh, opt.points_per_side);
        loop = contour_quadrature(cd);
        std::vector<cplx> wm(loop.size()), wp(loop.size());
        double minmod = HUGE_VAL;
        for (int i = 0; i < loop.size(); ++i) {
            const cplx fv = f(loop.nodes[i]);
            wm[i] = std::exp(-two_i_pi * fv) - 1.0;
            wp[i] = std::exp(two_i_pi * fv) - 1.0;
            minmod = std::min(minmod, std::min(std::abs(wm[i]), std::abs(wp[i])));
        }
        if (minmod > 1e-8 && winding_number(wm) == 0 && winding_number(wp) == 0) {
            ok = true;
            break;
        }
        hh *= 0.7;
    }
    if (!ok)
        throw std::runtime_error(
            "smooth_limit_Gn: no admissible loop (analytic continuation not attempted)");

    auto excitation_factor = [&](cplx w, double shift_sign) {
        // Prod_a (w - mu_p)(w - mu_h + i s c) / ((w - mu_h)(w - mu_p + i s c))
        cplx v = 1.0;
        for (int a = 0; a < n; ++a)
            v *= (w - particles[a]) * (w - holes[a] + shift_sign * ic) /
                 ((w - holes[a]) * (w - particles[a] + shift_sign * ic));
        return v;
    };

    const int m = loop.size();
    Eigen::MatrixXcd MU(m, m), MUbar(m, m);
    for (int i = 0; i < m; ++i) {
        const cplx w = loop.nodes[i];
        const cplx fw = f(w);
        const cplx gU = (-1.0 / (2.0 * M_PI)) * (w - q) / (w - q + ic) *
                        excitation_factor(w, +1.0) *
                        std::exp(two_i_pi * (C(w) - C(w + ic))) /
                        (std::exp(-two_i_pi * fw) - 1.0);
        const cplx gUbar = (1.0 / (2.0 * M_PI)) * (w - q) / (w - q - ic) *
                           excitation_factor(w, -1.0) *
                           std::exp(two_i_pi * (C(w) - C(w - ic))) /
                           (std::exp(two_i_pi * fw) - 1.0);
        for (int j = 0; j < m; ++j) {
            const cplx k = 2.0 * c / (std::pow(w - loop.nodes[j], 2) + c * c);
            MU(i, j) = (i == j ? 1.0 : 0.0) + gU * k * loop.weights[j];
            MUbar(i, j) = (i == j ? 1.0 : 0.0) + gUbar * k * loop.weights[j];
        }
    }
    const cplx detU = MU.partialPivLu().determinant();
    const cplx detUbar = MUbar.partialPivLu().determinant();

    cplx pref = 1.0;
    for (int a = 0; a < n; ++a)
        for (double eps : {1.0, -1.0})
            pref *= (holes[a] - q + eps * ic) / (particles[a] - q + eps * ic) *
                    std::exp(two_i_pi * (C(holes[a] + eps * ic) - C(particles[a] + eps * ic)));
    pref *= std::exp(-two_i_pi * (C(q + ic) + C(q - ic)));
    pref /= d.fredholm_det() * d.fredholm_det();
    pref *= std::exp(C.c0(c));
    // W_n over the excitation rapidities
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            pref *= (particles[a] - holes[b] - ic) * (holes[a] - particles[b] - ic) /
                    ((particles[a] - particles[b] - ic) * (holes[a] - holes[b] - ic));

    return pref * detU * detUbar;
}

double critical_class_amplitude_R(const std::vector<long>& p, const std::vector<long>& h,
                                  double F) {
    for (size_t a = 1; a < p.size(); ++a)
        if (p[a] <= p[a - 1]) throw std::invalid_argument("R: particles not increasing");
    for (size_t a = 1; a < h.size(); ++a)
        if (h[a] <= h[a - 1]) throw std::invalid_argument("R: holes not increasing");
    if (!p.empty() && p.front() < 1) throw std::invalid_argument("R: integers must be >= 1");
    if (!h.empty() && h.front() < 1) throw std::invalid_argument("R: integers must be >= 1");
    const double sF = std::sin(M_PI * F);
    if (!h.empty() && std::abs(F - std::round(F)) < 1e-15) return 0.0;

    double lv = 2.0 * h.size() * std::log(std::abs(sF) / M_PI);
    for (size_t a = 0; a < p.size(); ++a)
        for (size_t b = 0; b < a; ++b) lv += 2.0 * std::log(static_cast<double>(p[a] - p[b]));
    for (size_t a = 0; a < h.size(); ++a)
        for (size_t b = 0; b < a; ++b) lv += 2.0 * std::log(static_cast<double>(h[a] - h[b]));
    for (long pa : p)
        for (long hb : h) lv -= 2.0 * std::log(static_cast<double>(pa + hb - 1));
    for (long pa : p) lv += 2.0 * (std::lgamma(pa + F) - std::lgamma(pa));
    for (long hb : h) lv += 2.0 * (std::lgamma(hb - F) - std::lgamma(hb));
    return std::exp(lv);
}

ScalingFit ell_class_scaling_check(double c, double h, int ell,
                                   const std::vector<double>& L_list) {
    const DressedData d(c, h);
    const double D = d.density();
    std::vector<double> lx, ly;
    for (double L : L_list) {
        const int N = std::max(2, static_cast<int>(std::lround(D * L)));
        const BetheState gs = bethe::ground_state(L, N, c);
        std::vector<long> holes, particles;
        for (int a = 1; a <= std::abs(ell); ++a) {
            if (ell > 0) {
                holes.push_back(a);
                particles.push_back(N + 1 + a);
            } else {
                holes.push_back(N + 2 - a);
                particles.push_back(1 - a);
            }
        }
        const BetheState ex = ell == 0 ? bethe::ground_state(L, N + 1, c)
                                       : bethe::excited_state(L, N + 1, c, holes, particles);
        const FormFactorResult r = ff_conjugated_field(gs, ex);
        lx.push_back(std::log(L));
        ly.push_back(r.log_ff2);
    }
    // least squares slope
    const int m = static_cast<int>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < m; ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double icept = (sy - slope * sx) / m;
    double res = 0.0;
    for (int i = 0; i < m; ++i) res += std::pow(ly[i] - slope * lx[i] - icept, 2);

    ScalingFit out;
    out.exponent = -slope;
    const auto [fp, fm] = linint::fermi_boundary_values(d, ell);
    out.predicted = std::pow(fp + ell, 2) + std::pow(fm + ell, 2);
    out.fit_residual = std::sqrt(res / m);
    return out;
}

}  // namespace intlab::ff
