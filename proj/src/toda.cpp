#include "intlab/toda.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "intlab/special.hpp"

namespace intlab::toda {

namespace {

const cplx kI(0.0, 1.0);

double kernel_toda(double l, double hbar) { return hbar / (M_PI * (l * l + hbar * hbar)); }

}  // namespace

cplx TbaSolution::vartheta(cplx z) const {
    cplx v = 1.0;
    for (const cplx& s : sigma) v *= z - s;
    return v;
}

TbaSolution tba_solve(const std::vector<cplx>& sigma, double hbar, double Lambda, int n,
                      const std::vector<double>* warm_lnY) {
    TbaSolution t;
    t.sigma = sigma;
    t.hbar = hbar;
    for (const cplx& s : sigma) {
        if (std::abs(s.imag()) >= 0.5 * hbar)
            throw std::invalid_argument("tba_solve: sigma outside |Im| < hbar/2");
        bool found = false;
        for (const cplx& s2 : sigma)
            if (std::abs(std::conj(s) - s2) < 1e-10) found = true;
        if (!found) throw std::invalid_argument("tba_solve: sigma set not self-conjugate");
    }
    double smax = hbar;
    for (const cplx& s : sigma) smax = std::max(smax, std::abs(s));
    t.Lambda = Lambda > 0.0 ? Lambda : 10.0 * (smax + hbar);
    {
        GaussLegendre core = gauss_legendre(n, -t.Lambda, t.Lambda);
        GaussLegendre tl = gauss_legendre(64, -6.0 * t.Lambda, -t.Lambda);
        GaussLegendre tr = gauss_legendre(64, t.Lambda, 6.0 * t.Lambda);
        GaussLegendre g;
        g.a = -6.0 * t.Lambda;
        g.b = 6.0 * t.Lambda;
        g.x.insert(g.x.end(), tl.x.begin(), tl.x.end());
        g.x.insert(g.x.end(), core.x.begin(), core.x.end());
        g.x.insert(g.x.end(), tr.x.begin(), tr.x.end());
        g.w.insert(g.w.end(), tl.w.begin(), tl.w.end());
        g.w.insert(g.w.end(), core.w.begin(), core.w.end());
        g.w.insert(g.w.end(), tr.w.begin(), tr.w.end());
        t.grid = g;
    }
    const int m = t.grid.size();
    std::vector<double> den(m);
    for (int i = 0; i < m; ++i) {
        const cplx d = t.vartheta(t.grid.x[i] - 0.5 * kI * hbar) *
                       t.vartheta(t.grid.x[i] + 0.5 * kI * hbar);
        if (std::abs(d.imag()) > 1e-9 * std::abs(d) || d.real() <= 0.0)
            throw std::runtime_error("tba_solve: vartheta product not positive on the grid");
        den[i] = d.real();
    }
    Eigen::MatrixXd K(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            K(i, j) = kernel_toda(t.grid.x[i] - t.grid.x[j], hbar) * t.grid.w[j];

    t.lnY.assign(m, 0.0);
    if (warm_lnY && static_cast<int>(warm_lnY->size()) == m) t.lnY = *warm_lnY;
    Eigen::VectorXd src(m), next(m);
    double upd = HUGE_VAL;
    int it = 0;
    for (; it < 5000; ++it) {
        for (int i = 0; i < m; ++i) src[i] = std::log1p(std::exp(t.lnY[i]) / den[i]);
        next = K * src;
        upd = 0.0;
        for (int i = 0; i < m; ++i) {
            const double v = 0.5 * t.lnY[i] + 0.5 * next[i];
            upd = std::max(upd, std::abs(v - t.lnY[i]));
            t.lnY[i] = v;
        }
        if (upd < 1e-13) break;
    }
    if (upd > 1e-10) throw std::runtime_error("tba_solve: no convergence");
    t.iterations = it + 1;
    t.final_update = upd;
    t.source.resize(m);
    for (int i = 0; i < m; ++i) t.source[i] = std::log1p(std::exp(t.lnY[i]) / den[i]);
    return t;
}

namespace {

// analytic continuation of ln Y off the axis, valid for |Im z| < hbar
cplx ln_y_analytic(const TbaSolution& t, cplx z) {
    cplx s = 0.0;
    for (int i = 0; i < t.grid.size(); ++i) {
        const cplx d = z - t.grid.x[i];
        s += t.grid.w[i] * t.hbar / (M_PI * (d * d + t.hbar * t.hbar)) * t.source[i];
    }
    return s;
}

cplx source_analytic(const TbaSolution& t, cplx z) {
    const cplx den = t.vartheta(z - 0.5 * kI * t.hbar) * t.vartheta(z + 0.5 * kI * t.hbar);
    return std::log(1.0 + std::exp(ln_y_analytic(t, z)) / den);
}

// I(pole) = \int source(mu) / (pole - mu) dmu, defined on the half-plane
// sign(Im pole) = natural_sign and continued across the axis by the residue.
cplx cauchy_cont(const TbaSolution& t, cplx pole, int natural_sign) {
    cplx s = 0.0;
    double f0 = 0.0;
    const bool subtract = std::abs(pole.imag()) < 0.9 * t.hbar &&
                          pole.real() > t.grid.a && pole.real() < t.grid.b;
    if (subtract) {
        const auto& x = t.grid.x;
        const auto it = std::lower_bound(x.begin(), x.end(), pole.real());
        const int j =
            std::clamp(static_cast<int>(it - x.begin()), 1, static_cast<int>(x.size()) - 1);
        const double w = (pole.real() - x[j - 1]) / (x[j] - x[j - 1]);
        f0 = (1.0 - w) * t.source[j - 1] + w * t.source[j];
    }
    for (int i = 0; i < t.grid.size(); ++i)
        s += t.grid.w[i] * (t.source[i] - f0) / (pole - t.grid.x[i]);
    if (f0 != 0.0) s += f0 * (std::log(pole - t.grid.a) - std::log(pole - t.grid.b));
    const int side = pole.imag() > 0.0 ? 1 : -1;
    if (side != natural_sign) {
        // pole crossed the integration axis; add the residue of the kernel
        s += static_cast<double>(natural_sign) * 2.0 * M_PI * kI * source_analytic(t, pole);
    }
    return s;
}

QPair qpair_generic(const TbaSolution& t, cplx z) {
    const double hbar = t.hbar;
    const int np = static_cast<int>(t.sigma.size());
    // v_up: pole z + i hbar/2, natural half-plane Im > 0
    const cplx ln_vup = -cauchy_cont(t, z + 0.5 * kI * hbar, +1) / (2.0 * M_PI * kI);
    // v_down(z - i hbar): pole z - i hbar/2, natural half-plane Im < 0
    const cplx ln_vdn = cauchy_cont(t, z - 0.5 * kI * hbar, -1) / (2.0 * M_PI * kI);
    cplx lg_p = 0.0, lg_m = 0.0;
    for (const cplx& s : t.sigma) {
        lg_p += ln_gamma(1.0 - kI * (z - s) / hbar);
        lg_m += ln_gamma(1.0 + kI * (z - s) / hbar);
    }
    const cplx base = -static_cast<double>(np) * M_PI * z / hbar;
    QPair q;
    q.qp = std::exp(kI * static_cast<double>(np) * z / hbar * std::log(hbar) + base + ln_vup -
                    lg_p);
    q.qm = std::exp(-kI * static_cast<double>(np) * z / hbar * std::log(hbar) + base + ln_vdn -
                    lg_m);
    return q;
}

}  // namespace

QPair q_functions(const TbaSolution& t, cplx lambda) {
    if (std::abs(lambda.imag()) > 0.5 * t.hbar + 1e-12)
        throw std::invalid_argument("q_functions: lambda outside evaluation strip");
    return qpair_generic(t, lambda);
}

double wronskian_residual(const TbaSolution& t, cplx lambda) {
    const double hbar = t.hbar;
    const int np = static_cast<int>(t.sigma.size());
    const QPair a = qpair_generic(t, lambda);
    const QPair b = qpair_generic(t, lambda + kI * hbar);
    const cplx lhs = a.qp * b.qm - a.qm * b.qp;
    cplx rhs = std::pow(hbar * std::exp(-2.0 * M_PI * lambda / hbar) / (kI * M_PI),
                        static_cast<double>(np));
    for (const cplx& s : t.sigma) rhs *= std::sinh(M_PI * (lambda - s) / hbar);
    return std::abs(lhs - rhs) / std::abs(rhs);
}

cplx transfer_eigenvalue(const TbaSolution& t, cplx lambda) {
    const double hbar = t.hbar;
    const QPair qm1 = qpair_generic(t, lambda - kI * hbar);
    const QPair q0 = qpair_generic(t, lambda);
    const QPair qp1 = qpair_generic(t, lambda + kI * hbar);
    const cplx num = qm1.qp * qp1.qm - qp1.qp * qm1.qm;
    const cplx den = q0.qp * qp1.qm - qp1.qp * q0.qm;
    if (std::abs(den) < 1e-280)
        throw std::runtime_error("transfer_eigenvalue: vanishing Wronskian denominator");
    return num / den;
}

TransferPoly transfer_polynomial(const TbaSolution& t) {
    const int deg = static_cast<int>(t.sigma.size());
    const int n_fit = deg + 4;
    std::vector<cplx> xs(n_fit), ys(n_fit);
    double smax = 1.0;
    for (const cplx& s : t.sigma) smax = std::max(smax, std::abs(s));
    for (int i = 0; i < n_fit; ++i) {
        xs[i] = -2.0 * smax + 4.0 * smax * i / (n_fit - 1) + 0.13;
        ys[i] = transfer_eigenvalue(t, xs[i]);
    }
    Eigen::MatrixXcd V(n_fit, deg + 1);
    Eigen::VectorXcd rhs(n_fit);
    for (int i = 0; i < n_fit; ++i) {
        cplx p = 1.0;
        for (int k = 0; k <= deg; ++k) {
            V(i, k) = p;
            p *= xs[i];
        }
        rhs[i] = ys[i];
    }
    Eigen::VectorXcd co = V.colPivHouseholderQr().solve(rhs);
    TransferPoly out;
    out.coeffs.assign(co.data(), co.data() + deg + 1);
    double res = 0.0;
    for (int i = 0; i < 3; ++i) {
        const cplx x = 0.37 + 1.11 * i;
        cplx p = 0.0, xp = 1.0;
        for (int k = 0; k <= deg; ++k) {
            p += co[k] * xp;
            xp *= x;
        }
        res = std::max(res, std::abs(p - transfer_eigenvalue(t, x)));
    }
    out.interp_residual = res;
    if (deg == 2) {
        const cplx b = co[1] / co[2], c0 = co[0] / co[2];
        const cplx disc = std::sqrt(b * b - 4.0 * c0);
        out.roots = {0.5 * (-b + disc), 0.5 * (-b - disc)};
    }
    return out;
}

namespace {

// complex quantization-condition value at root k
cplx quant_value(const TbaSolution& t, int k, double arg_zeta) {
    const double hbar = t.hbar;
    const int np = static_cast<int>(t.sigma.size());
    const cplx sk = t.sigma[k];
    cplx v = static_cast<double>(np) * sk / hbar * std::log(hbar);
    v += -arg_zeta;  // i log zeta, |zeta| = 1
    for (int p = 0; p < np; ++p) {
        const cplx d = (sk - t.sigma[p]) / hbar;
        v += -kI * (ln_gamma(1.0 + kI * d) - ln_gamma(1.0 - kI * d));
    }
    cplx integ = 0.0;
    for (int i = 0; i < t.grid.size(); ++i) {
        const cplx den1 = sk - t.grid.x[i] + 0.5 * kI * hbar;
        const cplx den2 = sk - t.grid.x[i] - 0.5 * kI * hbar;
        integ += t.grid.w[i] * (1.0 / den1 + 1.0 / den2) * t.source[i];
    }
    return v + integ / (2.0 * M_PI);
}

}  // namespace

QuantizeResult quantize(const TodaSector& sector, double initial_split, bool conjugate_pair) {
    if (sector.n_particles != 2)
        throw std::invalid_argument("quantize: only N+1 = 2 supported at desk scale");
    const double hbar = sector.hbar;
    const double eps = sector.momentum;
    const long n1 = sector.quantum_numbers.at(0);
    const long n2 = sector.quantum_numbers.at(1);
    const double Lam =
        10.0 * (0.5 * std::abs(eps) + std::abs(initial_split) + hbar + 1.0);

    auto make_sigma = [&](double s) -> std::vector<cplx> {
        if (conjugate_pair) return {cplx(0.5 * eps, s), cplx(0.5 * eps, -s)};
        return {cplx(0.5 * eps + s, 0.0), cplx(0.5 * eps - s, 0.0)};
    };

    double u0 = initial_split, u1 = 0.0;  // unknowns: split, arg zeta
    TbaSolution tba;
    std::vector<double> warm;
    auto residuals = [&](double a, double b, double* r) {
        tba = tba_solve(make_sigma(a), hbar, Lam, 400, warm.empty() ? nullptr : &warm);
        warm = tba.lnY;
        if (conjugate_pair) {
            const cplx v = quant_value(tba, 0, b);
            r[0] = v.real() - 2.0 * M_PI * n1;
            r[1] = v.imag();
        } else {
            r[0] = quant_value(tba, 0, b).real() - 2.0 * M_PI * n1;
            r[1] = quant_value(tba, 1, b).real() - 2.0 * M_PI * n2;
        }
    };

    double r0[2], rp[2];
    double residual = HUGE_VAL;
    for (int it = 0; it < 80; ++it) {
        residuals(u0, u1, r0);
        residual = std::max(std::abs(r0[0]), std::abs(r0[1]));
        if (residual < 1e-9) break;
        const double da = 1e-6 * std::max(1.0, std::abs(u0));
        const double db = 1e-6;
        double ja[2], jb[2];
        residuals(u0 + da, u1, rp);
        ja[0] = (rp[0] - r0[0]) / da;
        ja[1] = (rp[1] - r0[1]) / da;
        residuals(u0, u1 + db, rp);
        jb[0] = (rp[0] - r0[0]) / db;
        jb[1] = (rp[1] - r0[1]) / db;
        const double det = ja[0] * jb[1] - jb[0] * ja[1];
        if (std::abs(det) < 1e-14) throw std::runtime_error("quantize: singular Jacobian");
        double du = (r0[0] * jb[1] - r0[1] * jb[0]) / det;
        double dv = (ja[0] * r0[1] - ja[1] * r0[0]) / det;
        const double cap = 0.5;
        const double mag = std::max(std::abs(du), std::abs(dv));
        if (mag > cap) {
            du *= cap / mag;
            dv *= cap / mag;
        }
        u0 -= du;
        u1 -= dv;
        if (conjugate_pair && std::abs(u0) >= 0.5 * hbar)
            u0 = 0.45 * hbar * (u0 > 0 ? 1.0 : -1.0);
    }
    if (residual > 1e-8) throw std::runtime_error("quantize: Newton did not converge");

    QuantizeResult out;
    out.sigma = make_sigma(u0);
    out.arg_zeta = u1;
    out.residual = residual;
    out.tba = tba_solve(out.sigma, hbar, Lam, 400, &warm);
    double ints = 0.0;
    for (int i = 0; i < out.tba.grid.size(); ++i)
        ints += out.tba.grid.w[i] * out.tba.source[i];
    double sum_s1 = 0.0, sum_s2 = 0.0;
    for (const cplx& s : out.sigma) {
        sum_s1 += s.real();
        sum_s2 += (s * s).real();
    }
    const double e1 = sum_s1;
    const double e2 = sum_s2 - hbar / M_PI * ints;
    out.newton_powers = {e1, e2};
    out.energy_total = 0.5 * e2;
    out.energy_relative = 0.5 * e2 - 0.25 * eps * eps;
    return out;
}

}  // namespace intlab::toda
