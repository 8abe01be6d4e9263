#include "intlab/qtm_xxz.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace intlab::qtm {

namespace {

const cplx kI(0.0, 1.0);
const cplx kTwoIPi(0.0, 2.0 * M_PI);

// theta_XXZ(l) = ln[ sinh(eta - l) / sinh(eta + l) ], principal ratio branch
cplx theta_xxz(cplx l, cplx eta) { return std::log(std::sinh(eta - l) / std::sinh(eta + l)); }
cplx theta_xxz_prime(cplx l, cplx eta) {
    return -1.0 / std::tanh(eta - l) - 1.0 / std::tanh(eta + l);
}

cplx driving(cplx w, cplx eta, double J, double T) {
    const cplx sh = std::sinh(eta);
    return -2.0 * J * sh * sh / (T * std::sinh(w) * std::sinh(w + eta));
}

// stable log(1 + e^z)
cplx ln_1p_exp(cplx z) {
    if (z.real() > 0.0) return z + std::log(1.0 + std::exp(-z));
    return std::log(1.0 + std::exp(z));
}

struct NlieWork {
    Eigen::MatrixXcd kernel;  // theta'(w_i - w_j) w_j / (2 i pi)
};

NlieWork make_work(const Quadrature& q, cplx eta) {
    NlieWork w;
    const int m = q.size();
    w.kernel.resize(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            w.kernel(i, j) =
                theta_xxz_prime(q.nodes[i] - q.nodes[j], eta) * q.weights[j] / kTwoIPi;
    return w;
}

// inner fixed point for ln a on the contour at given subsidiary roots
void solve_nlie(QtmSolution& s, const NlieWork& work, const QtmOptions& opt) {
    const int m = s.quad.size();
    Eigen::VectorXcd lna(m), rhs0(m), l1p(m);
    for (int i = 0; i < m; ++i) {
        cplx d = -s.hprime / s.T + driving(s.quad.nodes[i], s.eta, s.J, s.T);
        for (const cplx& x : s.holes) d += theta_xxz(s.quad.nodes[i] - x, s.eta);
        for (const cplx& y : s.particles) d -= theta_xxz(s.quad.nodes[i] - y, s.eta);
        rhs0[i] = d;
        lna[i] = s.ln_a.empty() ? d : s.ln_a[i];
    }
    double upd = HUGE_VAL;
    int it = 0;
    for (; it < opt.max_iter; ++it) {
        for (int i = 0; i < m; ++i) l1p[i] = ln_1p_exp(lna[i]);
        Eigen::VectorXcd next = rhs0 - work.kernel * l1p;
        upd = 0.0;
        for (int i = 0; i < m; ++i) {
            next[i] = (1.0 - opt.damping) * lna[i] + opt.damping * next[i];
            upd = std::max(upd, std::abs(next[i] - lna[i]));
        }
        lna = next;
        if (upd < opt.tol) break;
    }
    if (upd > 1e-9)
        throw std::runtime_error("qtm NLIE: iteration did not converge (T too low or "
                                 "contour unsuitable), update " + std::to_string(upd));
    s.iterations = it + 1;
    s.final_update = upd;
    s.ln_a.resize(m);
    s.ln_1pa.resize(m);
    for (int i = 0; i < m; ++i) {
        s.ln_a[i] = lna[i];
        s.ln_1pa[i] = ln_1p_exp(lna[i]);
    }
}

}  // namespace

cplx QtmSolution::ln_a_at(cplx z) const {
    cplx d = -hprime / T + driving(z, eta, J, T);
    for (const cplx& x : holes) d += theta_xxz(z - x, eta);
    for (const cplx& y : particles) d -= theta_xxz(z - y, eta);
    for (int j = 0; j < quad.size(); ++j)
        d -= theta_xxz_prime(z - quad.nodes[j], eta) * quad.weights[j] * ln_1pa[j] / kTwoIPi;
    return d;
}

cplx QtmSolution::ln_1pa_at(cplx z) const { return ln_1p_exp(ln_a_at(z)); }

bool QtmSolution::inside(cplx z) const {
    return std::abs(z.real() - contour.center.real()) < contour.half_width &&
           std::abs(z.imag() - contour.center.imag()) < contour.half_height;
}

QtmSolution qtm_dominant(double J, double zeta, double h, double T, const QtmOptions& opt) {
    if (!(zeta > 0.0) || !(zeta < M_PI)) throw std::invalid_argument("qtm: need 0 < zeta < pi");
    if (!(T > 0.0)) throw std::invalid_argument("qtm: need T > 0");
    QtmSolution s;
    s.J = J;
    s.zeta = zeta;
    s.h = h;
    s.hprime = h;
    s.T = T;
    s.eta = cplx(0.0, -zeta);
    const double gamma = opt.contour_height_factor * zeta;
    double Lw = opt.contour_halfwidth;
    if (Lw <= 0.0) {
        // driving term below 1e-12 at the contour ends
        Lw = 2.0;
        while (std::abs(driving(cplx(Lw, 0.0), s.eta, J, T)) > 1e-12) Lw += 0.5;
        Lw += 1.0;
    }
    s.contour = ContourDescriptor::rectangle(0.0, Lw, gamma, opt.points_long_side);
    s.quad = contour_quadrature(s.contour);
    // rebuild with fewer points on the short sides
    {
        Quadrature q;
        const cplx hw(Lw, 0.0), hh(0.0, gamma);
        const cplx corners[4] = {-hw - hh, hw - hh, hw + hh, -hw + hh};
        const int pts[4] = {opt.points_long_side, opt.points_short_side,
                            opt.points_long_side, opt.points_short_side};
        for (int e = 0; e < 4; ++e) {
            GaussLegendre g = gauss_legendre(pts[e], 0.0, 1.0);
            const cplx d = corners[(e + 1) % 4] - corners[e];
            for (int i = 0; i < g.size(); ++i) {
                q.nodes.push_back(corners[e] + d * g.x[i]);
                q.weights.push_back(d * g.w[i]);
            }
        }
        s.quad = q;
    }
    const NlieWork work = make_work(s.quad, s.eta);
    solve_nlie(s, work, opt);
    return s;
}

double free_energy_xxz(const QtmSolution& s) {
    cplx acc = 0.0;
    for (int j = 0; j < s.quad.size(); ++j) {
        const cplx nu = s.quad.nodes[j];
        acc += s.quad.weights[j] * std::sinh(s.eta) /
               (std::sinh(nu + s.eta) * std::sinh(nu)) * s.ln_1pa[j];
    }
    const cplx f = -0.5 * s.h + 2.0 * s.J * std::cosh(s.eta) - s.T * acc / kTwoIPi;
    return f.real();
}

QtmSolution qtm_excited(const QtmSolution& base, std::vector<cplx> hole_guesses,
                        std::vector<cplx> particle_guesses, double hprime,
                        const QtmOptions& opt) {
    QtmSolution s = base;
    s.hprime = hprime;
    s.holes = std::move(hole_guesses);
    s.particles = std::move(particle_guesses);
    const NlieWork work = make_work(s.quad, s.eta);

    const int nroots = static_cast<int>(s.holes.size() + s.particles.size());
    if (nroots == 0) {
        solve_nlie(s, work, opt);
        return s;
    }
    auto pack = [&](int k) -> cplx& {
        return k < static_cast<int>(s.holes.size())
                   ? s.holes[k]
                   : s.particles[k - s.holes.size()];
    };
    double res = HUGE_VAL;
    for (int outer = 0; outer < 60; ++outer) {
        solve_nlie(s, work, opt);
        // Newton step on  1 + a(root) = 0  for every subsidiary root
        res = 0.0;
        std::vector<cplx> steps(nroots);
        for (int k = 0; k < nroots; ++k) {
            const cplx z = pack(k);
            const cplx f0 = 1.0 + std::exp(s.ln_a_at(z));
            const double dz = 1e-6;
            const cplx fp = 1.0 + std::exp(s.ln_a_at(z + dz));
            const cplx fm = 1.0 + std::exp(s.ln_a_at(z - dz));
            const cplx der = (fp - fm) / (2.0 * dz);
            cplx step = f0 / der;
            if (std::abs(step) > 0.25) step *= 0.25 / std::abs(step);  // trust region
            steps[k] = step;
            res = std::max(res, std::abs(f0));
        }
        if (res < 1e-10) break;
        for (int k = 0; k < nroots; ++k) pack(k) -= steps[k];
    }
    s.subsidiary_residual = res;
    if (res > 1e-8)
        throw std::runtime_error("qtm_excited: subsidiary conditions did not converge");
    for (const cplx& x : s.holes)
        if (!s.inside(x)) throw std::runtime_error("qtm_excited: hole migrated outside contour");
    for (const cplx& y : s.particles)
        if (s.inside(y)) throw std::runtime_error("qtm_excited: particle migrated inside contour");
    return s;
}

cplx correlation_length_ratio(const QtmSolution& dominant, const QtmSolution& excited) {
    cplx lnrho = 0.0;
    for (const cplx& y : excited.particles)
        lnrho += std::log(std::sinh(y + excited.eta) / std::sinh(y));
    for (const cplx& x : excited.holes)
        lnrho -= std::log(std::sinh(x + excited.eta) / std::sinh(x));
    for (int j = 0; j < dominant.quad.size(); ++j) {
        const cplx nu = dominant.quad.nodes[j];
        const cplx z = (dominant.ln_1pa[j] - excited.ln_1pa[j]) / kTwoIPi;
        lnrho += dominant.quad.weights[j] * std::sinh(dominant.eta) /
                 (std::sinh(nu + dominant.eta) * std::sinh(nu)) * z;
    }
    return std::exp(lnrho);
}

// ---------------------------------------------------------------------------
//  sigma^z amplitudes
// ---------------------------------------------------------------------------

namespace {

// i pi periodic Cauchy transform L[z](w) = \oint z(nu) coth(nu - w) d nu
struct PeriodicCauchy {
    const Quadrature* quad;
    std::vector<cplx> values;  // z(nu) on the contour
    cplx operator()(cplx w) const {
        cplx s = 0.0;
        for (int j = 0; j < quad->size(); ++j)
            s += quad->weights[j] * values[j] / std::tanh(quad->nodes[j] - w);
        return s;
    }
};

cplx k_kernel(cplx l, cplx eta, double e_dh) {
    return (1.0 / std::tanh(l - eta) - e_dh / std::tanh(l + eta)) / kTwoIPi;
}

struct SFunctional {
    double value_re, value_im;
};

// the S^(h,h') functional of one excited state against the dominant one
cplx s_functional(const QtmSolution& dom, const QtmSolution& exc, double theta1,
                  double theta2, const AmplitudeOptions& opt) {
    const cplx eta = dom.eta;
    const double T = dom.T;
    const double e_dh_exp = (dom.hprime - exc.hprime) / T;  // (h - h')/T
    const double e_dh = std::exp(e_dh_exp);

    // z on the shared contour
    PeriodicCauchy Lz;
    Lz.quad = &dom.quad;
    Lz.values.resize(dom.quad.size());
    for (int j = 0; j < dom.quad.size(); ++j)
        Lz.values[j] = (dom.ln_1pa[j] - exc.ln_1pa[j]) / kTwoIPi;

    // double integral over C and a shrunk copy C'
    cplx dbl = 0.0;
    {
        const double shrink = 0.82;
        ContourDescriptor inner = dom.contour;
        inner.half_height *= shrink;
        inner.half_width -= 0.35;
        Quadrature qi = contour_quadrature(inner);
        std::vector<cplx> zi(qi.size());
        for (int j = 0; j < qi.size(); ++j)
            zi[j] = (dom.ln_1pa_at(qi.nodes[j]) - exc.ln_1pa_at(qi.nodes[j])) / kTwoIPi;
        auto cothp = [](cplx u) { const cplx s = std::sinh(u); return -1.0 / (s * s); };
        for (int i = 0; i < dom.quad.size(); ++i) {
            cplx row = 0.0;
            for (int j = 0; j < qi.size(); ++j)
                row += qi.weights[j] * zi[j] *
                       (cothp(dom.quad.nodes[i] - qi.nodes[j] + eta) -
                        cothp(dom.quad.nodes[i] - qi.nodes[j]));
            dbl += dom.quad.weights[i] * Lz.values[i] * row;
        }
    }

    // Gamma(C): inflated rectangle for the U determinants
    ContourDescriptor big = dom.contour;
    big.half_height = std::min(0.46 * dom.zeta, dom.contour.half_height * 1.5);
    big.half_width += 0.8;
    Quadrature qb;
    {
        const cplx hw(big.half_width, 0.0), hh(0.0, big.half_height);
        const cplx corners[4] = {-hw - hh, hw - hh, hw + hh, -hw + hh};
        const int pts[4] = {opt.gamma_points_long, opt.gamma_points_short,
                            opt.gamma_points_long, opt.gamma_points_short};
        for (int e = 0; e < 4; ++e) {
            GaussLegendre g = gauss_legendre(pts[e], 0.0, 1.0);
            const cplx d = corners[(e + 1) % 4] - corners[e];
            for (int i = 0; i < g.size(); ++i) {
                qb.nodes.push_back(corners[e] + d * g.x[i]);
                qb.weights.push_back(d * g.w[i]);
            }
        }
    }
    const int mb = qb.size();
    std::vector<cplx> L0(mb), Lm(mb), Lp(mb);
    for (int i = 0; i < mb; ++i) {
        L0[i] = Lz(qb.nodes[i]);
        Lm[i] = Lz(qb.nodes[i] - eta);
        Lp[i] = Lz(qb.nodes[i] + eta);
    }
    Eigen::MatrixXcd Ul(mb, mb), Um(mb, mb);
    for (int i = 0; i < mb; ++i) {
        const cplx denom_l = std::exp(-Lm[i]) - e_dh * std::exp(-Lp[i]);
        for (int j = 0; j < mb; ++j) {
            const cplx kl = k_kernel(qb.nodes[i] - qb.nodes[j], eta, e_dh) -
                            k_kernel(theta1 - qb.nodes[j], eta, e_dh);
            Ul(i, j) = (i == j ? 1.0 : 0.0) -
                       std::exp(-L0[i]) * kl / denom_l * qb.weights[j];
            const cplx denom_m = std::exp(Lp[j]) - e_dh * std::exp(Lm[j]);
            const cplx km = k_kernel(qb.nodes[i] - qb.nodes[j], eta, e_dh) -
                            k_kernel(qb.nodes[i] - theta2, eta, e_dh);
            Um(i, j) = (i == j ? 1.0 : 0.0) +
                       std::exp(L0[j]) * km / denom_m * qb.weights[j];
        }
    }
    const cplx det_ul = Ul.partialPivLu().determinant();
    const cplx det_um = Um.partialPivLu().determinant();

    // det[id + K_hat] on the contour itself, for both states
    auto khat_det = [&](const QtmSolution& st) {
        const int mc = st.quad.size();
        Eigen::MatrixXcd K(mc, mc);
        for (int i = 0; i < mc; ++i) {
            const cplx a_inv = std::exp(-st.ln_a[i]);
            for (int j = 0; j < mc; ++j)
                K(i, j) = (i == j ? 1.0 : 0.0) +
                          k_kernel(st.quad.nodes[i] - st.quad.nodes[j], st.eta, 1.0) /
                              (1.0 + a_inv) * st.quad.weights[j];
        }
        return K.partialPivLu().determinant();
    };
    const cplx det_kl = khat_det(dom);
    const cplx det_km = khat_det(exc);

    const cplx d1 = std::exp(-Lz(theta1 - eta)) - e_dh * std::exp(-Lz(theta1 + eta));
    const cplx d2 = std::exp(Lz(theta2 + eta)) - e_dh * std::exp(Lz(theta2 - eta));
    const cplx one_m = 1.0 - e_dh;

    return std::exp(dbl) * one_m * one_m / (d1 * d2) * det_ul * det_um / (det_kl * det_km);
}

}  // namespace

cplx amplitude_sigma_z(const QtmSolution& dominant, const QtmSolution& excited,
                       const AmplitudeOptions& opt) {
    const double T = dominant.T;
    const double h = dominant.h;
    const double step = opt.stencil_step_factor * T;
    AmplitudeOptions o = opt;
    if (o.theta1 == 0.0) o.theta1 = dominant.contour.half_width + 0.9;
    if (o.theta2 == 0.0) o.theta2 = dominant.contour.half_width + 1.4;

    // 5-point stencil in h'; the center value vanishes by the (1-e^{dh/T})^2
    // prefactor but is evaluated anyway as a consistency point.
    cplx svals[5];
    QtmOptions qopt;  // defaults match qtm_dominant
    for (int k = -2; k <= 2; ++k) {
        const double hp = h + k * step;
        QtmSolution exc_k = (k == 0) ? excited
                                     : qtm_excited(excited, excited.holes,
                                                   excited.particles, hp, qopt);
        svals[k + 2] = s_functional(dominant, exc_k, o.theta1, o.theta2, o);
    }
    const cplx d2s =
        (-svals[0] + 16.0 * svals[1] - 30.0 * svals[2] + 16.0 * svals[3] - svals[4]) /
        (12.0 * step * step);
    const cplx rho = correlation_length_ratio(dominant, excited);
    return -2.0 * T * T / rho * (rho - 1.0) * (rho - 1.0) * d2s;
}

double boundary_magnetization(const QtmSolution& dominant, cplx xi_minus) {
    const cplx eta = dominant.eta;
    const double T = dominant.T, J = dominant.J;
    const cplx pt = -xi_minus;
    // distance to the contour
    double dist = HUGE_VAL;
    for (const cplx& z : dominant.quad.nodes) dist = std::min(dist, std::abs(z - pt));
    if (dist < 1e-3)
        throw std::invalid_argument("boundary_magnetization: -xi too close to the contour");

    cplx acc = 0.0;
    for (int j = 0; j < dominant.quad.size(); ++j) {
        const cplx w = dominant.quad.nodes[j];
        const cplx sh = std::sinh(w + xi_minus);
        acc += dominant.quad.weights[j] * dominant.ln_1pa[j] / (sh * sh);
    }
    acc /= kTwoIPi;

    cplx delta_term = 0.0;
    if (dominant.inside(pt)) {
        const double dz = 1e-5;
        const cplx lap = dominant.ln_a_at(pt + dz), lam = dominant.ln_a_at(pt - dz);
        const cplx a0 = std::exp(dominant.ln_a_at(pt));
        const cplx aprime = a0 * (lap - lam) / (2.0 * dz);
        delta_term = aprime / (1.0 + a0);
    }
    const cplx sxi = std::sinh(xi_minus);
    const cplx v = 1.0 + T * sxi * sxi / (J * std::sinh(eta)) * (delta_term + acc);
    return v.real();
}

}  // namespace intlab::qtm
