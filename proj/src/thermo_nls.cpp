#include "intlab/thermo_nls.hpp"

#include <cmath>

#include "intlab/linint.hpp"

namespace intlab::nlstherm {

namespace {

// ln(1 + e^{-e/T}) without overflow
double ln1pe(double e, double T) {
    const double z = -e / T;
    if (z > 36.0) return z;
    if (z < -36.0) return std::exp(z);
    return std::log1p(std::exp(z));
}

// bare tail band [Lambda, Lambda_t] where eps ~ l^2 - h
double tail_band(double h, double T, double Lambda) {
    const double lt = std::sqrt(std::max(h, 0.0) + 45.0 * T) + 1.0;
    return std::max(lt, Lambda + 1.0);
}

}  // namespace

double ThermalSolution::eval(double lambda) const {
    double s = lambda * lambda - h;
    for (int j = 0; j < grid.size(); ++j)
        s -= T * grid.w[j] * linint::kernel_ll(lambda - grid.x[j], c) *
             ln1pe(eps[j], T) / (2.0 * M_PI);
    const double lt = tail_band(h, T, Lambda);
    const GaussLegendre tail = gauss_legendre(48, Lambda, lt);
    for (int j = 0; j < tail.size(); ++j) {
        const double bare = tail.x[j] * tail.x[j] - h;
        s -= T * tail.w[j] * ln1pe(bare, T) / (2.0 * M_PI) *
             (linint::kernel_ll(lambda - tail.x[j], c) +
              linint::kernel_ll(lambda + tail.x[j], c));
    }
    return s;
}

ThermalSolution yang_yang_solve(double c, double h, double T, double Lambda, int n,
                                const std::function<double(double)>& initial) {
    if (!(T > 0.0) || !(c > 0.0)) throw std::invalid_argument("yang_yang_solve: T, c > 0");
    ThermalSolution s;
    s.c = c;
    s.h = h;
    s.T = T;
    s.Lambda = Lambda > 0.0
                   ? Lambda
                   : 3.0 * std::max(std::sqrt(std::max(h, 0.0) + 36.0 * T), 1.0);
    s.grid = gauss_legendre(n, -s.Lambda, s.Lambda);
    s.eps.resize(n);
    for (int i = 0; i < n; ++i)
        s.eps[i] = initial ? initial(s.grid.x[i]) : s.grid.x[i] * s.grid.x[i] - h;

    // kernel matrix including the frozen bare tail
    Eigen::MatrixXd K(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            K(i, j) =
                s.grid.w[j] * linint::kernel_ll(s.grid.x[i] - s.grid.x[j], c) / (2.0 * M_PI);
    const double lt = tail_band(h, T, s.Lambda);
    const GaussLegendre tail = gauss_legendre(48, s.Lambda, lt);
    Eigen::VectorXd tail_term(n);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < tail.size(); ++j) {
            const double bare = tail.x[j] * tail.x[j] - h;
            acc += tail.w[j] * ln1pe(bare, T) *
                   (linint::kernel_ll(s.grid.x[i] - tail.x[j], c) +
                    linint::kernel_ll(s.grid.x[i] + tail.x[j], c)) /
                   (2.0 * M_PI);
        }
        tail_term[i] = acc;
    }

    Eigen::VectorXd lnv(n), next(n);
    double damping = 0.5;
    for (int it = 0; it < 10000; ++it) {
        s.iterations = it + 1;
        for (int i = 0; i < n; ++i) lnv[i] = ln1pe(s.eps[i], T);
        for (int i = 0; i < n; ++i) {
            const double rhs =
                s.grid.x[i] * s.grid.x[i] - h - T * (K.row(i).dot(lnv) + tail_term[i]);
            next[i] = (1.0 - damping) * s.eps[i] + damping * rhs;
        }
        s.final_update = (next - s.eps).lpNorm<Eigen::Infinity>();
        s.eps = next;
        if (s.final_update < 1e-3) damping = 1.0;  // accelerate near the fixed point
        if (s.final_update < 1e-13) break;
    }
    if (s.final_update > 1e-10)
        throw std::runtime_error("yang_yang_solve: no convergence in 10^4 iterations");
    return s;
}

double free_energy_nls(const ThermalSolution& s) {
    double f = 0.0;
    for (int j = 0; j < s.grid.size(); ++j)
        f += s.grid.w[j] * ln1pe(s.eps[j], s.T) / (2.0 * M_PI);
    const double lt = tail_band(s.h, s.T, s.Lambda);
    const GaussLegendre tail = gauss_legendre(48, s.Lambda, lt);
    for (int j = 0; j < tail.size(); ++j) {
        const double bare = tail.x[j] * tail.x[j] - s.h;
        f += 2.0 * tail.w[j] * ln1pe(bare, s.T) / (2.0 * M_PI);
    }
    return f;
}

}  // namespace intlab::nlstherm
