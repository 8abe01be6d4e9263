#include "intlab/bethe.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace intlab::bethe {

using linint::kernel_ll;
using linint::theta_ll;

namespace {

// antiderivative of theta, even, theta1(0) = 0
double theta1(double lambda, double c) {
    return lambda * theta_ll(lambda, c) - c * std::log1p(lambda * lambda / (c * c));
}

double yang_yang_value(const std::vector<double>& mu, const std::vector<double>& rhs2pi,
                       double L, double c) {
    const int n = static_cast<int>(mu.size());
    double w = 0.0;
    for (int r = 0; r < n; ++r) w += 0.5 * L * mu[r] * mu[r] - rhs2pi[r] * mu[r];
    for (int r = 0; r < n; ++r)
        for (int p = 0; p < r; ++p) w += theta1(mu[r] - mu[p], c);
    return w;
}

}  // namespace

double BetheState::energy(double h) const {
    double e = 0.0;
    for (double m : roots) e += m * m;
    return e - h * N;
}

double BetheState::momentum() const {
    double p = 0.0;
    for (double m : roots) p += m;
    return p;
}

double BetheState::xi_hat(double omega) const {
    double s = omega / (2.0 * M_PI) + (N + 1) / (2.0 * L);
    for (double m : roots) s += theta_ll(omega - m, c) / (2.0 * M_PI * L);
    return s;
}

double BetheState::xi_hat_prime(double omega) const {
    double s = 1.0 / (2.0 * M_PI);
    for (double m : roots) s += kernel_ll(omega - m, c) / (2.0 * M_PI * L);
    return s;
}

double BetheState::background_root(long a) const {
    double x = 2.0 * M_PI * (a - 0.5 * (N + 1)) / L;
    for (int it = 0; it < 100; ++it) {
        const double step = (xi_hat(x) - static_cast<double>(a) / L) / xi_hat_prime(x);
        x -= step;
        if (std::abs(step) < 1e-14 * (1.0 + std::abs(x))) break;
    }
    return x;
}

BetheState solve_bethe(double L, int N, double c, std::vector<long> integers, cplx beta) {
    if (!(c > 1e-3)) throw std::invalid_argument("solve_bethe: coupling below 1e-3 rejected");
    if (N < 1 || !(L > 0.0)) throw std::invalid_argument("solve_bethe: bad L or N");
    if (!std::is_sorted(integers.begin(), integers.end()) ||
        std::adjacent_find(integers.begin(), integers.end()) != integers.end())
        throw std::invalid_argument("solve_bethe: integers must be strictly increasing");

    std::vector<double> mu(N), rhs2pi(N);
    for (int r = 0; r < N; ++r) {
        rhs2pi[r] = 2.0 * M_PI * (integers[r] - 0.5 * (N + 1));
        mu[r] = rhs2pi[r] / L;
    }

    Eigen::VectorXd g(N);
    Eigen::MatrixXd hess(N, N);
    double resid = 0.0, prev_resid = HUGE_VAL;
    int iterations = 0;
    const double scale = 2.0 * M_PI * (std::abs(rhs2pi[0]) + std::abs(rhs2pi[N - 1]) + N);
    const double target = std::max(1e-14, 2e-16 * scale);
    for (int it = 0; it < 200; ++it) {
        iterations = it + 1;
        for (int r = 0; r < N; ++r) {
            double s = L * mu[r] - rhs2pi[r];
            for (int p = 0; p < N; ++p) s += theta_ll(mu[r] - mu[p], c);
            g[r] = s;
        }
        resid = g.lpNorm<Eigen::Infinity>();
        if (resid <= target) break;
        if (it > 8 && resid >= 0.99 * prev_resid && resid < 1e-9) break;  // fp plateau
        prev_resid = resid;
        for (int r = 0; r < N; ++r) {
            double diag = L;
            for (int p = 0; p < N; ++p) {
                const double k = kernel_ll(mu[r] - mu[p], c);
                diag += k;
                hess(r, p) = -k;
            }
            hess(r, r) += diag;
        }
        Eigen::VectorXd step = hess.llt().solve(g);
        // backtracking line search on the convex Yang-Yang value; skipped in
        // the asymptotic regime where full Newton steps converge quadratically
        double t = 1.0;
        if (resid > 1e-6 * scale) {
            const double w0 = yang_yang_value(mu, rhs2pi, L, c);
            const double slope = g.dot(step);
            std::vector<double> trial(N);
            for (int bt = 0; bt < 50; ++bt) {
                for (int r = 0; r < N; ++r) trial[r] = mu[r] - t * step[r];
                if (yang_yang_value(trial, rhs2pi, L, c) <= w0 - 0.25 * t * slope) break;
                t *= 0.5;
            }
        }
        for (int r = 0; r < N; ++r) mu[r] -= t * step[r];
    }
    if (resid > 1e-9)
        throw std::runtime_error("solve_bethe: Newton stalled, residual " +
                                 std::to_string(resid));

    BetheState st;
    st.L = L;
    st.N = N;
    st.c = c;
    st.integers = std::move(integers);
    st.roots = std::move(mu);
    st.beta = beta;
    st.residual = resid;
    st.newton_iterations = iterations;
    return st;
}

BetheState ground_state(double L, int N, double c) {
    std::vector<long> ints(N);
    for (int a = 0; a < N; ++a) ints[a] = a + 1;
    return solve_bethe(L, N, c, std::move(ints));
}

BetheState excited_state(double L, int N, double c, const std::vector<long>& holes,
                         const std::vector<long>& particles) {
    if (holes.size() != particles.size())
        throw std::invalid_argument("excited_state: #holes != #particles");
    std::vector<long> ints;
    for (long a = 1; a <= N; ++a)
        if (std::find(holes.begin(), holes.end(), a) == holes.end()) ints.push_back(a);
    for (long p : particles) {
        if (p >= 1 && p <= N)
            throw std::invalid_argument("excited_state: particle integer inside [1,N]");
        ints.push_back(p);
    }
    std::sort(ints.begin(), ints.end());
    return solve_bethe(L, N, c, std::move(ints));
}

double discrete_shift(const BetheState& ground, const BetheState& excited, double omega) {
    return ground.L * (ground.xi_hat(omega) - excited.xi_hat(omega));
}

ExcitationEP excitation_ep(const BetheState& ground, const BetheState& excited,
                           const linint::DressedData& dressed,
                           const std::vector<long>& particles, const std::vector<long>& holes) {
    if (ground.c != excited.c || ground.L != excited.L)
        throw std::invalid_argument("excitation_ep: mismatched states");
    ExcitationEP r{};
    r.dP_exact = excited.momentum() - ground.momentum();
    r.dE_exact = excited.energy(dressed.h()) - ground.energy(dressed.h());
    r.dP_thermo = 0.0;
    r.dE_thermo = 0.0;
    const double L = ground.L;
    for (long p : particles) {
        const double mu = dressed.xi_inverse(static_cast<double>(p) / L);
        r.dP_thermo += dressed.p(mu);
        r.dE_thermo += dressed.eps(mu);
    }
    for (long h : holes) {
        const double mu = dressed.xi_inverse(static_cast<double>(h) / L);
        r.dP_thermo -= dressed.p(mu);
        r.dE_thermo -= dressed.eps(mu);
    }
    return r;
}

}  // namespace intlab::bethe
