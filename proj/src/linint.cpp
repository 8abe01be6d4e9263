#include "intlab/linint.hpp"

#include <cmath>

namespace intlab::linint {

double Fredholm2Solution::eval(double x) const {
    // natural Nystrom interpolation f(x) = rhs(x) + (1/2pi) sum w_j K(x,y_j) f_j
    double s = rhs(x);
    for (int j = 0; j < grid.size(); ++j)
        s += grid.w[j] * kernel(x, grid.x[j]) * values[j] / (2.0 * M_PI);
    return s;
}

Fredholm2Solution solve_fredholm2(const std::function<double(double, double)>& kernel,
                                  const std::function<double(double)>& rhs, double a,
                                  double b, int n) {
    Fredholm2Solution sol;
    sol.grid = gauss_legendre(n, a, b);
    sol.rhs = rhs;
    sol.kernel = kernel;
    Eigen::MatrixXd A(n, n);
    Eigen::VectorXd r(n);
    for (int i = 0; i < n; ++i) {
        r[i] = rhs(sol.grid.x[i]);
        for (int j = 0; j < n; ++j)
            A(i, j) = (i == j ? 1.0 : 0.0) -
                      sol.grid.w[j] * kernel(sol.grid.x[i], sol.grid.x[j]) / (2.0 * M_PI);
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    sol.values = lu.solve(r);
    sol.residual = (A * sol.values - r).lpNorm<Eigen::Infinity>();
    const double anorm = A.lpNorm<1>();
    const double ainvnorm = lu.inverse().lpNorm<1>();
    sol.rcond = 1.0 / (anorm * ainvnorm);
    if (sol.rcond < 1e-14) throw std::runtime_error("solve_fredholm2: singular system");
    return sol;
}

namespace {

// Dressed-energy boundary value eps(Q | Q); increasing in Q.
double eps_boundary_value(double c, double h, double Q, int n) {
    if (Q <= 0.0) return -h;
    auto ker = [c](double x, double y) { return kernel_ll(x - y, c); };
    auto rhs = [h](double x) { return x * x - h; };
    Fredholm2Solution s = solve_fredholm2(ker, rhs, -Q, Q, n);
    return s.eval(Q);
}

double find_fermi_q(double c, double h, int n) {
    if (!(h > 0.0)) throw std::invalid_argument("fermi_boundary: need h > 0");
    if (!(c > 0.0)) throw std::invalid_argument("fermi_boundary: need c > 0");
    double lo = 1e-8, hi = 2.0 * std::sqrt(h);
    double flo = eps_boundary_value(c, h, lo, n);
    double fhi = eps_boundary_value(c, h, hi, n);
    int guard = 0;
    while (fhi < 0.0 && guard++ < 60) {
        lo = hi;
        flo = fhi;
        hi *= 2.0;
        fhi = eps_boundary_value(c, h, hi, n);
    }
    if (fhi < 0.0) throw std::runtime_error("fermi_boundary: no bracket found");
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = eps_boundary_value(c, h, mid, n);
        if (fm < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
        if (hi - lo < 1e-6 * hi) break;
    }
    double q = lo - flo * (hi - lo) / (fhi - flo);
    for (int it = 0; it < 12; ++it) {
        const double f0 = eps_boundary_value(c, h, q, n);
        const double dq = 1e-6 * std::max(q, 1e-3);
        const double f1 = eps_boundary_value(c, h, q + dq, n);
        const double step = f0 * dq / (f1 - f0);
        q -= step;
        if (std::abs(step) < 1e-13 * q) break;
    }
    return q;
}

}  // namespace

DressedData::DressedData(double c, double h, int n) : c_(c), h_(h) {
    q_ = find_fermi_q(c, h, n);
    grid_ = gauss_legendre(n, -q_, q_);
    Eigen::MatrixXd A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            A(i, j) = (i == j ? 1.0 : 0.0) -
                      grid_.w[j] * kernel_ll(grid_.x[i] - grid_.x[j], c) / (2.0 * M_PI);
    lu_.compute(A);
    det_id_minus_k_ = A.determinant();
    Eigen::VectorXd rhs_eps(n), rhs_z(n);
    for (int i = 0; i < n; ++i) {
        rhs_eps[i] = grid_.x[i] * grid_.x[i] - h;
        rhs_z[i] = 1.0;
    }
    eps_ = lu_.solve(rhs_eps);
    z_ = lu_.solve(rhs_z);
}

Eigen::VectorXd DressedData::solve_column(const Eigen::VectorXd& rhs) const {
    return lu_.solve(rhs);
}

double DressedData::nystrom_eval(const Eigen::VectorXd& vals,
                                 const std::function<double(double)>& rhs, double x) const {
    double s = rhs(x);
    for (int j = 0; j < grid_.size(); ++j)
        s += grid_.w[j] * kernel_ll(x - grid_.x[j], c_) * vals[j] / (2.0 * M_PI);
    return s;
}

double DressedData::eps(double lambda) const {
    return nystrom_eval(eps_, [this](double x) { return x * x - h_; }, lambda);
}

double DressedData::Z(double lambda) const {
    return nystrom_eval(z_, [](double) { return 1.0; }, lambda);
}

double DressedData::p_prime(double lambda) const { return Z(lambda); }

double DressedData::p(double lambda) const {
    // dressed momentum as the antiderivative of the dressed charge
    if (lambda == 0.0) return 0.0;
    const GaussLegendre g = gauss_legendre(48, 0.0, std::abs(lambda));
    double s = 0.0;
    for (int i = 0; i < g.size(); ++i) s += g.w[i] * Z(g.x[i]);
    return lambda > 0 ? s : -s;
}

const Eigen::VectorXd& DressedData::phi_column(double mu) const {
    for (auto& [m, col] : phi_cache_)
        if (m == mu) return col;
    Eigen::VectorXd rhs(grid_.size());
    for (int i = 0; i < grid_.size(); ++i)
        rhs[i] = theta_ll(grid_.x[i] - mu, c_) / (2.0 * M_PI);
    phi_cache_.emplace_back(mu, solve_column(rhs));
    return phi_cache_.back().second;
}

double DressedData::phi(double lambda, double mu) const {
    const Eigen::VectorXd& col = phi_column(mu);
    return nystrom_eval(
        col, [this, mu](double x) { return theta_ll(x - mu, c_) / (2.0 * M_PI); }, lambda);
}

cplx DressedData::Z_c(cplx lambda) const {
    cplx s = 1.0;
    for (int j = 0; j < grid_.size(); ++j)
        s += grid_.w[j] * kernel_ll(lambda - grid_.x[j], c_) * z_[j] / (2.0 * M_PI);
    return s;
}

cplx DressedData::phi_c(cplx lambda, double mu) const {
    const Eigen::VectorXd& col = phi_column(mu);
    cplx s = theta_ll(lambda - mu, c_) / (2.0 * M_PI);
    for (int j = 0; j < grid_.size(); ++j)
        s += grid_.w[j] * kernel_ll(lambda - grid_.x[j], c_) * col[j] / (2.0 * M_PI);
    return s;
}

double DressedData::xi_inverse(double value) const {
    double x = 2.0 * M_PI * (value - 0.5 * density());  // c = infinity guess (p = id)
    for (int it = 0; it < 100; ++it) {
        const double f = xi(x) - value;
        const double step = f * 2.0 * M_PI / Z(x);
        x -= step;
        if (std::abs(step) < 1e-13 * (1.0 + std::abs(x))) break;
    }
    return x;
}

std::pair<double, DressedData> fermi_boundary(double c, double h, int n) {
    DressedData d(c, h, n);
    return {d.q(), std::move(d)};
}

cplx ShiftFunction::operator()(double lambda) const {
    cplx v = (cplx(0.0, 1.0) * beta - 0.5 * kappa) * data->Z(lambda);
    v -= static_cast<double>(kappa) * data->phi(lambda, data->q());
    for (double mp : particles) v -= data->phi(lambda, mp);
    for (double mh : holes) v += data->phi(lambda, mh);
    return v;
}

cplx ShiftFunction::at_c(cplx lambda) const {
    cplx v = (cplx(0.0, 1.0) * beta - 0.5 * kappa) * data->Z_c(lambda);
    v -= static_cast<double>(kappa) * data->phi_c(lambda, data->q());
    for (double mp : particles) v -= data->phi_c(lambda, mp);
    for (double mh : holes) v += data->phi_c(lambda, mh);
    return v;
}

ShiftFunction shift_function(std::shared_ptr<const DressedData> d, cplx beta, int kappa,
                             std::vector<double> particles, std::vector<double> holes) {
    ShiftFunction f;
    f.data = std::move(d);
    f.beta = beta;
    f.kappa = kappa;
    f.particles = std::move(particles);
    f.holes = std::move(holes);
    const double q = f.data->q();
    for (double mh : f.holes) {
        if (std::abs(mh) > q * 1.05)
            throw std::invalid_argument("shift_function: hole rapidity outside [-q,q]");
        if (std::abs(mh) > q) f.particle_inside_warned = true;  // boundary collapse
    }
    for (double mp : f.particles)
        if (std::abs(mp) < q) f.particle_inside_warned = true;  // boundary collapse
    return f;
}

std::pair<double, double> fermi_boundary_values(const DressedData& d, int ell) {
    const double zq = d.Z(d.q());
    const double base = ell * (zq - 1.0);
    return {base + 0.5 / zq, base - 0.5 / zq};
}

}  // namespace intlab::linint
