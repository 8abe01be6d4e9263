#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <optional>

#include "intlab/quadrature.hpp"

namespace intlab::linint {

// Lieb-Liniger two-body kernel and bare phase.
inline double theta_ll(double lambda, double c) { return 2.0 * std::atan(lambda / c); }
inline double kernel_ll(double lambda, double c) { return 2.0 * c / (lambda * lambda + c * c); }
inline cplx theta_ll(cplx lambda, double c) {
    const cplx ic(0.0, c);
    return cplx(0.0, 1.0) * (std::log(ic + lambda) - std::log(ic - lambda));
}
inline cplx kernel_ll(cplx lambda, double c) {
    return 2.0 * c / (lambda * lambda + c * c);
}

// Nystrom solution of f(x) - (1/2pi) \int_a^b K(x,y) f(y) dy = rhs(x).
struct Fredholm2Solution {
    GaussLegendre grid;
    Eigen::VectorXd values;
    double residual = 0.0;      // sup-norm of the discretized equation
    double rcond = 0.0;         // reciprocal condition estimate of the system
    // natural Nystrom interpolation, valid for any real x
    std::function<double(double)> rhs;
    std::function<double(double, double)> kernel;
    double eval(double x) const;
};

Fredholm2Solution solve_fredholm2(const std::function<double(double, double)>& kernel,
                                  const std::function<double(double)>& rhs, double a,
                                  double b, int n);

// Zero-temperature dressed quantities at coupling c and chemical potential h.
class DressedData {
public:
    DressedData(double c, double h, int n = 64);

    double c() const { return c_; }
    double h() const { return h_; }
    double q() const { return q_; }
    int grid_size() const { return grid_.size(); }
    const GaussLegendre& grid() const { return grid_; }

    double eps(double lambda) const;      // dressed energy
    double Z(double lambda) const;        // dressed charge
    double p(double lambda) const;        // dressed momentum (odd, p(0)=0)
    double p_prime(double lambda) const;  // = Z for this model
    double phi(double lambda, double mu) const;  // dressed phase
    // analytic continuation off the real axis (valid in the |Im| < c strip)
    cplx Z_c(cplx lambda) const;
    cplx phi_c(cplx lambda, double mu) const;

    double pF() const { return p(q_); }          // Fermi momentum
    double density() const { return pF() / M_PI; }  // D = N/L limit

    // thermodynamic counting function xi = p/(2pi) + D/2 and its inverse
    double xi(double omega) const { return p(omega) / (2.0 * M_PI) + 0.5 * density(); }
    double xi_inverse(double value) const;

    double fredholm_det() const { return det_id_minus_k_; }  // det[I - K/2pi] on [-q,q]

private:
    double c_, h_, q_;
    GaussLegendre grid_;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
    Eigen::VectorXd eps_, z_;
    mutable std::vector<std::pair<double, Eigen::VectorXd>> phi_cache_;
    double det_id_minus_k_ = 1.0;

    Eigen::VectorXd solve_column(const Eigen::VectorXd& rhs) const;
    double nystrom_eval(const Eigen::VectorXd& vals,
                        const std::function<double(double)>& rhs, double x) const;
    const Eigen::VectorXd& phi_column(double mu) const;
};

// Solve eps(+-Q | Q) = 0 for the Fermi boundary; returns (q, data).
std::pair<double, DressedData> fermi_boundary(double c, double h, int n = 64);

// Shift function F_beta^{(kappa)} of an excited state with particle/hole
// rapidities mu_p (outside [-q,q]) and mu_h (inside).
struct ShiftFunction {
    std::shared_ptr<const DressedData> data;
    cplx beta = 0.0;
    int kappa = 1;
    std::vector<double> particles, holes;
    bool particle_inside_warned = false;

    cplx operator()(double lambda) const;
    cplx at_c(cplx lambda) const;  // analytic continuation
    double real_at(double lambda) const { return (*this)(lambda).real(); }
};

ShiftFunction shift_function(std::shared_ptr<const DressedData> d, cplx beta, int kappa,
                             std::vector<double> particles, std::vector<double> holes);

// Boundary values F_ell^{+-} = ell (Z(q)-1) +- Z(q)^{-1}/2 of the ell-critical class.
std::pair<double, double> fermi_boundary_values(const DressedData& d, int ell);

}  // namespace intlab::linint
