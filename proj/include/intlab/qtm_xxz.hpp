#pragma once

#include <optional>
#include <vector>

#include "intlab/quadrature.hpp"

namespace intlab::qtm {

// Infinite-Trotter NLIE data for one quantum-transfer-matrix eigenvalue of
// the massless XXZ chain (eta = -i zeta, Delta = cos zeta).
struct QtmSolution {
    double J = 1.0, zeta = 0.0, h = 0.0, T = 1.0;
    double hprime = 0.0;  // driving field of this state (= h for the dominant one)
    cplx eta;
    ContourDescriptor contour;
    Quadrature quad;
    std::vector<cplx> ln_a;        // ln frak-a on the contour nodes
    std::vector<cplx> ln_1pa;      // ln(1 + frak-a)
    std::vector<cplx> holes;       // x_a, inside the contour
    std::vector<cplx> particles;   // y_a, outside the contour
    int iterations = 0;
    double final_update = 0.0;
    double subsidiary_residual = 0.0;  // max |1 + a| at the roots
    // hypotheses carried, not verified (reported in outputs)
    bool assumes_unique_solution = true;
    bool assumes_single_contour = true;
    bool assumes_trotter_convergence = true;

    cplx ln_a_at(cplx z) const;        // NLIE representation off the contour
    cplx ln_1pa_at(cplx z) const;
    bool inside(cplx z) const;         // strictly inside the rectangle
};

struct QtmOptions {
    double contour_height_factor = 0.3;  // gamma = factor * zeta
    double contour_halfwidth = 0.0;      // 0: auto from the driving term
    int points_long_side = 256;
    int points_short_side = 16;
    double damping = 0.5;
    int max_iter = 4000;
    double tol = 1e-13;
};

QtmSolution qtm_dominant(double J, double zeta, double h, double T,
                         const QtmOptions& opt = {});

double free_energy_xxz(const QtmSolution& s);

// Excited state: self-consistent particle/hole roots of 1 + a = 0.
QtmSolution qtm_excited(const QtmSolution& base, std::vector<cplx> hole_guesses,
                        std::vector<cplx> particle_guesses, double hprime,
                        const QtmOptions& opt = {});

// rho^(n) = ratio of QTM eigenvalues, |rho| < 1 for subdominant states.
cplx correlation_length_ratio(const QtmSolution& dominant, const QtmSolution& excited);

// sigma^z form-factor amplitude in the Trotter limit, via the second
// h'-derivative of the S functional on a 5-point stencil.
struct AmplitudeOptions {
    double theta1 = 0.0, theta2 = 0.0;  // free parameters (0: auto)
    double stencil_step_factor = 1e-3;  // step = factor * T
    int gamma_points_long = 192;
    int gamma_points_short = 24;
};

cplx amplitude_sigma_z(const QtmSolution& dominant, const QtmSolution& excited,
                       const AmplitudeOptions& opt = {});

// Boundary magnetization <sigma_1^z> at boundary parameter xi_minus.
double boundary_magnetization(const QtmSolution& dominant, cplx xi_minus);

}  // namespace intlab::qtm
