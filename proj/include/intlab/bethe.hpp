#pragma once

#include <vector>

#include "intlab/linint.hpp"
#include "intlab/quadrature.hpp"

namespace intlab::bethe {

// Solution of the logarithmic Bethe equations
//   L mu_r + sum_p theta(mu_r - mu_p) = 2 pi (l_r - (N+1)/2) + 2 i pi beta
// for the repulsive delta Bose gas.  For beta != 0 the (real) solution of the
// beta = 0 system is shifted by 2 i pi beta / L.
struct BetheState {
    double L = 0.0;
    int N = 0;
    double c = 0.0;
    std::vector<long> integers;   // strictly increasing quantum integers
    std::vector<double> roots;    // beta = 0 part, strictly increasing
    cplx beta = 0.0;
    double residual = 0.0;        // sup-norm of the log equations
    int newton_iterations = 0;

    cplx root(int a) const { return roots[a] + 2.0 * M_PI * cplx(0.0, 1.0) * beta / L; }
    double energy(double h) const;    // sum mu^2 - h N
    double momentum() const;          // sum mu

    // counting function of this state and its derivative
    double xi_hat(double omega) const;
    double xi_hat_prime(double omega) const;
    // unique solution of xi_hat(mu) = a / L
    double background_root(long a) const;
};

BetheState solve_bethe(double L, int N, double c, std::vector<long> integers,
                       cplx beta = 0.0);

// Ground state in the N quasi-particle sector: integers 1..N.
BetheState ground_state(double L, int N, double c);

// Excited state described by hole positions in [1,N] and particle integers
// outside [1,N]; the remaining integers keep their ground-state values.
BetheState excited_state(double L, int N, double c, const std::vector<long>& holes,
                         const std::vector<long>& particles);

// Finite-L shift function L (xi_ground - xi_excited)(omega) between two states
// of the same volume.
double discrete_shift(const BetheState& ground, const BetheState& excited, double omega);

struct ExcitationEP {
    double dP_exact, dE_exact;
    double dP_thermo, dE_thermo;
};

// Exact excitation momentum/energy from the roots and their thermodynamic
// forms from the dressed quantities; rapidities are obtained by inverting the
// asymptotic counting function at p_a/L and h_a/L.
ExcitationEP excitation_ep(const BetheState& ground, const BetheState& excited,
                           const linint::DressedData& dressed,
                           const std::vector<long>& particles,
                           const std::vector<long>& holes);

}  // namespace intlab::bethe
