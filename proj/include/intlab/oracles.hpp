#pragma once

#include <complex>
#include <vector>

#include "intlab/quadrature.hpp"

namespace intlab::oracles {

enum class Boundary { Periodic, Diagonal };

// Dense thermal diagonalization of an XXZ chain
//   H = J sum_a [ sx sx + sy sy + Delta (sz sz + 1) ] - (h/2) sum_a sz
// (periodic), or the open chain with diagonal boundary fields parametrised by
// xi_-, xi_+ as J sinh(eta) coth(xi) sz at the edges, eta = -i zeta,
// Delta = cos(zeta).  Thermal traces are exact spectral sums.
struct EdResult {
    int L = 0;
    double J = 1.0, delta = 0.0, h = 0.0, T = 1.0;
    Boundary boundary = Boundary::Periodic;
    double f_per_site = 0.0;           // -T ln Z / L
    double sz1 = 0.0;                  // <sigma_1^z>
    std::vector<double> szsz_connected;  // <s_1 s_{1+m}> - <s_1><s_{1+m}>, m = 1..m_max
    double hermiticity_residual = 0.0;
    double ground_energy = 0.0;
};

EdResult ed_xxz(int L, double delta, double h, double T, double J, Boundary boundary,
                int m_max, cplx xi_minus = 0.0, cplx xi_plus = 0.0);

// Lowest eigenvalues of -hbar^2 d^2/dx^2 + 2 cosh(x) on [-box, box] with
// Dirichlet walls; second-order finite differences with Richardson
// extrapolation in the grid spacing.
struct TodaSpectrum {
    std::vector<double> levels;     // extrapolated
    double wall_amplitude = 0.0;    // max boundary eigenfunction magnitude
};

TodaSpectrum toda2_relative_spectrum(double hbar, double box = 20.0, int n = 3000,
                                     int n_levels = 5);

// Direct quadrature of Bethe wavefunction overlaps for the delta Bose gas,
// N <= 2.  With insert_field the bra has one more particle and the field
// operator is inserted at the origin:
//   <bra | Phi^dag(0) | ket> = int d^N x / N! conj(phi_bra(0, x)) phi_ket(x).
cplx nls_overlap_quadrature(double L, double c, const std::vector<double>& bra_roots,
                            const std::vector<double>& ket_roots, bool insert_field,
                            int n_quad = 160);

// Bethe eigenfunction of the continuum model (coordinate Bethe Ansatz).
cplx nls_wavefunction(double L, double c, const std::vector<double>& roots,
                      const std::vector<double>& x);

}  // namespace intlab::oracles
