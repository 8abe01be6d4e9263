#pragma once

#include <vector>

#include "intlab/quadrature.hpp"

namespace intlab::toda {

// TBA data for a self-conjugate set sigma with |Im sigma_k| < hbar/2.
struct TbaSolution {
    std::vector<cplx> sigma;
    double hbar = 1.0;
    double Lambda = 0.0;
    GaussLegendre grid;               // composite core + tail panels
    std::vector<double> lnY;          // on the grid, >= 0
    std::vector<double> source;       // ln(1 + Y / (theta- theta+)) on the grid
    int iterations = 0;
    double final_update = 0.0;

    cplx vartheta(cplx z) const;      // prod (z - sigma_k)
    double source_at(int i) const { return source[i]; }
};

TbaSolution tba_solve(const std::vector<cplx>& sigma, double hbar, double Lambda = 0.0,
                      int n = 400, const std::vector<double>* warm_lnY = nullptr);

// q^{+-}(lambda) built from the auxiliary Cauchy-type functions v_up / v_down.
struct QPair {
    cplx qp, qm;
};
QPair q_functions(const TbaSolution& t, cplx lambda);

// Wronskian identity residual |lhs - rhs| / |rhs| at the given lambda.
double wronskian_residual(const TbaSolution& t, cplx lambda);

// transfer-matrix eigenvalue t(lambda) from the q-pair ratio
cplx transfer_eigenvalue(const TbaSolution& t, cplx lambda);

// monic-polynomial interpolation of t(lambda): coefficients (ascending, the
// last one should be 1), plus residual at 3 extra points
struct TransferPoly {
    std::vector<cplx> coeffs;  // degree N+1, coeffs.size() = N+2
    double interp_residual = 0.0;
    std::vector<cplx> roots;   // tau_k (degree <= 2 supported)
};
TransferPoly transfer_polynomial(const TbaSolution& t);

// quantization data for the closed chain at fixed total momentum epsilon
struct TodaSector {
    int n_particles = 2;  // N + 1
    double hbar = 1.0;
    double momentum = 0.0;  // epsilon
    std::vector<long> quantum_numbers;  // n_1 <= ... <= n_{N+1}
};

struct QuantizeResult {
    std::vector<cplx> sigma;
    double arg_zeta = 0.0;
    double residual = 0.0;
    TbaSolution tba;
    double energy_total = 0.0;     // E_2 / 2
    double energy_relative = 0.0;  // E_2/2 - eps^2/4
    std::vector<double> newton_powers;  // E_k, k = 1, 2
};

// Solve the quantization conditions for N+1 = 2; initial_imag selects the
// conjugate-pair branch (sigma = eps/2 +- i b), otherwise the real branch
// (sigma = eps/2 +- s).
QuantizeResult quantize(const TodaSector& sector, double initial_split, bool conjugate_pair);

}  // namespace intlab::toda
