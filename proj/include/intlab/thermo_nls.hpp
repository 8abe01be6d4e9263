#pragma once

#include <Eigen/Dense>

#include "intlab/quadrature.hpp"

namespace intlab::nlstherm {

// Solution of the Yang-Yang equation
//   eps(l) = l^2 - h - (T/2pi) \int K(l-m) ln(1 + e^{-eps(m)/T}) dm
// sampled on a truncation [-Lambda, Lambda] with Gaussian tail closure.
struct ThermalSolution {
    double c = 0.0, h = 0.0, T = 0.0, Lambda = 0.0;
    GaussLegendre grid;
    Eigen::VectorXd eps;
    int iterations = 0;
    double final_update = 0.0;

    double eval(double lambda) const;  // natural interpolation, any real lambda
};

ThermalSolution yang_yang_solve(double c, double h, double T, double Lambda = 0.0,
                                int n = 200,
                                const std::function<double(double)>& initial = {});

// f = \int ln[1 + e^{-eps/T}] dl / 2pi with the Gaussian-decay tail added.
double free_energy_nls(const ThermalSolution& s);

}  // namespace intlab::nlstherm
