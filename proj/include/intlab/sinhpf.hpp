#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "intlab/quadrature.hpp"

namespace intlab::sinhpf {

// Rescaled sinh-interaction model at inverse lattice scale T_N:
//   Z_N[V] = int prod_{a<b} sinh(pi T_N (l_a - l_b)/w1) sinh(pi T_N (l_a-l_b)/w2)
//            prod_a e^{-N T_N V(l_a)} d^N l
struct SinhModel {
    int N = 1;
    double T_N = 1.0;
    double omega1 = 1.0, omega2 = 1.0;
    double g = 1.0, t = 0.0;  // Gaussian potential V = g l^2 + t l
};

// log of the closed product formula for the Gaussian potential
double gaussian_partition_exact(const SinhModel& m);

// all displayed terms of the large-N expansion (window (ln N)^2 < T_N < N^{1-eps})
struct AsymptoticResult {
    double value = 0.0;
    bool window_ok = true;
};
AsymptoticResult gaussian_partition_asymptotic(const SinhModel& m);

// direct quadrature of Z_N for N <= 3 (oracle)
double gaussian_partition_quadrature(const SinhModel& m, int n_points = 160);

// equilibrium density of a strictly convex potential
struct EquilibriumDensity {
    double a = 0.0, b = 0.0;      // support endpoints
    double mass = 0.0;             // int rho, should be 1
    double leading = 0.0;          // lim ln Z_N / (N^2 T_N)
    std::function<double(double)> rho;
    bool mass_consistent = true;
};

EquilibriumDensity equilibrium_density(const std::function<double(double)>& V,
                                       const std::function<double(double)>& Vp,
                                       const std::function<double(double)>& Vpp,
                                       double omega1, double omega2);

// single-site Metropolis sampling of the rescaled measure
struct McResult {
    std::vector<double> bin_centers, bin_density, bin_sigma;
    double acceptance = 0.0;
    double autocorr_time = 0.0;  // integrated, of the sum of squares observable
};

McResult sinh_metropolis(const SinhModel& m, int n_sweeps, int n_burn, uint64_t seed,
                         int n_bins, double bin_lo, double bin_hi);

}  // namespace intlab::sinhpf
