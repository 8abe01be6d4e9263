#pragma once

#include <functional>
#include <string>
#include <vector>

#include "intlab/quadrature.hpp"

namespace intlab::fredholm {

// A named integral kernel evaluable at complex point pairs, with the
// removable-singularity value on the diagonal supplied analytically.
struct KernelSpec {
    std::string name;
    std::function<cplx(cplx, cplx)> eval;
    std::function<cplx(cplx)> diag;

    cplx operator()(cplx a, cplx b) const {
        if (a == b && diag) return diag(a);
        return eval(a, b);
    }

    // sine kernel sin(x(l-m)) / (pi (l-m))
    static KernelSpec sine(double x);
    // generalized sine kernel, functions nu, u, g with derivatives
    static KernelSpec gsk(std::function<cplx(cplx)> nu, std::function<cplx(cplx)> u,
                          std::function<cplx(cplx)> g, double x);
    // c-shifted kernel W_x and its unshifted partner S~_x
    static KernelSpec cshift_w(std::function<cplx(cplx)> F, std::function<cplx(cplx)> p,
                               double c, double x);
    static KernelSpec cshift_s(std::function<cplx(cplx)> F, std::function<cplx(cplx)> p,
                               double x);
    // kernels U_pm of the factorization theorem (alpha from ln(1+F))
    static KernelSpec u_pm(std::function<cplx(cplx)> alpha, double c, int sign);
};

// Fredholm determinant det[id + K] on an interval via Nystrom with symmetrized
// weights, or on a contour quadrature.
cplx nystrom_det(const KernelSpec& k, double a, double b, int n);
cplx nystrom_det(const KernelSpec& k, const Quadrature& q);

// Convergence-checked interval determinant: doubles n once and reports both.
struct DetPair {
    cplx value, refined;
    double change() const { return std::abs(value - refined); }
};
DetPair nystrom_det_checked(const KernelSpec& k, double a, double b, int n);

// Leading x -> +infinity asymptotics of det[id + V_x]: the three-term sum
// sum_{eps in {-1,0,1}} V^(0)_x[nu + eps, u, g].
cplx gsk_leading(const std::function<cplx(cplx)>& nu, const std::function<cplx(cplx)>& u,
                 const std::function<cplx(cplx)>& g, double q, double x);
// single term V^(0)_x[nu, u, g]
cplx gsk_v0(const std::function<cplx(cplx)>& nu, const std::function<cplx(cplx)>& u,
            const std::function<cplx(cplx)>& g, double q, double x);

// c-shift factorization: lhs = det[id+W_x]/det[id+S~_x] on [-q,q],
// rhs = det[id+U+] det[id+U-] on a loop inside |Im z| < c/2.
struct CshiftResult {
    cplx lhs, rhs;
};
CshiftResult cshift_factorization(const std::function<cplx(cplx)>& F,
                                  const std::function<cplx(cplx)>& p, double c, double q,
                                  double x, const ContourDescriptor& loop, int n_interval);

// Line-lacunary Toeplitz determinants: exact value and the
// det_N[c_{a-b}] det_n[M] prediction.
struct LacunarySpec {
    std::function<cplx(cplx)> symbol;  // non-vanishing on the unit circle
    int N = 32;
    std::vector<long> holes;      // in [1, N]
    std::vector<long> particles;  // outside [1, N]
    int n_fourier = 4096;
    double eta_z = 0.7, eta_s = 0.5;
    int n_contour = 512;
};

struct LacunaryResult {
    cplx exact, prediction;
    cplx det_pure;  // det_N[c_{a-b}]
};

LacunaryResult lacunary_toeplitz(const LacunarySpec& spec);

}  // namespace intlab::fredholm
