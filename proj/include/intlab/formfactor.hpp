#pragma once

#include <functional>
#include <vector>

#include "intlab/bethe.hpp"
#include "intlab/linint.hpp"
#include "intlab/quadrature.hpp"

namespace intlab::ff {

using bethe::BetheState;
using linint::DressedData;
using linint::ShiftFunction;

// log of the squared Bethe-state norm (Gaudin determinant formula).
double log_gaudin_norm(const BetheState& s);
double gaudin_norm(const BetheState& s);

// Normalized |form factor|^2 of the conjugated field between an N-particle
// ground-type state and an (N+1)-particle excited state, together with its
// exact smooth/discrete factorization.
struct FormFactorResult {
    double log_ff2 = 0.0;      // ln of normalized |FF|^2
    double log_smooth = 0.0;   // ln G_hat
    double log_discrete = 0.0;  // ln D_hat
    double ff2() const { return std::exp(log_ff2); }
    double smooth() const { return std::exp(log_smooth); }
    double discrete() const { return std::exp(log_discrete); }
};

FormFactorResult ff_conjugated_field(const BetheState& ground, const BetheState& excited);

// Discrete shift function of the pair (ground N, excited N+1), real-valued.
double discrete_shift_function(const BetheState& ground, const BetheState& excited,
                               double omega);

// Large-L asymptotics of the discrete part: ln (D0 R_{N,n}).  The shift
// function nu plays the role of the thermodynamic limit of the discrete
// shift; particle/hole integers refer to the (N+1)-sector excited state.
struct ExcitationSpec {
    std::vector<long> particles;  // outside [1, N+1]
    std::vector<long> holes;      // inside  [1, N+1]
};

double log_discrete_asymptotics(const std::function<double(double)>& nu,
                                const DressedData& d, const ExcitationSpec& spec,
                                const BetheState& ground);

// Thermodynamic limit of the smooth part, evaluated by Fredholm determinants
// on a loop around [-q, q].
struct GnOptions {
    double half_height_factor = 0.3;  // fraction of the allowed strip
    int points_per_side = 96;
    int max_shrink = 8;
};

cplx smooth_limit_Gn(const DressedData& d, const std::function<cplx(cplx)>& f,
                     const std::vector<double>& particles, const std::vector<double>& holes,
                     const GnOptions& opt = {});

// Critical-class amplitude ratio R_{n_p, n_h}({p},{h} | F).
double critical_class_amplitude_R(const std::vector<long>& p, const std::vector<long>& h,
                                  double F);

// Least-squares fit of -d ln|FF|^2 / d ln L for the fundamental representative
// of the ell-critical class; compares against (F+_ell + ell + 1)^2 + (F-_ell + ell)^2.
struct ScalingFit {
    double exponent = 0.0;   // fitted decay exponent of |FF|^2
    double predicted = 0.0;  // from the dressed-charge boundary values
    double fit_residual = 0.0;
};

ScalingFit ell_class_scaling_check(double c, double h, int ell,
                                   const std::vector<double>& L_list);

}  // namespace intlab::ff
