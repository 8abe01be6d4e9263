#pragma once

#include "intlab/quadrature.hpp"

namespace intlab::sumid {

// Restricted multiple sum S_ell(nu | z) over particle-hole integer
// configurations with n_p - n_h = ell, graded by z^{sum(p_a - 1) + sum h_a}.
struct SumParams {
    long ell = 0;
    cplx nu = 0.0;
    cplx z = 0.0;
    int cutoff = 40;  // max total z-grading kept in the brute-force sum
};

// Term-by-term enumeration (this is the independent oracle).
cplx s_ell_bruteforce(const SumParams& p);

// Closed form z^{ell(ell-1)/2} (1-z)^{-(nu+ell)^2} G^2(1+ell+nu) / G^2(1+nu).
cplx s_ell_closed(const SumParams& p);

}  // namespace intlab::sumid
