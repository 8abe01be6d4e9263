#include "intlab/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace intlab::oracles {

namespace {

inline uint32_t rotl_bits(uint32_t s, int L) {
    return ((s << 1) | (s >> (L - 1))) & ((1u << L) - 1u);
}

inline int spin_z(uint32_t s, int a) { return (s >> a) & 1u ? -1 : 1; }

// orbit representative (minimal rotation) and period
void orbit_info(uint32_t s, int L, uint32_t& rep, int& period, int& shift_to_rep) {
    rep = s;
    shift_to_rep = 0;
    uint32_t t = s;
    period = L;
    for (int r = 1; r <= L; ++r) {
        t = rotl_bits(t, L);
        if (t < rep) {
            rep = t;
            shift_to_rep = r;
        }
        if (t == s) {
            period = r;
            break;
        }
    }
}

struct ThermalAccumulator {
    double T;
    double e_ref;                 // energy offset for stable exponentials
    double z = 0.0;               // sum of Boltzmann weights
    double sz_sum = 0.0;          // weights * (sum sz)/L
    std::vector<double> corr_sum;  // weights * translation-averaged sz sz
    double e_min = HUGE_VAL;

    explicit ThermalAccumulator(double temperature, int m_max, double eref)
        : T(temperature), e_ref(eref), corr_sum(m_max, 0.0) {}

    void add(double energy, double sz_per_site, const std::vector<double>& corr) {
        const double w = std::exp(-(energy - e_ref) / T);
        z += w;
        sz_sum += w * sz_per_site;
        for (size_t m = 0; m < corr_sum.size(); ++m) corr_sum[m] += w * corr[m];
        e_min = std::min(e_min, energy);
    }
};

// ---- periodic chain: S^z + momentum blocks ------------------------------

struct MomentumBlockResult {
    std::vector<double> energies;
    // per eigenstate: translation-averaged sz-sz correlators m = 1..m_max
    std::vector<std::vector<double>> corr;
    double herm = 0.0;
};

MomentumBlockResult solve_momentum_block(int L, int m_sector, double J, double delta,
                                         const std::vector<uint32_t>& reps,
                                         const std::vector<int>& periods, int m_max) {
    const int dim = static_cast<int>(reps.size());
    MomentumBlockResult out;
    if (dim == 0) return out;
    const double k = 2.0 * M_PI * m_sector / L;

    // index of representative in this block
    std::vector<int> index_of(reps.size());
    auto find_rep = [&](uint32_t r) {
        const auto it = std::lower_bound(reps.begin(), reps.end(), r);
        return (it != reps.end() && *it == r) ? static_cast<int>(it - reps.begin()) : -1;
    };

    std::vector<cplx> H(static_cast<size_t>(dim) * dim, cplx(0.0, 0.0));
    auto at = [&](int i, int j) -> cplx& { return H[static_cast<size_t>(i) * dim + j]; };

    for (int i = 0; i < dim; ++i) {
        const uint32_t s = reps[i];
        double diag = 0.0;
        for (int a = 0; a < L; ++a) {
            const int b = (a + 1) % L;
            const int za = spin_z(s, a), zb = spin_z(s, b);
            diag += J * delta * (za * zb + 1.0);
            if (za != zb) {
                // flip term 2J (sigma+ sigma- + h.c.)
                const uint32_t s2 = s ^ ((1u << a) | (1u << b));
                uint32_t rep;
                int period, shift;
                orbit_info(s2, L, rep, period, shift);
                const int j = find_rep(rep);
                if (j < 0) continue;  // incompatible momentum
                const cplx phase = std::exp(cplx(0.0, -k * shift));
                at(j, i) += 2.0 * J * phase *
                            std::sqrt(static_cast<double>(periods[i]) / periods[j]);
            }
        }
        at(i, i) += diag;  // field handled at sector level
    }

    // Hermiticity check
    double herm = 0.0;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j <= i; ++j)
            herm = std::max(herm, std::abs(at(i, j) - std::conj(at(j, i))));
    out.herm = herm;

    std::vector<double> evals(dim);
    const int info = LAPACKE_zheevd(LAPACK_ROW_MAJOR, 'V', 'L', dim, H.data(), dim,
                                    evals.data());
    if (info != 0) throw std::runtime_error("zheevd failed");

    // per-representative translation-averaged sz sz values
    std::vector<std::vector<double>> omr(m_max, std::vector<double>(dim));
    for (int i = 0; i < dim; ++i) {
        const uint32_t s = reps[i];
        for (int m = 1; m <= m_max; ++m) {
            double v = 0.0;
            for (int a = 0; a < L; ++a) v += spin_z(s, a) * spin_z(s, (a + m) % L);
            omr[m - 1][i] = v / L;
        }
    }

    out.energies = evals;
    out.corr.assign(dim, std::vector<double>(m_max, 0.0));
    for (int n = 0; n < dim; ++n) {
        for (int i = 0; i < dim; ++i) {
            const double w = std::norm(H[static_cast<size_t>(i) * dim + n]);
            for (int m = 0; m < m_max; ++m) out.corr[n][m] += w * omr[m][i];
        }
    }
    return out;
}

EdResult ed_periodic(int L, double delta, double h, double T, double J, int m_max) {
    EdResult res;
    res.L = L;
    res.J = J;
    res.delta = delta;
    res.h = h;
    res.T = T;
    res.boundary = Boundary::Periodic;

    // reference energy for stable Boltzmann weights: crude lower bound
    const double e_ref = -L * (2.0 * J * (1.0 + std::abs(delta)) + std::abs(h));
    ThermalAccumulator acc(T, m_max, e_ref);
    double herm = 0.0;

    for (int ndown = 0; ndown <= L; ++ndown) {
        // orbit representatives in this magnetization sector
        std::vector<uint32_t> all_reps;
        std::vector<int> all_periods;
        for (uint32_t s = 0; s < (1u << L); ++s) {
            if (__builtin_popcount(s) != ndown) continue;
            uint32_t rep;
            int period, shift;
            orbit_info(s, L, rep, period, shift);
            if (rep == s) {
                all_reps.push_back(s);
                all_periods.push_back(period);
            }
        }
        const double sz_total = L - 2.0 * ndown;
        const double e_field = -0.5 * h * sz_total;

        for (int m_sector = 0; m_sector < L; ++m_sector) {
            std::vector<uint32_t> reps;
            std::vector<int> periods;
            for (size_t i = 0; i < all_reps.size(); ++i)
                if ((static_cast<long>(m_sector) * all_periods[i]) % L == 0) {
                    reps.push_back(all_reps[i]);
                    periods.push_back(all_periods[i]);
                }
            MomentumBlockResult blk =
                solve_momentum_block(L, m_sector, J, delta, reps, periods, m_max);
            herm = std::max(herm, blk.herm);
            for (size_t n = 0; n < blk.energies.size(); ++n)
                acc.add(blk.energies[n] + e_field, sz_total / L, blk.corr[n]);
        }
    }

    res.hermiticity_residual = herm;
    res.ground_energy = acc.e_min;
    res.f_per_site = -(T * std::log(acc.z) - acc.e_ref) / L;
    res.sz1 = acc.sz_sum / acc.z;
    res.szsz_connected.resize(m_max);
    for (int m = 0; m < m_max; ++m)
        res.szsz_connected[m] = acc.corr_sum[m] / acc.z - res.sz1 * res.sz1;
    return res;
}

// ---- open chain with diagonal boundary fields -----------------------------

EdResult ed_boundary(int L, double delta, double h, double T, double J, int m_max,
                     cplx xi_minus, cplx xi_plus) {
    EdResult res;
    res.L = L;
    res.J = J;
    res.delta = delta;
    res.h = h;
    res.T = T;
    res.boundary = Boundary::Diagonal;

    // eta = -i zeta with Delta = cos(zeta);  boundary sz couplings
    const double zeta = std::acos(delta);
    const cplx eta(0.0, -zeta);
    const cplx bm_c = J * std::sinh(eta) / std::tanh(xi_minus);
    const cplx bp_c = J * std::sinh(eta) / std::tanh(xi_plus);
    if (std::abs(bm_c.imag()) > 1e-10 * (1.0 + std::abs(bm_c)) ||
        std::abs(bp_c.imag()) > 1e-10 * (1.0 + std::abs(bp_c)))
        throw std::invalid_argument("ed_xxz: boundary fields not real for these xi");
    const double bm = bm_c.real(), bp = bp_c.real();
    const double const_shift = J * (std::cosh(2.0 * eta) / std::cosh(eta)).real();

    const double e_ref =
        -L * (2.0 * J * (1.0 + std::abs(delta)) + std::abs(h)) - std::abs(bm) - std::abs(bp);
    ThermalAccumulator acc(T, m_max, e_ref);

    for (int ndown = 0; ndown <= L; ++ndown) {
        std::vector<uint32_t> basis;
        for (uint32_t s = 0; s < (1u << L); ++s)
            if (__builtin_popcount(s) == ndown) basis.push_back(s);
        const int dim = static_cast<int>(basis.size());
        std::vector<double> H(static_cast<size_t>(dim) * dim, 0.0);
        auto at = [&](int i, int j) -> double& { return H[static_cast<size_t>(i) * dim + j]; };
        auto find_state = [&](uint32_t s) {
            return static_cast<int>(
                std::lower_bound(basis.begin(), basis.end(), s) - basis.begin());
        };
        for (int i = 0; i < dim; ++i) {
            const uint32_t s = basis[i];
            double diag = const_shift;
            for (int a = 0; a + 1 < L; ++a) {
                const int za = spin_z(s, a), zb = spin_z(s, a + 1);
                diag += J * delta * (za * zb + 1.0);
                if (za != zb) {
                    const uint32_t s2 = s ^ ((1u << a) | (1u << (a + 1)));
                    at(find_state(s2), i) += 2.0 * J;
                }
            }
            diag += bm * spin_z(s, 0) + bp * spin_z(s, L - 1);
            diag += -0.5 * h * (L - 2.0 * ndown);
            at(i, i) += diag;
        }
        std::vector<double> evals(dim);
        const int info =
            LAPACKE_dsyevd(LAPACK_ROW_MAJOR, 'V', 'L', dim, H.data(), dim, evals.data());
        if (info != 0) throw std::runtime_error("dsyevd failed");

        for (int n = 0; n < dim; ++n) {
            double sz1 = 0.0;
            std::vector<double> corr(m_max, 0.0);
            for (int i = 0; i < dim; ++i) {
                const double w = H[static_cast<size_t>(i) * dim + n] *
                                 H[static_cast<size_t>(i) * dim + n];
                const uint32_t s = basis[i];
                sz1 += w * spin_z(s, 0);
                for (int m = 1; m <= m_max && m < L; ++m)
                    corr[m - 1] += w * spin_z(s, 0) * spin_z(s, m);
            }
            // reuse accumulator: sz slot now holds site-1 magnetization
            acc.add(evals[n], sz1, corr);
        }
    }

    res.ground_energy = acc.e_min;
    res.f_per_site = -(T * std::log(acc.z) - acc.e_ref) / L;
    res.sz1 = acc.sz_sum / acc.z;
    res.szsz_connected.resize(m_max);
    for (int m = 0; m < m_max; ++m)
        res.szsz_connected[m] = acc.corr_sum[m] / acc.z - res.sz1 * res.sz1;
    return res;
}

}  // namespace

EdResult ed_xxz(int L, double delta, double h, double T, double J, Boundary boundary,
                int m_max, cplx xi_minus, cplx xi_plus) {
    if (L > 16) throw std::invalid_argument("ed_xxz: L > 16 rejected");
    if (L < 2) throw std::invalid_argument("ed_xxz: L too small");
    if (boundary == Boundary::Periodic) return ed_periodic(L, delta, h, T, J, m_max);
    return ed_boundary(L, delta, h, T, J, m_max, xi_minus, xi_plus);
}

// ---- relative-motion Toda oracle ----------------------------------------

namespace {

std::vector<double> toda_levels_fd(double hbar, double box, int n, int n_levels,
                                   double* wall) {
    const double dx = 2.0 * box / (n + 1);
    std::vector<double> diag(n), off(n - 1);
    for (int i = 0; i < n; ++i) {
        const double x = -box + (i + 1) * dx;
        diag[i] = 2.0 * hbar * hbar / (dx * dx) + 2.0 * std::cosh(x);
    }
    std::fill(off.begin(), off.end(), -hbar * hbar / (dx * dx));

    std::vector<double> evals(n), evecs(static_cast<size_t>(n) * n_levels);
    std::vector<int> isuppz(2 * n_levels), mfound(1);
    int m = 0;
    const int info = LAPACKE_dstevr(LAPACK_ROW_MAJOR, 'V', 'I', n, diag.data(), off.data(),
                                    0.0, 0.0, 1, n_levels, 1e-14, &m, evals.data(),
                                    evecs.data(), n_levels, isuppz.data());
    if (info != 0 || m < n_levels) throw std::runtime_error("dstevr failed");
    if (wall) {
        double w = 0.0;
        for (int k = 0; k < n_levels; ++k) {
            w = std::max(w, std::abs(evecs[static_cast<size_t>(0) * n_levels + k]));
            w = std::max(w, std::abs(evecs[static_cast<size_t>(n - 1) * n_levels + k]));
        }
        *wall = w;
    }
    evals.resize(n_levels);
    return evals;
}

}  // namespace

TodaSpectrum toda2_relative_spectrum(double hbar, double box, int n, int n_levels) {
    TodaSpectrum out;
    double wall1 = 0.0, wall2 = 0.0;
    const std::vector<double> e1 = toda_levels_fd(hbar, box, n, n_levels, &wall1);
    const std::vector<double> e2 = toda_levels_fd(hbar, box, 2 * n, n_levels, &wall2);
    out.levels.resize(n_levels);
    for (int k = 0; k < n_levels; ++k)
        out.levels[k] = (4.0 * e2[k] - e1[k]) / 3.0;  // h^2 Richardson
    out.wall_amplitude = std::max(wall1, wall2);
    if (out.wall_amplitude > 1e-12)
        throw std::runtime_error("toda2_relative_spectrum: box too small");
    return out;
}

// ---- Bethe wavefunction overlaps -----------------------------------------

cplx nls_wavefunction(double L, double c, const std::vector<double>& roots,
                      const std::vector<double>& x) {
    const int n = static_cast<int>(roots.size());
    if (static_cast<int>(x.size()) != n)
        throw std::invalid_argument("nls_wavefunction: dimension mismatch");
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    const cplx pref = std::pow(cplx(0.0, -1.0) * std::sqrt(c), n);
    cplx total = 0.0;
    do {
        cplx term = 1.0;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                const double d = roots[perm[a]] - roots[perm[b]];
                const double sg = x[a] > x[b] ? 1.0 : (x[a] < x[b] ? -1.0 : 0.0);
                term *= (d - cplx(0.0, c) * sg) / d;
            }
        for (int a = 0; a < n; ++a)
            term *= std::exp(cplx(0.0, roots[perm[a]] * (x[a] - 0.5 * L)));
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return pref * total;
}

cplx nls_overlap_quadrature(double L, double c, const std::vector<double>& bra_roots,
                            const std::vector<double>& ket_roots, bool insert_field,
                            int n_quad) {
    const int nk = static_cast<int>(ket_roots.size());
    const int nb = static_cast<int>(bra_roots.size());
    if (insert_field ? (nb != nk + 1) : (nb != nk))
        throw std::invalid_argument("nls_overlap_quadrature: root-count mismatch");
    if (nk > 2) throw std::invalid_argument("nls_overlap_quadrature: N > 2 not supported");

    if (nk == 0) {
        // <1-particle bra | Phi^dag(0) | vacuum>
        return std::conj(nls_wavefunction(L, c, bra_roots, {0.0}));
    }
    const GaussLegendre g = gauss_legendre(n_quad, 0.0, L);
    if (nk == 1) {
        cplx s = 0.0;
        for (int i = 0; i < g.size(); ++i) {
            const cplx ket = nls_wavefunction(L, c, ket_roots, {g.x[i]});
            const cplx bra = insert_field
                                 ? nls_wavefunction(L, c, bra_roots, {0.0, g.x[i]})
                                 : nls_wavefunction(L, c, bra_roots, {g.x[i]});
            s += g.w[i] * std::conj(bra) * ket;
        }
        return s;
    }
    // N = 2: integrate over the ordered sector x1 < x2 (both integrands are
    // symmetric under exchange, so this equals (1/2!) times the full square).
    cplx s = 0.0;
    for (int i = 0; i < g.size(); ++i) {
        const double x1 = g.x[i];
        const GaussLegendre g2 = gauss_legendre(n_quad, x1, L);
        for (int j = 0; j < g2.size(); ++j) {
            const double x2 = g2.x[j];
            const cplx ket = nls_wavefunction(L, c, ket_roots, {x1, x2});
            const cplx bra = insert_field
                                 ? nls_wavefunction(L, c, bra_roots, {0.0, x1, x2})
                                 : nls_wavefunction(L, c, bra_roots, {x1, x2});
            s += g.w[i] * g2.w[j] * std::conj(bra) * ket;
        }
    }
    return s;
}

}  // namespace intlab::oracles
