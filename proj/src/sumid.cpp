#include "intlab/sumid.hpp"

#include <cmath>
#include <stdexcept>

#include "intlab/special.hpp"

namespace intlab::sumid {

namespace {

struct Tuple {
    std::vector<int> vals;  // strictly increasing, >= 1
    int weight = 0;         // particles: sum(v-1); holes: sum(v)
};

// all strictly increasing tuples with the given grading weight budget
std::vector<Tuple> enumerate_tuples(int budget, bool particle) {
    std::vector<Tuple> out;
    out.push_back({});  // empty configuration
    std::vector<int> cur;
    // depth-first over increasing values
    std::function<void(int, int)> rec = [&](int min_val, int used) {
        for (int v = min_val;; ++v) {
            const int w = particle ? v - 1 : v;
            if (used + w > budget) break;
            cur.push_back(v);
            out.push_back({cur, used + w});
            rec(v + 1, used + w);
            cur.pop_back();
        }
    };
    rec(1, 0);
    return out;
}

}  // namespace

cplx s_ell_bruteforce(const SumParams& p) {
    if (p.cutoff < 0) throw std::invalid_argument("s_ell_bruteforce: cutoff >= 0 required");
    if (std::abs(p.z) > 0.9)
        throw std::invalid_argument("s_ell_bruteforce: |z| <= 0.9 enforced");
    const int W = p.cutoff;
    const cplx lnz = std::log(p.z == 0.0 ? cplx(1.0, 0.0) : p.z);
    const bool z_zero = (p.z == 0.0);
    const cplx sin_nu = std::sin(M_PI * p.nu);
    const bool sin_zero = (std::abs(sin_nu) == 0.0);
    const cplx ln_sin_factor = sin_zero ? 0.0 : 2.0 * std::log(sin_nu / M_PI);

    // Gamma-ratio tables: 2[lnG(k+nu) - lnG(k)] and 2[lnG(k-nu) - lnG(k)]
    const int kmax = W + 2;
    std::vector<cplx> lgp(kmax + 1), lgh(kmax + 1);
    std::vector<double> lni(2 * kmax + 2);
    for (int k = 1; k <= kmax; ++k) {
        lgp[k] = 2.0 * (ln_gamma(cplx(k, 0.0) + p.nu) - ln_gamma(cplx(k, 0.0)));
        lgh[k] = 2.0 * (ln_gamma(cplx(k, 0.0) - p.nu) - ln_gamma(cplx(k, 0.0)));
    }
    for (int k = 1; k < static_cast<int>(lni.size()); ++k) lni[k] = std::log(k);

    const std::vector<Tuple> parts = enumerate_tuples(W, true);
    const std::vector<Tuple> holes = enumerate_tuples(W, false);

    // cache per-tuple amplitudes: log of z^w * Vandermonde^2 * Gamma ratios
    auto amplitude = [&](const Tuple& t, bool particle) -> cplx {
        cplx lv = static_cast<double>(t.weight) * lnz;
        const auto& v = t.vals;
        for (size_t a = 0; a < v.size(); ++a) {
            lv += particle ? lgp[v[a]] : lgh[v[a]];
            for (size_t b = 0; b < a; ++b) lv += 2.0 * lni[v[a] - v[b]];
        }
        return lv;
    };
    std::vector<cplx> amp_p(parts.size()), amp_h(holes.size());
    for (size_t i = 0; i < parts.size(); ++i) amp_p[i] = amplitude(parts[i], true);
    for (size_t i = 0; i < holes.size(); ++i) amp_h[i] = amplitude(holes[i], false);

    cplx total = 0.0;
    for (size_t ip = 0; ip < parts.size(); ++ip) {
        const Tuple& P = parts[ip];
        const long nh_needed = static_cast<long>(P.vals.size()) - p.ell;
        if (nh_needed < 0) continue;
        for (size_t ih = 0; ih < holes.size(); ++ih) {
            const Tuple& H = holes[ih];
            if (static_cast<long>(H.vals.size()) != nh_needed) continue;
            if (P.weight + H.weight > W) continue;
            if (sin_zero && !H.vals.empty()) continue;
            if (z_zero && P.weight + H.weight > 0) continue;
            cplx lv = amp_p[ip] + amp_h[ih] +
                      static_cast<double>(H.vals.size()) * ln_sin_factor;
            for (int pa : P.vals)
                for (int hb : H.vals) lv -= 2.0 * lni[pa + hb - 1];
            total += std::exp(lv);
        }
    }
    return total;
}

cplx s_ell_closed(const SumParams& p) {
    const cplx one_plus_nu = 1.0 + p.nu;
    const cplx one_plus_nu_ell = 1.0 + p.nu + static_cast<double>(p.ell);
    if (one_plus_nu.imag() == 0.0 && one_plus_nu.real() <= 0.0 &&
        one_plus_nu.real() == std::floor(one_plus_nu.real()))
        throw std::domain_error("s_ell_closed: G(1+nu) vanishes");
    const cplx g_num = barnes_g(one_plus_nu_ell);
    const cplx g_den = barnes_g(one_plus_nu);
    const cplx shell = p.ell * (p.ell - 1) / 2.0;
    const cplx zpow = (p.z == 0.0 && std::abs(shell) == 0.0)
                          ? cplx(1.0, 0.0)
                          : std::pow(p.z, shell);
    const cplx nu_ell = p.nu + static_cast<double>(p.ell);
    const cplx one_minus_z_pow = std::exp(-nu_ell * nu_ell * std::log(1.0 - p.z));
    return zpow * one_minus_z_pow * g_num * g_num / (g_den * g_den);
}

}  // namespace intlab::sumid
