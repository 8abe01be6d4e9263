#include "intlab/sinhpf.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace intlab::sinhpf {

namespace {

constexpr double kZeta3 = 1.2020569031595942854;
constexpr double kZetaPrimeM1 = -0.16542114370045092921;  // zeta'(-1)

// ln sinh(x) for x > 0 without overflow
double ln_sinh(double x) { return x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0); }

// ln(1 - e^{-x}) stable for small and large x
double ln_1m_exp(double x) { return std::log(-std::expm1(-x)); }

}  // namespace

double gaussian_partition_exact(const SinhModel& m) {
    const int N = m.N;
    const double g = m.g, t = m.t, TN = m.T_N, w1 = m.omega1, w2 = m.omega2;
    if (!(g > 0.0)) throw std::invalid_argument("gaussian_partition_exact: need g > 0");
    double v = std::lgamma(N + 1.0);                     // ln N!
    v -= N * (N - 1.0) * std::log(2.0);
    v += 0.5 * N * std::log(M_PI / (g * N * TN));
    v += N * static_cast<double>(N) * TN * t * t / (4.0 * g);
    const double wsum = 1.0 / w1 + 1.0 / w2;
    v += M_PI * M_PI * wsum * wsum / (12.0 * g) * TN * (static_cast<double>(N) * N - 1.0);
    const double cexp = 2.0 * TN * M_PI * M_PI / (N * g * w1 * w2);
    for (int j = 1; j <= N; ++j) v += (N - j) * ln_1m_exp(j * cexp);
    return v;
}

AsymptoticResult gaussian_partition_asymptotic(const SinhModel& m) {
    const double N = m.N, TN = m.T_N, g = m.g, t = m.t, w1 = m.omega1, w2 = m.omega2;
    AsymptoticResult r;
    const double lnN = std::log(N);
    r.window_ok = (TN > lnN * lnN * 0.999) && (TN < std::pow(N, 0.9));
    const double wsum = 1.0 / w1 + 1.0 / w2;
    double v = N * N * TN * (t * t / (4.0 * g) + M_PI * M_PI * wsum * wsum / (12.0 * g));
    v -= N * N * std::log(2.0);
    v -= N * N / TN * (g / 12.0) * w1 * w2;
    v += N * N / (TN * TN) * std::pow(g * w1 * w2, 2) * kZeta3 /
         std::pow(2.0 * M_PI * M_PI, 2);
    v += N * std::log(N / TN);
    v += N * std::log(2.0 / M_E * std::sqrt(w1 * w2));
    v -= TN * M_PI * M_PI * wsum * wsum / (12.0 * g);
    v += std::log(std::pow(N, 5.0) / TN) / 12.0;
    v += std::log(128.0 * std::pow(M_PI, 8.0) / (g * w1 * w2)) / 12.0;
    v += kZetaPrimeM1;
    r.value = v;
    return r;
}

double gaussian_partition_quadrature(const SinhModel& m, int n_points) {
    const int N = m.N;
    if (N > 3) throw std::invalid_argument("gaussian_partition_quadrature: N <= 3 only");
    const double g = m.g, t = m.t, TN = m.T_N, w1 = m.omega1, w2 = m.omega2;
    // integration box from the Gaussian decay (interaction grows only linearly)
    const double center = -t / (2.0 * g);
    const double pair_rate = M_PI * TN * (1.0 / w1 + 1.0 / w2) * (N - 1);
    const double R = std::sqrt((45.0 + pair_rate) / (N * TN * g)) + std::abs(center) + 2.0;
    const GaussLegendre q = gauss_legendre(n_points, center - R, center + R);

    auto weight = [&](const std::vector<double>& l) {
        double las = 0.0;
        double sign = 1.0;
        for (size_t a = 0; a < l.size(); ++a)
            for (size_t b = a + 1; b < l.size(); ++b) {
                const double d = l[a] - l[b];
                if (d == 0.0) return 0.0;
                const double ad = std::abs(d);
                las += ln_sinh(M_PI * TN * ad / w1) + ln_sinh(M_PI * TN * ad / w2);
                // both sinh factors flip sign together: product stays positive
            }
        for (double la : l) las -= N * TN * (g * la * la + t * la);
        return sign * std::exp(las);
    };

    double total = 0.0;
    if (N == 1) {
        for (int i = 0; i < q.size(); ++i) total += q.w[i] * weight({q.x[i]});
    } else if (N == 2) {
        for (int i = 0; i < q.size(); ++i)
            for (int j = 0; j < q.size(); ++j)
                total += q.w[i] * q.w[j] * weight({q.x[i], q.x[j]});
    } else {
        for (int i = 0; i < q.size(); ++i)
            for (int j = 0; j < q.size(); ++j)
                for (int k = 0; k < q.size(); ++k)
                    total += q.w[i] * q.w[j] * q.w[k] * weight({q.x[i], q.x[j], q.x[k]});
    }
    if (!(total > 0.0)) throw std::runtime_error("gaussian_partition_quadrature: negative");
    return std::log(total);
}

EquilibriumDensity equilibrium_density(const std::function<double(double)>& V,
                                       const std::function<double(double)>& Vp,
                                       const std::function<double(double)>& Vpp,
                                       double omega1, double omega2) {
    const double target = M_PI * (1.0 / omega1 + 1.0 / omega2);
    auto solve_vp = [&](double value) {
        double lo = -1.0, hi = 1.0;
        while (Vp(lo) > value) lo *= 2.0;
        while (Vp(hi) < value) hi *= 2.0;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (Vp(mid) < value ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    EquilibriumDensity e;
    e.b = solve_vp(target);
    e.a = solve_vp(-target);
    const double norm = omega1 * omega2 / (2.0 * M_PI * (omega1 + omega2));
    e.rho = [Vpp, norm, a = e.a, b = e.b](double x) {
        return (x >= a && x <= b) ? Vpp(x) * norm : 0.0;
    };
    const GaussLegendre g = gauss_legendre(96, e.a, e.b);
    double mass = 0.0, vp2 = 0.0;
    for (int i = 0; i < g.size(); ++i) {
        mass += g.w[i] * e.rho(g.x[i]);
        vp2 += g.w[i] * Vp(g.x[i]) * Vp(g.x[i]);
    }
    e.mass = mass;
    e.mass_consistent = std::abs(mass - 1.0) <= 1e-8;
    e.leading = -0.5 * (V(e.a) + V(e.b)) +
                (Vp(e.b) * Vp(e.b) * (e.b - e.a) + vp2) / (4.0 * M_PI * (1.0 / omega1 + 1.0 / omega2));
    return e;
}

McResult sinh_metropolis(const SinhModel& m, int n_sweeps, int n_burn, uint64_t seed,
                         int n_bins, double bin_lo, double bin_hi) {
    const int N = m.N;
    const double TN = m.T_N, g = m.g, t = m.t, w1 = m.omega1, w2 = m.omega2;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    auto pair_term = [&](double d) {
        const double ad = std::abs(d);
        if (ad < 1e-300) return -1e30;
        return ln_sinh(M_PI * TN * ad / w1) + ln_sinh(M_PI * TN * ad / w2);
    };
    std::vector<double> l(N);
    for (int a = 0; a < N; ++a) l[a] = -t / (2.0 * g) + 0.01 * (a - 0.5 * N);
    double step = 0.1;
    long accepted = 0, proposed = 0;
    std::vector<double> counts(n_bins, 0.0);
    std::vector<std::vector<double>> batch_counts;
    const int n_batches = 20;
    const int sweeps_per_batch = std::max(1, n_sweeps / n_batches);
    std::vector<double> obs_series;

    auto do_sweep = [&](bool record) {
        for (int a = 0; a < N; ++a) {
            const double old = l[a];
            const double prop = old + step * (2.0 * unif(rng) - 1.0);
            double dln = -N * TN * (g * (prop * prop - old * old) + t * (prop - old));
            for (int b = 0; b < N; ++b) {
                if (b == a) continue;
                dln += pair_term(prop - l[b]) - pair_term(old - l[b]);
            }
            ++proposed;
            if (dln >= 0.0 || std::log(unif(rng)) < dln) {
                l[a] = prop;
                ++accepted;
            }
        }
        if (record) {
            double ss = 0.0;
            for (double la : l) {
                ss += la * la;
                const int bin = static_cast<int>((la - bin_lo) / (bin_hi - bin_lo) * n_bins);
                if (bin >= 0 && bin < n_bins) {
                    counts[bin] += 1.0;
                    batch_counts.back()[bin] += 1.0;
                }
            }
            obs_series.push_back(ss);
        }
    };

    for (int s = 0; s < n_burn; ++s) {
        do_sweep(false);
        // crude step adaptation during burn-in
        if (s % 50 == 49) {
            const double rate = static_cast<double>(accepted) / proposed;
            if (rate < 0.3) step *= 0.8;
            if (rate > 0.6) step *= 1.25;
            accepted = proposed = 0;
        }
    }
    accepted = proposed = 0;
    for (int s = 0; s < n_sweeps; ++s) {
        if (s % sweeps_per_batch == 0) batch_counts.push_back(std::vector<double>(n_bins, 0.0));
        do_sweep(true);
    }

    McResult r;
    r.acceptance = static_cast<double>(accepted) / proposed;
    const double bw = (bin_hi - bin_lo) / n_bins;
    const double total_samples = static_cast<double>(n_sweeps) * N;
    r.bin_centers.resize(n_bins);
    r.bin_density.resize(n_bins);
    r.bin_sigma.resize(n_bins);
    for (int b = 0; b < n_bins; ++b) {
        r.bin_centers[b] = bin_lo + (b + 0.5) * bw;
        r.bin_density[b] = counts[b] / (total_samples * bw);
    }
    // batch-means error bars
    const int nb = static_cast<int>(batch_counts.size());
    for (int b = 0; b < n_bins; ++b) {
        double mean = 0.0;
        std::vector<double> per(nb);
        for (int k = 0; k < nb; ++k) {
            const double batch_samples =
                static_cast<double>(sweeps_per_batch) * N * bw;
            per[k] = batch_counts[k][b] / batch_samples;
            mean += per[k];
        }
        mean /= nb;
        double var = 0.0;
        for (int k = 0; k < nb; ++k) var += (per[k] - mean) * (per[k] - mean);
        var /= (nb - 1.0);
        r.bin_sigma[b] = std::sqrt(var / nb);
    }
    // integrated autocorrelation of sum-of-squares
    {
        const int n = static_cast<int>(obs_series.size());
        double mean = 0.0;
        for (double v : obs_series) mean += v;
        mean /= n;
        double var = 0.0;
        for (double v : obs_series) var += (v - mean) * (v - mean);
        var /= n;
        double tau = 0.5;
        for (int lag = 1; lag < std::min(n / 4, 200); ++lag) {
            double c = 0.0;
            for (int i = 0; i + lag < n; ++i)
                c += (obs_series[i] - mean) * (obs_series[i + lag] - mean);
            c /= (n - lag) * var;
            if (c < 0.02) break;
            tau += c;
        }
        r.autocorr_time = 2.0 * tau;
    }
    return r;
}

}  // namespace intlab::sinhpf
