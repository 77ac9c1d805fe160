#include "harper/localization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "harper/tridiag.hpp"

namespace harper {

namespace {

double potential(double b, double omega, double phi, long long n) {
    return b * std::cos(2.0 * M_PI * frac(omega * static_cast<double>(n) + phi / (2.0 * M_PI)));
}

/// Least-squares decay fit on the outward branch (away from the mirror image at -center),
/// over the outer half of the numerically resolved support, dropping the last 5% of the
/// window (boundary contamination). The support ends where the entries reach the relative
/// noise floor of the eigensolver, well before underflow.
double fit_decay(const std::vector<double>& psi, long long n0, long long center) {
    long long n_min = n0, n_max = n0 + static_cast<long long>(psi.size()) - 1;
    int dir = (center >= (n_min + n_max) / 2) ? 1 : -1;
    long long reach = dir > 0 ? n_max - center - 1 : center - n_min - 1;
    reach = (reach * 19) / 20;
    if (reach < 8) return 0.0;

    double sup = 0.0;
    for (double v : psi) sup = std::max(sup, std::fabs(v));
    const double mag_floor = (1e-12 * sup) * (1e-12 * sup);
    auto mag_at = [&](long long r) {
        long long n = center + dir * r;
        double v0 = psi[static_cast<size_t>(n - n0)];
        double v1 = psi[static_cast<size_t>(n + 1 - n0)];
        return v0 * v0 + v1 * v1;
    };
    // support ends where a sustained sub-floor run begins; isolated noise spikes above
    // the floor must not drag the window into the noise zone
    long long support = reach;
    int run = 0;
    for (long long r = 1; r <= reach; ++r) {
        if (mag_at(r) <= mag_floor) {
            if (++run >= 4) {
                support = r - run;
                break;
            }
        } else {
            run = 0;
        }
    }

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (long long r = (support + 1) / 2; r <= support; ++r) {
        double mag = mag_at(r);
        if (mag <= mag_floor) continue;
        double lx = static_cast<double>(r), ly = std::log(mag);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
        ++cnt;
    }
    if (cnt < 4) return 0.0;
    double denom = cnt * sxx - sx * sx;
    if (denom <= 0) return 0.0;
    double slope = (cnt * sxy - sx * sy) / denom;
    return -0.5 * slope;
}

long long arg_max_abs(const std::vector<double>& psi, long long n0) {
    size_t best = 0;
    double bv = -1.0;
    for (size_t i = 0; i < psi.size(); ++i) {
        double v = std::fabs(psi[i]);
        // prefer the nonnegative index on exact mirror ties
        if (v > bv + 1e-300 || (v == bv && n0 + static_cast<long long>(i) >= 0)) {
            bv = v;
            best = i;
        }
    }
    return n0 + static_cast<long long>(best);
}

double residual_of(const std::vector<double>& psi, double a, double b, double omega,
                   double phi, long long n0) {
    double worst = 0.0;
    for (size_t i = 1; i + 1 < psi.size(); ++i) {
        long long n = n0 + static_cast<long long>(i);
        double r = psi[i + 1] + psi[i - 1] + (potential(b, omega, phi, n) - a) * psi[i];
        worst = std::max(worst, std::fabs(r));
    }
    return worst;
}

/// Solves one reflection sector of the phi = 0 (or pi) truncation. Even sector: sites
/// 0..M with the 0-1 coupling sqrt(2) after symmetrization; odd sector: sites 1..M.
void solve_sector(double b, double omega, double phi, int M, Interval window, bool even,
                  std::vector<EigenPair>& out) {
    SymTridiag t;
    int dim = even ? M + 1 : M;
    t.diag.resize(static_cast<size_t>(dim));
    t.off.assign(static_cast<size_t>(dim) - 1, 1.0);
    for (int i = 0; i < dim; ++i)
        t.diag[static_cast<size_t>(i)] = potential(b, omega, phi, even ? i : i + 1);
    if (even && M >= 1) t.off[0] = std::sqrt(2.0);

    TridiagEigenSystem sys = eigenpairs_in(t, window.lo, window.hi);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (size_t j = 0; j < sys.values.size(); ++j) {
        EigenPair e;
        e.a = sys.values[j];
        e.n0 = -M;
        e.parity = even ? 1 : -1;
        e.psi.assign(2 * static_cast<size_t>(M) + 1, 0.0);
        const auto& u = sys.vectors[j];
        if (even) {
            e.psi[static_cast<size_t>(M)] = u[0];  // psi_0 = u_0 (after the sqrt(2) scaling)
            for (int n = 1; n <= M; ++n) {
                double v = u[static_cast<size_t>(n)] * inv_sqrt2;
                e.psi[static_cast<size_t>(M + n)] = v;
                e.psi[static_cast<size_t>(M - n)] = v;
            }
        } else {
            for (int n = 1; n <= M; ++n) {
                double v = u[static_cast<size_t>(n - 1)] * inv_sqrt2;
                e.psi[static_cast<size_t>(M + n)] = v;
                e.psi[static_cast<size_t>(M - n)] = -v;
            }
        }
        e.center = arg_max_abs(e.psi, e.n0);
        e.beta = fit_decay(e.psi, e.n0, e.center);
        e.residual = residual_of(e.psi, e.a, b, omega, phi, e.n0);
        out.push_back(std::move(e));
    }
}

}  // namespace

std::vector<EigenPair> diagonalize_truncation(double b, double phi, const Frequency& omega,
                                              int L, Interval window) {
    if (L < 3 || L % 2 == 0)
        throw std::invalid_argument("diagonalize_truncation: L must be odd and >= 3");
    int M = (L - 1) / 2;
    std::vector<EigenPair> out;

    double phi_red = std::fabs(std::remainder(phi, M_PI));
    bool symmetric_phase = phi_red < 1e-14 || std::fabs(phi_red - M_PI) < 1e-14;
    if (symmetric_phase) {
        double phi0 = std::fabs(std::remainder(phi, 2.0 * M_PI)) < 1.0 ? 0.0 : M_PI;
        solve_sector(b, omega.value(), phi0, M, window, true, out);
        solve_sector(b, omega.value(), phi0, M, window, false, out);
        std::sort(out.begin(), out.end(),
                  [](const EigenPair& x, const EigenPair& y) { return x.a < y.a; });
        return out;
    }

    SymTridiag t;
    t.diag.resize(static_cast<size_t>(L));
    t.off.assign(static_cast<size_t>(L) - 1, 1.0);
    for (int i = 0; i < L; ++i)
        t.diag[static_cast<size_t>(i)] = potential(b, omega.value(), phi, i - M);
    TridiagEigenSystem sys = eigenpairs_in(t, window.lo, window.hi);
    for (size_t j = 0; j < sys.values.size(); ++j) {
        EigenPair e;
        e.a = sys.values[j];
        e.n0 = -M;
        e.parity = 0;
        e.psi = std::move(sys.vectors[j]);
        e.center = arg_max_abs(e.psi, e.n0);
        e.beta = fit_decay(e.psi, e.n0, e.center);
        e.residual = residual_of(e.psi, e.a, b, omega.value(), phi, e.n0);
        out.push_back(std::move(e));
    }
    return out;
}

double decay_exponent(const std::vector<double>& psi, long long n0, long long center) {
    return fit_decay(psi, n0, center);
}

double symmetry_check(const EigenPair& e, double phi) {
    (void)phi;  // the (-x_{-n}) reflection of the phi = -pi/2 case drops out under |.|
    if (e.n0 + e.n_max() != 0)
        throw std::invalid_argument("symmetry_check: truncation must be centered at 0");
    double worst = 0.0;
    for (long long n = 1; n <= e.n_max(); ++n)
        worst = std::max(worst, std::fabs(std::fabs(e.at(-n)) - std::fabs(e.at(n))));
    return worst;
}

ResonantPhaseReport resonant_phase_test(double phi, const Frequency& omega, long long N) {
    ResonantPhaseReport rep{phi, N, {}};
    double r = omega.diophantine_r();
    double inv_exp = 1.0 / (2.0 * r);
    for (long long n = -N; n <= N; ++n) {
        if (n == 0) continue;
        // |sin(phi + pi n omega)| = |sin(pi u)| with u = frac(phi/pi + n omega)
        double u = frac(phi / M_PI + static_cast<double>(n) * omega.value());
        double s = std::fabs(std::sin(M_PI * u));
        if (s < std::exp(-std::pow(static_cast<double>(std::llabs(n)), inv_exp)))
            rep.hits.push_back(n);
    }
    return rep;
}

double DualSolution::eval(double theta) const {
    double acc = 0.0;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        double m = static_cast<double>(m0 + static_cast<long long>(i));
        acc += coeffs[i] * (mode > 0 ? std::cos(m * theta) : std::sin(m * theta));
    }
    return acc;
}

std::pair<double, double> DualSolution::dual_point() const {
    return {2.0 * a / b, 4.0 / b};
}

DualSolution dual_solution(const EigenPair& e, double b, const Frequency& omega,
                           double residual_tol, long long check_halfwidth) {
    if (std::fabs(b) <= 2.0)
        throw std::invalid_argument("dual_solution: requires |b| > 2 (localized regime)");
    if (!(e.beta > 0.0))
        throw std::invalid_argument("dual_solution: eigenvector shows no exponential decay");

    DualSolution s;
    s.m0 = e.n0;
    s.coeffs = e.psi;
    s.a = e.a;
    s.b = b;
    s.omega = omega.value();
    // Parity selects the real form: even -> cosine series, odd -> sine series. For a
    // sector-free eigenvector, take the dominant of the two projections; either is a
    // real solution of the dual equation.
    if (e.parity != 0) {
        s.mode = e.parity;
    } else {
        double mass_cos = 0.0, mass_sin = 0.0;
        for (size_t i = 0; i < e.psi.size(); ++i) {
            long long n = e.n0 + static_cast<long long>(i);
            double mirror = (-n >= e.n0 && -n <= e.n_max()) ? e.at(-n) : 0.0;
            mass_cos += 0.25 * (e.psi[i] + mirror) * (e.psi[i] + mirror);
            mass_sin += 0.25 * (e.psi[i] - mirror) * (e.psi[i] - mirror);
        }
        s.mode = mass_cos >= mass_sin ? 1 : -1;
    }

    auto [ad, bd] = s.dual_point();
    // x_n = psi~(2 pi omega n) against the dual equation, sup norm relative to the
    // solution scale
    double two_pi_omega = 2.0 * M_PI * omega.value();
    double worst = 0.0, scale = 0.0;
    double xm = s.eval(-static_cast<double>(check_halfwidth + 1) * two_pi_omega);
    double x0 = s.eval(-static_cast<double>(check_halfwidth) * two_pi_omega);
    for (long long n = -check_halfwidth; n <= check_halfwidth; ++n) {
        double xp = s.eval(static_cast<double>(n + 1) * two_pi_omega);
        double defect = xp + xm + (bd * std::cos(two_pi_omega * static_cast<double>(n)) - ad) * x0;
        worst = std::max(worst, std::fabs(defect));
        scale = std::max(scale, std::fabs(x0));
        xm = x0;
        x0 = xp;
    }
    s.residual = worst / std::max(scale, 1e-300);
    if (s.residual > residual_tol)
        throw std::runtime_error("dual-residual: defect " + std::to_string(s.residual) +
                                 " exceeds tolerance (truncation too small or input not "
                                 "localized)");
    return s;
}

namespace {

/// Window [nlo, nhi] of the recurrence x_{n+1} = (a - lambda cos(2 pi omega n)) x_n - x_{n-1},
/// marched from seed values at two consecutive indices (seed_n, seed_n + 1). Marching the
/// recurrence keeps pairwise Wronskians constant to rounding, which evaluating series
/// samples pointwise would not.
std::vector<double> iterate_window(double a, double lambda, double omega, long long nlo,
                                   long long nhi, long long seed_n, double v_at_seed,
                                   double v_after_seed) {
    std::vector<double> v(static_cast<size_t>(nhi - nlo + 1));
    auto at = [&](long long n) -> double& { return v[static_cast<size_t>(n - nlo)]; };
    auto pot = [&](long long n) {
        return lambda * std::cos(2.0 * M_PI * frac(omega * static_cast<double>(n)));
    };
    at(seed_n) = v_at_seed;
    at(seed_n + 1) = v_after_seed;
    for (long long n = seed_n + 1; n < nhi; ++n) at(n + 1) = (a - pot(n)) * at(n) - at(n - 1);
    for (long long n = seed_n; n > nlo; --n) at(n - 1) = (a - pot(n)) * at(n) - at(n + 1);
    return v;
}

WronskianPairReport wronskian_report(const std::vector<double>& x, const std::vector<double>& y) {
    auto W = [&](size_t i) { return x[i + 1] * y[i] - x[i] * y[i + 1]; };
    WronskianPairReport rep{};
    double w0 = W(0);
    rep.value = std::fabs(w0);
    for (size_t i = 0; i + 1 < x.size(); ++i)
        rep.drift = std::max(rep.drift, std::fabs(W(i) - w0));
    for (const double v : x) rep.solution_sup = std::max(rep.solution_sup, std::fabs(v));
    for (const double v : y) rep.companion_sup = std::max(rep.companion_sup, std::fabs(v));
    // growth rate: least squares of log ||(y_n, y_{n+1})|| vs index over the trailing half
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (size_t i = x.size() / 2; i + 1 < x.size(); ++i) {
        double mag = std::hypot(y[i], y[i + 1]);
        if (mag <= 0 || !std::isfinite(mag)) break;
        double lx = static_cast<double>(i), ly = std::log(mag);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
        ++cnt;
    }
    if (cnt >= 4) {
        double denom = cnt * sxx - sx * sx;
        if (denom > 0) rep.growth_rate = (cnt * sxy - sx * sy) / denom;
    }
    return rep;
}

}  // namespace

CoexistenceReport no_coexistence_check(const DualSolution& s, const EigenPair& e,
                                       long long halfwidth) {
    const long long H = halfwidth;
    CoexistenceReport rep{};
    auto [ad, bd] = s.dual_point();
    const double two_pi_omega = 2.0 * M_PI * s.omega;

    // dual side over [-H, H]: solution seeded from the psi~ samples at n = 0, 1 (bounded,
    // quasi-periodic), companion seeded orthogonal to it
    double x0 = s.eval(0.0), x1 = s.eval(two_pi_omega);
    std::vector<double> x = iterate_window(ad, bd, s.omega, -H, H, 0, x0, x1);
    double dev = 0.0;
    for (long long n = -H; n <= H; ++n)
        dev = std::max(dev, std::fabs(x[static_cast<size_t>(n + H)] -
                                      s.eval(two_pi_omega * static_cast<double>(n))));
    double nx = std::hypot(x0, x1);
    std::vector<double> y = iterate_window(ad, bd, s.omega, -H, H, 0, -x1 / nx, x0 / nx);
    rep.dual = wronskian_report(x, y);
    rep.dual.sample_dev = dev;

    // original side: the decaying branch is marched inward from a far seed taken where
    // the eigenvector entries are still numerically trustworthy (the stable direction of
    // the backward recursion); the companion is marched outward from the center and grows
    // at the Lyapunov rate log(|b|/2)
    const long long c = e.center;
    int dir = (c >= (e.n_min() + e.n_max()) / 2) ? 1 : -1;
    long long reach = (dir > 0 ? e.n_max() - c : c - e.n_min()) - 1;
    double sup = 0.0;
    for (double v : e.psi) sup = std::max(sup, std::fabs(v));
    long long Ho = std::min(H, reach);
    while (Ho > 8 && (std::fabs(e.at(c + dir * Ho)) < 1e-10 * sup ||
                      std::fabs(e.at(c + dir * (Ho + 1))) < 1e-10 * sup))
        --Ho;
    if (Ho <= 8)
        throw std::invalid_argument("no_coexistence_check: eigenvector support too small");

    // collect the window in outward order m = -1..Ho+1 (m is the signed radius from c)
    auto lattice = [&](long long m) { return c + dir * m; };
    long long nlo = std::min(lattice(-1), lattice(Ho + 1));
    long long nhi = std::max(lattice(-1), lattice(Ho + 1));
    long long seed = std::min(lattice(Ho), lattice(Ho + 1));
    std::vector<double> pw = iterate_window(e.a, s.b, s.omega, nlo, nhi, seed, e.at(seed),
                                            e.at(seed + 1));
    dev = 0.0;
    for (long long n = nlo; n <= nhi; ++n)
        dev = std::max(dev, std::fabs(pw[static_cast<size_t>(n - nlo)] - e.at(n)));
    double np = std::hypot(pw[static_cast<size_t>(lattice(0) - nlo)],
                           pw[static_cast<size_t>(lattice(-1) - nlo)]);
    long long qseed = std::min(lattice(-1), lattice(0));
    std::vector<double> qw =
        iterate_window(e.a, s.b, s.omega, nlo, nhi, qseed,
                       pw[static_cast<size_t>(qseed + 1 - nlo)] / np,
                       -pw[static_cast<size_t>(qseed - nlo)] / np);
    std::vector<double> p(pw), q(qw);
    if (dir < 0) {  // outward order for the growth fit
        std::reverse(p.begin(), p.end());
        std::reverse(q.begin(), q.end());
    }
    rep.original = wronskian_report(p, q);
    rep.original.sample_dev = dev;
    return rep;
}

}  // namespace harper
