#pragma once

#include <cstdint>
#include <cstdlib>
#include <vector>

#include "harper/frequency.hpp"
#include "harper/gaps.hpp"

namespace harper {

/// Eigenpair of a centered truncation (sites n0 .. n0+len-1, n0 = -(L-1)/2), with the
/// least-squares decay exponent beta of log(psi_n^2 + psi_{n+1}^2) ~ -2 beta |n - center|.
struct EigenPair {
    double a;                 // eigenvalue
    std::vector<double> psi;  // unit 2-norm
    long long n0;
    double beta;
    long long center;  // lattice index of max |psi|
    double residual;   // ||H psi - a psi||_inf over interior sites
    int parity;        // +1 even, -1 odd (phi = 0 sector path), 0 otherwise

    double at(long long n) const { return psi[static_cast<size_t>(n - n0)]; }
    long long n_min() const { return n0; }
    long long n_max() const { return n0 + static_cast<long long>(psi.size()) - 1; }
};

/// All eigenpairs of the centered L-site truncation (L odd) with eigenvalue in `window`.
/// For phi = 0 (or pi) the truncation commutes with the reflection n -> -n and is solved
/// per symmetry sector, so eigenvectors carry exact parity even across numerically
/// degenerate mirror pairs.
std::vector<EigenPair> diagonalize_truncation(double b, double phi, const Frequency& omega,
                                              int L, Interval window);

/// Re-fits the decay exponent (the constructor already stores it); exposed for tests.
double decay_exponent(const std::vector<double>& psi, long long n0, long long center);

/// Max over n of ||psi_{-n}| - |psi_n||. The phi = -pi/2 convention reflects through
/// (-x_{-n}), which leaves this quantity unchanged; requires a centered window.
double symmetry_check(const EigenPair& e, double phi);

/// Scan of the resonance inequality |sin(phi + pi n omega)| < exp(-|n|^(1/2r)).
/// Membership in the resonant set requires infinitely many hits; finitely many low-|n|
/// hits are expected for ordinary phases, so the verdict only turns once hits appear in
/// the outer decade of the scanned horizon.
struct ResonantPhaseReport {
    double phi;
    long long N;
    std::vector<long long> hits;

    bool clean() const {
        for (long long n : hits)
            if (std::abs(n) > N / 10) return false;
        return true;
    }
};

ResonantPhaseReport resonant_phase_test(double phi, const Frequency& omega, long long N);

/// A quasi-periodic solution of the dual eigenvalue equation, built from a localized
/// eigenvector read as Fourier coefficients. Realness is arranged parity-aware: even
/// eigenvectors give a cosine series, odd ones a sine series.
struct DualSolution {
    std::vector<double> coeffs;  // psi_m, m = m0 .. m0+len-1
    long long m0;
    int mode;          // +1 cosine series, -1 sine series
    double a, b;       // original parameters
    double residual;   // sup defect of the dual equation over the checked window
    double omega;

    /// psi~(theta) as the real series of the stored mode.
    double eval(double theta) const;
    /// (2a/b, 4/b)
    std::pair<double, double> dual_point() const;
};

/// Builds and verifies the dual solution: x_n = psi~(2 pi omega n) must satisfy the dual
/// equation at (2a/b, 4/b) with sup residual <= residual_tol over |n| <= check_halfwidth.
/// Throws when |b| <= 2, when the eigenvector shows no decay, or when the residual
/// exceeds the tolerance (truncation too small / non-localized input).
DualSolution dual_solution(const EigenPair& e, double b, const Frequency& omega,
                           double residual_tol = 1e-6, long long check_halfwidth = 100);

/// Wronskian/companion diagnostics for one solution pair of a three-term recurrence.
struct WronskianPairReport {
    double drift;        // max_n |W_n - W_0|
    double value;        // |W_0|
    double growth_rate;  // fitted log-growth per step of the companion
    double companion_sup;
    double solution_sup;
    double sample_dev;  // max deviation of the marched solution from its seed samples
};

/// Quantitative no-coexistence check. The dual-side pair couples the bounded samples
/// psi~(2 pi omega n) with a companion from independent initial data; the original-side
/// pair couples the decaying eigenvector with its companion, which grows at the Lyapunov
/// rate log(|b|/2). Constant Wronskians bounded away from zero certify independence.
struct CoexistenceReport {
    WronskianPairReport dual;
    WronskianPairReport original;
};

CoexistenceReport no_coexistence_check(const DualSolution& s, const EigenPair& e,
                                       long long halfwidth = 100);

}  // namespace harper
